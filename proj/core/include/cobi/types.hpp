#ifndef COBI_TYPES_HPP
#define COBI_TYPES_HPP

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace cobi {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// A point in objective space.
struct ObjectivePair {
  double f1 = 0.0;
  double f2 = 0.0;
};

inline bool operator==(const ObjectivePair& a, const ObjectivePair& b) {
  return a.f1 == b.f1 && a.f2 == b.f2;
}

/// Base class for all recoverable errors raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Bad user input: invalid construction data, schema mismatch, dimension
/// mismatch and friends.  Maps to CLI exit code 1.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

/// Numerical failure: solver did not converge, degenerate archive, etc.
/// Maps to CLI exit code 2.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what) : Error(what) {}
};

inline void check_dimension(Eigen::Index got, Eigen::Index want,
                            const char* where) {
  if (got != want) {
    throw ValidationError(std::string(where) + ": dimension mismatch, got " +
                          std::to_string(got) + ", expected " +
                          std::to_string(want));
  }
}

}  // namespace cobi

#endif  // COBI_TYPES_HPP
