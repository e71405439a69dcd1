#ifndef COBI_ARCHIVE_HPP
#define COBI_ARCHIVE_HPP

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "cobi/types.hpp"

namespace cobi {

enum class Dominance {
  Dominates,
  WeaklyDominatesEqual,
  Incomparable,
  Dominated,
};

/// Strict dominance requires <= in both components and < in at least one;
/// componentwise equality is WeaklyDominatesEqual.
Dominance dominates(const ObjectivePair& a, const ObjectivePair& b);

struct InsertOutcome {
  bool inserted = false;
  std::size_t evicted = 0;
};

/// Bi-objective non-dominated archive, kept strictly sorted by increasing f1
/// (and therefore strictly decreasing f2).  Optionally stores the decision
/// vector of each entry.  Single writer; logarithmic lookup.
class BiArchive {
 public:
  struct Entry {
    ObjectivePair f;
    std::optional<Vector> x;
  };

  /// Rejected if an existing entry weakly dominates f, or if f is within
  /// dup_tol of an existing entry in both components.  All entries dominated
  /// by f are evicted.
  InsertOutcome insert(const ObjectivePair& f,
                       std::optional<Vector> x = std::nullopt,
                       double dup_tol = 0.0);

  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Entry& operator[](std::size_t i) const { return entries_[i]; }
  const std::vector<Entry>& entries() const { return entries_; }

  ObjectivePair min_componentwise() const;
  ObjectivePair max_componentwise() const;

  /// Area of the union of boxes [f1, ref1] x [f2, ref2]; entries at or
  /// beyond the reference point contribute 0.  Exact sorted sweep.
  double hypervolume(const ObjectivePair& ref) const;

  /// Writes `x1,...,xn,f1,f2` rows (17 significant digits, f1-ascending).
  /// Requires stored decision vectors.
  void write_csv(std::ostream& os) const;

 private:
  std::vector<Entry> entries_;
};

/// Reads an archive back from the CSV format written by write_csv.
BiArchive read_archive_csv(std::istream& is);

}  // namespace cobi

#endif  // COBI_ARCHIVE_HPP
