#include "cobi/archive.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace cobi {

Dominance dominates(const ObjectivePair& a, const ObjectivePair& b) {
  if (!std::isfinite(a.f1) || !std::isfinite(a.f2) || !std::isfinite(b.f1) ||
      !std::isfinite(b.f2)) {
    throw ValidationError("dominates: non-finite objective value");
  }
  if (a.f1 == b.f1 && a.f2 == b.f2) return Dominance::WeaklyDominatesEqual;
  if (a.f1 <= b.f1 && a.f2 <= b.f2) return Dominance::Dominates;
  if (b.f1 <= a.f1 && b.f2 <= a.f2) return Dominance::Dominated;
  return Dominance::Incomparable;
}

InsertOutcome BiArchive::insert(const ObjectivePair& f,
                                std::optional<Vector> x, double dup_tol) {
  if (!std::isfinite(f.f1) || !std::isfinite(f.f2)) {
    throw ValidationError("BiArchive::insert: non-finite objective value");
  }
  // First index with f1 strictly greater than the candidate's.
  auto gt = std::upper_bound(
      entries_.begin(), entries_.end(), f,
      [](const ObjectivePair& v, const Entry& e) { return v.f1 < e.f.f1; });
  // The entry just left of `gt` has the smallest f2 among all entries with
  // e.f1 <= f.f1; it weakly dominates the candidate iff its f2 <= f.f2.
  if (gt != entries_.begin() && std::prev(gt)->f.f2 <= f.f2) {
    return {};
  }
  if (dup_tol > 0.0) {
    for (auto it = gt; it != entries_.begin();) {
      --it;
      if (f.f1 - it->f.f1 > dup_tol) break;
      if (std::abs(it->f.f2 - f.f2) <= dup_tol) return {};
    }
    for (auto it = gt; it != entries_.end(); ++it) {
      if (it->f.f1 - f.f1 > dup_tol) break;
      if (std::abs(it->f.f2 - f.f2) <= dup_tol) return {};
    }
  }
  // Entries dominated by the candidate: f1 >= cand.f1 and f2 >= cand.f2.
  // They form a contiguous run starting at the first entry with f1 >= cand.f1.
  auto ge = std::lower_bound(
      entries_.begin(), entries_.end(), f,
      [](const Entry& e, const ObjectivePair& v) { return e.f.f1 < v.f1; });
  auto end_evict = ge;
  while (end_evict != entries_.end() && end_evict->f.f2 >= f.f2) ++end_evict;
  InsertOutcome out;
  out.evicted = static_cast<std::size_t>(end_evict - ge);
  auto pos = entries_.erase(ge, end_evict);
  entries_.insert(pos, Entry{f, std::move(x)});
  out.inserted = true;
  return out;
}

ObjectivePair BiArchive::min_componentwise() const {
  if (entries_.empty()) {
    throw ValidationError("BiArchive: empty archive has no extremes");
  }
  return {entries_.front().f.f1, entries_.back().f.f2};
}

ObjectivePair BiArchive::max_componentwise() const {
  if (entries_.empty()) {
    throw ValidationError("BiArchive: empty archive has no extremes");
  }
  return {entries_.back().f.f1, entries_.front().f.f2};
}

double BiArchive::hypervolume(const ObjectivePair& ref) const {
  double hv = 0.0;
  double prev_f2 = ref.f2;
  for (const auto& e : entries_) {
    if (e.f.f1 >= ref.f1 || e.f.f2 >= prev_f2) continue;
    hv += (ref.f1 - e.f.f1) * (prev_f2 - e.f.f2);
    prev_f2 = e.f.f2;
  }
  return hv;
}

void BiArchive::write_csv(std::ostream& os) const {
  Eigen::Index n = 0;
  for (const auto& e : entries_) {
    if (!e.x) {
      throw ValidationError("BiArchive::write_csv: entry without decision vector");
    }
    n = e.x->size();
  }
  os << "";
  std::string header;
  for (Eigen::Index i = 0; i < n; ++i) {
    header += "x" + std::to_string(i + 1) + ",";
  }
  os << header << "f1,f2\n";
  char buf[40];
  for (const auto& e : entries_) {
    for (Eigen::Index i = 0; i < e.x->size(); ++i) {
      std::snprintf(buf, sizeof(buf), "%.17g", (*e.x)[i]);
      os << buf << ',';
    }
    std::snprintf(buf, sizeof(buf), "%.17g", e.f.f1);
    os << buf << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", e.f.f2);
    os << buf << '\n';
  }
}

BiArchive read_archive_csv(std::istream& is) {
  BiArchive arch;
  std::string line;
  if (!std::getline(is, line)) {
    throw ValidationError("read_archive_csv: empty file");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> vals;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) vals.push_back(std::stod(tok));
    if (vals.size() < 2) {
      throw ValidationError("read_archive_csv: malformed row: " + line);
    }
    Vector x(static_cast<Eigen::Index>(vals.size()) - 2);
    for (Eigen::Index i = 0; i < x.size(); ++i) x[i] = vals[i];
    arch.insert({vals[vals.size() - 2], vals[vals.size() - 1]}, x);
  }
  return arch;
}

}  // namespace cobi
