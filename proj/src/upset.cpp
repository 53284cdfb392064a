#include "ulpa/upset.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ulpa/errors.hpp"

namespace ulpa {

namespace {

constexpr std::uint64_t kMaxPeriod = 1u << 20;

std::vector<std::uint64_t> sorted_unique(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

std::string join(const std::vector<std::uint64_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os.str();
}

}  // namespace

bool UPSet::residue_member(std::uint64_t r) const {
  return std::binary_search(residues_.begin(), residues_.end(), r);
}

bool UPSet::contains(std::uint64_t n) const {
  if (n < threshold_)
    return std::binary_search(finite_.begin(), finite_.end(), n);
  return residue_member(n % period_);
}

void UPSet::canonicalize() {
  // Minimal eventual period divides the current one; scan divisors upward and
  // take the first shift that leaves the residue set invariant.
  for (std::uint64_t d = 1; d < period_; ++d) {
    if (period_ % d) continue;
    bool invariant = true;
    for (std::uint64_t r = 0; r < period_ && invariant; ++r)
      if (residue_member(r) != residue_member((r + d) % period_))
        invariant = false;
    if (invariant) {
      std::vector<std::uint64_t> nr;
      for (std::uint64_t r = 0; r < d; ++r)
        if (residue_member(r)) nr.push_back(r);
      period_ = d;
      residues_ = std::move(nr);
      break;
    }
  }
  // Lower the threshold while the element just below it already follows the
  // periodic pattern.
  while (threshold_ > 0) {
    std::uint64_t n = threshold_ - 1;
    bool in_finite = !finite_.empty() && finite_.back() == n;
    bool predicted = residue_member(n % period_);
    if (in_finite != predicted) break;
    if (in_finite) finite_.pop_back();
    threshold_ = n;
  }
}

UPSet UPSet::empty() { return UPSet{}; }

UPSet UPSet::all() {
  UPSet s;
  s.residues_ = {0};
  return s;
}

UPSet UPSet::singleton(std::uint64_t v) { return finite_set({v}); }

UPSet UPSet::finite_set(std::vector<std::uint64_t> elems) {
  UPSet s;
  s.finite_ = sorted_unique(std::move(elems));
  s.threshold_ = s.finite_.empty() ? 0 : s.finite_.back() + 1;
  return s;
}

UPSet UPSet::below(std::uint64_t bound) {
  std::vector<std::uint64_t> v(bound);
  std::iota(v.begin(), v.end(), 0);
  return finite_set(std::move(v));
}

UPSet UPSet::cofinite(std::vector<std::uint64_t> excluded) {
  auto ex = sorted_unique(std::move(excluded));
  UPSet s;
  s.residues_ = {0};
  s.threshold_ = ex.empty() ? 0 : ex.back() + 1;
  for (std::uint64_t n = 0; n < s.threshold_; ++n)
    if (!std::binary_search(ex.begin(), ex.end(), n)) s.finite_.push_back(n);
  s.canonicalize();
  return s;
}

UPSet UPSet::periodic(std::uint64_t threshold, std::uint64_t period,
                      std::vector<std::uint64_t> residues,
                      std::vector<std::uint64_t> extra) {
  if (period == 0) throw InvalidInput("period must be positive");
  if (period > kMaxPeriod) throw InvalidInput("period too large");
  UPSet s;
  s.period_ = period;
  for (auto r : residues)
    if (r >= period) throw InvalidInput("residue not below period");
  s.residues_ = sorted_unique(std::move(residues));
  auto ex = sorted_unique(std::move(extra));
  std::uint64_t bound = threshold;
  if (!ex.empty()) bound = std::max(bound, ex.back() + 1);
  s.threshold_ = bound;
  for (std::uint64_t n = 0; n < bound; ++n) {
    bool member = std::binary_search(ex.begin(), ex.end(), n) ||
                  (n >= threshold && s.residue_member(n % period));
    if (member) s.finite_.push_back(n);
  }
  s.canonicalize();
  return s;
}

CardinalityClass UPSet::cardinality() const {
  if (!residues_.empty()) return {true, 0};
  return {false, finite_.size()};
}

UPSet UPSet::combine(const UPSet& a, const UPSet& b, bool (*op)(bool, bool)) {
  std::uint64_t p = std::lcm(a.period_, b.period_);
  if (p > kMaxPeriod) throw InvalidInput("combined period too large");
  UPSet s;
  s.period_ = p;
  for (std::uint64_t r = 0; r < p; ++r)
    if (op(a.residue_member(r % a.period_), b.residue_member(r % b.period_)))
      s.residues_.push_back(r);
  s.threshold_ = std::max(a.threshold_, b.threshold_);
  for (std::uint64_t n = 0; n < s.threshold_; ++n)
    if (op(a.contains(n), b.contains(n))) s.finite_.push_back(n);
  s.canonicalize();
  return s;
}

UPSet UPSet::unite(const UPSet& o) const {
  return combine(*this, o, [](bool x, bool y) { return x || y; });
}

UPSet UPSet::intersect(const UPSet& o) const {
  return combine(*this, o, [](bool x, bool y) { return x && y; });
}

UPSet UPSet::minus(const UPSet& o) const {
  return combine(*this, o, [](bool x, bool y) { return x && !y; });
}

std::optional<std::uint64_t> UPSet::min_element() const {
  // Finite members all lie below the threshold, periodic ones above it.
  if (!finite_.empty()) return finite_.front();
  if (residues_.empty()) return std::nullopt;
  std::uint64_t n = threshold_;
  while (!contains(n)) ++n;
  return n;
}

std::vector<std::uint64_t> UPSet::first_elements(std::size_t k) const {
  std::vector<std::uint64_t> out;
  if (k == 0 || is_empty()) return out;
  for (auto v : finite_) {
    out.push_back(v);
    if (out.size() == k) return out;
  }
  if (residues_.empty()) return out;
  for (std::uint64_t n = threshold_; out.size() < k; ++n)
    if (residue_member(n % period_)) out.push_back(n);
  return out;
}

std::vector<std::uint64_t> UPSet::elements() const {
  if (!residues_.empty())
    throw InvalidInput("elements() on an infinite set");
  return finite_;
}

std::string UPSet::to_string() const {
  if (is_empty()) return "empty";
  if (residues_.empty()) return "{" + join(finite_) + "}";
  if (period_ == 1) {
    // Cofinite: the exceptions are the gaps below the threshold.
    if (threshold_ == 0) return "all";
    std::vector<std::uint64_t> gaps;
    for (std::uint64_t n = 0; n < threshold_; ++n)
      if (!std::binary_search(finite_.begin(), finite_.end(), n))
        gaps.push_back(n);
    return "cofinite{" + join(gaps) + "}";
  }
  std::ostringstream os;
  os << "periodic(N=" << threshold_ << ", p=" << period_ << ", r={"
     << join(residues_) << "}";
  if (!finite_.empty()) os << ", extra={" << join(finite_) << "}";
  os << ")";
  return os.str();
}

}  // namespace ulpa
