#include "ulpa/setalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "ulpa/errors.hpp"

namespace ulpa {

namespace {

constexpr std::uint64_t kMaxCombinedPeriod = 1u << 20;

std::uint64_t checked_lcm(std::uint64_t a, std::uint64_t b) {
  std::uint64_t l = std::lcm(a, b);
  if (l > kMaxCombinedPeriod) throw InvalidInput("combined period too large");
  return l;
}

}  // namespace

AlgebraContext AlgebraContext::make(Universe u, std::vector<UPSet> generators) {
  if (generators.size() > 20)
    throw InvalidInput("too many generators for cell decomposition");
  AlgebraContext ctx;
  ctx.universe_ = u;
  ctx.generators_ = std::move(generators);
  for (const auto& g : ctx.generators_) {
    ctx.common_threshold_ = std::max(ctx.common_threshold_, g.threshold());
    ctx.common_period_ = checked_lcm(ctx.common_period_, g.period());
  }
  const int k = static_cast<int>(ctx.generators_.size());
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    Cell cell;
    UPSet set;
    bool first = true;
    for (int i = 0; i < k; ++i) {
      if (mask & (1u << i)) {
        cell.members.push_back(i);
        set = first ? ctx.generators_[i] : set.intersect(ctx.generators_[i]);
        first = false;
      }
    }
    for (int i = 0; i < k; ++i)
      if (!(mask & (1u << i))) set = set.minus(ctx.generators_[i]);
    if (set.is_empty()) continue;
    cell.set = std::move(set);
    ctx.cells_.push_back(std::move(cell));
  }
  return ctx;
}

MembershipCertificate in_generated_algebra(const AlgebraContext& ctx,
                                           const UPSet& x) {
  MembershipCertificate cert;
  const std::uint64_t p = checked_lcm(ctx.common_period(), x.period());
  cert.modulus = p;
  // Representative point per residue class, past every threshold in sight.
  std::uint64_t top = std::max(ctx.common_threshold(), x.threshold());
  for (const auto& c : ctx.cells()) top = std::max(top, c.set.threshold());
  const std::uint64_t base = ((top + p - 1) / p) * p;

  auto eventual = [&](const UPSet& s, std::uint64_t r) {
    return s.contains(base + r);
  };

  // Which cell eventually owns each residue class (cells are disjoint).
  std::vector<int> owner(p, -1);
  for (int ci = 0; ci < static_cast<int>(ctx.cells().size()); ++ci)
    for (std::uint64_t r = 0; r < p; ++r)
      if (eventual(ctx.cells()[ci].set, r)) owner[r] = ci;

  std::vector<bool> chosen(ctx.cells().size(), false);
  for (std::uint64_t r = 0; r < p; ++r) {
    if (!eventual(x, r)) continue;
    if (owner[r] < 0) {
      cert.residue = r;
      return cert;  // class of x outside every cell
    }
    chosen[owner[r]] = true;
  }
  for (std::size_t ci = 0; ci < chosen.size(); ++ci) {
    if (!chosen[ci]) continue;
    for (std::uint64_t r = 0; r < p; ++r) {
      if (eventual(ctx.cells()[ci].set, r) && !eventual(x, r)) {
        // The owning cell spills outside x; find a class of x it covers.
        for (std::uint64_t rx = 0; rx < p; ++rx)
          if (owner[rx] == static_cast<int>(ci) && eventual(x, rx))
            cert.residue = rx;
        cert.conflicting_residue = r;
        return cert;
      }
    }
  }

  cert.member = true;
  UPSet u;
  for (std::size_t ci = 0; ci < chosen.size(); ++ci)
    if (chosen[ci]) {
      cert.cell_indices.push_back(static_cast<int>(ci));
      u = u.unite(ctx.cells()[ci].set);
    }
  cert.added = x.minus(u);
  cert.removed = u.minus(x);
  if (cert.added.cardinality().infinite || cert.removed.cardinality().infinite)
    throw std::logic_error("internal: infinite adjustment in membership cert");
  return cert;
}

bool whole_vertex_set_in_G0(const AlgebraContext& ctx) {
  return in_generated_algebra(ctx, ctx.universe().to_upset()).member;
}

std::vector<bool> signature(std::uint64_t v, const std::vector<UPSet>& xs) {
  std::vector<bool> sig(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) sig[i] = xs[i].contains(v);
  return sig;
}

IndistinguishablePair indistinguishable_pair(const AlgebraContext& ctx,
                                             const std::vector<UPSet>& xs,
                                             const UPSet& S, const UPSet& A) {
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!in_generated_algebra(ctx, xs[i]).member)
      throw PreconditionViolated("X_list[" + std::to_string(i) +
                                 "] is not in the generated set algebra");
  if (!in_generated_algebra(ctx, A).member)
    throw PreconditionViolated("A is not in the generated set algebra");
  const UPSet in_s = A.intersect(S);
  const UPSet out_s = A.minus(S);
  if (!in_s.cardinality().infinite)
    throw PreconditionViolated("A ∩ S is finite");
  if (!out_s.cardinality().infinite)
    throw PreconditionViolated("A \\ S is finite");
  if (in_generated_algebra(ctx, in_s).member)
    throw PreconditionViolated("A ∩ S is in the generated set algebra");

  // Past `start`, every input set is purely periodic with period dividing l;
  // a matching pair is then guaranteed within two full periods.
  std::uint64_t start = std::max(A.threshold(), S.threshold());
  std::uint64_t l = checked_lcm(A.period(), S.period());
  for (const auto& x : xs) {
    start = std::max(start, x.threshold());
    l = checked_lcm(l, x.period());
  }
  const std::uint64_t bound = start + 4 * l + 4;
  for (std::uint64_t s = start; s <= bound; ++s) {
    if (!in_s.contains(s)) continue;
    const auto sig_s = signature(s, xs);
    for (std::uint64_t t = start; t <= bound; ++t)
      if (out_s.contains(t) && signature(t, xs) == sig_s) return {s, t};
  }
  throw std::logic_error("internal: indistinguishable pair search exhausted");
}

}  // namespace ulpa
