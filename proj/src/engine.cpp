#include "ulpa/engine.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "ulpa/errors.hpp"
#include "ulpa/setalg.hpp"

namespace ulpa {

namespace {
constexpr std::size_t kMaxDim = 100000;

void check_shapes(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.blocks.size() != b.blocks.size())
    throw std::logic_error("algebra elements from different models");
}

}  // namespace

bool AlgebraElement::is_zero() const {
  for (const auto& m : blocks)
    if (!m.is_zero()) return false;
  return true;
}

AlgebraElement ae_add(const AlgebraElement& a, const AlgebraElement& b) {
  check_shapes(a, b);
  AlgebraElement r;
  for (std::size_t i = 0; i < a.blocks.size(); ++i)
    r.blocks.push_back(a.blocks[i] + b.blocks[i]);
  return r;
}

AlgebraElement ae_sub(const AlgebraElement& a, const AlgebraElement& b) {
  check_shapes(a, b);
  AlgebraElement r;
  for (std::size_t i = 0; i < a.blocks.size(); ++i)
    r.blocks.push_back(a.blocks[i] - b.blocks[i]);
  return r;
}

AlgebraElement ae_mul(const AlgebraElement& a, const AlgebraElement& b) {
  check_shapes(a, b);
  AlgebraElement r;
  for (std::size_t i = 0; i < a.blocks.size(); ++i)
    r.blocks.push_back(a.blocks[i] * b.blocks[i]);
  return r;
}

AlgebraElement ae_neg(const AlgebraElement& a) {
  AlgebraElement r;
  for (const auto& m : a.blocks)
    r.blocks.push_back(Mat::zero(m.a.empty() ? FieldDescriptor{}
                                             : m.a.front().field(),
                                 m.rows, m.cols) -
                       m);
  return r;
}

AlgebraElement ae_scale(const Scalar& s, const AlgebraElement& a) {
  AlgebraElement r;
  for (const auto& m : a.blocks) r.blocks.push_back(m.scaled(s));
  return r;
}

AlgebraElement ae_involute(const AlgebraElement& a) {
  AlgebraElement r;
  for (const auto& m : a.blocks) r.blocks.push_back(m.transpose());
  return r;
}

Representation Representation::build(const Ultragraph& g, FieldDescriptor k) {
  auto violations = validate(g);
  if (!violations.empty()) throw InvalidInput(violations.front().what);
  if (!g.universe.finite)
    throw NotFiniteAcyclic("the vertex universe is infinite");
  if (!find_cycles(g).empty())
    throw NotFiniteAcyclic("the ultragraph has a cycle");

  Representation rep;
  rep.g_ = g;
  rep.k_ = k;

  std::map<std::uint64_t, std::vector<PathPair>> by_sink;
  for (std::uint64_t v = 0; v < g.universe.size; ++v)
    if (g.edges_from(v).empty()) by_sink[v] = {};
  // Acyclic: no path repeats an edge, so the edge count bounds path length.
  for (std::uint64_t v = 0; v < g.universe.size; ++v)
    for (const Path& p : enumerate_paths(g, v, g.edges.size())) {
      UPSet r = path_range(g, p);
      for (auto& [w, pairs] : by_sink)
        if (r.contains(w)) pairs.push_back(PathPair{p, w});
    }
  for (auto& [w, pairs] : by_sink) {
    std::sort(pairs.begin(), pairs.end(),
              [&](const PathPair& a, const PathPair& b) {
                if (a.alpha.length() != b.alpha.length())
                  return a.alpha.length() < b.alpha.length();
                std::vector<std::string> ia, ib;
                for (int e : a.alpha.edges) ia.push_back(g.edges[e].id);
                for (int e : b.alpha.edges) ib.push_back(g.edges[e].id);
                if (ia != ib) return ia < ib;
                return a.alpha.start < b.alpha.start;
              });
    rep.blocks_.push_back(Block{w, pairs});
  }
  rep.offsets_.clear();
  rep.dim_ = 0;
  for (const Block& b : rep.blocks_) {
    rep.offsets_.push_back(rep.dim_);
    rep.dim_ += b.n() * b.n();
  }
  if (rep.dim_ > kMaxDim) throw InvalidInput("matrix model too large");
  return rep;
}

AlgebraElement Representation::zero() const {
  AlgebraElement x;
  for (const Block& b : blocks_) x.blocks.push_back(Mat::zero(k_, b.n(), b.n()));
  return x;
}

AlgebraElement Representation::identity() const {
  AlgebraElement x;
  for (const Block& b : blocks_) x.blocks.push_back(Mat::identity(k_, b.n()));
  return x;
}

namespace {

std::uint64_t pair_source(const Ultragraph& g, const PathPair& p) {
  return path_source(g, p.alpha);
}

}  // namespace

AlgebraElement Representation::edge_op(int edge_index) const {
  if (edge_index < 0 || edge_index >= static_cast<int>(g_.edges.size()))
    throw InvalidInput("edge index out of range");
  const Edge& e = g_.edges[edge_index];
  AlgebraElement x = zero();
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    // Index pairs of this block by their path for the extension lookup.
    std::map<std::pair<std::uint64_t, std::vector<int>>, std::size_t> index;
    for (std::size_t i = 0; i < blocks_[b].pairs.size(); ++i) {
      const Path& a = blocks_[b].pairs[i].alpha;
      index[{a.start, a.edges}] = i;
    }
    for (std::size_t j = 0; j < blocks_[b].pairs.size(); ++j) {
      const PathPair& p = blocks_[b].pairs[j];
      if (!e.range.contains(pair_source(g_, p))) continue;
      Path ext{e.source, {edge_index}};
      ext.edges.insert(ext.edges.end(), p.alpha.edges.begin(),
                       p.alpha.edges.end());
      auto it = index.find({ext.start, ext.edges});
      if (it == index.end())
        throw std::logic_error("internal: extended pair missing from basis");
      x.blocks[b].at(it->second, j) = Scalar::one(k_);
    }
  }
  return x;
}

AlgebraElement Representation::edge_op_star(int edge_index) const {
  return ae_involute(edge_op(edge_index));
}

AlgebraElement Representation::vertex_set_op(const UPSet& a) const {
  AlgebraElement x = zero();
  for (std::size_t b = 0; b < blocks_.size(); ++b)
    for (std::size_t j = 0; j < blocks_[b].pairs.size(); ++j)
      if (a.contains(pair_source(g_, blocks_[b].pairs[j])))
        x.blocks[b].at(j, j) = Scalar::one(k_);
  return x;
}

AlgebraElement Representation::path_op(const Path& alpha) const {
  if (!path_valid(g_, alpha)) throw InvalidInput("invalid path");
  if (alpha.zero_length())
    return vertex_set_op(UPSet::singleton(alpha.start));
  AlgebraElement x = edge_op(alpha.edges.front());
  for (std::size_t i = 1; i < alpha.edges.size(); ++i)
    x = ae_mul(x, edge_op(alpha.edges[i]));
  return x;
}

AlgebraElement Representation::monomial(const Path& alpha, const UPSet& a,
                                        const Path& beta) const {
  return ae_mul(ae_mul(path_op(alpha), vertex_set_op(a)),
                ae_involute(path_op(beta)));
}

Vec Representation::flatten(const AlgebraElement& x) const {
  Vec v(dim_, Scalar::zero(k_));
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const std::size_t n = blocks_[b].n();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        v[offsets_[b] + i * n + j] = x.blocks[b].at(i, j);
  }
  return v;
}

AlgebraElement Representation::unflatten(const Vec& v) const {
  if (v.size() != dim_) throw std::logic_error("flattened size mismatch");
  AlgebraElement x = zero();
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const std::size_t n = blocks_[b].n();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        x.blocks[b].at(i, j) = v[offsets_[b] + i * n + j];
  }
  return x;
}

AlgebraElement Representation::coordinate_element(std::size_t k) const {
  Vec v(dim_, Scalar::zero(k_));
  v.at(k) = Scalar::one(k_);
  return unflatten(v);
}

int Representation::coord_degree(std::size_t block, std::size_t i,
                                 std::size_t j) const {
  const Block& b = blocks_[block];
  return static_cast<int>(b.pairs[i].alpha.length()) -
         static_cast<int>(b.pairs[j].alpha.length());
}

std::map<int, AlgebraElement> Representation::degree_decompose(
    const AlgebraElement& x) const {
  std::map<int, AlgebraElement> out;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const std::size_t n = blocks_[b].n();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Scalar& s = x.blocks[b].at(i, j);
        if (s.is_zero()) continue;
        int d = coord_degree(b, i, j);
        auto it = out.find(d);
        if (it == out.end()) it = out.emplace(d, zero()).first;
        it->second.blocks[b].at(i, j) = s;
      }
  }
  return out;
}

AlgebraElement Representation::degree_component(const AlgebraElement& x,
                                                int d) const {
  AlgebraElement out = zero();
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const std::size_t n = blocks_[b].n();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (coord_degree(b, i, j) == d)
          out.blocks[b].at(i, j) = x.blocks[b].at(i, j);
  }
  return out;
}

std::optional<int> Representation::homogeneous_degree(
    const AlgebraElement& x) const {
  std::optional<int> deg;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const std::size_t n = blocks_[b].n();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (x.blocks[b].at(i, j).is_zero()) continue;
        int d = coord_degree(b, i, j);
        if (deg && *deg != d) return std::nullopt;
        deg = d;
      }
  }
  return deg ? deg : std::optional<int>(0);
}

std::optional<std::string> verify_ck(const Representation& rep) {
  const Ultragraph& g = rep.graph();
  std::vector<UPSet> fam{UPSet::empty(), g.universe.to_upset()};
  for (std::uint64_t v = 0; v < g.universe.size; ++v)
    fam.push_back(UPSet::singleton(v));
  for (const Edge& e : g.edges) fam.push_back(e.range);
  for (const auto& cell : range_context(g).cells()) fam.push_back(cell.set);

  if (!rep.vertex_set_op(UPSet::empty()).is_zero())
    return "p(empty) is not zero";
  for (const UPSet& a : fam)
    for (const UPSet& b : fam) {
      AlgebraElement pa = rep.vertex_set_op(a), pb = rep.vertex_set_op(b);
      if (ae_mul(pa, pb) != rep.vertex_set_op(a.intersect(b)))
        return "p(A)p(B) != p(A intersect B) for A=" + a.to_string() +
               ", B=" + b.to_string();
      if (rep.vertex_set_op(a.unite(b)) !=
          ae_sub(ae_add(pa, pb), rep.vertex_set_op(a.intersect(b))))
        return "p(A union B) != p(A)+p(B)-p(A intersect B) for A=" +
               a.to_string() + ", B=" + b.to_string();
    }
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    AlgebraElement se = rep.edge_op(static_cast<int>(e));
    AlgebraElement ses = ae_involute(se);
    AlgebraElement ps = rep.vertex_set_op(UPSet::singleton(g.edges[e].source));
    AlgebraElement pr = rep.vertex_set_op(g.edges[e].range);
    if (ae_mul(ps, se) != se || ae_mul(se, pr) != se)
      return "p(s(e)) s_e = s_e p(r(e)) = s_e fails for " + g.edges[e].id;
    if (ae_mul(pr, ses) != ses || ae_mul(ses, ps) != ses)
      return "p(r(e)) s_e* = s_e* p(s(e)) = s_e* fails for " + g.edges[e].id;
  }
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    for (std::size_t f = 0; f < g.edges.size(); ++f) {
      AlgebraElement lhs = ae_mul(rep.edge_op_star(static_cast<int>(e)),
                                  rep.edge_op(static_cast<int>(f)));
      AlgebraElement rhs = e == f ? rep.vertex_set_op(g.edges[e].range)
                                  : rep.zero();
      if (lhs != rhs)
        return "s_e* s_f != delta p(r(e)) for " + g.edges[e].id + ", " +
               g.edges[f].id;
    }
  for (std::uint64_t v = 0; v < g.universe.size; ++v) {
    auto out = g.edges_from(v);
    if (out.empty()) continue;  // relation applies to regular vertices only
    AlgebraElement sum = rep.zero();
    for (int e : out) {
      AlgebraElement se = rep.edge_op(e);
      sum = ae_add(sum, ae_mul(se, ae_involute(se)));
    }
    if (sum != rep.vertex_set_op(UPSet::singleton(v)))
      return "p(v) != sum of s_e s_e* over s(e)=v for v=" + std::to_string(v);
  }
  return std::nullopt;
}

namespace {

// Reduced row-space basis of the stacked rows of the given vectors' blocks,
// one matrix (possibly with zero rows removed) per block.
std::vector<Mat> block_row_spaces(const Representation& rep,
                                  const std::vector<Vec>& vectors) {
  const auto& blocks = rep.blocks();
  std::vector<Mat> out;
  std::size_t offset = 0;
  for (const Block& blk : blocks) {
    const std::size_t n = blk.n();
    Mat stack = Mat::zero(rep.field(), vectors.size() * n, n);
    for (std::size_t v = 0; v < vectors.size(); ++v)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          stack.at(v * n + i, j) = vectors[v][offset + i * n + j];
    auto pivots = rref(stack);
    Mat basis = Mat::zero(rep.field(), pivots.size(), n);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      for (std::size_t j = 0; j < n; ++j) basis.at(i, j) = stack.at(i, j);
    out.push_back(std::move(basis));
    offset += n * n;
  }
  return out;
}

// Reduced basis matrices -> reduced global rows, placing each basis vector in
// one row stripe of one block.  Stripes have disjoint support and each stripe
// is reduced, so sorting by leading coordinate yields a reduced basis.
Subspace rows_from_stripes(const Representation& rep,
                           const std::vector<std::vector<Vec>>& per_block) {
  std::vector<Vec> rows;
  std::size_t offset = 0;
  for (std::size_t b = 0; b < rep.blocks().size(); ++b) {
    const std::size_t n = rep.blocks()[b].n();
    for (std::size_t i = 0; i < n; ++i)
      for (const Vec& nu : per_block[b]) {
        Vec v(rep.dim(), Scalar::zero(rep.field()));
        for (std::size_t j = 0; j < n; ++j) v[offset + i * n + j] = nu[j];
        rows.push_back(std::move(v));
      }
    offset += n * n;
  }
  auto lead = [](const Vec& v) {
    std::size_t p = 0;
    while (p < v.size() && v[p].is_zero()) ++p;
    return p;
  };
  std::sort(rows.begin(), rows.end(),
            [&](const Vec& a, const Vec& b) { return lead(a) < lead(b); });
  return Subspace::from_rref_rows(rep.field(), rep.dim(), std::move(rows));
}

std::vector<Vec> reduced_vectors(const FieldDescriptor& f, std::size_t n,
                                 const std::vector<Vec>& vs) {
  Mat m = Mat::zero(f, vs.size(), n);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = vs[i][j];
  auto pivots = rref(m);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < pivots.size(); ++i)
    out.emplace_back(m.a.begin() + i * n, m.a.begin() + (i + 1) * n);
  return out;
}

}  // namespace

Subspace left_annihilator(const Representation& rep,
                          const std::vector<AlgebraElement>& xs) {
  std::vector<std::vector<Vec>> per_block;
  for (std::size_t b = 0; b < rep.blocks().size(); ++b) {
    const std::size_t n = rep.blocks()[b].n();
    // v annihilates every xs block from the left iff stacking the transposed
    // blocks kills v^T.
    Mat stack = Mat::zero(rep.field(), xs.size() * n, n);
    for (std::size_t k = 0; k < xs.size(); ++k) {
      Mat t = xs[k].blocks[b].transpose();
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          stack.at(k * n + i, j) = t.at(i, j);
    }
    per_block.push_back(reduced_vectors(rep.field(), n, nullspace(stack)));
  }
  return rows_from_stripes(rep, per_block);
}

Subspace right_annihilator(const Representation& rep,
                           const std::vector<AlgebraElement>& xs) {
  // Columns of a right annihilator lie in the common right null space.
  std::vector<std::vector<Vec>> per_block;
  for (std::size_t b = 0; b < rep.blocks().size(); ++b) {
    const std::size_t n = rep.blocks()[b].n();
    Mat stack = Mat::zero(rep.field(), xs.size() * n, n);
    for (std::size_t k = 0; k < xs.size(); ++k)
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          stack.at(k * n + i, j) = xs[k].blocks[b].at(i, j);
    per_block.push_back(reduced_vectors(rep.field(), n, nullspace(stack)));
  }
  // Place each null vector into one column stripe.
  std::vector<Vec> rows;
  std::size_t offset = 0;
  for (std::size_t b = 0; b < rep.blocks().size(); ++b) {
    const std::size_t n = rep.blocks()[b].n();
    for (std::size_t j = 0; j < n; ++j)
      for (const Vec& nu : per_block[b]) {
        Vec v(rep.dim(), Scalar::zero(rep.field()));
        for (std::size_t i = 0; i < n; ++i) v[offset + i * n + j] = nu[i];
        rows.push_back(std::move(v));
      }
    offset += n * n;
  }
  auto lead = [](const Vec& v) {
    std::size_t p = 0;
    while (p < v.size() && v[p].is_zero()) ++p;
    return p;
  };
  std::sort(rows.begin(), rows.end(),
            [&](const Vec& a, const Vec& b) { return lead(a) < lead(b); });
  return Subspace::from_rref_rows(rep.field(), rep.dim(), std::move(rows));
}

bool is_left_ideal(const Representation& rep, const Subspace& i) {
  if (i.ambient != rep.dim()) throw std::logic_error("ambient mismatch");
  auto spaces = block_row_spaces(rep, i.rows);
  std::size_t expect = 0;
  for (std::size_t b = 0; b < spaces.size(); ++b)
    expect += rep.blocks()[b].n() * spaces[b].rows;
  return expect == i.dim();
}

bool is_graded_subspace(const Representation& rep, const Subspace& i) {
  for (const Vec& row : i.rows)
    for (const auto& [d, comp] : rep.degree_decompose(rep.unflatten(row)))
      if (!i.contains(rep.flatten(comp))) return false;
  return true;
}

namespace {

void require_left_ideal(const Representation& rep, const Subspace& i) {
  if (!is_left_ideal(rep, i))
    throw NotALeftIdeal("subspace is not closed under left multiplication");
}

// Shared postcondition check for generator searches.
void verify_generator(const Representation& rep, const Subspace& i,
                      const AlgebraElement& e, bool want_projection) {
  if (ae_mul(e, e) != e)
    throw std::logic_error("internal: generator is not idempotent");
  if (want_projection && ae_involute(e) != e)
    throw std::logic_error("internal: generator is not self-adjoint");
  if (!i.contains(rep.flatten(e)))
    throw std::logic_error("internal: generator escapes the ideal");
  for (const Vec& row : i.rows) {
    AlgebraElement x = rep.unflatten(row);
    if (ae_mul(x, e) != x)
      throw std::logic_error("internal: generator does not fix the ideal");
  }
  std::size_t rk = 0;
  for (std::size_t b = 0; b < e.blocks.size(); ++b)
    rk += rep.blocks()[b].n() * rank(e.blocks[b]);
  if (rk != i.dim())
    throw std::logic_error("internal: generated ideal has wrong dimension");
}

}  // namespace

std::optional<AlgebraElement> idempotent_generator(const Representation& rep,
                                                   const Subspace& i) {
  require_left_ideal(rep, i);
  auto spaces = block_row_spaces(rep, i.rows);
  AlgebraElement e = rep.zero();
  for (std::size_t b = 0; b < spaces.size(); ++b) {
    const Mat& r = spaces[b];
    if (r.rows == 0) continue;
    // Any right inverse S of the row basis gives the idempotent S R: its
    // rows stay inside the row space and it fixes every basis row.
    auto s = right_inverse(r);
    if (!s) return std::nullopt;  // unreachable: r has full row rank
    e.blocks[b] = *s * r;
  }
  verify_generator(rep, i, e, false);
  return e;
}

std::optional<AlgebraElement> projection_generator(const Representation& rep,
                                                   const Subspace& i) {
  require_left_ideal(rep, i);
  auto spaces = block_row_spaces(rep, i.rows);
  AlgebraElement e = rep.zero();
  for (std::size_t b = 0; b < spaces.size(); ++b) {
    const Mat& r = spaces[b];
    const std::size_t d = r.rows, n = r.cols;
    if (d == 0) continue;
    // Solve for M (n x d) with R M R = R and (M R)^T = M R; then M R is a
    // self-adjoint idempotent with row space exactly the ideal's.
    const std::size_t unknowns = n * d;
    std::vector<Vec> eq_rows;
    Vec rhs;
    auto var = [&](std::size_t vi, std::size_t vj) { return vi * d + vj; };
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t bb = 0; bb < n; ++bb) {
        Vec row(unknowns, Scalar::zero(rep.field()));
        for (std::size_t vi = 0; vi < n; ++vi)
          for (std::size_t vj = 0; vj < d; ++vj)
            row[var(vi, vj)] =
                row[var(vi, vj)] + r.at(a, vi) * r.at(vj, bb);
        eq_rows.push_back(std::move(row));
        rhs.push_back(r.at(a, bb));
      }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y) {
        Vec row(unknowns, Scalar::zero(rep.field()));
        for (std::size_t vj = 0; vj < d; ++vj) {
          row[var(x, vj)] = row[var(x, vj)] + r.at(vj, y);
          row[var(y, vj)] = row[var(y, vj)] - r.at(vj, x);
        }
        eq_rows.push_back(std::move(row));
        rhs.push_back(Scalar::zero(rep.field()));
      }
    Mat sys = Mat::zero(rep.field(), eq_rows.size(), unknowns);
    for (std::size_t ei = 0; ei < eq_rows.size(); ++ei)
      for (std::size_t ej = 0; ej < unknowns; ++ej)
        sys.at(ei, ej) = eq_rows[ei][ej];
    auto sol = solve(sys, rhs);
    if (!sol) return std::nullopt;
    Mat m = Mat::zero(rep.field(), n, d);
    for (std::size_t vi = 0; vi < n; ++vi)
      for (std::size_t vj = 0; vj < d; ++vj) m.at(vi, vj) = (*sol)[var(vi, vj)];
    e.blocks[b] = m * r;
  }
  verify_generator(rep, i, e, true);
  return e;
}

namespace {

void require_graded(const Representation& rep, const Subspace& i) {
  if (!is_graded_subspace(rep, i))
    throw NotGraded("subspace is not spanned by homogeneous elements");
}

}  // namespace

std::optional<AlgebraElement> graded_idempotent_generator(
    const Representation& rep, const Subspace& i) {
  require_graded(rep, i);
  auto e = idempotent_generator(rep, i);
  if (!e) return std::nullopt;
  // For a graded ideal the degree-zero part of any generator still fixes
  // every homogeneous element, hence the whole ideal.
  AlgebraElement e0 = rep.degree_component(*e, 0);
  verify_generator(rep, i, e0, false);
  return e0;
}

std::optional<AlgebraElement> graded_projection_generator(
    const Representation& rep, const Subspace& i) {
  require_graded(rep, i);
  auto e = projection_generator(rep, i);
  if (!e) return std::nullopt;
  AlgebraElement e0 = rep.degree_component(*e, 0);
  verify_generator(rep, i, e0, true);
  return e0;
}

std::optional<AlgebraElement> graded_vn_regular_witness(
    const Representation& rep, const AlgebraElement& x) {
  auto deg = rep.homogeneous_degree(x);
  if (!deg) throw NotHomogeneous("element mixes degrees");
  AlgebraElement y = rep.zero();
  for (std::size_t b = 0; b < x.blocks.size(); ++b) {
    Mat red = x.blocks[b];
    auto pivots = rref(red);
    const std::size_t rk = pivots.size(), n = red.cols;
    if (rk == 0) continue;
    // Rank factorization x = C F: F = reduced rows, C = pivot-column entries.
    Mat f = Mat::zero(rep.field(), rk, n);
    for (std::size_t i = 0; i < rk; ++i)
      for (std::size_t j = 0; j < n; ++j) f.at(i, j) = red.at(i, j);
    Mat c = Mat::zero(rep.field(), n, rk);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < rk; ++k)
        c.at(i, k) = x.blocks[b].at(i, pivots[k]);
    auto fr = right_inverse(f);
    auto cl = left_inverse(c);
    if (!fr || !cl)
      throw std::logic_error("internal: rank factors lost full rank");
    y.blocks[b] = *fr * *cl;
  }
  // Distinct degree components of x y' x cannot cancel, so the component of
  // y' at the mirrored degree already satisfies the identity.
  AlgebraElement y0 = rep.degree_component(y, -*deg);
  if (ae_mul(x, ae_mul(y0, x)) != x)
    throw std::logic_error("internal: regularity witness fails the identity");
  return y0;
}

PositiveDefiniteResult positive_definite_probe(const Representation& rep,
                                               int trials,
                                               std::uint64_t seed) {
  if (rep.dim() == 0) return {true, {}};
  if (rep.field().kind == FieldDescriptor::Kind::prime) {
    std::vector<AlgebraElement> ce;
    for (const Scalar& s : field_pd_witness(rep.field()))
      ce.push_back(ae_scale(s, rep.identity()));
    AlgebraElement sum = rep.zero();
    for (const AlgebraElement& x : ce)
      sum = ae_add(sum, ae_mul(x, ae_involute(x)));
    if (!sum.is_zero())
      throw std::logic_error("internal: prime-field witness does not vanish");
    return {false, ce};
  }
  std::mt19937_64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    std::vector<AlgebraElement> xs;
    bool any = false;
    for (int k = 0; k < 3; ++k) {
      Vec v(rep.dim(), Scalar::zero(rep.field()));
      for (auto& s : v) {
        long val = static_cast<long>(rng() % 5) - 2;
        s = Scalar::of_int(rep.field(), val);
        if (val != 0) any = true;
      }
      xs.push_back(rep.unflatten(v));
    }
    if (!any) continue;
    AlgebraElement sum = rep.zero();
    for (const AlgebraElement& x : xs)
      sum = ae_add(sum, ae_mul(x, ae_involute(x)));
    // Over the rationals the diagonal of x x^T accumulates squares, so the
    // sum can only vanish when every term does.
    if (sum.is_zero()) return {false, xs};
  }
  return {true, {}};
}

Corner make_corner(const Representation& rep, const AlgebraElement& u) {
  if (ae_mul(u, u) != u) throw NotIdempotent("corner unit is not idempotent");
  std::vector<Vec> gens;
  for (std::size_t k = 0; k < rep.dim(); ++k)
    gens.push_back(rep.flatten(
        ae_mul(ae_mul(u, rep.coordinate_element(k)), u)));
  return Corner{u, Subspace::from_vectors(rep.field(), rep.dim(), gens)};
}

Subspace corner_left_annihilator(const Representation& rep, const Corner& c,
                                 const std::vector<AlgebraElement>& xs) {
  const std::size_t k = c.space.dim();
  std::vector<AlgebraElement> basis;
  for (const Vec& row : c.space.rows) basis.push_back(rep.unflatten(row));
  Mat sys = Mat::zero(rep.field(), rep.dim() * xs.size(), k);
  for (std::size_t bx = 0; bx < xs.size(); ++bx)
    for (std::size_t j = 0; j < k; ++j) {
      Vec col = rep.flatten(ae_mul(basis[j], xs[bx]));
      for (std::size_t i = 0; i < rep.dim(); ++i)
        sys.at(bx * rep.dim() + i, j) = col[i];
    }
  std::vector<Vec> out;
  for (const Vec& t : nullspace(sys)) {
    Vec v(rep.dim(), Scalar::zero(rep.field()));
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < rep.dim(); ++i)
        v[i] = v[i] + t[j] * c.space.rows[j][i];
    out.push_back(std::move(v));
  }
  return Subspace::from_vectors(rep.field(), rep.dim(), out);
}

std::optional<AlgebraElement> corner_idempotent_generator(
    const Representation& rep, const Corner& c, const Subspace& i) {
  if (!c.space.contains_all(i))
    throw NotALeftIdeal("subspace leaves the corner");
  std::vector<AlgebraElement> corner_basis, ideal_basis;
  for (const Vec& row : c.space.rows) corner_basis.push_back(rep.unflatten(row));
  for (const Vec& row : i.rows) ideal_basis.push_back(rep.unflatten(row));
  for (const AlgebraElement& cb : corner_basis)
    for (const AlgebraElement& ib : ideal_basis)
      if (!i.contains(rep.flatten(ae_mul(cb, ib))))
        throw NotALeftIdeal(
            "subspace is not closed under corner multiplication");
  const std::size_t k = i.dim();
  if (k == 0) return rep.zero();
  // e = sum t_j i_j with i_k e = i_k for every basis vector.
  Mat sys = Mat::zero(rep.field(), rep.dim() * k, k);
  Vec rhs(rep.dim() * k, Scalar::zero(rep.field()));
  for (std::size_t a = 0; a < k; ++a) {
    Vec want = rep.flatten(ideal_basis[a]);
    for (std::size_t i2 = 0; i2 < rep.dim(); ++i2)
      rhs[a * rep.dim() + i2] = want[i2];
    for (std::size_t j = 0; j < k; ++j) {
      Vec col = rep.flatten(ae_mul(ideal_basis[a], ideal_basis[j]));
      for (std::size_t i2 = 0; i2 < rep.dim(); ++i2)
        sys.at(a * rep.dim() + i2, j) = col[i2];
    }
  }
  auto sol = solve(sys, rhs);
  if (!sol) return std::nullopt;
  AlgebraElement e = rep.zero();
  for (std::size_t j = 0; j < k; ++j)
    e = ae_add(e, ae_scale((*sol)[j], ideal_basis[j]));
  if (ae_mul(e, e) != e || !i.contains(rep.flatten(e)))
    throw std::logic_error("internal: corner generator postcondition failed");
  for (const AlgebraElement& ib : ideal_basis)
    if (ae_mul(ib, e) != ib)
      throw std::logic_error("internal: corner generator does not fix ideal");
  std::vector<Vec> span;
  for (const AlgebraElement& cb : corner_basis)
    span.push_back(rep.flatten(ae_mul(cb, e)));
  if (!(Subspace::from_vectors(rep.field(), rep.dim(), span) == i))
    throw std::logic_error("internal: corner generator spans the wrong ideal");
  return e;
}

ProductRepresentation product_build(const Ultragraph& g,
                                    const RingDescriptor& r) {
  if (r.factors.empty()) throw InvalidInput("ring needs at least one factor");
  ProductRepresentation pr;
  pr.ring = r;
  for (const FieldDescriptor& f : r.factors)
    pr.factors.push_back(Representation::build(g, f));
  return pr;
}

namespace {

void check_parts(const ProductRepresentation& pr, const ProductElement& x) {
  if (x.parts.size() != pr.factors.size())
    throw std::logic_error("product element arity mismatch");
}

}  // namespace

ProductElement pe_add(const ProductElement& a, const ProductElement& b) {
  ProductElement r;
  for (std::size_t i = 0; i < a.parts.size(); ++i)
    r.parts.push_back(ae_add(a.parts[i], b.parts[i]));
  return r;
}

ProductElement pe_mul(const ProductElement& a, const ProductElement& b) {
  ProductElement r;
  for (std::size_t i = 0; i < a.parts.size(); ++i)
    r.parts.push_back(ae_mul(a.parts[i], b.parts[i]));
  return r;
}

ProductElement pe_involute(const ProductElement& a) {
  ProductElement r;
  for (const auto& p : a.parts) r.parts.push_back(ae_involute(p));
  return r;
}

std::optional<int> product_homogeneous_degree(const ProductRepresentation& pr,
                                              const ProductElement& x) {
  check_parts(pr, x);
  std::optional<int> deg;
  for (std::size_t i = 0; i < x.parts.size(); ++i) {
    auto d = pr.factors[i].homogeneous_degree(x.parts[i]);
    if (!d) return std::nullopt;
    if (x.parts[i].is_zero()) continue;  // zero fits any degree
    if (deg && *deg != *d) return std::nullopt;
    deg = d;
  }
  return deg ? deg : std::optional<int>(0);
}

std::vector<Subspace> product_left_annihilator(
    const ProductRepresentation& pr, const std::vector<ProductElement>& xs) {
  std::vector<Subspace> out;
  for (std::size_t i = 0; i < pr.factors.size(); ++i) {
    std::vector<AlgebraElement> part;
    for (const ProductElement& x : xs) {
      check_parts(pr, x);
      part.push_back(x.parts[i]);
    }
    out.push_back(left_annihilator(pr.factors[i], part));
  }
  return out;
}

std::optional<ProductElement> product_idempotent_generator(
    const ProductRepresentation& pr, const std::vector<Subspace>& ideals) {
  if (ideals.size() != pr.factors.size())
    throw std::logic_error("one ideal per ring factor expected");
  ProductElement e;
  for (std::size_t i = 0; i < pr.factors.size(); ++i) {
    auto g = idempotent_generator(pr.factors[i], ideals[i]);
    if (!g) return std::nullopt;
    e.parts.push_back(*g);
  }
  return e;
}

}  // namespace ulpa
