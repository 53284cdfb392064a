#ifndef ULPA_ENGINE_HPP
#define ULPA_ENGINE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ulpa/linalg.hpp"
#include "ulpa/paths.hpp"
#include "ulpa/ultragraph.hpp"

namespace ulpa {

// Basis vector of the matrix model: a path together with a sink inside its
// range.  The zero-length pair at a sink is (w, w).
struct PathPair {
  Path alpha;
  std::uint64_t sink = 0;
  bool operator==(const PathPair&) const = default;
};

struct Block {
  std::uint64_t sink = 0;
  std::vector<PathPair> pairs;  // zero-length pair first, then by length/ids
  std::size_t n() const { return pairs.size(); }
};

// Element of the matrix model: one square matrix per sink block.
struct AlgebraElement {
  std::vector<Mat> blocks;
  bool operator==(const AlgebraElement&) const = default;
  bool is_zero() const;
};

AlgebraElement ae_add(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement ae_sub(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement ae_mul(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement ae_neg(const AlgebraElement& a);
AlgebraElement ae_scale(const Scalar& s, const AlgebraElement& a);
// Blockwise transpose; the scalar involution is the identity.
AlgebraElement ae_involute(const AlgebraElement& a);

// Exact matrix model of the path algebra of a finite acyclic ultragraph over
// a field.  Pairs (path, sink-in-range) index one matrix block per sink; the
// edge operator sends a pair to its extension by that edge, vertex-set
// operators act diagonally by the source of the pair, and starred edges act
// by the transpose.  Monomials land on matrix units, so the model fills out
// the whole block sum and the defining relations can be checked exactly.
class Representation {
 public:
  // Requires a finite universe and no cycles; throws NotFiniteAcyclic.
  static Representation build(const Ultragraph& g, FieldDescriptor k);

  const Ultragraph& graph() const { return g_; }
  const FieldDescriptor& field() const { return k_; }
  const std::vector<Block>& blocks() const { return blocks_; }
  // Total dimension: sum of squared block sizes.
  std::size_t dim() const { return dim_; }

  AlgebraElement zero() const;
  AlgebraElement identity() const;
  AlgebraElement edge_op(int edge_index) const;       // s_e
  AlgebraElement edge_op_star(int edge_index) const;  // transpose of s_e
  AlgebraElement vertex_set_op(const UPSet& a) const;
  AlgebraElement path_op(const Path& alpha) const;
  // s_alpha * p_A * (s_beta)^*.
  AlgebraElement monomial(const Path& alpha, const UPSet& a,
                          const Path& beta) const;

  Vec flatten(const AlgebraElement& x) const;
  AlgebraElement unflatten(const Vec& v) const;
  AlgebraElement coordinate_element(std::size_t k) const;

  // Degree of coordinate (i, j) of a block: length(alpha_i) - length(alpha_j).
  int coord_degree(std::size_t block, std::size_t i, std::size_t j) const;
  std::map<int, AlgebraElement> degree_decompose(const AlgebraElement& x) const;
  AlgebraElement degree_component(const AlgebraElement& x, int d) const;
  // Degree when x is supported on one degree; zero reports degree 0.
  std::optional<int> homogeneous_degree(const AlgebraElement& x) const;

 private:
  Ultragraph g_;
  FieldDescriptor k_;
  std::vector<Block> blocks_;
  std::size_t dim_ = 0;
  std::vector<std::size_t> offsets_;  // flatten offset per block
};

// Checks the defining relations as exact matrix identities over every edge
// and over vertex sets drawn from the cells of the range algebra, all
// singletons, all ranges, the empty set and the whole universe.  Returns a
// description of the first violation, if any.
std::optional<std::string> verify_ck(const Representation& rep);

// Annihilators, solved blockwise: a row annihilates the span of the inputs'
// rows, so the left annihilator is built from the common left null space of
// each block, and the right annihilator symmetrically from columns.
Subspace left_annihilator(const Representation& rep,
                          const std::vector<AlgebraElement>& xs);
Subspace right_annihilator(const Representation& rep,
                           const std::vector<AlgebraElement>& xs);

// Whether the subspace is closed under left multiplication by the algebra:
// equivalently, per block it must consist of all matrices whose rows lie in
// the block's row space, which is a pure dimension count.
bool is_left_ideal(const Representation& rep, const Subspace& i);
// Whether the subspace is spanned by homogeneous elements.
bool is_graded_subspace(const Representation& rep, const Subspace& i);

// Idempotent e with I = L e; exists for every left ideal here, found per
// block from a right inverse of the row-space basis.  Postconditions
// (idempotency, membership, i e = i for every basis vector, dimension of the
// generated ideal) are re-verified on every return.  Throws NotALeftIdeal.
std::optional<AlgebraElement> idempotent_generator(const Representation& rep,
                                                   const Subspace& i);
// As above with e = e* added; the combined linear system can be infeasible
// over prime fields, in which case None is returned.
std::optional<AlgebraElement> projection_generator(const Representation& rep,
                                                   const Subspace& i);
// Degree-0 parts of the above; requires a graded ideal (throws NotGraded).
std::optional<AlgebraElement> graded_idempotent_generator(
    const Representation& rep, const Subspace& i);
std::optional<AlgebraElement> graded_projection_generator(
    const Representation& rep, const Subspace& i);

// Homogeneous y with x y x = x and deg y = -deg x, via blockwise rank
// factorization; throws NotHomogeneous when x is not homogeneous.
std::optional<AlgebraElement> graded_vn_regular_witness(
    const Representation& rep, const AlgebraElement& x);

struct PositiveDefiniteResult {
  bool positive_definite = false;
  // Elements with sum of x x* equal to zero, not all zero; empty on success.
  std::vector<AlgebraElement> counterexample;
};

// Over the rationals, random tuples confirm that a vanishing sum x1 x1* + ...
// forces every term to vanish; over a prime field an explicit counterexample
// tuple is produced from the field witness.
PositiveDefiniteResult positive_definite_probe(const Representation& rep,
                                               int trials, std::uint64_t seed);

// The corner u L u of an idempotent u, as a subspace with its unit.
struct Corner {
  AlgebraElement unit;
  Subspace space;
};

Corner make_corner(const Representation& rep, const AlgebraElement& u);
// Annihilator taken relative to the corner: {x in uLu : x b = 0 for all b}.
Subspace corner_left_annihilator(const Representation& rep, const Corner& c,
                                 const std::vector<AlgebraElement>& xs);
// Idempotent generator for a left ideal of the corner algebra.
std::optional<AlgebraElement> corner_idempotent_generator(
    const Representation& rep, const Corner& c, const Subspace& i);

// One model per factor field of a semisimple coefficient ring; elements are
// tuples and every operation acts componentwise.
struct ProductRepresentation {
  RingDescriptor ring;
  std::vector<Representation> factors;
};

struct ProductElement {
  std::vector<AlgebraElement> parts;
  bool operator==(const ProductElement&) const = default;
};

ProductRepresentation product_build(const Ultragraph& g,
                                    const RingDescriptor& r);
ProductElement pe_add(const ProductElement& a, const ProductElement& b);
ProductElement pe_mul(const ProductElement& a, const ProductElement& b);
ProductElement pe_involute(const ProductElement& a);
// A tuple is homogeneous when all components are homogeneous of one shared
// degree (zero components are degree-flexible).
std::optional<int> product_homogeneous_degree(const ProductRepresentation& pr,
                                              const ProductElement& x);
std::vector<Subspace> product_left_annihilator(
    const ProductRepresentation& pr, const std::vector<ProductElement>& xs);
// Componentwise; succeeds exactly when every factor succeeds.
std::optional<ProductElement> product_idempotent_generator(
    const ProductRepresentation& pr, const std::vector<Subspace>& ideals);

}  // namespace ulpa

#endif
