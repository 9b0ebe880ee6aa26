#pragma once

#include "kmfaces/weights.hpp"

namespace kmf {

/// Finite ground set over which 212-closedness and weak faces are decided.
/// Elements share one ambient integer coordinate system: depletions for
/// weight sets, signed root coordinates for root systems (zero vector only
/// in the adjoint-style ground).
struct GroundSet {
  enum class Kind { Weights, Roots, RootsWithZero };
  Kind kind = Kind::Roots;
  std::vector<IntVec> elements;  // canonical order, distinct
  bool sum_exact = false;        // pair-sum queries answer for the full set
  std::optional<WeightSet> ws;
  std::optional<RootSystem> rs;

  static GroundSet weights(WeightSet w);
  static GroundSet roots(RootSystem r, bool with_zero);

  int size() const { return static_cast<int>(elements.size()); }
  int index_of(const IntVec& v) const;  // -1 when absent

  /// Unordered index pairs (k <= l) whose element sum equals s.
  const std::vector<std::pair<int, int>>& pairs_for_sum(const IntVec& s) const;

 private:
  mutable std::map<IntVec, int, CanonLess> index_;
  mutable std::map<IntVec, std::vector<std::pair<int, int>>, CanonLess> sums_;
  mutable bool built_ = false;
  void build() const;
};

struct Witness212 {
  IntVec y1, y2, x1, x2;
};

struct Check212 {
  bool closed = false;
  std::optional<Witness212> witness;
  bool empty_input = false;
  bool window_exact = true;
};

/// Raw windowed pair check: Y is 212-closed iff every identity
/// (y1)+(y2) = (x1)+(x2) over the ground forces x1, x2 into Y.
/// Throws WindowInexact on affine/indefinite root windows, whose sums are
/// not decidable this way; those route through decide_212.
Check212 is_212_closed(const GroundSet& g, const std::vector<IntVec>& Y);

struct Closure212 {
  std::vector<IntVec> members;
  bool window_exact = true;  // false: lower bound of the true closure
};

/// Least superset of the seed closed under the pair implication, within the
/// window. Monotone in the seed.
Closure212 closure_212(const GroundSet& g, const std::vector<IntVec>& seed);

struct WeakWitness {
  std::vector<IntVec> lhs;  // multiset from Y
  std::vector<IntVec> rhs;  // multiset from X, some entry outside Y
};

/// Bounded search for a weak-face violation with unit coefficients summing to
/// at most `budget` per side. Absence of a witness is not a proof.
std::optional<WeakWitness> find_weak_face_witness(const GroundSet& g,
                                                  const std::vector<IntVec>& Y, Int budget);

struct WeakDecision {
  bool weak = false;
  std::string method;
  std::optional<WeakWitness> witness;  // falsifier probe result, when found
};

/// Exact weak-face decision via the classification results, with the bounded
/// falsifier run as a consistency probe.
WeakDecision decide_weak_face(const GroundSet& g, const std::vector<IntVec>& Y, Int probe_budget = 4);

/// Exact 212-closedness decision on any ground: the raw check where the
/// window is sum-exact, the structured affine/indefinite route otherwise,
/// and the component product rule on decomposable root systems.
struct Decision212 {
  bool closed = false;
  std::string method;
};
Decision212 decide_212(const GroundSet& g, const std::vector<IntVec>& Y);

struct DerivedInvariants {
  NodeSet support_nodes;        // I_Y
  NodeSet blocked;              // J_Y
  std::vector<IntVec> markers;  // P(Y): squarefree first-layer depletions with full chains in Y
  bool lambda_in_y = false;
};

DerivedInvariants derived_invariants(const GroundSet& g, const std::vector<IntVec>& Y);

/// P(standard face of I): computed from the weight set directly.
std::vector<IntVec> standard_face_markers(const WeightSet& ws, const NodeSet& I);

struct FaceClassification {
  WeylElement conjugator;  // omega in W_{I_V}
  NodeSet face_nodes;      // I with omega Y = wt_I V
  std::vector<std::string> certificate;
};

/// Conjugates a 212-closed subset of a weight-set ground onto a standard
/// face: vertex phase by minimal-depth descent (breadth-first fallback over
/// W_{I_V}), then marker-guided search over W_{J_Y}. Never mis-classifies:
/// throws SearchExhausted when the cap is hit.
FaceClassification classify_face(const GroundSet& g, const std::vector<IntVec>& Y,
                                 int length_cap = 16);

/// All nonempty 212-closed subsets by brute force over 2^|X| subsets;
/// deterministic order (ascending element-index bitmask).
std::vector<std::vector<IntVec>> enumerate_212(const GroundSet& g, int cap = 14);

struct RootFaceFamily {
  bool with_zero = false;
  bool window_exact = true;  // affine output is a window slice
  /// Proper 212-closed subsets (explicit window sets, canonical order).
  std::vector<std::vector<IntVec>> proper;
  /// Subfamily that fails the weak-face property (sl3-type grounds only).
  std::vector<std::vector<IntVec>> exceptional;
};

/// Classification of the proper 212-closed subsets of Delta (or of
/// Delta with zero): conjugated truncations of the highest root in finite
/// type plus the sl3 exceptional orbits, delta-periodic lifts of the core
/// classification in affine type, nothing in indefinite type, and the
/// component product in general.
RootFaceFamily classify_rootsystem_faces(const RootSystem& rs, bool with_zero);

/// Window slice of the delta-periodic lift Z_s u Z_l of a proper 212-closed
/// subset Z of the affine core (with_zero: Z is validated against the core
/// ground including zero).
std::vector<IntVec> affine_lift(const RootSystem& rs, const std::vector<IntVec>& Z,
                                bool with_zero);

struct AffineProjection {
  std::vector<IntVec> core;  // Z in full-rank coordinates, supported off the affine node
  bool exact_shape = false;  // Y equals the window slice of the lift of core
};

/// Strips delta-shifts from a window subset; ShapeViolation when Y contains
/// an imaginary element, a half-shift root, or fails the lifted-shape check
/// (which certifies Y is not 212-closed).
AffineProjection affine_project(const RootSystem& rs, const std::vector<IntVec>& Y,
                                bool with_zero);

/// { w in W : wY subset of Delta^+ } for finite type, with the coset
/// intersection identity asserted whenever Y is a highest-root truncation.
std::vector<WeylElement> positivity_conjugators(const RootSystem& rs,
                                                const std::vector<IntVec>& Y, int length_cap = 24);

/// Chain from a member up to lambda with steps in Delta_{I_Y\J_Y,1}; every
/// chain point and every lambda-step lands in Y when Y is 212-closed and
/// contains lambda.
std::vector<IntVec> face_chain(const GroundSet& g, const std::vector<IntVec>& Y, const IntVec& mu);

/// The sl3 exceptional orbits (simple system, positive system, and the
/// zero-sum triple) as subsets of the given rank-2 simply-laced root window.
std::vector<std::vector<IntVec>> exceptional_a2_family(const RootSystem& rs);

}  // namespace kmf
