#pragma once

#include "kmfaces/roots.hpp"

namespace kmf {

/// Weyl group element, identified by its integer action on the root lattice.
/// Column j of `action` is the image of alpha_j. The stored word is a witness
/// expression as a product of simple reflections (leftmost factor applied
/// last); equality of elements is equality of action matrices.
struct WeylElement {
  IntMat action;
  std::vector<int> word;

  int rank() const { return static_cast<int>(action.rows()); }
  IntVec apply(const IntVec& v) const { return action * v; }
  bool is_identity() const { return action == IntMat::Identity(action.rows(), action.cols()); }
};

inline bool operator==(const WeylElement& a, const WeylElement& b) {
  return a.action == b.action;
}

WeylElement identity_element(int n);
WeylElement simple_reflection(const CartanMatrix& cm, int i);

/// a then b is applied as compose(a, b)(v) = a(b(v)).
WeylElement compose(const WeylElement& a, const WeylElement& b);
WeylElement inverse(const WeylElement& w);
WeylElement element_from_word(const CartanMatrix& cm, const std::vector<int>& word);

/// Applies the word of `w` to a weight lambda - depletion, working purely on
/// pairings: s_i moves the depletion by <mu, alpha_i^vee> * e_i. Returns
/// nullopt when the image leaves lambda - Z>=0 Pi (non-integral or negative
/// coordinates), the DepletionNegative signal.
std::optional<IntVec> apply_to_weight(const CartanMatrix& cm, const RatVec& lambda,
                                      const WeylElement& w, const IntVec& depletion);

/// Pairing <lambda - depletion, alpha_i^vee>.
Rat weight_pairing(const CartanMatrix& cm, const RatVec& lambda, const IntVec& depletion, int i);

struct Orbit {
  std::vector<IntVec> members;  // canonical order
  bool complete = false;        // false: size cap hit
};

/// Breadth-first closure of a root-lattice vector under {s_j : j in J}.
Orbit orbit_roots(const CartanMatrix& cm, const NodeSet& J, const IntVec& seed, size_t cap);

/// Same for a weight given as a depletion from lambda. Reflections whose
/// image leaves the depletion cone abort with DepletionNegative.
Orbit orbit_weights(const CartanMatrix& cm, const NodeSet& J, const RatVec& lambda,
                    const IntVec& seed_depletion, size_t cap);

struct GroupEnumeration {
  std::vector<WeylElement> elements;  // BFS by word length, generators ascending
  bool complete = false;
};

/// All distinct elements of W_J with word length <= length_cap, deduplicated
/// by action matrix. Words recorded are shortlex-minimal.
GroupEnumeration enumerate_group(const CartanMatrix& cm, const NodeSet& J, int length_cap);

struct PositivitySet {
  std::vector<WeylElement> elements;  // discovery (shortlex) order
  bool complete = false;
};

/// { w in W : wZ subset of Delta^+ }. Complete exactly when W could be fully
/// enumerated under the cap (finite type).
PositivitySet positivity_set(const RootSystem& rs, const std::vector<IntVec>& Z, int length_cap);

}  // namespace kmf
