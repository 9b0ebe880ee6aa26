#pragma once

#include "kmfaces/cartan.hpp"

namespace kmf {

enum class RootTag { Real, Imaginary };

/// Affine layer data for an indecomposable affine diagram.
///
/// `delta` is the minimal positive imaginary root. `affine_node` is the least
/// node whose deletion leaves the canonical finite core: the one for which
/// every real root in a probe window decomposes as eta + k*delta with
/// eta in the core (integral k), or as a half-shift (2q-1)/2 * delta + eta/2
/// over core roots eta in `ring_long` (the twisted A_{2l}^(2) family only).
///
/// `ring_short` / `ring_long` partition the signed core roots by their
/// measured delta-period: period 1 vs period `tier`. Both equal the whole
/// core when tier == 1. For the rank-1 core of A_2^(2) the short class is
/// empty: alpha + delta is not a root there, only alpha + 2Z*delta and the
/// half-shifts occur, which the generator confirms.
struct AffineData {
  IntVec delta;
  int affine_node = 0;
  std::vector<int> finite_nodes;  // ascending
  int tier = 1;                   // r in {1,2,3}
  std::vector<IntVec> core;       // signed roots of the finite core, canonical order
  std::vector<IntVec> ring_short;
  std::vector<IntVec> ring_long;
  bool has_half_forms = false;
};

struct RootSystem {
  CartanMatrix cm;
  std::vector<IntVec> positive;  // canonical order (height, then lex)
  std::vector<RootTag> tags;     // parallel to `positive`
  std::optional<Int> height_bound;  // nullopt: unbounded (finite type only)
  bool complete = false;            // true iff `positive` is all of Delta^+
  std::optional<AffineData> affine;

  int rank() const { return cm.rank(); }
  bool is_positive_root(const IntVec& v) const;
  bool is_root(const IntVec& v) const;  // either sign
  std::optional<RootTag> tag_of(const IntVec& v) const;
  std::vector<IntVec> all_signed() const;
  Int max_height() const;
  VecSet positive_set() const;
};

/// Enumerates the roots of the GCM: full closure for finite type
/// (height_bound may be omitted), truncated at |ht| <= height_bound
/// otherwise. Real roots arise as the reflection closure of the simple
/// roots; imaginary roots as the Weyl orbit of the fundamental cone
/// { v > 0 : supp connected, all pairings <= 0 }. Both searches only ever
/// pass through roots of height <= the target height, so the window slice
/// is exact.
RootSystem generate_roots(const CartanMatrix& cm, std::optional<Int> height_bound);

/// Delta_{I,k}: signed roots with height_I = k (window slice).
std::vector<IntVec> slice(const RootSystem& rs, const NodeSet& I, Int k);

/// Ordered decomposition of a positive root with ht_I > 0 into summands from
/// Delta_{I,1} whose every prefix sum is a root. Deterministic: depth-first
/// over candidates in canonical order, so the result is the lexicographically
/// greedy one.
std::vector<IntVec> psp_decompose(const RootSystem& rs, const IntVec& beta, const NodeSet& I);

/// Affine structure of an indecomposable affine GCM; generates its own probe
/// window, so any RootSystem over the same matrix can borrow it.
AffineData affine_structure(const CartanMatrix& cm);
AffineData affine_structure(const RootSystem& rs);

}  // namespace kmf
