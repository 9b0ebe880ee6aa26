#pragma once

#include "kmfaces/types.hpp"

namespace kmf {

/// Validated generalized Cartan matrix. Entry convention throughout the
/// library: a(i,j) = <alpha_j, alpha_i^vee>, so pairings of a vector
/// x = sum_j c_j alpha_j against the i-th coroot read off as (A c)_i.
struct CartanMatrix {
  IntMat a;
  std::vector<std::string> labels;

  int rank() const { return static_cast<int>(a.rows()); }
  Int operator()(int i, int j) const { return a(i, j); }
  bool adjacent(int i, int j) const { return i != j && a(i, j) != 0; }

  /// Pairing <x, alpha_i^vee> for x in the root lattice.
  Int pairing(const IntVec& x, int i) const { return (a.row(i) * x)(0); }

  /// Principal submatrix on the given (ascending) node list.
  CartanMatrix submatrix(const std::vector<int>& nodes) const;

  bool connected_support(const NodeSet& s) const;
};

enum class DiagramKind { Finite, Affine, Indefinite };

inline const char* kind_name(DiagramKind k) {
  switch (k) {
    case DiagramKind::Finite: return "Finite";
    case DiagramKind::Affine: return "Affine";
    case DiagramKind::Indefinite: return "Indefinite";
  }
  return "?";
}

struct DynkinComponent {
  std::vector<int> nodes;  // ascending
  DiagramKind kind = DiagramKind::Finite;
  IntVec delta;  // primitive null-vector coefficients in full-rank coordinates; Affine only
};

/// Validates the three GCM invariants; throws Error on violation.
CartanMatrix parse_gcm(const IntMat& raw, std::vector<std::string> labels = {});

/// Maximal connected subdiagrams, sorted by least node.
std::vector<std::vector<int>> components(const CartanMatrix& cm);

/// Finite/Affine/Indefinite per component via exact rational feasibility:
/// Affine when the component matrix has a one-dimensional kernel spanned by a
/// strictly positive vector, Finite when { u >= 1, A u >= 1 } is feasible,
/// Indefinite otherwise. Table-free, so arbitrary GCMs are accepted.
std::vector<DynkinComponent> classify_type(const CartanMatrix& cm);

bool all_finite(const CartanMatrix& cm);

}  // namespace kmf
