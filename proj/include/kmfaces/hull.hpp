#pragma once

#include "kmfaces/faces.hpp"
#include "kmfaces/lp.hpp"

namespace kmf {

/// V-representation of a rational polyhedron conv(points) + cone(rays), in
/// depletion coordinates relative to the highest weight.
struct RationalPolyhedron {
  std::vector<RatVec> points;
  std::vector<RatVec> rays;
  int ambient_dim = 0;

  bool contains(const RatVec& p) const { return lp::in_polyhedron(points, rays, p); }
  bool recession_contains(const RatVec& d) const { return lp::in_cone(rays, d); }
};

/// Functional g with value -g.c at depletion c: level m = min of g.c over the
/// polyhedron, attained exactly on the face; slack is the certified strict
/// separation margin.
struct ExposingFunctional {
  RatVec coeffs;
  Rat level;
  Rat slack;
};

/// Face described by the generators it uses.
struct HullFace {
  std::vector<int> point_ids;
  std::vector<int> ray_ids;
  WeylElement conjugator;
  NodeSet face_nodes;
  ExposingFunctional functional;
};

struct WeightHull {
  RationalPolyhedron poly;
  WeightSet ws;
  bool exact = true;  // false when ray generators are window-truncated
};

/// Hull of a parabolic Verma / simple weight set: points are the depletions
/// of the integrable orbit of lambda, rays the first-layer roots off the
/// integrable directions.
WeightHull hull_of_weightset(const WeightSet& ws, size_t orbit_cap = 100000);

/// Exact strict-separation feasibility for a candidate face given by point
/// and ray generator ids. Throws Infeasible when the candidate is not an
/// exposed face.
ExposingFunctional find_exposing_functional(const RationalPolyhedron& p,
                                            const std::vector<int>& point_ids,
                                            const std::vector<int>& ray_ids);

/// All exposed faces: orbit-translates of standard-face hulls, deduplicated
/// and certified one by one; each certificate's maximizer is checked to
/// reproduce the candidate. Includes the improper face (zero functional).
std::vector<HullFace> exposed_faces(const WeightHull& h, int length_cap = 16);

struct DecompositionReport {
  bool holds = false;
  std::vector<int> recurrent_ray_ids;
};

/// Verifies Y = conv(Y cap S) + cone{ d in D : (d+Y) cap Y nonempty } by
/// two-way generator containment; throws DecompositionFails otherwise.
DecompositionReport check_face_decomposition(const RationalPolyhedron& Y,
                                             const std::vector<RatVec>& S,
                                             const std::vector<RatVec>& D);

/// Theorem-B style hull decision: Y (a polyhedral description) is a
/// 212-closed subset of the hull iff it equals conv(Y cap points) plus its
/// recurrent cone and the point trace is 212-closed discretely.
bool is_212_closed_hull(const RationalPolyhedron& Y, const WeightHull& h);

RatVec to_rat(const IntVec& v);
IntVec to_int(const RatVec& v);  // throws on non-integers

}  // namespace kmf
