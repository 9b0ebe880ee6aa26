#pragma once

#include "kmfaces/weyl.hpp"

namespace kmf {

/// Highest weight, represented purely by its coroot pairings
/// <lambda, alpha_i^vee>. Two weights with equal pairings are identified.
struct HighestWeight {
  RatVec pairings;
};

enum class Family { ParabolicVerma, Simple, UserSupplied };

/// Depth-truncated weight set of a supported module family. Members are
/// depletion vectors c with mu = lambda - sum c_i alpha_i, c >= 0,
/// ht(c) <= depth_bound. Truncation by total depletion height is exact.
struct WeightSet {
  CartanMatrix cm;
  HighestWeight lambda;
  NodeSet integrability;  // I_V
  Family family = Family::Simple;
  NodeSet family_J;       // ParabolicVerma parameter (== integrability there)
  Int depth_bound = 0;
  std::vector<IntVec> members;  // canonical order
  bool complete = false;        // members == the whole weight set

  int rank() const { return cm.rank(); }
  bool contains(const IntVec& dep) const;
  Rat pairing(const IntVec& dep, int i) const;
  VecSet member_set() const { return VecSet(members.begin(), members.end()); }
};

/// J_lambda: nodes with integral nonnegative pairing.
NodeSet j_lambda(const CartanMatrix& cm, const HighestWeight& lambda);

/// wt of the largest integrable highest weight module over the J-Levi within
/// the depth window: least fixpoint of the string rule "mu in set and
/// <mu, alpha_j^vee> = p > 0, j in J  =>  mu - alpha_j, ..., mu - p alpha_j
/// in set", seeded with lambda.
struct IntegrableWeights {
  std::vector<IntVec> members;
  bool clipped = false;  // some string left the window
};
IntegrableWeights weights_integrable(const CartanMatrix& cm, const NodeSet& J,
                                     const HighestWeight& lambda, Int depth);

WeightSet weights_parabolic_verma(const CartanMatrix& cm, const HighestWeight& lambda,
                                  const NodeSet& J, Int depth);
WeightSet weights_simple(const CartanMatrix& cm, const HighestWeight& lambda, Int depth);

/// Caller-supplied weight set with declared integrability; validates what it
/// can (lambda membership, window W_{I_V}-stability, containment in the
/// Delta_{I_V,1} cone) and throws UnsupportedGround otherwise.
WeightSet weights_user(const CartanMatrix& cm, const HighestWeight& lambda, const NodeSet& iv,
                       std::vector<IntVec> members, Int depth);

/// Standard face data: members with depletion supported in I.
std::vector<IntVec> standard_face(const WeightSet& ws, const NodeSet& I);

/// J_V = { j : lambda - alpha_j not a weight }.
NodeSet blocked_nodes(const WeightSet& ws);

/// Roots beta with lambda - beta a weight; computed as
/// Delta^+ minus Delta^+_{J_V} and asserted equal to the membership scan.
std::vector<IntVec> lambda_minus_delta(const WeightSet& ws);

/// True iff no real root beta has both mu - beta and mu + beta in the weight
/// set; equivalently mu lies in the W_J orbit of lambda (module families).
bool vertex_test(const WeightSet& ws, const IntVec& mu_depletion);

/// Guaranteed string [mu - ceil(<mu,alpha_i^vee>) alpha_i, mu], verified to
/// lie inside the member set.
std::vector<IntVec> root_string(const WeightSet& ws, const IntVec& mu_depletion, int i);

/// Default working depth: twice the largest root height of the (windowed)
/// root system, which makes pair-sum checks on complete sets exact.
Int default_depth(const CartanMatrix& cm);

}  // namespace kmf
