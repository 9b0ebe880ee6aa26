#include "kmfaces/weights.hpp"

#include <algorithm>
#include <deque>

namespace kmf {

bool WeightSet::contains(const IntVec& dep) const {
  return std::binary_search(members.begin(), members.end(), dep, CanonLess{});
}

Rat WeightSet::pairing(const IntVec& dep, int i) const {
  return weight_pairing(cm, lambda.pairings, dep, i);
}

NodeSet j_lambda(const CartanMatrix& cm, const HighestWeight& lambda) {
  NodeSet out;
  for (int i = 0; i < cm.rank(); ++i) {
    const Rat& p = lambda.pairings[i];
    if (is_integer(p) && p >= 0) out.insert(i);
  }
  return out;
}

IntegrableWeights weights_integrable(const CartanMatrix& cm, const NodeSet& J,
                                     const HighestWeight& lambda, Int depth) {
  NodeSet jl = j_lambda(cm, lambda);
  for (int j : J)
    if (!jl.count(j))
      fail(Errc::JNotDominant, "weights_integrable: node " + std::to_string(j) + " not in J_lambda");
  const int n = cm.rank();
  IntegrableWeights out;
  VecSet seen{IntVec::Zero(n)};
  std::deque<IntVec> queue{IntVec::Zero(n)};
  while (!queue.empty()) {
    IntVec c = queue.front();
    queue.pop_front();
    for (int j : J) {
      Rat p = weight_pairing(cm, lambda.pairings, c, j);
      if (!(p > 0)) continue;
      Int steps = static_cast<Int>(boost::multiprecision::numerator(p));
      for (Int k = 1; k <= steps; ++k) {
        IntVec img = c;
        img[j] += k;
        if (height(img) > depth) {
          out.clipped = true;
          break;
        }
        if (seen.insert(img).second) queue.push_back(img);
      }
    }
  }
  out.members = sorted_vecs(std::move(seen));
  return out;
}

namespace {

// All xi in Z>=0 Pi_{Jc} with ht <= depth (slice offsets).
std::vector<IntVec> cone_offsets(int n, const NodeSet& jc, Int depth) {
  std::vector<IntVec> out;
  IntVec v = IntVec::Zero(n);
  std::vector<int> idx(jc.begin(), jc.end());
  std::function<void(size_t, Int)> rec = [&](size_t k, Int left) {
    if (k == idx.size()) {
      out.push_back(v);
      return;
    }
    for (Int c = 0; c <= left; ++c) {
      v[idx[k]] = c;
      rec(k + 1, left - c);
    }
    v[idx[k]] = 0;
  };
  rec(0, depth);
  return out;
}

}  // namespace

WeightSet weights_parabolic_verma(const CartanMatrix& cm, const HighestWeight& lambda,
                                  const NodeSet& J, Int depth) {
  NodeSet jl = j_lambda(cm, lambda);
  if (!subset_of(J, jl)) fail(Errc::JNotDominant, "parabolic Verma requires J within J_lambda");
  const int n = cm.rank();
  NodeSet jc = complement(J, n);

  WeightSet ws;
  ws.cm = cm;
  ws.lambda = lambda;
  ws.integrability = J;
  ws.family = Family::ParabolicVerma;
  ws.family_J = J;
  ws.depth_bound = depth;

  // Integrable slice decomposition: one integrable layer per cone offset.
  bool clipped = false;
  VecSet members;
  for (const IntVec& xi : cone_offsets(n, jc, depth)) {
    HighestWeight shifted;
    shifted.pairings = lambda.pairings;
    for (int i = 0; i < n; ++i) shifted.pairings[i] -= Rat(cm.pairing(xi, i));
    IntegrableWeights layer = weights_integrable(cm, J, shifted, depth - height(xi));
    clipped |= layer.clipped;
    for (const auto& c : layer.members) members.insert(xi + c);
  }
  ws.members = sorted_vecs(std::move(members));
  ws.complete = jc.empty() && !clipped;
  if (!jc.empty()) {
    // The cone itself is infinite; layers at the window boundary are cut.
    ws.complete = false;
  }
  return ws;
}

WeightSet weights_simple(const CartanMatrix& cm, const HighestWeight& lambda, Int depth) {
  WeightSet ws = weights_parabolic_verma(cm, lambda, j_lambda(cm, lambda), depth);
  ws.family = Family::Simple;
  return ws;
}

namespace {

// c in Z>=0 * (Delta_{I,1} window): bounded coin-change over root summands.
bool in_depletion_cone(const CartanMatrix& cm, const NodeSet& iv, const IntVec& c) {
  if (is_zero(c)) return true;
  if (iv.empty()) return false;
  RootSystem rs = generate_roots(cm, all_finite(cm) ? std::optional<Int>{} : std::optional<Int>{height(c)});
  std::vector<IntVec> gens;
  for (const auto& g : slice(rs, iv, 1))
    if (all_nonneg(g) && dominated(g, c)) gens.push_back(g);
  VecSet reach{IntVec::Zero(c.size())};
  std::deque<IntVec> queue{IntVec::Zero(c.size())};
  while (!queue.empty()) {
    IntVec v = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      IntVec w = v + g;
      if (!dominated(w, c)) continue;
      if (vec_eq(w, c)) return true;
      if (reach.insert(w).second) queue.push_back(w);
    }
  }
  return false;
}

}  // namespace

WeightSet weights_user(const CartanMatrix& cm, const HighestWeight& lambda, const NodeSet& iv,
                       std::vector<IntVec> members, Int depth) {
  WeightSet ws;
  ws.cm = cm;
  ws.lambda = lambda;
  ws.integrability = iv;
  ws.family = Family::UserSupplied;
  ws.depth_bound = depth;
  std::sort(members.begin(), members.end(), canon_less);
  members.erase(std::unique(members.begin(), members.end(), vec_eq), members.end());
  ws.members = std::move(members);
  ws.complete = false;

  if (!ws.contains(IntVec::Zero(cm.rank())))
    fail(Errc::UnsupportedGround, "user weight set must contain lambda");
  // first-layer containment runs over the nodes actually reached from lambda
  NodeSet reached;
  for (int i = 0; i < cm.rank(); ++i)
    if (ws.contains(unit_vec(cm.rank(), i))) reached.insert(i);
  for (const auto& c : ws.members) {
    if (!all_nonneg(c)) fail(Errc::UnsupportedGround, "depletions must be nonnegative");
    if (height(c) > depth) fail(Errc::UnsupportedGround, "member beyond declared depth");
    if (!in_depletion_cone(cm, reached, c))
      fail(Errc::UnsupportedGround,
           "member " + vec_to_string(c) + " outside the first-layer cone");
  }
  // W_{I_V}-stability inside the safe sub-window.
  for (const auto& c : ws.members) {
    for (int j : iv) {
      Rat p = ws.pairing(c, j);
      if (!is_integer(p)) fail(Errc::UnsupportedGround, "non-integral pairing on integrable node");
      IntVec img = c;
      img[j] += static_cast<Int>(boost::multiprecision::numerator(p));
      if (!all_nonneg(img)) fail(Errc::UnsupportedGround, "reflection left the depletion cone");
      if (height(img) <= depth && !ws.contains(img))
        fail(Errc::UnsupportedGround, "member set not reflection-stable in window");
    }
  }
  return ws;
}

std::vector<IntVec> standard_face(const WeightSet& ws, const NodeSet& I) {
  std::vector<IntVec> out;
  for (const auto& c : ws.members)
    if (subset_of(support(c), I)) out.push_back(c);
  return out;
}

NodeSet blocked_nodes(const WeightSet& ws) {
  NodeSet out;
  for (int j = 0; j < ws.rank(); ++j)
    if (!ws.contains(unit_vec(ws.rank(), j))) out.insert(j);
  return out;
}

std::vector<IntVec> lambda_minus_delta(const WeightSet& ws) {
  RootSystem rs = generate_roots(
      ws.cm, all_finite(ws.cm) ? std::optional<Int>{} : std::optional<Int>{ws.depth_bound});
  if (rs.max_height() > ws.depth_bound)
    fail(Errc::WindowTooShallow, "lambda_minus_delta needs depth >= max root height");
  NodeSet jv = blocked_nodes(ws);
  VecSet formula;
  for (const auto& b : rs.positive)
    if (!subset_of(support(b), jv)) formula.insert(b);
  VecSet scan;
  for (const auto& b : rs.positive)
    if (ws.contains(b)) scan.insert(b);
  // lambda - beta for negative beta is above lambda, never a weight.
  if (formula != scan) fail(Errc::Internal, "lambda_minus_delta: formula/scan mismatch");
  return sorted_vecs(std::move(formula));
}

bool vertex_test(const WeightSet& ws, const IntVec& mu) {
  if (!ws.contains(mu)) fail(Errc::ParseError, "vertex_test: mu not a member");
  if (ws.family == Family::UserSupplied)
    fail(Errc::UnsupportedGround, "vertex_test needs a module family");
  if (!all_finite(ws.cm))
    fail(Errc::WindowTooShallow, "vertex_test probes all real roots; finite type required");
  RootSystem rs = generate_roots(ws.cm, std::nullopt);
  if (height(mu) + rs.max_height() > ws.depth_bound && !ws.complete)
    fail(Errc::WindowTooShallow, "vertex_test: strings through mu exceed the window");
  for (size_t i = 0; i < rs.positive.size(); ++i) {
    if (rs.tags[i] != RootTag::Real) continue;
    const IntVec& b = rs.positive[i];
    IntVec lower = mu + b;  // mu - beta
    IntVec upper = mu - b;  // mu + beta
    if (ws.contains(lower) && all_nonneg(upper) && ws.contains(upper)) return false;
  }
  return true;
}

std::vector<IntVec> root_string(const WeightSet& ws, const IntVec& mu, int i) {
  if (!ws.contains(mu)) fail(Errc::ParseError, "root_string: mu not a member");
  Rat p = ws.pairing(mu, i);
  if (p < 0) fail(Errc::PairingNegative, "root_string: pairing negative");
  Int k = rat_ceil(p);
  std::vector<IntVec> out;
  for (Int t = k; t >= 0; --t) {
    IntVec c = mu;
    c[i] += t;
    if (!ws.contains(c))
      fail(Errc::WindowTooShallow, "root_string: guaranteed interval left the window");
    out.push_back(c);
  }
  return out;
}

Int default_depth(const CartanMatrix& cm) {
  RootSystem rs = generate_roots(cm, all_finite(cm) ? std::optional<Int>{} : std::optional<Int>{6});
  return 2 * rs.max_height();
}

}  // namespace kmf
