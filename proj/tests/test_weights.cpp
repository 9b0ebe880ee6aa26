#include <doctest.h>

#include "test_common.hpp"
#include "kmfaces/weights.hpp"

#include <deque>
#include <random>

using namespace kmftest;

namespace {

RatVec rv(const std::vector<Rat>& v) {
  RatVec out(static_cast<Eigen::Index>(v.size()));
  for (size_t i = 0; i < v.size(); ++i) out[static_cast<Eigen::Index>(i)] = v[i];
  return out;
}

// Independent Minkowski-sum oracle: wt L_J(lambda) - Z>=0 Delta_{J^c,1},
// truncated by total depletion height.
std::vector<IntVec> minkowski_oracle(const CartanMatrix& cm, const HighestWeight& lam,
                                     const NodeSet& J, Int depth) {
  auto top = weights_integrable(cm, J, lam, depth);
  NodeSet jc = complement(J, cm.rank());
  RootSystem rs =
      generate_roots(cm, all_finite(cm) ? std::optional<Int>{} : std::optional<Int>{depth});
  std::vector<IntVec> gens;
  for (const auto& r : rs.positive)
    if (height_on(r, jc) == 1) gens.push_back(r);
  VecSet out(top.members.begin(), top.members.end());
  std::deque<IntVec> queue(top.members.begin(), top.members.end());
  while (!queue.empty()) {
    IntVec c = queue.front();
    queue.pop_front();
    for (const auto& g : gens) {
      IntVec w = c + g;
      if (height(w) > depth) continue;
      if (out.insert(w).second) queue.push_back(w);
    }
  }
  return sorted_vecs(std::move(out));
}

std::vector<RatVec> lambda_palette() {
  return {
      rv({Rat(1), Rat(0)}),       rv({Rat(1), Rat(1)}),  rv({Rat(0), Rat(0)}),
      rv({Rat(1, 2), Rat(1, 2)}), rv({Rat(-1), Rat(2)}), rv({Rat(2), Rat(7, 3)}),
      rv({Rat(0), Rat(3)}),       rv({Rat(-3, 2), Rat(1)}),
  };
}

}  // namespace

TEST_CASE("integral dominant nodes") {
  auto cm = a2();
  CHECK(j_lambda(cm, {rv({Rat(1), Rat(0)})}) == NodeSet{0, 1});
  CHECK(j_lambda(cm, {rv({Rat(1, 2), Rat(3)})}) == NodeSet{1});
  CHECK(j_lambda(cm, {rv({Rat(-1), Rat(0)})}) == NodeSet{1});
}

TEST_CASE("integrable string closure") {
  auto cm = a2();
  HighestWeight w1{rv({Rat(1), Rat(0)})};
  auto all = weights_integrable(cm, {0, 1}, w1, 6);
  CHECK(same_set(all.members, vl({{0, 0}, {1, 0}, {1, 1}})));
  auto none = weights_integrable(cm, {}, w1, 6);
  CHECK(none.members.size() == 1);
  auto one = weights_integrable(cm, {0}, w1, 6);
  CHECK(same_set(one.members, vl({{0, 0}, {1, 0}})));
  CHECK_THROWS_AS(weights_integrable(cm, {0}, HighestWeight{rv({Rat(-1), Rat(0)})}, 4), Error);
}

TEST_CASE("parabolic Verma weights") {
  auto cm = a2();
  HighestWeight w1{rv({Rat(1), Rat(0)})};
  auto verma = weights_parabolic_verma(cm, w1, {}, 2);
  CHECK(same_set(verma.members, vl({{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}})));
  CHECK(!verma.complete);

  auto simple = weights_parabolic_verma(cm, w1, {0, 1}, 5);
  CHECK(same_set(simple.members, vl({{0, 0}, {1, 0}, {1, 1}})));
  CHECK(simple.complete);

  auto half = weights_parabolic_verma(cm, w1, {0}, 2);
  CHECK(same_set(half.members, vl({{0, 0}, {1, 0}, {0, 1}, {1, 1}, {0, 2}})));
}

TEST_CASE("simple module weights") {
  auto cm = a2();
  auto s = weights_simple(cm, {rv({Rat(1), Rat(0)})}, 6);
  CHECK(s.members.size() == 3);
  CHECK(s.integrability == NodeSet{0, 1});
  auto v = weights_simple(cm, {rv({Rat(1, 2), Rat(1, 2)})}, 3);
  CHECK(v.integrability.empty());
  CHECK(v.members.size() == 10);  // full depletion cone to height 3
  auto adj = weights_simple(cm, {rv({Rat(1), Rat(1)})}, 6);
  CHECK(adj.members.size() == 7);
  CHECK(adj.complete);
}

TEST_CASE("standard faces") {
  auto ws = weights_simple(a2(), {rv({Rat(1), Rat(0)})}, 6);
  CHECK(same_set(standard_face(ws, {0}), vl({{0, 0}, {1, 0}})));
  CHECK(same_set(standard_face(ws, {}), vl({{0, 0}})));
  CHECK(same_set(standard_face(ws, {1}), vl({{0, 0}})));
}

TEST_CASE("first-layer weights below lambda") {
  auto ws = weights_simple(a2(), {rv({Rat(1), Rat(0)})}, 6);
  CHECK(same_set(lambda_minus_delta(ws), vl({{1, 0}, {1, 1}})));
  auto reg = weights_simple(a2(), {rv({Rat(1), Rat(1)})}, 6);
  CHECK(lambda_minus_delta(reg).size() == 3);  // all positive roots
  auto zero = weights_simple(a2(), {rv({Rat(0), Rat(0)})}, 6);
  CHECK(lambda_minus_delta(zero).empty());
}

TEST_CASE("vertex probes") {
  auto cm = a2();
  auto s = weights_simple(cm, {rv({Rat(1), Rat(0)})}, 6);
  for (const auto& m : s.members) CHECK(vertex_test(s, m));
  auto verma = weights_parabolic_verma(cm, {rv({Rat(1, 2), Rat(1, 2)})}, {}, 6);
  CHECK(vertex_test(verma, IntVec::Zero(2)));
  CHECK(!vertex_test(verma, make_vec({1, 0})));
}

TEST_CASE("root strings through weights") {
  auto cm = a2();
  auto s = weights_simple(cm, {rv({Rat(1), Rat(0)})}, 6);
  auto str = root_string(s, IntVec::Zero(2), 0);
  CHECK(str.size() == 2);
  auto fixed = root_string(s, IntVec::Zero(2), 1);
  CHECK(fixed.size() == 1);
  auto verma = weights_parabolic_verma(cm, {rv({Rat(1, 2), Rat(1, 2)})}, {}, 6);
  CHECK(root_string(verma, IntVec::Zero(2), 0).size() == 2);  // ceiling of 1/2
  CHECK_THROWS_AS(root_string(s, make_vec({1, 0}), 0), Error);
}

TEST_CASE("slice and Minkowski constructions agree") {
  std::mt19937_64 rng(11);
  for (auto cm : {a2(), b2(), a3()}) {
    const int n = cm.rank();
    for (int trial = 0; trial < 12; ++trial) {
      RatVec lam(n);
      auto pal = lambda_palette();
      for (int i = 0; i < n; ++i) lam[i] = pal[rng() % pal.size()][rng() % 2];
      HighestWeight hw{lam};
      NodeSet jl = j_lambda(cm, hw);
      std::vector<int> jv(jl.begin(), jl.end());
      NodeSet J;
      for (int j : jv)
        if (rng() % 2) J.insert(j);
      Int depth = 4;
      auto via_slices = weights_parabolic_verma(cm, hw, J, depth);
      auto via_minkowski = minkowski_oracle(cm, hw, J, depth);
      CHECK(same_set(via_slices.members, via_minkowski));
    }
  }
}

TEST_CASE("window exactness and reflection stability") {
  auto cm = b2();
  HighestWeight hw{rv({Rat(1), Rat(1, 2)})};
  auto small = weights_parabolic_verma(cm, hw, {0}, 4);
  auto big = weights_parabolic_verma(cm, hw, {0}, 6);
  for (const auto& m : big.members)
    if (height(m) <= 4) CHECK(small.contains(m));
  for (const auto& m : small.members) CHECK(big.contains(m));
  // W_J stability inside the safe window
  for (const auto& m : small.members)
    for (int j : small.integrability) {
      Rat p = small.pairing(m, j);
      REQUIRE(is_integer(p));
      IntVec img = m;
      img[j] += static_cast<Int>(boost::multiprecision::numerator(p));
      if (all_nonneg(img) && height(img) <= 4) CHECK(small.contains(img));
    }
}

TEST_CASE("members decompose over the reached first layer") {
  // wt V sits inside lambda - Z>=0 Delta_{K,1} for K the nodes with
  // lambda - alpha_k a weight
  for (auto ws : {weights_simple(a2(), {rv({Rat(1), Rat(0)})}, 6),
                  weights_parabolic_verma(b2(), {rv({Rat(1), Rat(0)})}, {0}, 5),
                  weights_parabolic_verma(a2(), {rv({Rat(2), Rat(0)})}, {0, 1}, 8)}) {
    const auto& cm = ws.cm;
    NodeSet reached;
    for (int i = 0; i < cm.rank(); ++i)
      if (ws.contains(unit_vec(cm.rank(), i))) reached.insert(i);
    RootSystem rs = generate_roots(cm, std::nullopt);
    std::vector<IntVec> gens;
    for (const auto& r : rs.positive)
      if (height_on(r, reached) == 1) gens.push_back(r);
    for (const auto& m : ws.members) {
      // bounded coin-change over the first-layer roots
      VecSet reach{IntVec::Zero(cm.rank())};
      std::deque<IntVec> q{IntVec::Zero(cm.rank())};
      bool hit = is_zero(m);
      while (!q.empty() && !hit) {
        IntVec v = q.front();
        q.pop_front();
        for (const auto& g : gens) {
          IntVec w = v + g;
          if (!dominated(w, m)) continue;
          if (vec_eq(w, m)) {
            hit = true;
            break;
          }
          if (reach.insert(w).second) q.push_back(w);
        }
      }
      CHECK(hit);
    }
  }
}

TEST_CASE("dot-action containments") {
  for (auto cm : {a2(), b2()}) {
    const int n = cm.rank();
    for (Int l0 = 0; l0 <= 2; ++l0)
      for (Int l1 = 0; l1 <= 2; ++l1) {
        RatVec lam(n);
        lam << Rat(l0), Rat(l1);
        HighestWeight hw{lam};
        Int depth = 8;
        auto top = weights_simple(cm, hw, depth);
        for (int i = 0; i < n; ++i) {
          Int mi = (i == 0 ? l0 : l1) + 1;
          RatVec dot(n);
          for (int j = 0; j < n; ++j) dot[j] = lam[j] - Rat(mi * cm(j, i));
          auto lower = weights_simple(cm, {dot}, depth);
          for (const auto& mu : top.members) {
            Int hti = mu[i];
            // depletions from the dot-shifted highest weight
            IntVec shifted = mu;
            shifted[i] = (hti < mi) ? 0 : hti - mi;
            REQUIRE(all_nonneg(shifted));
            CHECK(lower.contains(shifted));
          }
        }
      }
  }
}
