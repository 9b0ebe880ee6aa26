#include <doctest.h>

#include "test_common.hpp"
#include "kmfaces/weyl.hpp"

using namespace kmftest;

namespace {

// <mu, beta^vee> for a real root beta, by reflecting down to a simple root.
Rat real_coroot_pairing(const CartanMatrix& cm, const RootSystem& rs, RatVec mu, IntVec beta) {
  for (int guard = 0; guard < 1000; ++guard) {
    for (int i = 0; i < cm.rank(); ++i)
      if (vec_eq(beta, unit_vec(cm.rank(), i))) return mu[i];
    // reflect toward a simple root
    for (int i = 0; i < cm.rank(); ++i) {
      Int p = cm.pairing(beta, i);
      IntVec img = beta;
      img[i] -= p;
      bool shrink = std::abs(height(img)) < std::abs(height(beta));
      if (!shrink || !rs.is_root(img)) continue;
      // s_i mu in pairing coordinates: mu_j -> mu_j - mu_i a(j,i)
      RatVec nm = mu;
      for (int j = 0; j < cm.rank(); ++j) nm[j] = mu[j] - mu[i] * Rat(cm(j, i));
      mu = nm;
      beta = img;
      break;
    }
  }
  FAIL("no descent to a simple root");
  return Rat(0);
}

}  // namespace

TEST_CASE("simple reflections on roots") {
  auto cm = a2();
  auto s0 = simple_reflection(cm, 0);
  CHECK(vec_eq(s0.apply(make_vec({1, 0})), make_vec({-1, 0})));
  CHECK(vec_eq(s0.apply(make_vec({0, 1})), make_vec({1, 1})));
  auto b = b2();
  CHECK(vec_eq(simple_reflection(b, 0).apply(make_vec({0, 1})), make_vec({2, 1})));
}

TEST_CASE("involution and braid relations") {
  for (auto cm : {a2(), b2(), g2(), a3()}) {
    const int n = cm.rank();
    for (int i = 0; i < n; ++i) {
      auto s = simple_reflection(cm, i);
      CHECK(compose(s, s).is_identity());
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        Int prod = cm(i, j) * cm(j, i);
        int m = prod == 0 ? 2 : prod == 1 ? 3 : prod == 2 ? 4 : prod == 3 ? 6 : 0;
        if (m == 0) continue;
        auto si = simple_reflection(cm, i), sj = simple_reflection(cm, j);
        WeylElement lhs = identity_element(n), rhs = identity_element(n);
        for (int t = 0; t < m; ++t) {
          lhs = compose(lhs, t % 2 == 0 ? si : sj);
          rhs = compose(rhs, t % 2 == 0 ? sj : si);
        }
        CHECK(lhs == rhs);
      }
  }
}

TEST_CASE("action on weights") {
  auto cm = a2();
  RatVec lam(2);
  lam << Rat(1), Rat(0);
  auto s0 = simple_reflection(cm, 0);
  auto img = apply_to_weight(cm, lam, s0, IntVec::Zero(2));
  REQUIRE(img);
  CHECK(vec_eq(*img, make_vec({1, 0})));
  auto id = apply_to_weight(cm, lam, identity_element(2), IntVec::Zero(2));
  CHECK(vec_eq(*id, IntVec::Zero(2)));
  auto s10 = compose(simple_reflection(cm, 1), simple_reflection(cm, 0));
  auto img2 = apply_to_weight(cm, lam, s10, IntVec::Zero(2));
  REQUIRE(img2);
  CHECK(vec_eq(*img2, make_vec({1, 1})));

  RatVec half(2);
  half << Rat(1, 2), Rat(0);
  CHECK(!apply_to_weight(cm, half, s0, IntVec::Zero(2)));
}

TEST_CASE("orbits") {
  auto cm = a2();
  RatVec lam(2);
  lam << Rat(1), Rat(0);
  auto o = orbit_weights(cm, {0, 1}, lam, IntVec::Zero(2), 100);
  CHECK(o.complete);
  CHECK(same_set(o.members, vl({{0, 0}, {1, 0}, {1, 1}})));
  auto fixed = orbit_weights(cm, {}, lam, IntVec::Zero(2), 100);
  CHECK(fixed.members.size() == 1);

  auto b = b2();
  auto ob = orbit_roots(b, {0, 1}, make_vec({2, 1}), 100);
  CHECK(ob.complete);
  CHECK(same_set(ob.members, vl({{2, 1}, {-2, -1}, {0, 1}, {0, -1}})));
}

TEST_CASE("group enumeration") {
  CHECK(enumerate_group(a2(), {0, 1}, 10).elements.size() == 6);
  CHECK(enumerate_group(a2(), {0, 1}, 10).complete);
  auto g = enumerate_group(g2(), {0, 1}, 12);
  CHECK(g.elements.size() == 12);
  CHECK(g.complete);
  auto aff = enumerate_group(a1_affine(), {0, 1}, 4);
  CHECK(aff.elements.size() == 9);
  CHECK(!aff.complete);
  CHECK(enumerate_group(a3(), {0, 1, 2}, 12).elements.size() == 24);
}

TEST_CASE("positivity sets") {
  auto rs = generate_roots(a2(), std::nullopt);
  CHECK(positivity_set(rs, {make_vec({1, 1})}, 10).elements.size() == 3);
  CHECK(positivity_set(rs, rs.all_signed(), 10).elements.size() == 0);
  auto pi = positivity_set(rs, {make_vec({1, 0}), make_vec({0, 1})}, 10);
  REQUIRE(pi.elements.size() == 1);
  CHECK(pi.elements[0].is_identity());
}

TEST_CASE("action preserves the root system") {
  for (auto cm : {a2(), b2(), g2()}) {
    auto rs = generate_roots(cm, std::nullopt);
    for (const auto& w : enumerate_group(cm, {0, 1}, 12).elements)
      for (const auto& r : rs.all_signed()) CHECK(rs.is_root(w.apply(r)));
  }
}

TEST_CASE("pairing equivariance on real roots") {
  for (auto cm : {a2(), b2()}) {
    auto rs = generate_roots(cm, std::nullopt);
    RatVec mu(2);
    mu << Rat(3, 2), Rat(-2);
    for (const auto& w : enumerate_group(cm, {0, 1}, 12).elements) {
      // w mu in pairing coordinates via the witness word
      RatVec wmu = mu;
      for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) {
        RatVec nm = wmu;
        for (int j = 0; j < 2; ++j) nm[j] = wmu[j] - wmu[*it] * Rat(cm(j, *it));
        wmu = nm;
      }
      for (const auto& b : rs.positive) {
        Rat lhs = real_coroot_pairing(cm, rs, wmu, w.apply(b));
        Rat rhs = real_coroot_pairing(cm, rs, mu, b);
        CHECK(lhs == rhs);
      }
    }
  }
}
