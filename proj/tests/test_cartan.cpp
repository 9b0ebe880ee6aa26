#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kmfaces/cartan.hpp"

#include <random>
#include <set>

using namespace kmf;

namespace {

IntMat mat2(Int a, Int b, Int c, Int d) {
  IntMat m(2, 2);
  m << a, b, c, d;
  return m;
}

IntMat from_rows(const std::vector<std::vector<Int>>& rows) {
  const int n = static_cast<int>(rows.size());
  IntMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace

TEST_CASE("gcm validation") {
  CHECK_NOTHROW(parse_gcm(mat2(2, -1, -1, 2)));
  CHECK_NOTHROW(parse_gcm(mat2(2, -2, -1, 2)));  // B2-compatible
  CHECK_THROWS_AS(parse_gcm(mat2(2, -1, 0, 2)), Error);
  try {
    parse_gcm(mat2(2, -1, 0, 2));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::AsymmetricZero);
  }
  try {
    parse_gcm(mat2(1, -1, -1, 2));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::DiagonalNotTwo);
  }
  try {
    parse_gcm(mat2(2, 1, 1, 2));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::PositiveOffDiagonal);
  }
  CHECK_THROWS_AS(parse_gcm(IntMat::Zero(0, 0)), Error);
}

TEST_CASE("components") {
  auto a2 = parse_gcm(mat2(2, -1, -1, 2));
  CHECK(components(a2) == std::vector<std::vector<int>>{{0, 1}});
  auto a1a1 = parse_gcm(mat2(2, 0, 0, 2));
  CHECK(components(a1a1) == std::vector<std::vector<int>>{{0}, {1}});
  auto block = parse_gcm(from_rows({{2, -1, 0}, {-1, 2, 0}, {0, 0, 2}}));
  CHECK(components(block) == std::vector<std::vector<int>>{{0, 1}, {2}});
}

TEST_CASE("type trichotomy") {
  auto k = [](const IntMat& m) { return classify_type(parse_gcm(m)); };
  CHECK(k(mat2(2, -1, -1, 2))[0].kind == DiagramKind::Finite);
  auto aff = k(mat2(2, -2, -2, 2));
  CHECK(aff[0].kind == DiagramKind::Affine);
  CHECK(vec_eq(aff[0].delta, make_vec({1, 1})));
  CHECK(k(mat2(2, -3, -3, 2))[0].kind == DiagramKind::Indefinite);

  // rank-2 trichotomy: product of off-diagonal entries against 4
  for (Int a = 0; a <= 4; ++a)
    for (Int b = 0; b <= 4; ++b) {
      if ((a == 0) != (b == 0)) continue;
      auto kinds = k(mat2(2, -a, -b, 2));
      for (const auto& c : kinds) {
        if (c.nodes.size() < 2) continue;
        if (a * b < 4) CHECK(c.kind == DiagramKind::Finite);
        if (a * b == 4) CHECK(c.kind == DiagramKind::Affine);
        if (a * b > 4) CHECK(c.kind == DiagramKind::Indefinite);
      }
    }
}

TEST_CASE("affine null vectors") {
  auto a22 = classify_type(parse_gcm(mat2(2, -4, -1, 2)));
  CHECK(a22[0].kind == DiagramKind::Affine);
  CHECK(vec_eq(a22[0].delta, make_vec({2, 1})));

  auto c21 = classify_type(parse_gcm(from_rows({{2, -1, 0}, {-2, 2, -2}, {0, -1, 2}})));
  CHECK(c21[0].kind == DiagramKind::Affine);
  CHECK(vec_eq(c21[0].delta, make_vec({1, 2, 1})));

  auto a21 = classify_type(parse_gcm(from_rows({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}})));
  CHECK(a21[0].kind == DiagramKind::Affine);
  CHECK(vec_eq(a21[0].delta, make_vec({1, 1, 1})));

  // exact kernel and strict positivity, on every affine sample
  for (const auto& dc : c21) {
    if (dc.kind != DiagramKind::Affine) continue;
    for (int i : dc.nodes) CHECK(dc.delta[i] > 0);
  }
}

TEST_CASE("classification is permutation invariant") {
  std::mt19937_64 rng(7);
  std::vector<IntMat> samples = {
      from_rows({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}),  // A3
      from_rows({{2, -1, 0}, {-2, 2, -2}, {0, -1, 2}}),  // affine
      from_rows({{2, -3, 0}, {-3, 2, -1}, {0, -1, 2}}),  // indefinite component
      from_rows({{2, 0, -1}, {0, 2, 0}, {-1, 0, 2}}),    // decomposable
  };
  for (const auto& m : samples) {
    auto base = classify_type(parse_gcm(m));
    std::multiset<std::pair<size_t, int>> base_sig;
    for (const auto& c : base) base_sig.insert({c.nodes.size(), static_cast<int>(c.kind)});
    std::vector<int> perm{0, 1, 2};
    for (int t = 0; t < 5; ++t) {
      std::shuffle(perm.begin(), perm.end(), rng);
      IntMat p(3, 3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) p(i, j) = m(perm[i], perm[j]);
      auto got = classify_type(parse_gcm(p));
      std::multiset<std::pair<size_t, int>> sig;
      for (const auto& c : got) sig.insert({c.nodes.size(), static_cast<int>(c.kind)});
      CHECK(sig == base_sig);
    }
  }
}
