#pragma once

#include "kmfaces/roots.hpp"

#include <vector>

namespace kmftest {

using namespace kmf;

inline IntMat from_rows(const std::vector<std::vector<Int>>& rows) {
  const int n = static_cast<int>(rows.size());
  IntMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = rows[i][j];
  return m;
}

inline CartanMatrix a1() { return parse_gcm(from_rows({{2}})); }
inline CartanMatrix a2() { return parse_gcm(from_rows({{2, -1}, {-1, 2}})); }
// node 1 carries the long simple root, matching the usual rank-2 conventions
inline CartanMatrix b2() { return parse_gcm(from_rows({{2, -2}, {-1, 2}})); }
inline CartanMatrix g2() { return parse_gcm(from_rows({{2, -3}, {-1, 2}})); }
inline CartanMatrix a3() {
  return parse_gcm(from_rows({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}));
}
inline CartanMatrix a1_affine() { return parse_gcm(from_rows({{2, -2}, {-2, 2}})); }
inline CartanMatrix a2_twisted() { return parse_gcm(from_rows({{2, -4}, {-1, 2}})); }
inline CartanMatrix c2_affine() {
  return parse_gcm(from_rows({{2, -1, 0}, {-2, 2, -2}, {0, -1, 2}}));
}
inline CartanMatrix a2_affine() {
  return parse_gcm(from_rows({{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}}));
}
inline CartanMatrix fib() { return parse_gcm(from_rows({{2, -3}, {-3, 2}})); }
inline CartanMatrix a1xa1() { return parse_gcm(from_rows({{2, 0}, {0, 2}})); }
inline CartanMatrix a1xa2() {
  return parse_gcm(from_rows({{2, 0, 0}, {0, 2, -1}, {0, -1, 2}}));
}

inline std::vector<IntVec> vl(const std::vector<std::vector<Int>>& vs) {
  std::vector<IntVec> out;
  for (const auto& v : vs) out.push_back(make_vec(v));
  return out;
}

inline bool same_set(std::vector<IntVec> a, std::vector<IntVec> b) {
  std::sort(a.begin(), a.end(), canon_less);
  std::sort(b.begin(), b.end(), canon_less);
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!vec_eq(a[i], b[i])) return false;
  return true;
}

}  // namespace kmftest
