#include "kmfaces/weyl.hpp"

#include <deque>
#include <map>

namespace kmf {

WeylElement identity_element(int n) {
  return {IntMat::Identity(n, n), {}};
}

WeylElement simple_reflection(const CartanMatrix& cm, int i) {
  const int n = cm.rank();
  if (i < 0 || i >= n) fail(Errc::ParseError, "simple_reflection: node out of range");
  IntMat m = IntMat::Identity(n, n);
  // s_i(alpha_j) = alpha_j - a(i,j) alpha_i
  for (int j = 0; j < n; ++j) m(i, j) -= cm(i, j);
  return {m, {i}};
}

WeylElement compose(const WeylElement& a, const WeylElement& b) {
  WeylElement c;
  c.action = a.action * b.action;
  c.word = a.word;
  c.word.insert(c.word.end(), b.word.begin(), b.word.end());
  return c;
}

WeylElement inverse(const WeylElement& w) {
  // Simple reflections are involutions, so the reversed word inverts.
  // The action matrix is unimodular; invert it exactly over Q.
  const int n = w.rank();
  RatMat m(n, n), inv = RatMat::Identity(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Rat(w.action(i, j));
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) fail(Errc::Internal, "inverse: singular action matrix");
    m.row(p).swap(m.row(c));
    inv.row(p).swap(inv.row(c));
    Rat d = m(c, c);
    m.row(c) /= d;
    inv.row(c) /= d;
    for (int i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      Rat f = m(i, c);
      m.row(i) -= f * m.row(c);
      inv.row(i) -= f * inv.row(c);
    }
  }
  WeylElement v;
  v.word.assign(w.word.rbegin(), w.word.rend());
  v.action.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!is_integer(inv(i, j))) fail(Errc::Internal, "inverse: non-integer entry");
      v.action(i, j) = static_cast<Int>(boost::multiprecision::numerator(inv(i, j)));
    }
  return v;
}

WeylElement element_from_word(const CartanMatrix& cm, const std::vector<int>& word) {
  WeylElement w = identity_element(cm.rank());
  for (int i : word) w = compose(w, simple_reflection(cm, i));
  return w;
}

Rat weight_pairing(const CartanMatrix& cm, const RatVec& lambda, const IntVec& depletion, int i) {
  Rat p = lambda[i];
  p -= Rat(cm.pairing(depletion, i));
  return p;
}

std::optional<IntVec> apply_to_weight(const CartanMatrix& cm, const RatVec& lambda,
                                      const WeylElement& w, const IntVec& depletion) {
  IntVec c = depletion;
  for (auto it = w.word.rbegin(); it != w.word.rend(); ++it) {
    Rat p = weight_pairing(cm, lambda, c, *it);
    if (!is_integer(p)) return std::nullopt;
    c[*it] += static_cast<Int>(boost::multiprecision::numerator(p));
    if (c[*it] < 0) return std::nullopt;
  }
  return c;
}

Orbit orbit_roots(const CartanMatrix& cm, const NodeSet& J, const IntVec& seed, size_t cap) {
  if (cap < 1) fail(Errc::ParseError, "orbit: cap must be >= 1");
  Orbit o;
  VecSet seen{seed};
  std::deque<IntVec> queue{seed};
  bool truncated = false;
  while (!queue.empty()) {
    IntVec v = queue.front();
    queue.pop_front();
    for (int j : J) {
      IntVec img = v;
      img[j] -= cm.pairing(v, j);
      if (seen.count(img)) continue;
      if (seen.size() >= cap) {
        truncated = true;
        continue;
      }
      seen.insert(img);
      queue.push_back(img);
    }
  }
  o.members = sorted_vecs(std::move(seen));
  o.complete = !truncated;
  return o;
}

Orbit orbit_weights(const CartanMatrix& cm, const NodeSet& J, const RatVec& lambda,
                    const IntVec& seed_depletion, size_t cap) {
  if (cap < 1) fail(Errc::ParseError, "orbit: cap must be >= 1");
  Orbit o;
  VecSet seen{seed_depletion};
  std::deque<IntVec> queue{seed_depletion};
  bool truncated = false;
  while (!queue.empty()) {
    IntVec c = queue.front();
    queue.pop_front();
    for (int j : J) {
      Rat p = weight_pairing(cm, lambda, c, j);
      if (!is_integer(p))
        fail(Errc::DepletionNegative, "orbit_weights: non-integral pairing at node " + std::to_string(j));
      IntVec img = c;
      img[j] += static_cast<Int>(boost::multiprecision::numerator(p));
      if (img[j] < 0)
        fail(Errc::DepletionNegative, "orbit_weights: image left the depletion cone");
      if (seen.count(img)) continue;
      if (seen.size() >= cap) {
        truncated = true;
        continue;
      }
      seen.insert(img);
      queue.push_back(img);
    }
  }
  o.members = sorted_vecs(std::move(seen));
  o.complete = !truncated;
  return o;
}

GroupEnumeration enumerate_group(const CartanMatrix& cm, const NodeSet& J, int length_cap) {
  GroupEnumeration g;
  const int n = cm.rank();
  auto key = [n](const IntMat& m) {
    std::vector<Int> k;
    k.reserve(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) k.push_back(m(i, j));
    return k;
  };
  std::map<std::vector<Int>, bool> seen;
  WeylElement e = identity_element(n);
  seen[key(e.action)] = true;
  g.elements.push_back(e);
  std::vector<WeylElement> frontier{e};
  bool exhausted = false;
  for (int len = 1; len <= length_cap; ++len) {
    std::vector<WeylElement> next;
    for (const auto& w : frontier) {
      for (int j : J) {
        WeylElement nw = compose(w, simple_reflection(cm, j));
        auto k = key(nw.action);
        if (seen.count(k)) continue;
        seen[k] = true;
        g.elements.push_back(nw);
        next.push_back(nw);
      }
    }
    if (next.empty()) {
      exhausted = true;
      break;
    }
    frontier = std::move(next);
  }
  if (!exhausted) {
    // One more expansion decides whether the cap actually cut anything.
    bool more = false;
    for (const auto& w : frontier) {
      for (int j : J) {
        WeylElement nw = compose(w, simple_reflection(cm, j));
        if (!seen.count(key(nw.action))) more = true;
      }
    }
    exhausted = !more;
  }
  g.complete = exhausted;
  return g;
}

PositivitySet positivity_set(const RootSystem& rs, const std::vector<IntVec>& Z, int length_cap) {
  for (const auto& z : Z)
    if (!rs.is_root(z)) fail(Errc::ParseError, "positivity_set: Z must consist of roots");
  GroupEnumeration g = enumerate_group(rs.cm, complement({}, rs.rank()), length_cap);
  PositivitySet out;
  out.complete = g.complete;
  for (const auto& w : g.elements) {
    bool ok = true;
    for (const auto& z : Z) {
      IntVec img = w.apply(z);
      if (!(all_nonneg(img) && !is_zero(img))) {
        ok = false;
        break;
      }
    }
    if (ok) out.elements.push_back(w);
  }
  return out;
}

}  // namespace kmf
