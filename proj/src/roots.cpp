#include "kmfaces/roots.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

namespace kmf {

bool RootSystem::is_positive_root(const IntVec& v) const {
  return std::binary_search(positive.begin(), positive.end(), v, CanonLess{});
}

bool RootSystem::is_root(const IntVec& v) const {
  if (all_nonneg(v) && !is_zero(v)) return is_positive_root(v);
  if (all_nonpos(v) && !is_zero(v)) return is_positive_root(-v);
  return false;
}

std::optional<RootTag> RootSystem::tag_of(const IntVec& v) const {
  IntVec w = all_nonneg(v) ? v : IntVec(-v);
  auto it = std::lower_bound(positive.begin(), positive.end(), w, CanonLess{});
  if (it == positive.end() || !vec_eq(*it, w)) return std::nullopt;
  return tags[static_cast<size_t>(it - positive.begin())];
}

std::vector<IntVec> RootSystem::all_signed() const {
  VecSet s;
  for (const auto& r : positive) {
    s.insert(r);
    s.insert(-r);
  }
  return sorted_vecs(std::move(s));
}

Int RootSystem::max_height() const {
  Int h = 0;
  for (const auto& r : positive) h = std::max(h, height(r));
  return h;
}

VecSet RootSystem::positive_set() const {
  return VecSet(positive.begin(), positive.end());
}

namespace {

// Reflection closure of the simple roots, truncated at `bound` when given.
// Every positive real root of height h is reachable through roots of height
// <= h (non-simple real roots always admit a height-decreasing simple
// reflection), so truncation loses nothing inside the window.
VecSet real_closure(const CartanMatrix& cm, std::optional<Int> bound) {
  const int n = cm.rank();
  VecSet out;
  std::deque<IntVec> queue;
  for (int i = 0; i < n; ++i) {
    out.insert(unit_vec(n, i));
    queue.push_back(unit_vec(n, i));
  }
  while (!queue.empty()) {
    IntVec v = queue.front();
    queue.pop_front();
    for (int i = 0; i < n; ++i) {
      IntVec img = v;
      img[i] -= cm.pairing(v, i);
      if (!all_nonneg(img) || is_zero(img)) continue;
      if (bound && height(img) > *bound) continue;
      if (out.insert(img).second) queue.push_back(img);
    }
  }
  return out;
}

// Fundamental imaginary cone intersected with the height window, then its
// Weyl orbit inside the window. Orbit escapes toward the cone only through
// smaller heights, so the window slice is exact here as well.
VecSet imaginary_window(const CartanMatrix& cm, Int bound) {
  const int n = cm.rank();
  VecSet cone;
  IntVec v = IntVec::Zero(n);
  // Enumerate all nonnegative vectors of height in [1, bound].
  std::vector<IntVec> stack;
  std::function<void(int, Int)> rec = [&](int idx, Int left) {
    if (idx == n) {
      if (is_zero(v)) return;
      NodeSet s = support(v);
      if (!cm.connected_support(s)) return;
      for (int i = 0; i < n; ++i)
        if (cm.pairing(v, i) > 0) return;
      cone.insert(v);
      return;
    }
    for (Int c = 0; c <= left; ++c) {
      v[idx] = c;
      rec(idx + 1, left - c);
    }
    v[idx] = 0;
  };
  rec(0, bound);

  VecSet out = cone;
  std::deque<IntVec> queue(cone.begin(), cone.end());
  while (!queue.empty()) {
    IntVec w = queue.front();
    queue.pop_front();
    for (int i = 0; i < n; ++i) {
      IntVec img = w;
      img[i] -= cm.pairing(w, i);
      if (height(img) > bound) continue;
      if (!all_nonneg(img)) fail(Errc::Internal, "imaginary orbit left the positive cone");
      if (out.insert(img).second) queue.push_back(img);
    }
  }
  return out;
}

}  // namespace

namespace {

RootSystem generate_roots_impl(const CartanMatrix& cm, std::optional<Int> height_bound,
                               bool attach_affine);

}  // namespace

RootSystem generate_roots(const CartanMatrix& cm, std::optional<Int> height_bound) {
  return generate_roots_impl(cm, height_bound, true);
}

namespace {

RootSystem generate_roots_impl(const CartanMatrix& cm, std::optional<Int> height_bound,
                               bool attach_affine) {
  RootSystem rs;
  rs.cm = cm;
  rs.height_bound = height_bound;
  auto kinds = classify_type(cm);
  bool finite = true;
  for (const auto& k : kinds) finite &= (k.kind == DiagramKind::Finite);
  if (!finite && !height_bound)
    fail(Errc::UnboundedRequestOnInfiniteType, "height bound required for infinite type");

  VecSet reals = real_closure(cm, height_bound);
  VecSet imags;
  if (!finite) imags = imaginary_window(cm, *height_bound);

  for (const auto& r : reals) {
    rs.positive.push_back(r);
    rs.tags.push_back(RootTag::Real);
  }
  for (const auto& r : imags) {
    rs.positive.push_back(r);
    rs.tags.push_back(RootTag::Imaginary);
  }
  std::vector<size_t> idx(rs.positive.size());
  std::iota(idx.begin(), idx.end(), size_t{0});
  std::sort(idx.begin(), idx.end(),
            [&](size_t a, size_t b) { return canon_less(rs.positive[a], rs.positive[b]); });
  std::vector<IntVec> pos;
  std::vector<RootTag> tags;
  for (size_t k : idx) {
    pos.push_back(rs.positive[k]);
    tags.push_back(rs.tags[k]);
  }
  rs.positive = std::move(pos);
  rs.tags = std::move(tags);

  rs.complete = finite && (!height_bound || rs.max_height() <= *height_bound);
  if (finite && height_bound) {
    // Finite closure terminates regardless of the bound; re-check nothing was cut.
    VecSet full = real_closure(cm, std::nullopt);
    rs.complete = (full.size() == rs.positive.size());
  }
  if (attach_affine && kinds.size() == 1 && kinds[0].kind == DiagramKind::Affine)
    rs.affine = affine_structure(cm);
  return rs;
}

}  // namespace

std::vector<IntVec> slice(const RootSystem& rs, const NodeSet& I, Int k) {
  for (int i : I)
    if (i < 0 || i >= rs.rank()) fail(Errc::ParseError, "slice: node out of range");
  VecSet out;
  for (const auto& r : rs.positive) {
    if (height_on(r, I) == k) out.insert(r);
    if (-height_on(r, I) == k) out.insert(-r);
  }
  return sorted_vecs(std::move(out));
}

namespace {

bool psp_rec(const RootSystem& rs, const std::vector<IntVec>& cands, const IntVec& target,
             IntVec& prefix, std::vector<IntVec>& acc, Int steps_left) {
  if (steps_left == 0) return vec_eq(prefix, target);
  for (const auto& g : cands) {
    IntVec np = prefix + g;
    if (!dominated(np, target)) continue;
    if (!rs.is_positive_root(np)) continue;
    acc.push_back(g);
    IntVec save = prefix;
    prefix = np;
    if (psp_rec(rs, cands, target, prefix, acc, steps_left - 1)) return true;
    prefix = save;
    acc.pop_back();
  }
  return false;
}

}  // namespace

std::vector<IntVec> psp_decompose(const RootSystem& rs, const IntVec& beta, const NodeSet& I) {
  Int m = height_on(beta, I);
  if (m <= 0) fail(Errc::ParseError, "psp_decompose: ht_I(beta) must be positive");
  if (!rs.is_positive_root(beta)) fail(Errc::ParseError, "psp_decompose: beta not a positive root in window");
  std::vector<IntVec> cands;
  for (const auto& r : slice(rs, I, 1))
    if (all_nonneg(r) && dominated(r, beta)) cands.push_back(r);
  std::vector<IntVec> acc;
  IntVec prefix = IntVec::Zero(rs.rank());
  if (!psp_rec(rs, cands, beta, prefix, acc, m))
    fail(Errc::NoDecomposition, "no ordered partial-sum decomposition in window");
  return acc;
}

namespace {

// Decomposes beta as m*delta + core vector using the affine-node coordinate;
// m may be half-integral (reported via `half`).
struct Projection {
  bool half = false;
  Int m = 0;       // integral part only valid when !half
  IntVec core;     // beta - m*delta (only when !half)
};

std::optional<Projection> project_once(const IntVec& beta, const IntVec& delta, int node0) {
  Int c = beta[node0], d = delta[node0];
  Projection p;
  if ((2 * c) % d != 0) return std::nullopt;  // not even a half-multiple
  Int twice_m = 2 * c / d;
  if (twice_m % 2 != 0) {
    p.half = true;
    return p;
  }
  p.m = twice_m / 2;
  p.core = beta - p.m * delta;
  return p;
}

}  // namespace

AffineData affine_structure(const CartanMatrix& cm) {
  auto kinds = classify_type(cm);
  if (kinds.size() != 1 || kinds[0].kind != DiagramKind::Affine)
    fail(Errc::NotAffine, "affine_structure: not an indecomposable affine GCM");
  const int n = cm.rank();
  IntVec delta = kinds[0].delta;

  for (int cand = 0; cand < n; ++cand) {
    std::vector<int> rest;
    for (int i = 0; i < n; ++i)
      if (i != cand) rest.push_back(i);
    CartanMatrix sub = cm.submatrix(rest);
    if (!all_finite(sub)) continue;

    // Core roots, embedded back into full coordinates.
    RootSystem core_rs = generate_roots(sub, std::nullopt);
    std::vector<IntVec> core_pos;
    Int core_maxht = 0;
    for (const auto& r : core_rs.positive) {
      IntVec v = IntVec::Zero(n);
      for (size_t k = 0; k < rest.size(); ++k) v[rest[k]] = r[static_cast<Eigen::Index>(k)];
      core_pos.push_back(v);
      core_maxht = std::max(core_maxht, height(v));
    }

    // Probe window deep enough to observe eta +- 3*delta around every core root.
    Int probe_h = core_maxht + 4 * height(delta);
    RootSystem probe = generate_roots(cm, probe_h);

    bool ok = true;
    bool half_seen = false;
    VecSet core_set;
    for (const auto& r : core_pos) {
      core_set.insert(r);
      core_set.insert(-r);
    }
    for (size_t i = 0; i < probe.positive.size() && ok; ++i) {
      if (probe.tags[i] != RootTag::Real) continue;
      auto p = project_once(probe.positive[i], delta, cand);
      if (!p) {
        ok = false;
        break;
      }
      if (p->half) {
        half_seen = true;
        continue;  // validated against ring_long below
      }
      if (!core_set.count(p->core)) ok = false;
    }
    if (!ok) continue;

    // Measure the delta-period of each signed core root.
    int tier = 1;
    std::vector<IntVec> ring_short, ring_long;
    std::vector<Int> period;
    for (const auto& eta : core_set) {
      Int per = 0;
      for (Int k = 1; k <= 3; ++k) {
        if (probe.is_root(eta + k * delta)) {
          per = k;
          break;
        }
      }
      if (per == 0) {
        ok = false;
        break;
      }
      period.push_back(per);
      tier = std::max<int>(tier, static_cast<int>(per));
    }
    if (!ok) continue;
    {
      size_t k = 0;
      for (const auto& eta : core_set) {
        if (period[k] == 1) ring_short.push_back(eta);
        if (period[k] == tier) ring_long.push_back(eta);
        if (period[k] != 1 && period[k] != tier) ok = false;
        ++k;
      }
    }
    if (!ok || tier > 3) continue;

    // Half-shift consistency: 2*core part of a half form must be a period-r root.
    if (half_seen) {
      VecSet longs(ring_long.begin(), ring_long.end());
      for (size_t i = 0; i < probe.positive.size() && ok; ++i) {
        if (probe.tags[i] != RootTag::Real) continue;
        auto p = project_once(probe.positive[i], delta, cand);
        if (p && p->half) {
          IntVec twice = 2 * probe.positive[i];
          Int m2 = twice[cand] / delta[cand];
          IntVec eta2 = twice - m2 * delta;  // odd multiple stripped
          if (!longs.count(eta2)) ok = false;
        }
      }
      if (tier != 2) ok = false;
    }
    if (!ok) continue;

    AffineData ad;
    ad.delta = delta;
    ad.affine_node = cand;
    ad.finite_nodes = rest;
    ad.tier = tier;
    ad.core = sorted_vecs(std::move(core_set));
    std::sort(ring_short.begin(), ring_short.end(), canon_less);
    std::sort(ring_long.begin(), ring_long.end(), canon_less);
    ad.ring_short = std::move(ring_short);
    ad.ring_long = std::move(ring_long);
    ad.has_half_forms = half_seen;
    return ad;
  }
  fail(Errc::Internal, "affine_structure: no admissible affine node");
}

AffineData affine_structure(const RootSystem& rs) {
  if (rs.affine) return *rs.affine;
  return affine_structure(rs.cm);
}

}  // namespace kmf
