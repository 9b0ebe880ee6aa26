#include "kmfaces/hull.hpp"

#include <algorithm>

namespace kmf {

RatVec to_rat(const IntVec& v) {
  RatVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = Rat(v[i]);
  return out;
}

IntVec to_int(const RatVec& v) {
  IntVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!is_integer(v[i])) fail(Errc::NonPolyhedralInput, "non-integer coordinate");
    out[i] = static_cast<Int>(boost::multiprecision::numerator(v[i]));
  }
  return out;
}

namespace {

RatVec primitive_ray(const RatVec& r) {
  boost::multiprecision::cpp_int lcm = 1;
  for (Eigen::Index i = 0; i < r.size(); ++i)
    lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(r[i]));
  boost::multiprecision::cpp_int g = 0;
  std::vector<boost::multiprecision::cpp_int> num(static_cast<size_t>(r.size()));
  for (Eigen::Index i = 0; i < r.size(); ++i) {
    num[static_cast<size_t>(i)] =
        boost::multiprecision::numerator(r[i]) * (lcm / boost::multiprecision::denominator(r[i]));
    g = boost::multiprecision::gcd(g, num[static_cast<size_t>(i)]);
  }
  if (g == 0) g = 1;
  RatVec out(r.size());
  for (Eigen::Index i = 0; i < r.size(); ++i) out[i] = Rat(num[static_cast<size_t>(i)] / g);
  return out;
}

bool rat_vec_eq(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

bool rat_vec_less(const RatVec& a, const RatVec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

}  // namespace

WeightHull hull_of_weightset(const WeightSet& ws, size_t orbit_cap) {
  if (ws.family == Family::UserSupplied)
    fail(Errc::UnsupportedGround, "hull needs a parabolic Verma or simple family");
  WeightHull h;
  h.ws = ws;
  h.poly.ambient_dim = ws.rank();
  Orbit orb = orbit_weights(ws.cm, ws.integrability, ws.lambda.pairings,
                            IntVec::Zero(ws.rank()), orbit_cap);
  if (!orb.complete) fail(Errc::OrbitTruncated, "integrable orbit of lambda exceeded the cap");
  for (const auto& c : orb.members) h.poly.points.push_back(to_rat(c));

  NodeSet jc = complement(ws.integrability, ws.rank());
  if (!jc.empty()) {
    bool fin = all_finite(ws.cm);
    RootSystem rs =
        generate_roots(ws.cm, fin ? std::optional<Int>{} : std::optional<Int>{ws.depth_bound});
    h.exact = fin;
    for (const auto& r : rs.positive)
      if (height_on(r, jc) == 1) h.poly.rays.push_back(to_rat(r));
  }
  return h;
}

ExposingFunctional find_exposing_functional(const RationalPolyhedron& p,
                                            const std::vector<int>& point_ids,
                                            const std::vector<int>& ray_ids) {
  const int n = p.ambient_dim;
  std::vector<char> inp(p.points.size(), 0), inr(p.rays.size(), 0);
  for (int i : point_ids) inp.at(static_cast<size_t>(i)) = 1;
  for (int i : ray_ids) inr.at(static_cast<size_t>(i)) = 1;
  if (point_ids.empty()) fail(Errc::Infeasible, "a face needs at least one point");

  // Variables: g (free, n), m (free), eps (>= 0, <= 1). Maximize eps.
  lp::Problem lp;
  for (int i = 0; i < n; ++i) lp.add_var(false);
  lp.add_var(false);  // m
  lp.add_var(true);   // eps
  const int vm = n, ve = n + 1, nv = n + 2;
  auto row = [&](const RatVec& x, Rat mc, Rat ec) {
    RatVec a = RatVec::Zero(nv);
    for (int i = 0; i < n; ++i) a[i] = x[i];
    a[vm] = mc;
    a[ve] = ec;
    return a;
  };
  for (size_t i = 0; i < p.points.size(); ++i) {
    if (inp[i])
      lp.add_eq(row(p.points[i], Rat(-1), Rat(0)), Rat(0));  // g.p - m = 0
    else
      lp.add_ge(row(p.points[i], Rat(-1), Rat(-1)), Rat(0));  // g.p - m - eps >= 0
  }
  for (size_t j = 0; j < p.rays.size(); ++j) {
    if (inr[j])
      lp.add_eq(row(p.rays[j], Rat(0), Rat(0)), Rat(0));  // g.d = 0
    else
      lp.add_ge(row(p.rays[j], Rat(0), Rat(-1)), Rat(0));  // g.d >= eps
  }
  {
    RatVec a = RatVec::Zero(nv);
    a[ve] = 1;
    lp.add_le(a, Rat(1));
  }
  RatVec c = RatVec::Zero(nv);
  c[ve] = 1;
  lp.maximize(c);
  lp::Solution s = lp.solve();
  if (s.status != lp::Status::Optimal || s.objective <= 0)
    fail(Errc::Infeasible, "candidate is not an exposed face");
  ExposingFunctional f;
  f.coeffs = RatVec(n);
  for (int i = 0; i < n; ++i) f.coeffs[i] = s.x[i];
  f.level = s.x[vm];
  f.slack = s.objective;
  return f;
}

namespace {

struct FaceKey {
  std::vector<RatVec> pts;
  std::vector<RatVec> rays;
};

bool face_key_less(const FaceKey& a, const FaceKey& b) {
  if (a.pts.size() != b.pts.size()) return a.pts.size() < b.pts.size();
  if (a.rays.size() != b.rays.size()) return a.rays.size() < b.rays.size();
  for (size_t i = 0; i < a.pts.size(); ++i) {
    if (rat_vec_less(a.pts[i], b.pts[i])) return true;
    if (rat_vec_less(b.pts[i], a.pts[i])) return false;
  }
  for (size_t i = 0; i < a.rays.size(); ++i) {
    if (rat_vec_less(a.rays[i], b.rays[i])) return true;
    if (rat_vec_less(b.rays[i], a.rays[i])) return false;
  }
  return false;
}

}  // namespace

std::vector<HullFace> exposed_faces(const WeightHull& h, int length_cap) {
  const WeightSet& ws = h.ws;
  const int n = ws.rank();
  GroupEnumeration en = enumerate_group(ws.cm, ws.integrability, length_cap);
  if (!en.complete) fail(Errc::OrbitTruncated, "integrable group enumeration incomplete");

  std::vector<HullFace> out;
  std::set<FaceKey, bool (*)(const FaceKey&, const FaceKey&)> seen(face_key_less);
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    NodeSet J;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) J.insert(i);
    // Standard-face hull: integrable orbit of lambda inside the J-Levi,
    // plus the J-internal rays off the integrable directions.
    NodeSet ji = set_inter(J, ws.integrability);
    Orbit orb =
        orbit_weights(ws.cm, ji, ws.lambda.pairings, IntVec::Zero(n), 100000);
    if (!orb.complete) fail(Errc::OrbitTruncated, "face orbit exceeded the cap");
    std::vector<IntVec> base_rays;
    {
      bool fin = all_finite(ws.cm);
      RootSystem rs =
          generate_roots(ws.cm, fin ? std::optional<Int>{} : std::optional<Int>{ws.depth_bound});
      NodeSet jset = J;
      NodeSet off = set_minus(J, ji);
      for (const auto& r : rs.positive)
        if (subset_of(support(r), jset) && height_on(r, off) == 1) base_rays.push_back(r);
    }
    for (const auto& w : en.elements) {
      std::vector<RatVec> pts;
      bool ok = true;
      for (const auto& c : orb.members) {
        auto img = apply_to_weight(ws.cm, ws.lambda.pairings, w, c);
        if (!img) {
          ok = false;
          break;
        }
        pts.push_back(to_rat(*img));
      }
      if (!ok) continue;
      std::vector<RatVec> rys;
      for (const auto& r : base_rays) {
        IntVec img = w.apply(r);
        if (!all_nonneg(img)) {
          ok = false;
          break;
        }
        rys.push_back(primitive_ray(to_rat(img)));
      }
      if (!ok) continue;
      std::sort(pts.begin(), pts.end(), rat_vec_less);
      pts.erase(std::unique(pts.begin(), pts.end(), rat_vec_eq), pts.end());
      std::sort(rys.begin(), rys.end(), rat_vec_less);
      rys.erase(std::unique(rys.begin(), rys.end(), rat_vec_eq), rys.end());
      if (!seen.insert({pts, rys}).second) continue;

      HullFace f;
      f.conjugator = w;
      f.face_nodes = J;
      for (const auto& p : pts) {
        int id = -1;
        for (size_t i = 0; i < h.poly.points.size(); ++i)
          if (rat_vec_eq(h.poly.points[i], p)) id = static_cast<int>(i);
        if (id < 0) fail(Errc::Internal, "face point is not a hull generator");
        f.point_ids.push_back(id);
      }
      for (const auto& r : rys) {
        int id = -1;
        for (size_t i = 0; i < h.poly.rays.size(); ++i)
          if (rat_vec_eq(primitive_ray(h.poly.rays[i]), r)) id = static_cast<int>(i);
        if (id < 0) fail(Errc::Internal, "face ray is not a hull generator");
        f.ray_ids.push_back(id);
      }
      std::sort(f.point_ids.begin(), f.point_ids.end());
      f.point_ids.erase(std::unique(f.point_ids.begin(), f.point_ids.end()), f.point_ids.end());
      std::sort(f.ray_ids.begin(), f.ray_ids.end());
      f.ray_ids.erase(std::unique(f.ray_ids.begin(), f.ray_ids.end()), f.ray_ids.end());

      bool improper = f.point_ids.size() == h.poly.points.size() &&
                      f.ray_ids.size() == h.poly.rays.size();
      if (improper) {
        f.functional = {RatVec::Zero(n), Rat(0), Rat(0)};
      } else {
        f.functional = find_exposing_functional(h.poly, f.point_ids, f.ray_ids);
        // The certified functional's maximizer must reproduce the candidate.
        std::vector<int> maxp, maxr;
        for (size_t i = 0; i < h.poly.points.size(); ++i) {
          Rat v = 0;
          for (int d = 0; d < n; ++d) v += f.functional.coeffs[d] * h.poly.points[i][d];
          if (v == f.functional.level) maxp.push_back(static_cast<int>(i));
        }
        for (size_t j = 0; j < h.poly.rays.size(); ++j) {
          Rat v = 0;
          for (int d = 0; d < n; ++d) v += f.functional.coeffs[d] * h.poly.rays[j][d];
          if (v == 0) maxr.push_back(static_cast<int>(j));
        }
        if (maxp != f.point_ids || maxr != f.ray_ids)
          fail(Errc::Internal, "functional maximizer differs from its candidate face");
      }
      out.push_back(std::move(f));
    }
  }
  return out;
}

DecompositionReport check_face_decomposition(const RationalPolyhedron& Y,
                                             const std::vector<RatVec>& S,
                                             const std::vector<RatVec>& D) {
  DecompositionReport rep;
  std::vector<RatVec> ys;  // Y cap S
  for (const auto& s : S)
    if (Y.contains(s)) ys.push_back(s);
  std::vector<RatVec> rec;
  for (size_t j = 0; j < D.size(); ++j) {
    // (d + Y) cap Y nonempty <=> exists y in Y with y + d in Y.
    const RatVec& d = D[j];
    const int np = static_cast<int>(Y.points.size());
    const int nr = static_cast<int>(Y.rays.size());
    lp::Problem p;
    for (int k = 0; k < 2 * (np + nr); ++k) p.add_var(true);
    const int off = np + nr;
    for (int dim = 0; dim < static_cast<int>(d.size()); ++dim) {
      RatVec a = RatVec::Zero(2 * (np + nr));
      for (int i = 0; i < np; ++i) {
        a[i] = Y.points[i][dim];
        a[off + i] = -Y.points[i][dim];
      }
      for (int r = 0; r < nr; ++r) {
        a[np + r] = Y.rays[r][dim];
        a[off + np + r] = -Y.rays[r][dim];
      }
      p.add_eq(a, -d[dim]);  // y - y' = -d with y' = y + d
    }
    RatVec ones = RatVec::Zero(2 * (np + nr));
    for (int i = 0; i < np; ++i) ones[i] = 1;
    p.add_eq(ones, Rat(1));
    RatVec ones2 = RatVec::Zero(2 * (np + nr));
    for (int i = 0; i < np; ++i) ones2[off + i] = 1;
    p.add_eq(ones2, Rat(1));
    if (p.solve().status == lp::Status::Optimal) {
      rec.push_back(d);
      rep.recurrent_ray_ids.push_back(static_cast<int>(j));
    }
  }
  // Two-way containment of generator descriptions.
  for (const auto& pt : Y.points)
    if (!lp::in_polyhedron(ys, rec, pt))
      fail(Errc::DecompositionFails, "a Y generator escapes conv(Y cap S) + recurrent cone");
  for (const auto& r : Y.rays)
    if (!lp::in_cone(rec, r))
      fail(Errc::DecompositionFails, "a Y ray escapes the recurrent cone");
  for (const auto& s : ys)
    if (!Y.contains(s)) fail(Errc::DecompositionFails, "trace point escaped Y");
  for (const auto& d : rec)
    if (!Y.recession_contains(d))
      fail(Errc::DecompositionFails, "recurrent direction not in Y's recession cone");
  rep.holds = true;
  return rep;
}

bool is_212_closed_hull(const RationalPolyhedron& Y, const WeightHull& h) {
  if (Y.points.empty()) fail(Errc::NonPolyhedralInput, "empty face description");
  // Trace on the hull's point generators.
  std::vector<RatVec> trace;
  std::vector<IntVec> trace_int;
  for (const auto& p : h.poly.points)
    if (Y.contains(p)) {
      trace.push_back(p);
      trace_int.push_back(to_int(p));
    }
  std::vector<RatVec> rec;
  for (const auto& d : h.poly.rays) {
    // recurrent iff d + Y meets Y; on V-data it suffices that d lies in Y's
    // recession cone
    if (Y.recession_contains(d)) rec.push_back(d);
  }
  if (trace.empty()) return false;
  // Shape: Y == conv(trace) + cone(rec).
  for (const auto& p : Y.points)
    if (!lp::in_polyhedron(trace, rec, p)) return false;
  for (const auto& r : Y.rays)
    if (!lp::in_cone(rec, r)) return false;
  for (const auto& t : trace)
    if (!Y.contains(t)) return false;
  for (const auto& d : rec)
    if (!Y.recession_contains(d)) return false;

  // Discrete trace check on the orbit-point ground.
  WeightSet pts = h.ws;
  pts.members.clear();
  for (const auto& p : h.poly.points) pts.members.push_back(to_int(p));
  std::sort(pts.members.begin(), pts.members.end(), canon_less);
  pts.complete = true;  // the generator list is the whole ground here
  pts.family = h.ws.family;
  GroundSet g = GroundSet::weights(pts);
  return is_212_closed(g, trace_int).closed;
}

}  // namespace kmf
