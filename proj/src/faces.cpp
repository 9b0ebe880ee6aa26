#include "kmfaces/faces.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

namespace kmf {

namespace {

std::vector<IntVec> sorted_unique(std::vector<IntVec> v) {
  std::sort(v.begin(), v.end(), canon_less);
  v.erase(std::unique(v.begin(), v.end(), vec_eq), v.end());
  return v;
}

Int max_member_height(const std::vector<IntVec>& Y) {
  Int h = 0;
  for (const auto& y : Y) h = std::max(h, height(y));
  return h;
}

}  // namespace

GroundSet GroundSet::weights(WeightSet w) {
  GroundSet g;
  g.kind = Kind::Weights;
  g.elements = w.members;
  g.sum_exact = w.complete;
  g.ws = std::move(w);
  return g;
}

GroundSet GroundSet::roots(RootSystem r, bool with_zero) {
  GroundSet g;
  g.kind = with_zero ? Kind::RootsWithZero : Kind::Roots;
  g.elements = r.all_signed();
  if (with_zero) g.elements.push_back(IntVec::Zero(r.rank()));
  std::sort(g.elements.begin(), g.elements.end(), canon_less);
  g.sum_exact = r.complete;
  g.rs = std::move(r);
  return g;
}

void GroundSet::build() const {
  if (built_) return;
  for (int i = 0; i < size(); ++i) index_[elements[i]] = i;
  for (int i = 0; i < size(); ++i)
    for (int j = i; j < size(); ++j) sums_[elements[i] + elements[j]].push_back({i, j});
  built_ = true;
}

int GroundSet::index_of(const IntVec& v) const {
  build();
  auto it = index_.find(v);
  return it == index_.end() ? -1 : it->second;
}

const std::vector<std::pair<int, int>>& GroundSet::pairs_for_sum(const IntVec& s) const {
  build();
  static const std::vector<std::pair<int, int>> empty;
  auto it = sums_.find(s);
  return it == sums_.end() ? empty : it->second;
}

namespace {

std::vector<int> to_indices(const GroundSet& g, const std::vector<IntVec>& Y) {
  std::vector<int> idx;
  for (const auto& y : Y) {
    int i = g.index_of(y);
    if (i < 0) fail(Errc::ParseError, "subset member " + vec_to_string(y) + " not in ground");
    idx.push_back(i);
  }
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return idx;
}

bool weights_window_exact(const GroundSet& g, const std::vector<IntVec>& Y) {
  return g.ws->complete || 2 * max_member_height(Y) <= g.ws->depth_bound;
}

}  // namespace

Check212 is_212_closed(const GroundSet& g, const std::vector<IntVec>& Y) {
  Check212 out;
  if (Y.empty()) {
    out.closed = true;
    out.empty_input = true;
    out.window_exact = g.sum_exact;
    return out;
  }
  if ((g.kind == GroundSet::Kind::Roots || g.kind == GroundSet::Kind::RootsWithZero) &&
      !g.sum_exact)
    fail(Errc::WindowInexact, "pair check on a truncated root window; use decide_212");
  std::vector<int> idx = to_indices(g, Y);
  out.window_exact =
      g.kind == GroundSet::Kind::Weights ? weights_window_exact(g, Y) : g.sum_exact;
  std::vector<char> in(g.size(), 0);
  for (int i : idx) in[i] = 1;
  for (size_t a = 0; a < idx.size(); ++a)
    for (size_t b = a; b < idx.size(); ++b) {
      IntVec s = g.elements[idx[a]] + g.elements[idx[b]];
      for (auto [k, l] : g.pairs_for_sum(s)) {
        if (in[k] && in[l]) continue;
        out.closed = false;
        out.witness = Witness212{g.elements[idx[a]], g.elements[idx[b]], g.elements[k],
                                 g.elements[l]};
        return out;
      }
    }
  out.closed = true;
  return out;
}

Closure212 closure_212(const GroundSet& g, const std::vector<IntVec>& seed) {
  Closure212 out;
  std::vector<int> idx = to_indices(g, seed);
  std::vector<char> in(g.size(), 0);
  std::vector<int> members;
  std::deque<int> work;
  auto add = [&](int i) {
    if (in[i]) return;
    in[i] = 1;
    members.push_back(i);
    work.push_back(i);
  };
  for (int i : idx) add(i);
  while (!work.empty()) {
    int a = work.front();
    work.pop_front();
    // pair `a` against every current member, including itself
    for (size_t t = 0; t < members.size(); ++t) {
      int b = members[t];
      IntVec s = g.elements[a] + g.elements[b];
      for (auto [k, l] : g.pairs_for_sum(s)) {
        add(k);
        add(l);
      }
    }
  }
  std::vector<IntVec> res;
  for (int i = 0; i < g.size(); ++i)
    if (in[i]) res.push_back(g.elements[i]);
  out.members = std::move(res);
  out.window_exact = g.kind == GroundSet::Kind::Weights ? weights_window_exact(g, out.members)
                                                        : g.sum_exact;
  return out;
}

std::optional<WeakWitness> find_weak_face_witness(const GroundSet& g,
                                                  const std::vector<IntVec>& Y, Int budget) {
  if (budget < 2) fail(Errc::ParseError, "witness budget must be >= 2");
  if (Y.empty()) return std::nullopt;
  std::vector<int> yidx = to_indices(g, Y);
  std::vector<char> in(g.size(), 0);
  for (int i : yidx) in[i] = 1;

  struct Node {
    IntVec sum;
    int elem = -1;    // ground index appended at this step
    int parent = -1;  // index into previous layer's storage
  };
  // Layered sums with parent links for witness reconstruction.
  auto advance = [&](const std::vector<Node>& prev, const std::vector<int>& alphabet,
                     std::vector<Node>& outn, std::map<IntVec, int, CanonLess>& seen) {
    for (int p = 0; p < static_cast<int>(prev.size()); ++p)
      for (int e : alphabet) {
        IntVec s = prev[p].sum + g.elements[e];
        if (seen.count(s)) continue;
        seen[s] = static_cast<int>(outn.size());
        outn.push_back({s, e, p});
      }
  };
  std::vector<int> all(g.size());
  std::iota(all.begin(), all.end(), 0);
  std::vector<int> outside;
  for (int i = 0; i < g.size(); ++i)
    if (!in[i]) outside.push_back(i);
  if (outside.empty()) return std::nullopt;

  const int n0 = static_cast<int>(g.elements.front().size());
  std::vector<std::vector<Node>> ly{{{IntVec::Zero(n0), -1, -1}}};           // sums from Y
  std::vector<std::vector<Node>> lany{{{IntVec::Zero(n0), -1, -1}}};         // sums from X
  std::vector<std::vector<Node>> lout{{}};                                    // sums with an outside term
  std::map<IntVec, int, CanonLess> seen_any{{IntVec::Zero(n0), 0}};
  for (Int k = 1; k <= budget; ++k) {
    std::vector<Node> ny, nany, nout;
    std::map<IntVec, int, CanonLess> sy, sany, sout;
    advance(ly.back(), yidx, ny, sy);
    advance(lany.back(), all, nany, sany);
    // outside-tainted sums: extend tainted by anything, or clean by an outside element
    for (int p = 0; p < static_cast<int>(lout.back().size()); ++p)
      for (int e : all) {
        IntVec s = lout.back()[p].sum + g.elements[e];
        if (sout.count(s)) continue;
        sout[s] = static_cast<int>(nout.size());
        nout.push_back({s, e, p});
      }
    for (int p = 0; p < static_cast<int>(lany.back().size()); ++p)
      for (int e : outside) {
        IntVec s = lany.back()[p].sum + g.elements[e];
        if (sout.count(s)) continue;
        sout[s] = static_cast<int>(nout.size());
        nout.push_back({s, e, ~p});  // ~p marks a parent in the clean layer
      }
    ly.push_back(std::move(ny));
    lany.push_back(std::move(nany));
    lout.push_back(std::move(nout));
    // match: same sum, same total coefficient k
    for (int i = 0; i < static_cast<int>(ly[k].size()); ++i) {
      auto it = sout.find(ly[k][i].sum);
      if (it == sout.end()) continue;
      WeakWitness w;
      // left side from Y-layers
      {
        int layer = static_cast<int>(k), at = i;
        while (layer > 0) {
          w.lhs.push_back(g.elements[ly[layer][at].elem]);
          at = ly[layer][at].parent;
          --layer;
        }
      }
      // right side: walk tainted layers, hopping to clean layers at the mark
      {
        int layer = static_cast<int>(k), at = it->second;
        bool tainted = true;
        while (layer > 0) {
          const Node& nd = tainted ? lout[layer][at] : lany[layer][at];
          w.rhs.push_back(g.elements[nd.elem]);
          int parent = nd.parent;
          if (tainted && parent < 0) {
            tainted = false;
            parent = ~parent;
          }
          at = parent;
          --layer;
        }
      }
      return w;
    }
  }
  return std::nullopt;
}

namespace {

// Component ground of a (possibly decomposable) root window, in the
// submatrix coordinate system.
struct ComponentGround {
  GroundSet ground;
  std::vector<int> nodes;  // full-coordinate node list
};

IntVec restrict_vec(const IntVec& v, const std::vector<int>& nodes) {
  IntVec out(static_cast<Eigen::Index>(nodes.size()));
  for (size_t k = 0; k < nodes.size(); ++k) out[static_cast<Eigen::Index>(k)] = v[nodes[k]];
  return out;
}

IntVec embed_vec(const IntVec& v, const std::vector<int>& nodes, int n) {
  IntVec out = IntVec::Zero(n);
  for (size_t k = 0; k < nodes.size(); ++k) out[nodes[k]] = v[static_cast<Eigen::Index>(k)];
  return out;
}

ComponentGround component_ground(const RootSystem& rs, const std::vector<int>& nodes,
                                 bool with_zero) {
  CartanMatrix sub = rs.cm.submatrix(nodes);
  std::optional<Int> bound = all_finite(sub) ? std::optional<Int>{} : rs.height_bound;
  RootSystem sub_rs = generate_roots(sub, bound);
  return {GroundSet::roots(std::move(sub_rs), with_zero), nodes};
}

bool is_a2_type(const CartanMatrix& cm) {
  return cm.rank() == 2 && cm(0, 1) * cm(1, 0) == 1;
}

Decision212 decide_212_roots(const GroundSet& g, const std::vector<IntVec>& Y);

}  // namespace

Decision212 decide_212(const GroundSet& g, const std::vector<IntVec>& Y) {
  if (Y.empty()) return {true, "empty"};
  std::vector<int> idx = to_indices(g, Y);
  if (static_cast<int>(idx.size()) == g.size()) return {true, "improper"};
  if (g.kind == GroundSet::Kind::Weights) {
    Check212 c = is_212_closed(g, Y);
    return {c.closed, c.window_exact ? "pair-scan" : "pair-scan-window"};
  }
  return decide_212_roots(g, Y);
}

namespace {

Decision212 decide_212_roots(const GroundSet& g, const std::vector<IntVec>& Y) {
  const RootSystem& rs = *g.rs;
  bool with_zero = g.kind == GroundSet::Kind::RootsWithZero;
  auto comps = components(rs.cm);
  if (comps.size() > 1) {
    IntVec zero = IntVec::Zero(rs.rank());
    for (const auto& y : Y)
      if (is_zero(y)) return {false, "component-product"};  // proper set with 0 explodes
    for (const auto& nodes : comps) {
      ComponentGround cg = component_ground(rs, nodes, with_zero);
      std::vector<IntVec> trace;
      NodeSet node_set(nodes.begin(), nodes.end());
      for (const auto& y : Y)
        if (subset_of(support(y), node_set)) trace.push_back(restrict_vec(y, nodes));
      if (trace.size() == static_cast<size_t>(cg.ground.size()))
        return {false, "component-product"};  // an improper trace explodes the component
      auto d = decide_212(cg.ground, trace);
      if (!d.closed) return {false, "component-product"};
    }
    return {true, "component-product"};
  }
  auto kind = classify_type(rs.cm)[0].kind;
  if (kind == DiagramKind::Finite) {
    Check212 c = is_212_closed(g, Y);
    return {c.closed, "pair-scan"};
  }
  if (kind == DiagramKind::Indefinite) return {false, "indefinite"};
  // Affine: strip delta-shifts and decide on the finite core.
  AffineData ad = affine_structure(rs);
  AffineProjection pr;
  try {
    pr = affine_project(rs, Y, with_zero);
  } catch (const Error& e) {
    if (e.code() == Errc::ShapeViolation) return {false, "affine-projection"};
    throw;
  }
  if (!pr.exact_shape) return {false, "affine-projection"};
  ComponentGround core = component_ground(rs, ad.finite_nodes, with_zero);
  std::vector<IntVec> z;
  for (const auto& v : pr.core) z.push_back(restrict_vec(v, ad.finite_nodes));
  if (z.size() == static_cast<size_t>(core.ground.size())) return {false, "affine-projection"};
  auto d = decide_212(core.ground, z);
  return {d.closed, "affine-projection"};
}

std::vector<std::vector<IntVec>> orbit_of_set(const CartanMatrix& cm,
                                              const std::vector<IntVec>& base, int length_cap) {
  GroupEnumeration g = enumerate_group(cm, complement({}, cm.rank()), length_cap);
  if (!g.complete) fail(Errc::SearchExhausted, "Weyl group enumeration hit the length cap");
  std::set<std::vector<IntVec>, bool (*)(const std::vector<IntVec>&, const std::vector<IntVec>&)>
      out(+[](const std::vector<IntVec>& a, const std::vector<IntVec>& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        for (size_t i = 0; i < a.size(); ++i) {
          if (canon_less(a[i], b[i])) return true;
          if (canon_less(b[i], a[i])) return false;
        }
        return false;
      });
  for (const auto& w : g.elements) {
    std::vector<IntVec> img;
    for (const auto& v : base) img.push_back(w.apply(v));
    out.insert(sorted_unique(std::move(img)));
  }
  return std::vector<std::vector<IntVec>>(out.begin(), out.end());
}

}  // namespace

std::vector<std::vector<IntVec>> exceptional_a2_family(const RootSystem& rs) {
  if (!is_a2_type(rs.cm)) fail(Errc::ParseError, "exceptional family exists only in the rank-2 simply-laced case");
  IntVec a0 = unit_vec(2, 0), a1 = unit_vec(2, 1);
  IntVec th = a0 + a1;
  std::vector<std::vector<IntVec>> fam;
  for (const auto& base : std::vector<std::vector<IntVec>>{
           {a0, a1}, {a0, a1, th}, {-a0, -a1, th}}) {
    for (auto& s : orbit_of_set(rs.cm, base, 12)) fam.push_back(std::move(s));
  }
  return fam;
}

WeakDecision decide_weak_face(const GroundSet& g, const std::vector<IntVec>& Y, Int probe_budget) {
  WeakDecision out;
  if (Y.empty()) return {true, "empty", std::nullopt};
  std::vector<int> idx = to_indices(g, Y);
  auto finish = [&](bool weak, std::string method) {
    out.weak = weak;
    out.method = std::move(method);
    out.witness = find_weak_face_witness(g, Y, probe_budget);
    if (out.weak && out.witness)
      fail(Errc::Internal, "weak-face decision contradicted by a bounded witness");
    return out;
  };
  if (static_cast<int>(idx.size()) == g.size()) return finish(true, "improper");

  if (g.kind == GroundSet::Kind::Weights)
    return finish(decide_212(g, Y).closed, "weights-equivalence");

  const RootSystem& rs = *g.rs;
  bool with_zero = g.kind == GroundSet::Kind::RootsWithZero;
  auto comps = components(rs.cm);
  if (comps.size() > 1) {
    for (const auto& y : Y)
      if (is_zero(y)) return finish(false, "component-product");
    for (const auto& nodes : comps) {
      ComponentGround cg = component_ground(rs, nodes, with_zero);
      std::vector<IntVec> trace;
      NodeSet node_set(nodes.begin(), nodes.end());
      for (const auto& y : Y)
        if (subset_of(support(y), node_set)) trace.push_back(restrict_vec(y, nodes));
      if (trace.size() == static_cast<size_t>(cg.ground.size()))
        return finish(false, "component-product");
      auto d = decide_weak_face(cg.ground, trace, probe_budget);
      if (!d.weak) return finish(false, "component-product");
    }
    return finish(true, "component-product");
  }
  auto kind = classify_type(rs.cm)[0].kind;
  if (kind == DiagramKind::Indefinite) return finish(false, "indefinite");
  if (kind == DiagramKind::Finite) {
    if (!decide_212(g, Y).closed) return finish(false, "roots-classification");
    if (!with_zero && is_a2_type(rs.cm)) {
      std::vector<IntVec> ys = sorted_unique(Y);
      for (const auto& ex : exceptional_a2_family(rs)) {
        if (ex.size() != ys.size()) continue;
        bool eq = true;
        for (size_t i = 0; i < ex.size(); ++i) eq &= vec_eq(ex[i], ys[i]);
        if (eq) return finish(false, "sl3-exceptional");
      }
    }
    return finish(true, "roots-classification");
  }
  // Affine: weak faces of both grounds match 212-closedness over the core
  // including zero, so route the with-zero decision regardless of g.kind.
  AffineData ad = affine_structure(rs);
  AffineProjection pr;
  try {
    pr = affine_project(rs, Y, with_zero);
  } catch (const Error& e) {
    if (e.code() == Errc::ShapeViolation) return finish(false, "affine-projection");
    throw;
  }
  if (!pr.exact_shape) return finish(false, "affine-projection");
  ComponentGround core = component_ground(rs, ad.finite_nodes, true);
  std::vector<IntVec> z;
  for (const auto& v : pr.core) z.push_back(restrict_vec(v, ad.finite_nodes));
  if (z.size() == static_cast<size_t>(core.ground.size()))
    return finish(false, "affine-projection");
  return finish(decide_212(core.ground, z).closed, "affine-projection");
}

DerivedInvariants derived_invariants(const GroundSet& g, const std::vector<IntVec>& Y) {
  if (g.kind != GroundSet::Kind::Weights)
    fail(Errc::UnsupportedGround, "derived invariants are defined on weight grounds");
  const WeightSet& ws = *g.ws;
  to_indices(g, Y);
  DerivedInvariants inv;
  for (const auto& y : Y) inv.support_nodes = set_union(inv.support_nodes, support(y));
  NodeSet jv = blocked_nodes(ws);
  inv.blocked = set_inter(inv.support_nodes, jv);
  inv.lambda_in_y =
      std::any_of(Y.begin(), Y.end(), [](const IntVec& v) { return is_zero(v); });

  NodeSet free_nodes = set_minus(inv.support_nodes, inv.blocked);
  RootSystem rs = generate_roots(
      ws.cm, all_finite(ws.cm) ? std::optional<Int>{} : std::optional<Int>{ws.cm.rank()});
  std::vector<IntVec> layer1;
  for (const auto& r : rs.positive)
    if (height_on(r, free_nodes) == 1) layer1.push_back(r);
  VecSet yset(Y.begin(), Y.end());
  for (const auto& y : Y) {
    if (is_zero(y)) continue;
    if ((y.array() > 1).any()) continue;  // squarefree only
    if (height_on(y, free_nodes) != 1) continue;
    if (!rs.is_positive_root(y)) continue;
    bool chain = true;
    for (const auto& e : layer1)
      if (dominated(e, y) && !yset.count(e)) {
        chain = false;
        break;
      }
    if (chain) inv.markers.push_back(y);
  }
  std::size_t bound = free_nodes.size() << inv.blocked.size();
  if (inv.markers.size() > bound) fail(Errc::Internal, "marker count exceeds its bound");
  return inv;
}

std::vector<IntVec> standard_face_markers(const WeightSet& ws, const NodeSet& I) {
  GroundSet g = GroundSet::weights(ws);
  return derived_invariants(g, standard_face(ws, I)).markers;
}

namespace {

// Applies the word of `w` member-by-member; nullopt when any image leaves
// the window or the depletion cone.
std::optional<std::vector<IntVec>> apply_to_subset(const WeightSet& ws, const WeylElement& w,
                                                   const std::vector<IntVec>& Y) {
  std::vector<IntVec> out;
  for (const auto& y : Y) {
    auto img = apply_to_weight(ws.cm, ws.lambda.pairings, w, y);
    if (!img || !ws.contains(*img)) return std::nullopt;
    out.push_back(*img);
  }
  return sorted_unique(std::move(out));
}

}  // namespace

FaceClassification classify_face(const GroundSet& g, const std::vector<IntVec>& Y,
                                 int length_cap) {
  if (g.kind != GroundSet::Kind::Weights)
    fail(Errc::UnsupportedGround, "classification runs on weight grounds");
  const WeightSet& ws = *g.ws;
  if (!decide_212(g, Y).closed) fail(Errc::NotClosed, "subset is not 212-closed");
  const int n = ws.rank();
  FaceClassification res;
  res.conjugator = identity_element(n);
  std::vector<IntVec> cur = sorted_unique(Y);
  auto contains_lambda = [&](const std::vector<IntVec>& s) {
    return std::any_of(s.begin(), s.end(), [](const IntVec& v) { return is_zero(v); });
  };

  // Vertex phase: minimal-depth descent, breadth-first fallback.
  auto bfs_vertex = [&]() {
    GroupEnumeration en = enumerate_group(ws.cm, ws.integrability, length_cap);
    for (const auto& w : en.elements) {
      auto img = apply_to_subset(ws, w, cur);
      if (img && contains_lambda(*img)) {
        cur = *img;
        res.conjugator = w;
        res.certificate.push_back("vertex: breadth-first over the integrable group");
        return;
      }
    }
    if (!en.complete)
      fail(Errc::SearchExhausted, "vertex search exhausted the length cap; partial result only");
    fail(Errc::Internal, "no integrable conjugate contains the highest weight");
  };

  if (!contains_lambda(cur)) {
    bool descent_ok = true;
    std::vector<IntVec> work = cur;
    WeylElement om = identity_element(n);
    size_t guard = 0;
    while (!contains_lambda(work) && descent_ok) {
      if (++guard > ws.members.size() + 1) {
        descent_ok = false;
        break;
      }
      Int d = work.front().sum();
      for (const auto& y : work) d = std::min(d, height(y));
      IntVec mu;
      for (const auto& y : work)
        if (height(y) == d) {
          mu = y;
          break;
        }
      int pick = -1;
      std::vector<IntVec> image;
      for (int j = 0; j < n && pick < 0; ++j) {
        if (mu[j] == 0) continue;
        IntVec up = mu;
        up[j] -= 1;
        if (!ws.contains(up)) continue;  // mu + alpha_j must be a weight
        if (!is_integer(ws.lambda.pairings[j])) continue;
        WeylElement sj = simple_reflection(ws.cm, j);
        auto img = apply_to_subset(ws, sj, work);
        if (!img) continue;
        Int nd = (*img).front().sum();
        for (const auto& y : *img) nd = std::min(nd, height(y));
        if (!contains_lambda(*img) && nd >= d) continue;
        if (!decide_212(g, *img).closed) continue;
        pick = j;
        image = *img;
      }
      if (pick < 0) {
        descent_ok = false;
        break;
      }
      work = image;
      om = compose(simple_reflection(ws.cm, pick), om);
      res.certificate.push_back("vertex: descent reflection at node " + std::to_string(pick));
    }
    bool word_integrable = true;
    for (int j : om.word) word_integrable &= ws.integrability.count(j) > 0;
    if (descent_ok && contains_lambda(work) && word_integrable) {
      cur = work;
      res.conjugator = om;
    } else {
      res.certificate.clear();
      bfs_vertex();
    }
  }

  // Face phase: marker-guided search over the blocked parabolic.
  size_t guard = 0;
  for (;;) {
    if (++guard > 64) fail(Errc::Internal, "face phase failed to terminate");
    DerivedInvariants inv = derived_invariants(g, cur);
    auto target = standard_face_markers(ws, inv.support_nodes);
    auto mine = inv.markers;
    if (mine.size() == target.size()) {
      auto face = standard_face(ws, inv.support_nodes);
      std::vector<IntVec> got = sorted_unique(cur);
      if (got.size() != face.size() ||
          !std::equal(got.begin(), got.end(), face.begin(), vec_eq))
        fail(Errc::Internal, "marker match did not certify the standard face");
      res.face_nodes = inv.support_nodes;
      res.certificate.push_back("face: marker sets agree");
      res.certificate.push_back("face: conjugate equals the standard face (verified)");
      return res;
    }
    // Search the blocked parabolic for the anchored conjugate with the
    // smallest marker deficit; the classification argument pins it at zero.
    Int cur_score = static_cast<Int>(target.size()) - static_cast<Int>(mine.size());
    GroupEnumeration en = enumerate_group(ws.cm, inv.blocked, length_cap);
    struct Cand {
      Int score;
      WeylElement w;
      std::vector<IntVec> img;
    };
    std::optional<Cand> best;
    NodeSet free_nodes = set_minus(inv.support_nodes, inv.blocked);
    for (const auto& w : en.elements) {
      if (w.word.empty()) continue;
      auto img = apply_to_subset(ws, w, cur);
      if (!img) continue;
      bool anchored = true;  // lambda - Pi_{free} must sit inside the image
      VecSet im(img->begin(), img->end());
      for (int t : free_nodes) anchored &= im.count(unit_vec(n, t)) > 0;
      if (!anchored) continue;
      DerivedInvariants winv = derived_invariants(g, *img);
      Int score = static_cast<Int>(standard_face_markers(ws, winv.support_nodes).size()) -
                  static_cast<Int>(winv.markers.size());
      if (!best || score < best->score) best = Cand{score, w, *img};
      if (best->score == 0) break;
    }
    if (!best || best->score >= cur_score) {
      if (!en.complete)
        fail(Errc::SearchExhausted, "face search exhausted the length cap; partial result only");
      fail(Errc::Internal, "face phase made no progress in the blocked parabolic");
    }
    cur = best->img;
    res.conjugator = compose(best->w, res.conjugator);
    res.certificate.push_back("face: conjugated inside the blocked parabolic");
  }
}

std::vector<std::vector<IntVec>> enumerate_212(const GroundSet& g, int cap) {
  const int m = g.size();
  if (m > cap) fail(Errc::GroundTooLarge, "ground has " + std::to_string(m) + " elements");
  if (m > 20) fail(Errc::GroundTooLarge, "refusing to enumerate over 2^" + std::to_string(m));
  // per-pair collision lists against index masks
  std::vector<std::vector<uint32_t>> need(static_cast<size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j) {
      auto& lst = need[static_cast<size_t>(i) * m + j];
      for (auto [k, l] : g.pairs_for_sum(g.elements[i] + g.elements[j]))
        lst.push_back((1u << k) | (1u << l));
    }
  std::vector<std::vector<IntVec>> out;
  for (uint32_t mask = 1; mask < (1u << m); ++mask) {
    bool ok = true;
    for (int i = 0; i < m && ok; ++i) {
      if (!(mask >> i & 1)) continue;
      for (int j = i; j < m && ok; ++j) {
        if (!(mask >> j & 1)) continue;
        for (uint32_t req : need[static_cast<size_t>(i) * m + j])
          if ((mask & req) != req) {
            ok = false;
            break;
          }
      }
    }
    if (!ok) continue;
    std::vector<IntVec> sub;
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) sub.push_back(g.elements[i]);
    out.push_back(std::move(sub));
  }
  return out;
}

std::vector<IntVec> affine_lift(const RootSystem& rs, const std::vector<IntVec>& Z,
                                bool with_zero) {
  AffineData ad = affine_structure(rs);
  if (!rs.height_bound) fail(Errc::Internal, "affine window must be bounded");
  VecSet shorts(ad.ring_short.begin(), ad.ring_short.end());
  VecSet longs(ad.ring_long.begin(), ad.ring_long.end());
  for (const auto& z : Z)
    if (!shorts.count(z) && !longs.count(z))
      fail(Errc::ParseError, "lift seed " + vec_to_string(z) + " is not a core root");
  // Validate Z as a proper 212-closed subset of the core ground.
  ComponentGround core = component_ground(rs, ad.finite_nodes, with_zero);
  std::vector<IntVec> zc;
  for (const auto& z : Z) zc.push_back(restrict_vec(z, ad.finite_nodes));
  if (zc.size() == static_cast<size_t>(core.ground.size()))
    fail(Errc::NotClosed, "lift seed must be proper");
  if (!decide_212(core.ground, zc).closed)
    fail(Errc::NotClosed, "lift seed is not 212-closed in the core");

  Int H = *rs.height_bound;
  VecSet out;
  for (const auto& z : Z) {
    Int step = shorts.count(z) ? 1 : ad.tier;
    for (Int k = -(2 * H);; ++k) {
      IntVec v = z + (step * k) * ad.delta;
      Int h = height(v);
      if (h > H) break;
      if (h < -H) continue;
      if (!rs.is_root(v)) fail(Errc::Internal, "lift produced a non-root in window");
      out.insert(v);
    }
  }
  return sorted_vecs(std::move(out));
}

AffineProjection affine_project(const RootSystem& rs, const std::vector<IntVec>& Y,
                                bool with_zero) {
  AffineData ad = affine_structure(rs);
  (void)with_zero;
  VecSet core(ad.core.begin(), ad.core.end());
  VecSet z;
  for (const auto& y : Y) {
    if (is_zero(y)) fail(Errc::ShapeViolation, "zero element in a candidate face");
    auto tag = rs.tag_of(y);
    if (!tag) fail(Errc::ParseError, "element " + vec_to_string(y) + " is not a window root");
    if (*tag == RootTag::Imaginary)
      fail(Errc::ShapeViolation, "imaginary element " + vec_to_string(y));
    Int c = y[ad.affine_node], d = ad.delta[ad.affine_node];
    Int twice = 2 * c;
    if (twice % d != 0) fail(Errc::Internal, "projection arithmetic failed");
    Int m2 = twice / d;
    if (m2 % 2 != 0)
      fail(Errc::ShapeViolation, "half-shift element " + vec_to_string(y));
    IntVec xi = y - (m2 / 2) * ad.delta;
    if (!core.count(xi)) fail(Errc::Internal, "projection left the core");
    z.insert(xi);
  }
  AffineProjection out;
  out.core = sorted_vecs(VecSet(z));
  // Residue check: Y must be exactly the window slice of the lift.
  VecSet shorts(ad.ring_short.begin(), ad.ring_short.end());
  Int H = rs.height_bound.value_or(0);
  VecSet slice;
  for (const auto& zz : out.core) {
    Int step = shorts.count(zz) ? 1 : ad.tier;
    for (Int k = -(2 * H);; ++k) {
      IntVec v = zz + (step * k) * ad.delta;
      Int h = height(v);
      if (h > H) break;
      if (h < -H) continue;
      slice.insert(v);
    }
  }
  VecSet ys(Y.begin(), Y.end());
  out.exact_shape = (slice == ys);
  return out;
}

RootFaceFamily classify_rootsystem_faces(const RootSystem& rs, bool with_zero) {
  RootFaceFamily fam;
  fam.with_zero = with_zero;
  auto set_less = [](const std::vector<IntVec>& a, const std::vector<IntVec>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (size_t i = 0; i < a.size(); ++i) {
      if (canon_less(a[i], b[i])) return true;
      if (canon_less(b[i], a[i])) return false;
    }
    return false;
  };
  auto comps = components(rs.cm);
  if (comps.size() > 1) {
    // Component product: unions of per-component choices (empty or proper),
    // tainted when any choice fails the weak-face property in its component.
    struct Choice {
      std::vector<IntVec> set;
      bool tainted = false;
    };
    std::vector<std::vector<Choice>> choices;
    for (const auto& nodes : comps) {
      ComponentGround cg = component_ground(rs, nodes, with_zero);
      RootFaceFamily sub = classify_rootsystem_faces(*cg.ground.rs, with_zero);
      fam.window_exact &= sub.window_exact;
      std::vector<Choice> embedded{{{}, false}};  // empty trace allowed
      auto embed_all = [&](const std::vector<IntVec>& f, bool taint) {
        std::vector<IntVec> e;
        for (const auto& v : f) e.push_back(embed_vec(v, nodes, rs.rank()));
        embedded.push_back({std::move(e), taint});
      };
      for (const auto& f : sub.proper) embed_all(f, false);
      for (const auto& f : sub.exceptional) embed_all(f, true);
      choices.push_back(std::move(embedded));
    }
    std::vector<Choice> acc{{{}, false}};
    for (const auto& ch : choices) {
      std::vector<Choice> next;
      for (const auto& a : acc)
        for (const auto& c : ch) {
          Choice u = a;
          u.set.insert(u.set.end(), c.set.begin(), c.set.end());
          u.tainted |= c.tainted;
          next.push_back(std::move(u));
        }
      acc = std::move(next);
    }
    for (auto& u : acc) {
      if (u.set.empty()) continue;
      auto s = sorted_unique(std::move(u.set));
      (u.tainted ? fam.exceptional : fam.proper).push_back(std::move(s));
    }
    std::sort(fam.proper.begin(), fam.proper.end(), set_less);
    std::sort(fam.exceptional.begin(), fam.exceptional.end(), set_less);
    return fam;
  }

  auto kind = classify_type(rs.cm)[0].kind;
  if (kind == DiagramKind::Indefinite) return fam;  // nothing proper
  if (kind == DiagramKind::Finite) {
    // theta truncated along every proper node subset, then the W-orbit.
    IntVec theta = rs.positive.back();
    for (const auto& r : rs.positive)
      if (height(r) > height(theta)) theta = r;
    std::set<std::vector<IntVec>,
             bool (*)(const std::vector<IntVec>&, const std::vector<IntVec>&)>
        seen(+[](const std::vector<IntVec>& a, const std::vector<IntVec>& b) {
          if (a.size() != b.size()) return a.size() < b.size();
          for (size_t i = 0; i < a.size(); ++i) {
            if (canon_less(a[i], b[i])) return true;
            if (canon_less(b[i], a[i])) return false;
          }
          return false;
        });
    const int n = rs.rank();
    for (uint32_t mask = 0; mask + 1 < (1u << n); ++mask) {
      NodeSet I;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) I.insert(i);
      std::vector<IntVec> face;
      for (const auto& x : rs.all_signed()) {
        IntVec d = theta - x;
        if (all_nonneg(d) && subset_of(support(d), I)) face.push_back(x);
      }
      for (auto& conj : orbit_of_set(rs.cm, face, 40)) seen.insert(std::move(conj));
    }
    fam.proper.assign(seen.begin(), seen.end());
    if (!with_zero && is_a2_type(rs.cm)) fam.exceptional = exceptional_a2_family(rs);
    return fam;
  }

  // Affine: lift the core classification.
  fam.window_exact = false;
  AffineData ad = affine_structure(rs);
  ComponentGround core = component_ground(rs, ad.finite_nodes, with_zero);
  RootFaceFamily base = classify_rootsystem_faces(*core.ground.rs, with_zero);
  auto lift_set = [&](const std::vector<IntVec>& zsub) {
    std::vector<IntVec> zfull;
    for (const auto& v : zsub) zfull.push_back(embed_vec(v, ad.finite_nodes, rs.rank()));
    return affine_lift(rs, zfull, with_zero);
  };
  for (const auto& z : base.proper) fam.proper.push_back(lift_set(z));
  if (!with_zero)
    for (const auto& z : base.exceptional) fam.exceptional.push_back(lift_set(z));
  return fam;
}

std::vector<WeylElement> positivity_conjugators(const RootSystem& rs,
                                                const std::vector<IntVec>& Y, int length_cap) {
  if (components(rs.cm).size() != 1 || classify_type(rs.cm)[0].kind != DiagramKind::Finite)
    fail(Errc::ParseError, "positivity conjugators need an indecomposable finite root system");
  GroundSet g = GroundSet::roots(rs, false);
  if (!decide_212(g, Y).closed) fail(Errc::NotClosed, "input subset is not 212-closed");
  PositivitySet direct = positivity_set(rs, Y, length_cap);
  if (!direct.complete) fail(Errc::SearchExhausted, "group enumeration incomplete");

  // When Y is a highest-root truncation, the coset-intersection identity must
  // reproduce the direct scan exactly.
  IntVec theta = rs.positive.back();
  for (const auto& r : rs.positive)
    if (height(r) > height(theta)) theta = r;
  const int n = rs.rank();
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    NodeSet J;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) J.insert(i);
    std::vector<IntVec> face;
    for (const auto& x : rs.all_signed()) {
      IntVec d = theta - x;
      if (all_nonneg(d) && subset_of(support(d), J)) face.push_back(x);
    }
    std::vector<IntVec> ys = sorted_unique(Y);
    face = sorted_unique(std::move(face));
    if (ys.size() != face.size() ||
        !std::equal(ys.begin(), ys.end(), face.begin(), vec_eq))
      continue;
    // Y == (theta - Z>=0 Pi_J) cap Delta: run the intersection route.
    auto key = [n](const IntMat& m) {
      std::vector<Int> k;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) k.push_back(m(i, j));
      return k;
    };
    PositivitySet wtheta = positivity_set(rs, {theta}, length_cap);
    GroupEnumeration wj = enumerate_group(rs.cm, J, length_cap);
    if (!wtheta.complete || !wj.complete) continue;
    std::set<std::vector<Int>> inter;
    bool first = true;
    for (const auto& w : wj.elements) {
      std::set<std::vector<Int>> coset;
      for (const auto& v : wtheta.elements) coset.insert(key(compose(v, w).action));
      if (first) {
        inter = std::move(coset);
        first = false;
      } else {
        std::set<std::vector<Int>> tmp;
        for (const auto& k : inter)
          if (coset.count(k)) tmp.insert(k);
        inter = std::move(tmp);
      }
    }
    std::set<std::vector<Int>> direct_keys;
    for (const auto& w : direct.elements) direct_keys.insert(key(w.action));
    if (direct_keys != inter)
      fail(Errc::Internal, "coset-intersection identity failed on a truncation face");
    break;
  }
  return direct.elements;
}

std::vector<IntVec> face_chain(const GroundSet& g, const std::vector<IntVec>& Y,
                               const IntVec& mu) {
  if (g.kind != GroundSet::Kind::Weights)
    fail(Errc::UnsupportedGround, "face chains are defined on weight grounds");
  const WeightSet& ws = *g.ws;
  VecSet yset(Y.begin(), Y.end());
  if (!yset.count(IntVec::Zero(ws.rank())))
    fail(Errc::ParseError, "face_chain requires lambda in Y");
  if (!yset.count(mu)) fail(Errc::ParseError, "face_chain: mu not in Y");
  DerivedInvariants inv = derived_invariants(g, Y);
  NodeSet free_nodes = set_minus(inv.support_nodes, inv.blocked);
  RootSystem rs = generate_roots(
      ws.cm, all_finite(ws.cm) ? std::optional<Int>{} : std::optional<Int>{ws.depth_bound});
  std::vector<IntVec> layer1;
  for (const auto& r : rs.positive)
    if (height_on(r, free_nodes) == 1) layer1.push_back(r);

  std::vector<IntVec> chain;
  std::function<bool(const IntVec&)> climb = [&](const IntVec& c) {
    chain.push_back(c);
    if (is_zero(c)) return true;
    for (const auto& gam : layer1) {
      if (!dominated(gam, c)) continue;
      IntVec up = c - gam;
      if (!ws.contains(up)) continue;
      if (!ws.contains(gam)) continue;  // lambda - gamma must be a weight
      if (climb(up)) return true;
    }
    chain.pop_back();
    return false;
  };
  if (!climb(mu)) fail(Errc::Internal, "no ascent chain through the free layer");
  // every chain point and every step root lands in Y by 212-closedness
  for (size_t i = 0; i + 1 < chain.size(); ++i) {
    if (!yset.count(chain[i])) fail(Errc::Internal, "chain point escaped Y");
    IntVec step = chain[i] - chain[i + 1];
    if (!yset.count(step)) fail(Errc::Internal, "chain step depletion escaped Y");
  }
  return chain;
}

}  // namespace kmf
