#include "kmfaces/cartan.hpp"

#include "kmfaces/lp.hpp"

#include <numeric>

namespace kmf {

CartanMatrix CartanMatrix::submatrix(const std::vector<int>& nodes) const {
  CartanMatrix s;
  const int k = static_cast<int>(nodes.size());
  s.a.resize(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) s.a(i, j) = a(nodes[i], nodes[j]);
  for (int i : nodes) s.labels.push_back(labels[i]);
  return s;
}

bool CartanMatrix::connected_support(const NodeSet& s) const {
  if (s.empty()) return false;
  std::vector<int> stack{*s.begin()};
  NodeSet seen{*s.begin()};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : s)
      if (!seen.count(w) && adjacent(v, w)) {
        seen.insert(w);
        stack.push_back(w);
      }
  }
  return seen.size() == s.size();
}

CartanMatrix parse_gcm(const IntMat& raw, std::vector<std::string> labels) {
  if (raw.rows() != raw.cols()) fail(Errc::NonSquare, "matrix is not square");
  const int n = static_cast<int>(raw.rows());
  if (n == 0) fail(Errc::NonSquare, "empty matrix");
  for (int i = 0; i < n; ++i)
    if (raw(i, i) != 2)
      fail(Errc::DiagonalNotTwo, "a(" + std::to_string(i) + "," + std::to_string(i) + ") != 2");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (raw(i, j) > 0)
        fail(Errc::PositiveOffDiagonal,
             "a(" + std::to_string(i) + "," + std::to_string(j) + ") > 0");
      if ((raw(i, j) == 0) != (raw(j, i) == 0))
        fail(Errc::AsymmetricZero,
             "a(" + std::to_string(i) + "," + std::to_string(j) + ") zero-pattern asymmetric");
    }
  CartanMatrix cm;
  cm.a = raw;
  if (labels.empty())
    for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  if (static_cast<int>(labels.size()) != n) fail(Errc::ParseError, "label count != rank");
  cm.labels = std::move(labels);
  return cm;
}

std::vector<std::vector<int>> components(const CartanMatrix& cm) {
  const int n = cm.rank();
  std::vector<int> comp(n, -1);
  int nc = 0;
  for (int i = 0; i < n; ++i) {
    if (comp[i] >= 0) continue;
    std::vector<int> stack{i};
    comp[i] = nc;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w = 0; w < n; ++w)
        if (comp[w] < 0 && cm.adjacent(v, w)) {
          comp[w] = nc;
          stack.push_back(w);
        }
    }
    ++nc;
  }
  std::vector<std::vector<int>> out(nc);
  for (int i = 0; i < n; ++i) out[comp[i]].push_back(i);
  return out;  // already sorted by least node: discovery order is ascending
}

namespace {

// Right kernel of the component matrix over Q, by Gaussian elimination.
std::vector<RatVec> kernel_basis(const IntMat& a) {
  const int n = static_cast<int>(a.rows());
  RatMat m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = Rat(a(i, j));
  std::vector<int> pivot_col;
  int r = 0;
  for (int c = 0; c < n && r < n; ++c) {
    int p = -1;
    for (int i = r; i < n; ++i)
      if (m(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    m.row(p).swap(m.row(r));
    m.row(r) /= m(r, c);
    for (int i = 0; i < n; ++i)
      if (i != r && m(i, c) != 0) m.row(i) -= m(i, c) * m.row(r);
    pivot_col.push_back(c);
    ++r;
  }
  std::vector<RatVec> basis;
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  for (int c = 0; c < n; ++c) {
    if (is_pivot[c]) continue;
    RatVec v = RatVec::Zero(n);
    v[c] = 1;
    for (int i = 0; i < static_cast<int>(pivot_col.size()); ++i) v[pivot_col[i]] = -m(i, c);
    basis.push_back(v);
  }
  return basis;
}

// Scales a rational vector to primitive integer coordinates.
IntVec primitive(const RatVec& v) {
  boost::multiprecision::cpp_int lcm = 1;
  for (Eigen::Index i = 0; i < v.size(); ++i)
    lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(v[i]));
  boost::multiprecision::cpp_int g = 0;
  std::vector<boost::multiprecision::cpp_int> num(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    num[i] = boost::multiprecision::numerator(v[i]) *
             (lcm / boost::multiprecision::denominator(v[i]));
    g = boost::multiprecision::gcd(g, num[i]);
  }
  if (g == 0) g = 1;
  IntVec out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = static_cast<Int>(num[i] / g);
  return out;
}

// Feasibility of { u >= 1, A u >= 1 } decides finite type for an
// indecomposable GCM (scale-invariant form of: exists u > 0 with Au > 0).
bool finite_lp(const IntMat& a) {
  const int n = static_cast<int>(a.rows());
  lp::Problem p;
  for (int i = 0; i < n; ++i) p.add_var(true);
  for (int i = 0; i < n; ++i) {
    RatVec e = RatVec::Zero(n);
    e[i] = 1;
    p.add_ge(e, Rat(1));
    RatVec row(n);
    for (int j = 0; j < n; ++j) row[j] = Rat(a(i, j));
    p.add_ge(row, Rat(1));
  }
  return p.solve().status == lp::Status::Optimal;
}

}  // namespace

std::vector<DynkinComponent> classify_type(const CartanMatrix& cm) {
  std::vector<DynkinComponent> out;
  for (const auto& nodes : components(cm)) {
    DynkinComponent dc;
    dc.nodes = nodes;
    CartanMatrix sub = cm.submatrix(nodes);
    auto kern = kernel_basis(sub.a);
    bool affine = false;
    if (kern.size() == 1) {
      IntVec d = primitive(kern[0]);
      if (all_nonpos(d)) d = -d;
      if ((d.array() > 0).all()) {
        affine = true;
        dc.kind = DiagramKind::Affine;
        dc.delta = IntVec::Zero(cm.rank());
        for (size_t k = 0; k < nodes.size(); ++k) dc.delta[nodes[k]] = d[static_cast<Eigen::Index>(k)];
        // Exact null-vector sanity check in full coordinates.
        for (int i : nodes)
          if (cm.pairing(dc.delta, i) != 0) fail(Errc::Internal, "affine kernel check failed");
      }
    }
    if (!affine) dc.kind = finite_lp(sub.a) ? DiagramKind::Finite : DiagramKind::Indefinite;
    out.push_back(std::move(dc));
  }
  return out;
}

bool all_finite(const CartanMatrix& cm) {
  for (const auto& c : classify_type(cm))
    if (c.kind != DiagramKind::Finite) return false;
  return true;
}

}  // namespace kmf
