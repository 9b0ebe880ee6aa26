#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace kmf {

using Int = std::int64_t;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using Rat = boost::multiprecision::cpp_rational;
using RatVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;
using RatMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using NodeSet = std::set<int>;

enum class Errc {
  NonSquare,
  DiagonalNotTwo,
  PositiveOffDiagonal,
  AsymmetricZero,
  UnboundedRequestOnInfiniteType,
  NoDecomposition,
  NotAffine,
  DepletionNegative,
  JNotDominant,
  WindowTooShallow,
  PairingNegative,
  WindowInexact,
  NotClosed,
  SearchExhausted,
  GroundTooLarge,
  UnsupportedGround,
  ShapeViolation,
  OrbitTruncated,
  Infeasible,
  NonPolyhedralInput,
  DecompositionFails,
  ParseError,
  Internal,
};

/// Domain error carrying a machine-readable code plus context indices.
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc c, const std::string& msg) { throw Error(c, msg); }

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonSquare: return "NonSquare";
    case Errc::DiagonalNotTwo: return "DiagonalNotTwo";
    case Errc::PositiveOffDiagonal: return "PositiveOffDiagonal";
    case Errc::AsymmetricZero: return "AsymmetricZero";
    case Errc::UnboundedRequestOnInfiniteType: return "UnboundedRequestOnInfiniteType";
    case Errc::NoDecomposition: return "NoDecomposition";
    case Errc::NotAffine: return "NotAffine";
    case Errc::DepletionNegative: return "DepletionNegative";
    case Errc::JNotDominant: return "JNotDominant";
    case Errc::WindowTooShallow: return "WindowTooShallow";
    case Errc::PairingNegative: return "PairingNegative";
    case Errc::WindowInexact: return "WindowInexact";
    case Errc::NotClosed: return "NotClosed";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::GroundTooLarge: return "GroundTooLarge";
    case Errc::UnsupportedGround: return "UnsupportedGround";
    case Errc::ShapeViolation: return "ShapeViolation";
    case Errc::OrbitTruncated: return "OrbitTruncated";
    case Errc::Infeasible: return "Infeasible";
    case Errc::NonPolyhedralInput: return "NonPolyhedralInput";
    case Errc::DecompositionFails: return "DecompositionFails";
    case Errc::ParseError: return "ParseError";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

inline Int height(const IntVec& v) { return v.sum(); }

inline Int height_on(const IntVec& v, const NodeSet& I) {
  Int h = 0;
  for (int i : I) h += v[i];
  return h;
}

inline NodeSet support(const IntVec& v) {
  NodeSet s;
  for (int i = 0; i < v.size(); ++i)
    if (v[i] != 0) s.insert(i);
  return s;
}

inline bool all_nonneg(const IntVec& v) { return (v.array() >= 0).all(); }
inline bool all_nonpos(const IntVec& v) { return (v.array() <= 0).all(); }
inline bool is_zero(const IntVec& v) { return (v.array() == 0).all(); }
inline bool vec_eq(const IntVec& a, const IntVec& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

/// x componentwise <= y.
inline bool dominated(const IntVec& x, const IntVec& y) { return (x.array() <= y.array()).all(); }

/// Canonical total order on lattice vectors: height first, then the vector
/// whose first differing coordinate is larger comes first. Puts alpha_0 ahead
/// of alpha_1 at equal height, which matches the enumeration order used in
/// all golden outputs.
inline bool canon_less(const IntVec& a, const IntVec& b) {
  Int ha = a.sum(), hb = b.sum();
  if (ha != hb) return ha < hb;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

struct CanonLess {
  bool operator()(const IntVec& a, const IntVec& b) const { return canon_less(a, b); }
};

using VecSet = std::set<IntVec, CanonLess>;

inline std::vector<IntVec> sorted_vecs(VecSet s) {
  return std::vector<IntVec>(s.begin(), s.end());
}

inline IntVec unit_vec(int n, int i) {
  IntVec v = IntVec::Zero(n);
  v[i] = 1;
  return v;
}

inline IntVec make_vec(const std::vector<Int>& c) {
  IntVec v(static_cast<Eigen::Index>(c.size()));
  for (size_t i = 0; i < c.size(); ++i) v[static_cast<Eigen::Index>(i)] = c[i];
  return v;
}

inline bool subset_of(const NodeSet& a, const NodeSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline NodeSet complement(const NodeSet& a, int n) {
  NodeSet c;
  for (int i = 0; i < n; ++i)
    if (!a.count(i)) c.insert(i);
  return c;
}

inline NodeSet set_union(const NodeSet& a, const NodeSet& b) {
  NodeSet u = a;
  u.insert(b.begin(), b.end());
  return u;
}

inline NodeSet set_minus(const NodeSet& a, const NodeSet& b) {
  NodeSet d;
  for (int i : a)
    if (!b.count(i)) d.insert(i);
  return d;
}

inline NodeSet set_inter(const NodeSet& a, const NodeSet& b) {
  NodeSet d;
  for (int i : a)
    if (b.count(i)) d.insert(i);
  return d;
}

inline std::string rat_to_string(const Rat& r) {
  std::string s = boost::multiprecision::numerator(r).str();
  if (boost::multiprecision::denominator(r) != 1)
    s += "/" + boost::multiprecision::denominator(r).str();
  return s;
}

/// Parses "p" or "p/q" with q > 0.
inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(boost::multiprecision::cpp_int(s));
    boost::multiprecision::cpp_int p(s.substr(0, slash)), q(s.substr(slash + 1));
    if (q == 0) fail(Errc::ParseError, "zero denominator: " + s);
    return Rat(p, q);
  } catch (const std::exception&) {
    fail(Errc::ParseError, "bad rational: " + s);
  }
}

inline bool is_integer(const Rat& r) { return boost::multiprecision::denominator(r) == 1; }

inline Int rat_ceil(const Rat& r) {
  boost::multiprecision::cpp_int num = boost::multiprecision::numerator(r);
  boost::multiprecision::cpp_int den = boost::multiprecision::denominator(r);
  boost::multiprecision::cpp_int q = num / den;  // truncates toward zero
  if (num > 0 && q * den != num) q += 1;
  return static_cast<Int>(q);
}

inline std::string vec_to_string(const IntVec& v) {
  std::string s = "[";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "]";
}

}  // namespace kmf
