#include "kmfaces/json_io.hpp"

namespace kmf {

Json gcm_to_json(const CartanMatrix& cm) {
  Json j;
  Json rows = Json::array();
  for (int i = 0; i < cm.rank(); ++i) {
    Json r = Json::array();
    for (int k = 0; k < cm.rank(); ++k) r.push_back(cm(i, k));
    rows.push_back(r);
  }
  j["matrix"] = rows;
  j["labels"] = cm.labels;
  return j;
}

CartanMatrix gcm_from_json(const Json& j) {
  if (!j.contains("matrix") || !j["matrix"].is_array())
    fail(Errc::ParseError, "gcm: missing \"matrix\"");
  const auto& rows = j["matrix"];
  const int n = static_cast<int>(rows.size());
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) {
    if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
      fail(Errc::NonSquare, "gcm: row " + std::to_string(i) + " has wrong arity");
    for (int k = 0; k < n; ++k) {
      if (!rows[i][k].is_number_integer()) fail(Errc::ParseError, "gcm: non-integer entry");
      m(i, k) = rows[i][k].get<Int>();
    }
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
  return parse_gcm(m, std::move(labels));
}

Json vec_to_json(const IntVec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

IntVec vec_from_json(const Json& j, int expect_dim) {
  if (!j.is_array()) fail(Errc::ParseError, "vector: expected an array");
  IntVec v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number_integer()) fail(Errc::ParseError, "vector: non-integer entry");
    v[static_cast<Eigen::Index>(i)] = j[i].get<Int>();
  }
  if (expect_dim >= 0 && v.size() != expect_dim)
    fail(Errc::ParseError, "vector: wrong dimension");
  return v;
}

Json vecs_to_json(const std::vector<IntVec>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(vec_to_json(v));
  return a;
}

std::vector<IntVec> vecs_from_json(const Json& j, int expect_dim) {
  if (!j.is_array()) fail(Errc::ParseError, "vector list: expected an array");
  std::vector<IntVec> out;
  for (const auto& e : j) out.push_back(vec_from_json(e, expect_dim));
  return out;
}

Json rat_vec_to_json(const RatVec& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(rat_to_string(v[i]));
  return a;
}

RatVec rat_vec_from_json(const Json& j) {
  if (!j.is_array()) fail(Errc::ParseError, "rational vector: expected an array");
  RatVec v(static_cast<Eigen::Index>(j.size()));
  for (size_t i = 0; i < j.size(); ++i) {
    const auto& e = j[i];
    if (e.is_number_integer())
      v[static_cast<Eigen::Index>(i)] = Rat(e.get<Int>());
    else if (e.is_string())
      v[static_cast<Eigen::Index>(i)] = rat_from_string(e.get<std::string>());
    else
      fail(Errc::ParseError, "rational vector: entries must be integers or \"p/q\" strings");
  }
  return v;
}

Json weyl_to_json(const WeylElement& w) {
  Json j;
  j["word"] = w.word;
  Json rows = Json::array();
  for (int i = 0; i < w.rank(); ++i) {
    Json r = Json::array();
    for (int k = 0; k < w.rank(); ++k) r.push_back(w.action(i, k));
    rows.push_back(r);
  }
  j["action"] = rows;
  return j;
}

Json weightset_to_json(const WeightSet& ws) {
  Json j;
  Json lam = Json::array();
  for (int i = 0; i < ws.rank(); ++i) lam.push_back(rat_to_string(ws.lambda.pairings[i]));
  j["lambda"] = lam;
  switch (ws.family) {
    case Family::ParabolicVerma: {
      j["family"] = Json{{"parabolic_verma", std::vector<int>(ws.family_J.begin(), ws.family_J.end())}};
      break;
    }
    case Family::Simple: j["family"] = "simple"; break;
    case Family::UserSupplied: j["family"] = "user"; break;
  }
  j["depth"] = ws.depth_bound;
  j["integrability"] = std::vector<int>(ws.integrability.begin(), ws.integrability.end());
  j["complete"] = ws.complete;
  j["members"] = vecs_to_json(ws.members);
  return j;
}

NodeSet nodes_from_json(const Json& j) {
  NodeSet s;
  if (!j.is_array()) fail(Errc::ParseError, "node set: expected an array");
  for (const auto& e : j) {
    if (!e.is_number_integer()) fail(Errc::ParseError, "node set: non-integer node");
    s.insert(e.get<int>());
  }
  return s;
}

Json nodes_to_json(const NodeSet& s) {
  return Json(std::vector<int>(s.begin(), s.end()));
}

WeightSet weightset_from_json(const CartanMatrix& cm, const Json& j,
                              std::optional<Int> depth_override) {
  if (!j.contains("lambda")) fail(Errc::ParseError, "weight set: missing \"lambda\"");
  HighestWeight lam{rat_vec_from_json(j["lambda"])};
  if (lam.pairings.size() != cm.rank()) fail(Errc::ParseError, "lambda: wrong dimension");
  Int depth = depth_override ? *depth_override
                             : (j.contains("depth") ? j["depth"].get<Int>() : default_depth(cm));
  if (!j.contains("family")) fail(Errc::ParseError, "weight set: missing \"family\"");
  const Json& fam = j["family"];
  if (fam.is_string() && fam.get<std::string>() == "simple")
    return weights_simple(cm, lam, depth);
  if (fam.is_string() && fam.get<std::string>() == "user") {
    if (!j.contains("members")) fail(Errc::ParseError, "user family: missing \"members\"");
    NodeSet iv = j.contains("integrability") ? nodes_from_json(j["integrability"]) : NodeSet{};
    return weights_user(cm, lam, iv, vecs_from_json(j["members"], cm.rank()), depth);
  }
  if (fam.is_object() && fam.contains("parabolic_verma"))
    return weights_parabolic_verma(cm, lam, nodes_from_json(fam["parabolic_verma"]), depth);
  fail(Errc::ParseError, "family must be \"simple\", \"user\", or {\"parabolic_verma\": [...]}");
}

Json polyhedron_to_json(const RationalPolyhedron& p) {
  Json j;
  Json pts = Json::array(), rys = Json::array();
  for (const auto& x : p.points) pts.push_back(rat_vec_to_json(x));
  for (const auto& r : p.rays) rys.push_back(rat_vec_to_json(r));
  j["points"] = pts;
  j["rays"] = rys;
  return j;
}

RationalPolyhedron polyhedron_from_json(const Json& j) {
  RationalPolyhedron p;
  if (!j.contains("points")) fail(Errc::ParseError, "polyhedron: missing \"points\"");
  for (const auto& e : j["points"]) p.points.push_back(rat_vec_from_json(e));
  if (j.contains("rays"))
    for (const auto& e : j["rays"]) p.rays.push_back(rat_vec_from_json(e));
  if (p.points.empty()) fail(Errc::ParseError, "polyhedron: points must be nonempty");
  p.ambient_dim = static_cast<int>(p.points.front().size());
  return p;
}

Json functional_to_json(const ExposingFunctional& f) {
  Json j;
  j["g"] = rat_vec_to_json(f.coeffs);
  j["level"] = rat_to_string(f.level);
  j["slack"] = rat_to_string(f.slack);
  return j;
}

GroundSet ground_from_json(const Json& j, std::optional<Int> height_bound,
                           std::optional<Int> depth) {
  if (!j.contains("kind")) fail(Errc::ParseError, "ground: missing \"kind\"");
  std::string kind = j["kind"].get<std::string>();
  if (!j.contains("gcm")) fail(Errc::ParseError, "ground: missing \"gcm\"");
  CartanMatrix cm = gcm_from_json(j["gcm"]);
  if (kind == "weights") return GroundSet::weights(weightset_from_json(cm, j, depth));
  if (kind == "roots" || kind == "roots_with_zero") {
    std::optional<Int> hb = height_bound;
    if (j.contains("height_bound")) hb = j["height_bound"].get<Int>();
    if (!hb && !all_finite(cm)) fail(Errc::ParseError, "ground: height_bound required");
    RootSystem rs = generate_roots(cm, all_finite(cm) ? std::optional<Int>{} : hb);
    return GroundSet::roots(std::move(rs), kind == "roots_with_zero");
  }
  fail(Errc::ParseError, "ground kind must be weights/roots/roots_with_zero");
}

}  // namespace kmf
