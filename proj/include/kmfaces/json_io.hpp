#pragma once

#include "kmfaces/hull.hpp"

#include <json.hpp>

namespace kmf {

using Json = nlohmann::ordered_json;

Json gcm_to_json(const CartanMatrix& cm);
CartanMatrix gcm_from_json(const Json& j);

Json vec_to_json(const IntVec& v);
IntVec vec_from_json(const Json& j, int expect_dim = -1);
Json vecs_to_json(const std::vector<IntVec>& vs);
std::vector<IntVec> vecs_from_json(const Json& j, int expect_dim = -1);

Json rat_vec_to_json(const RatVec& v);
RatVec rat_vec_from_json(const Json& j);

Json weyl_to_json(const WeylElement& w);

Json weightset_to_json(const WeightSet& ws);
WeightSet weightset_from_json(const CartanMatrix& cm, const Json& j, std::optional<Int> depth_override = {});

Json polyhedron_to_json(const RationalPolyhedron& p);
RationalPolyhedron polyhedron_from_json(const Json& j);
Json functional_to_json(const ExposingFunctional& f);

/// Ground descriptor: {"kind": "weights"|"roots"|"roots_with_zero", ...}.
GroundSet ground_from_json(const Json& j, std::optional<Int> height_bound = {},
                           std::optional<Int> depth = {});

NodeSet nodes_from_json(const Json& j);
Json nodes_to_json(const NodeSet& s);

}  // namespace kmf
