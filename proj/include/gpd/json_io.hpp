#pragma once

#include <json.hpp>

#include "gpd/classify.hpp"
#include "gpd/group.hpp"
#include "gpd/groupoid.hpp"
#include "gpd/subgroupoid.hpp"

namespace gpd {

/// Group JSON:
///   {"kind":"catalog","name":"dihedral","params":[3]}
///   {"kind":"table","cayley":[[...],...],"name":"optional"}
///   {"kind":"semidirect","h":<group>,"k":<group>,"action":[...]}
/// A semidirect action lists one automorphism of h per element of k, or,
/// with "k_generators":[...], one per listed generator. Each automorphism is
/// the full image list of h, or an integer a meaning x -> a*x on a cyclic h.
/// Throws BadJson, plus whatever the constructors raise.
FiniteGroup group_from_json(const nlohmann::json& j);
nlohmann::json group_to_json(const FiniteGroup& g);

/// {"raw":{"elements":[...],"product":{"g,h":"gh",...}}}; the product may
/// also be a list of [g, h, gh] triples.
RawGroupoid raw_from_json(const nlohmann::json& j);
nlohmann::json raw_to_json(const RawGroupoid& raw);

/// Groupoid JSON: {"components":[{"identities":[...],"group":<group>}]},
/// the raw form above (decomposed with structure()), or a bare group JSON
/// read as a one-object groupoid.
Groupoid groupoid_from_json(const nlohmann::json& j);
nlohmann::json groupoid_to_json(const Groupoid& g);

/// Subgroupoid JSON: {"elements":[ids or identity labels]} or
/// {"components":[{"identities":[labels],"subgroup":[...],"transversal":[...]}]}.
Subgroupoid subgroupoid_from_json(const Groupoid& g, const nlohmann::json& j);
nlohmann::json subgroupoid_to_json(const Subgroupoid& h);

nlohmann::json to_json(const GroupoidClass& c);

}  // namespace gpd
