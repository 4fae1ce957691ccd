#pragma once
// JSON documents describing a two-factor model (optionally perturbed) or an
// observable survival table. Level-keyed mappings throughout:
//
//   {
//     "levelsA": ["abar", "a"], "levelsB": ["bbar", "b"],
//     "survivalA": {"abar": 1, "a": 0.8}, "survivalB": {"bbar": 1, "b": 0.5},
//     "survivalZ": 1,
//     "jointFactorDist": {"abar": {"bbar": 0.25, "b": 0.25}, "a": {"bbar": 0.25, "b": 0.25}},
//     "perturbation": {"a": {"b": 0.5}}          // optional, unlisted cells = 1
//   }
//
// An observable table replaces survivalA/B/Z with "survival" (nested like
// jointFactorDist) and may omit jointFactorDist.

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "ginet/probmodel.hpp"
#include "ginet/simgen.hpp"

namespace ginet {

struct ModelSpec {
    TwoFactorEffectModel model;
    std::optional<InteractionPerturbation> perturbation;
};

using SpecDocument = std::variant<ModelSpec, ObservableTable>;

// Throws Error(InvalidModel) on malformed or inconsistent documents.
SpecDocument parse_spec_document(std::string_view json);
ModelSpec parse_model_spec(std::string_view json);

std::string to_json(const ModelSpec& spec);
std::string to_json(const ObservableTable& table);

}  // namespace ginet
