#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "fhmdp/model.hpp"
#include "fhmdp/model_io.hpp"

namespace fhmdp {

// Spiral-drilling feed-rate model: 10 axial-force states, 5 feed rates per
// state, rewards in 1e-2 mm of hole length. Source text of data/drilling.json.
std::string_view drilling_model_text();
FiniteHorizonMdp drilling_model();

// Published expected total rewards and optimal decisions for the drilling
// model over 10 holes. Source text of data/drilling_expected.json.
std::string_view drilling_expected_text();
ExpectedResults drilling_expected();

// Small 3-state, 3-action model whose optimal decisions change across epochs.
FiniteHorizonMdp toy3_model();

// "drilling" or "toy3"; nullopt for anything else.
std::optional<FiniteHorizonMdp> builtin_model(std::string_view name);
std::vector<std::string_view> builtin_model_names();

}  // namespace fhmdp
