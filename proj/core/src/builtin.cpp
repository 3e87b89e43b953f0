#include "fhmdp/builtin.hpp"

namespace fhmdp {

namespace embedded {
extern const std::string_view drilling_model;
extern const std::string_view drilling_expected;
}  // namespace embedded

std::string_view drilling_model_text() { return embedded::drilling_model; }

FiniteHorizonMdp drilling_model() { return load_model(embedded::drilling_model); }

std::string_view drilling_expected_text() { return embedded::drilling_expected; }

ExpectedResults drilling_expected() { return load_expected_results(embedded::drilling_expected); }

FiniteHorizonMdp toy3_model() {
  // Cheap immediate reward in state 1 versus investing in moving up to the
  // high-reward state 3; the best choice flips as the horizon shortens.
  FiniteHorizonMdp mdp = FiniteHorizonMdp::from_tables(
      {
          {1.0, 0.0, 0.5},
          {2.0, 0.0, 1.0},
          {4.0, 3.0, 0.0},
      },
      {
          {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.5, 0.5, 0.0}},
          {{0.0, 0.5, 0.5}, {0.0, 0.0, 1.0}, {0.2, 0.8, 0.0}},
          {{1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, 0.5, 0.5}},
      });
  mdp.name = "toy3";
  return mdp;
}

std::optional<FiniteHorizonMdp> builtin_model(std::string_view name) {
  if (name == "drilling") return drilling_model();
  if (name == "toy3") return toy3_model();
  return std::nullopt;
}

std::vector<std::string_view> builtin_model_names() { return {"drilling", "toy3"}; }

}  // namespace fhmdp
