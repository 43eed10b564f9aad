#pragma once

#include <string>

#include "json.hpp"

namespace fixture {

/// Small scalar network ẋ = a·x with path coupling; cheap to certify and run.
inline nlohmann::json linear_scenario(double a = 0.5, int nodes = 4) {
  return nlohmann::json::parse(R"({
    "network": {"nodes": 4, "plant": {"generator": "path"}, "inner_coupling": [[1.0]]},
    "model": {"name": "linear", "A": [[0.5]]},
    "mismatch": {"bounds": [0.05], "seed": 3},
    "assumptions": {"F": [[0.5]], "Gamma": [[1.0]], "gamma_c": [0.05]},
    "controller": {"regime": "open_loop"},
    "integration": {"dt": 0.01, "t_end": 2.0, "seed": 3, "x0_box": [[-1.0, 1.0]]},
    "output": {"directory": "out/linear", "stride": 5}
  })")
      .patch(nlohmann::json::array(
          {{{"op", "replace"}, {"path", "/model/A"}, {"value", {{a}}}},
           {{"op", "replace"}, {"path", "/network/nodes"}, {"value", nodes}}}));
}

}  // namespace fixture
