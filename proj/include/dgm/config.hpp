#pragma once

// Plain-text experiment configuration.
//
//   # comment
//   [problem]
//   problem = "rigid_body_modified"
//   I1 = 2
//   x0 = 0.45, 0, 0.89
//   [method]            (repeat for several methods)
//   method = "dg_linear"
//   i_breve = "dg_at_y"
//   [grid]
//   h = 100/92
//   h_grid = 0.1, 0.05, 0.025, 0.0125
//   [output]
//   dir = "out"
//
// Reals accept a/b rationals. Lists are comma separated; matrix rows in
// rk_A are separated by ';'. Unknown sections and keys are errors.

#include <filesystem>
#include <string>

#include "dgm/experiments.hpp"

namespace dgm {

ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Parses "a" or "a/b" into a StepSize.
StepSize parse_step_size(std::string_view text);

}  // namespace dgm
