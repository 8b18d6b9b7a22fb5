#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "retarget/pipeline.hpp"

namespace retarget::cli {

/// Parses a hook selector: `builtin` (e.g. "rule", "diffusion") yields
/// nullopt, "external:CMD" yields CMD. Throws InvalidArgument otherwise.
std::optional<std::string> parse_hook(std::string_view selector, std::string_view builtin);

/// Reads a JSON pipeline configuration. Recognised keys:
///   dilation_radius, sr_factor, feather_radius, size_min, size_max,
///   scorer, inpainter, super_resolver (hook selectors),
///   inpaint {tol, max_iters},
///   pso {swarm_size, max_iters, inertia, cognitive, social, stall_iters,
///        stall_tol, seed, threads},
///   weights {thirds, occlusion, clearance, scale}.
/// Unknown keys are rejected with InvalidConfig.
PipelineConfig load_config(const std::filesystem::path& path);

PipelineConfig parse_config(std::string_view json_text);

}  // namespace retarget::cli
