#include "retarget/cli/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "retarget/error.hpp"

namespace retarget::cli {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<std::string_view> known,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    bool found = false;
    for (auto k : known) found = found || key == k;
    if (!found) throw Error(ErrorCode::InvalidConfig, "unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& obj, const char* key, T& out) {
  if (obj.contains(key)) out = obj.at(key).get<T>();
}

}  // namespace

std::optional<std::string> parse_hook(std::string_view selector, std::string_view builtin) {
  constexpr std::string_view prefix = "external:";
  if (selector == builtin) return std::nullopt;
  if (selector.substr(0, prefix.size()) == prefix && selector.size() > prefix.size()) {
    return std::string(selector.substr(prefix.size()));
  }
  throw Error(ErrorCode::InvalidArgument, "expected '" + std::string(builtin) +
                                              "' or 'external:CMD', got '" + std::string(selector) +
                                              "'");
}

PipelineConfig parse_config(std::string_view json_text) {
  PipelineConfig cfg;
  try {
    const json root = json::parse(json_text);
    if (!root.is_object()) throw Error(ErrorCode::InvalidConfig, "configuration must be an object");
    reject_unknown(root,
                   {"dilation_radius", "sr_factor", "feather_radius", "size_min", "size_max",
                    "scorer", "inpainter", "super_resolver", "inpaint", "pso", "weights"},
                   "configuration");
    if (root.contains("dilation_radius")) cfg.dilation_radius = root.at("dilation_radius").get<int>();
    read(root, "sr_factor", cfg.sr_factor);
    read(root, "feather_radius", cfg.feather_radius);
    read(root, "size_min", cfg.size_min);
    read(root, "size_max", cfg.size_max);
    if (root.contains("scorer")) cfg.scorer_command = parse_hook(root.at("scorer").get<std::string>(), "rule");
    if (root.contains("inpainter")) {
      cfg.inpainter_command = parse_hook(root.at("inpainter").get<std::string>(), "diffusion");
    }
    if (root.contains("super_resolver")) {
      cfg.super_resolver_command = parse_hook(root.at("super_resolver").get<std::string>(), "bicubic");
    }
    if (root.contains("inpaint")) {
      const json& in = root.at("inpaint");
      reject_unknown(in, {"tol", "max_iters"}, "inpaint");
      read(in, "tol", cfg.diffusion.tol);
      read(in, "max_iters", cfg.diffusion.max_iters);
    }
    if (root.contains("pso")) {
      const json& p = root.at("pso");
      reject_unknown(p, {"swarm_size", "max_iters", "inertia", "cognitive", "social", "stall_iters",
                         "stall_tol", "seed", "threads"},
                     "pso");
      read(p, "swarm_size", cfg.pso.swarm_size);
      read(p, "max_iters", cfg.pso.max_iters);
      read(p, "inertia", cfg.pso.inertia);
      read(p, "cognitive", cfg.pso.cognitive);
      read(p, "social", cfg.pso.social);
      read(p, "stall_iters", cfg.pso.stall_iters);
      read(p, "stall_tol", cfg.pso.stall_tol);
      read(p, "seed", cfg.pso.seed);
      read(p, "threads", cfg.pso.threads);
    }
    if (root.contains("weights")) {
      const json& w = root.at("weights");
      reject_unknown(w, {"thirds", "occlusion", "clearance", "scale"}, "weights");
      read(w, "thirds", cfg.weights.thirds);
      read(w, "occlusion", cfg.weights.occlusion);
      read(w, "clearance", cfg.weights.clearance);
      read(w, "scale", cfg.weights.scale);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, e.what());
  }
  cfg.validate();
  return cfg;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::FileNotFound, path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace retarget::cli
