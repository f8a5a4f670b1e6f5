#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <toml.hpp>

#include "spinfold/scalar.hpp"

namespace spinfold::cli {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Strings hold the user's spelling so exact runs can read p/q values.
struct RunConfig {
  std::string model = "xxx";
  std::string boundary;
  std::optional<int> L;
  std::string lambda = "1";
  std::string mu = "1";
  std::optional<double> kappa;
  std::optional<int> edge_window;
  double tol_identity = 1e-10;
  double tol_edge = 1e-5;
  std::string field;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string suite = "all";
  std::string kind = "xxx";
};

inline bool is_ino_model(const std::string& m) { return m == "ino" || m == "double-ino"; }
inline bool is_double_model(const std::string& m) { return m == "double-xxx" || m == "double-ino"; }

inline std::string default_boundary(const std::string& model) { return is_double_model(model) ? "diagonal" : "magnetic"; }

inline int default_length(const std::string& model) {
  if (model == "double-xxx") return 3;
  if (model == "double-ino") return 6;
  return model == "ino" ? 8 : 4;
}

inline void load_toml(RunConfig& cfg, const std::string& path) {
  toml::table t;
  try {
    t = toml::parse_file(path);
  } catch (const toml::parse_error& e) {
    throw UsageError("cannot read config " + path + ": " + std::string(e.description()));
  }
  auto text = [&](const char* key, std::string& out) {
    if (auto v = t[key].value<std::string>()) out = *v;
    else if (auto i = t[key].value<std::int64_t>()) out = std::to_string(*i);
    else if (auto d = t[key].value<double>()) out = to_string(*d);
  };
  text("model", cfg.model);
  text("boundary", cfg.boundary);
  text("lambda", cfg.lambda);
  text("mu", cfg.mu);
  text("field", cfg.field);
  text("format", cfg.format);
  text("suite", cfg.suite);
  text("kind", cfg.kind);
  if (auto v = t["L"].value<std::int64_t>()) cfg.L = static_cast<int>(*v);
  if (auto v = t["kappa"].value<double>()) cfg.kappa = *v;
  if (auto v = t["edge_window"].value<std::int64_t>()) cfg.edge_window = static_cast<int>(*v);
  if (auto v = t["tol_identity"].value<double>()) cfg.tol_identity = *v;
  if (auto v = t["tol_edge"].value<double>()) cfg.tol_edge = *v;
  if (auto v = t["seed"].value<std::int64_t>()) cfg.seed = static_cast<std::uint64_t>(*v);
}

}  // namespace spinfold::cli
