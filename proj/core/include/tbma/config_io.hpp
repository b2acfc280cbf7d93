#pragma once

#include <filesystem>
#include <string>

#include "tbma/config.hpp"

namespace tbma {

/// Parses a JSON scenario description.
///
/// Recognized keys (all optional; defaults follow the interference-sweep
/// operating point):
///
///   K, M, lambda, snr_db, mu_H, sigma2_H, mu_G, sigma2_G,
///   C_bit_per_s_per_hz,
///   measurement_model: [{"p0": [...], "p1": [...]}, ...]   (one per cell)
///   prior: {"rho": r} | {"table": [...]}                   (2^K entries)
///   signal_field: "real" | "complex"
///   variance_model: "compound_poisson" | "gain_variance_only"
///   cross_covariance: "binomial" | "poisson"
///
/// Throws ConfigError on malformed input or unknown keys. The result is
/// not validated; call validate_config() for invariant checks.
SystemConfig parse_config(const std::string& json_text);
SystemConfig load_config(const std::filesystem::path& path);

std::string dump_config(const SystemConfig& config);

}  // namespace tbma
