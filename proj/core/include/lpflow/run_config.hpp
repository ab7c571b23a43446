#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "lpflow/algebra.hpp"

namespace lpflow {

/// Rejecting a configuration is an expected, recoverable event; the message
/// names the offending key and, when parsing text, its line number.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Fully resolved run description.  `parse_config` fills defaults, so a
/// serialized config re-parses to an identical struct (the round-trip the
/// manifest files rely on).
///
/// Text format: one `key = value` per line, `#` starts a comment, unknown
/// or duplicate keys are errors.  Vectors are space-separated numbers;
/// symmetric 3x3 matrices take the six upper-triangle entries
/// (row-major: m11 m12 m13 m22 m23 m33).
struct RunConfig {
  std::string model;  // euler | mhd | hazeltine | kirchhoff
  int n = 0;          // quantized models only (kirchhoff is fixed at 3x3)
  double h = 0.0;
  double t_final = 0.0;
  double alpha = 0.0;  // hazeltine only
  std::uint64_t seed = 0;
  int l_cut = 0;          // initial-data band limit (resolved default: min(n-1, 10))
  double gamma = 2.0;     // initial spectrum decay l^{-gamma}
  double amplitude = 0.5; // initial-data scale
  int output_every = 100; // sampling stride in steps
  int n_lat = 32;
  int n_lon = 64;
  bool write_grids = true;  // quantized models emit grid samples by default
  double fp_tol = 1e-13;
  int fp_max_iters = 100;
  bool baseline = false;  // integrate with the non-preserving RK4 scheme
  std::string kirchhoff_preset = "kirchhoff";  // kirchhoff | clebsch | lsk | custom
  Vec3 kirchhoff_a = Vec3::Zero();
  Mat3 kirchhoff_b = Mat3::Zero();
  Mat3 kirchhoff_c = Mat3::Zero();

  bool quantized() const { return model != "kirchhoff"; }
  bool operator==(const RunConfig& other) const;
};

/// Parse and validate; throws ConfigError with key names and line numbers.
RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::filesystem::path& path);

/// Deterministic text form of a resolved config (also used as the manifest).
std::string serialize_config(const RunConfig& cfg);

}  // namespace lpflow
