#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lpflow/diagnostics.hpp"
#include "lpflow/fixed_point.hpp"
#include "lpflow/run_config.hpp"

namespace lpflow {

/// One saved state: plain-text header (model, algebra, size, step, time,
/// field list), then for each field N rows of N re/im pairs.
struct SnapshotData {
  std::string model;
  std::string algebra;  // "su" | "so3"
  int n = 0;
  long long step = 0;
  double time = 0.0;
  std::vector<std::string> field_names;
  FieldSet fields;
};

std::string serialize_snapshot(const SnapshotData& snap);
SnapshotData parse_snapshot(const std::string& text);
SnapshotData read_snapshot_file(const std::filesystem::path& path);

struct RunOutcome {
  bool completed = false;
  long long steps_taken = 0;
  double final_time = 0.0;
  std::string failure;  // stage-failure description when !completed
  DiagnosticsRecord record;
  FieldSet state;
};

/// Integrate per `cfg`, writing into `out_dir`:
///   manifest.txt            resolved config (re-parseable) + version comment
///   timeseries.dat          named columns, one row per sample
///   snapshots/state_*.dat   full state every output_every steps
///   grids/<field>_*.dat     grid samples of the sphere fields (quantized
///                           models with write_grids)
/// Output is byte-for-byte deterministic for a given config.  On stage
/// failure the partial series is kept and the outcome reports the failure
/// instead of throwing.  `resume` continues from a snapshot (validated
/// against cfg) instead of drawing random initial data.
RunOutcome run_simulation(const RunConfig& cfg, const std::filesystem::path& out_dir,
                          bool quiet = true, const SnapshotData* resume = nullptr);

}  // namespace lpflow
