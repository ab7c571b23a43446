#include "lpflow/runner.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "lpflow/bracket_check.hpp"
#include "lpflow/integrators.hpp"
#include "lpflow/models.hpp"
#include "lpflow/random_state.hpp"
#include "lpflow/sphere_grid.hpp"
#include "lpflow/text_io.hpp"
#include "lpflow/version.hpp"

namespace lpflow {
namespace {

std::string pad_step(long long step) {
  std::string s = std::to_string(step);
  if (s.size() < 8) s.insert(0, 8 - s.size(), '0');
  return s;
}

/// Model-specific pieces of the run loop.
class Engine {
 public:
  virtual ~Engine() = default;
  virtual AlgebraTag tag() const = 0;
  virtual std::vector<std::string> field_names() const = 0;
  virtual std::vector<std::string> series_names() const = 0;
  virtual FieldSet initial_state() const = 0;
  virtual FieldSet step(const FieldSet& f, StageReport* rep) const = 0;
  virtual FieldSet rhs(const FieldSet& f) const = 0;  // for the RK4 baseline
  virtual std::vector<double> series_values(const FieldSet& f) const = 0;
  /// (name, coefficients) pairs for grid emission; empty off the sphere.
  virtual std::vector<std::pair<std::string, SphCoeffs>> sphere_fields(const FieldSet&) const {
    return {};
  }
};

class EulerEngine : public Engine {
 public:
  explicit EulerEngine(const RunConfig& cfg)
      : cfg_(cfg), ctx_(cfg.n), model_(ctx_), step_cfg_{cfg.h, {cfg.fp_tol, cfg.fp_max_iters}} {}

  AlgebraTag tag() const override { return AlgebraTag::su; }
  std::vector<std::string> field_names() const override { return {"w"}; }
  std::vector<std::string> series_names() const override {
    return {"hamiltonian", "casimir_2", "casimir_3", "casimir_4"};
  }
  FieldSet initial_state() const override {
    return {random_su(ctx_, cfg_.l_cut, cfg_.gamma, cfg_.amplitude, cfg_.seed)};
  }
  FieldSet step(const FieldSet& f, StageReport* rep) const override {
    auto m_fn = [this](const CMatrix& w) { return model_.coefficient_map(w); };
    return {isospectral_midpoint_step(f[0], m_fn, step_cfg_, AlgebraTag::su, rep)};
  }
  FieldSet rhs(const FieldSet& f) const override { return model_.rhs(f); }
  std::vector<double> series_values(const FieldSet& f) const override {
    return {model_.hamiltonian(f[0]), trace_casimir(f[0], 2), trace_casimir(f[0], 3),
            trace_casimir(f[0], 4)};
  }
  std::vector<std::pair<std::string, SphCoeffs>> sphere_fields(const FieldSet& f) const override {
    return {{"omega", to_coeffs(f[0], ctx_)}};
  }

 protected:
  RunConfig cfg_;
  QuantizationContext ctx_;
  EulerZeitlinModel model_;
  StepConfig step_cfg_;
};

class MhdEngine : public Engine {
 public:
  explicit MhdEngine(const RunConfig& cfg)
      : cfg_(cfg), ctx_(cfg.n), model_(ctx_), step_cfg_{cfg.h, {cfg.fp_tol, cfg.fp_max_iters}} {}

  AlgebraTag tag() const override { return AlgebraTag::su; }
  std::vector<std::string> field_names() const override { return {"w", "theta"}; }
  std::vector<std::string> series_names() const override {
    return {"hamiltonian",      "theta_casimir_2",  "theta_casimir_3", "theta_casimir_4",
            "cross_helicity_1", "cross_helicity_2", "cross_helicity_3"};
  }
  FieldSet initial_state() const override {
    return {random_su(ctx_, cfg_.l_cut, cfg_.gamma, cfg_.amplitude, cfg_.seed),
            random_su(ctx_, cfg_.l_cut, cfg_.gamma, cfg_.amplitude, cfg_.seed + 1)};
  }
  FieldSet step(const FieldSet& f, StageReport* rep) const override {
    auto [w, theta] =
        magnetic_midpoint_step(f[0], f[1], model_.pair_maps(), step_cfg_, AlgebraTag::su, rep);
    return {std::move(w), std::move(theta)};
  }
  FieldSet rhs(const FieldSet& f) const override { return model_.rhs(f); }
  std::vector<double> series_values(const FieldSet& f) const override {
    return {model_.hamiltonian(f[0], f[1]), trace_casimir(f[1], 2),
            trace_casimir(f[1], 3),         trace_casimir(f[1], 4),
            cross_helicity(f[0], f[1], 1),  cross_helicity(f[0], f[1], 2),
            cross_helicity(f[0], f[1], 3)};
  }
  std::vector<std::pair<std::string, SphCoeffs>> sphere_fields(const FieldSet& f) const override {
    return {{"omega", to_coeffs(f[0], ctx_)}, {"theta", to_coeffs(f[1], ctx_)}};
  }

 protected:
  RunConfig cfg_;
  QuantizationContext ctx_;
  MhdModel model_;
  StepConfig step_cfg_;
};

class HazeltineEngine : public Engine {
 public:
  explicit HazeltineEngine(const RunConfig& cfg)
      : cfg_(cfg),
        ctx_(cfg.n),
        model_(ctx_, cfg.alpha),
        step_cfg_{cfg.h, {cfg.fp_tol, cfg.fp_max_iters}} {}

  AlgebraTag tag() const override { return AlgebraTag::su; }
  std::vector<std::string> field_names() const override { return {"w", "theta", "chi"}; }
  std::vector<std::string> series_names() const override {
    return {"hamiltonian",      "psi_casimir_2",    "psi_casimir_3",   "psi_casimir_4",
            "theta_casimir_2",  "theta_casimir_3",  "theta_casimir_4", "cross_helicity_1",
            "cross_helicity_2", "cross_helicity_3"};
  }
  FieldSet initial_state() const override {
    return {random_su(ctx_, cfg_.l_cut, cfg_.gamma, cfg_.amplitude, cfg_.seed),
            random_su(ctx_, cfg_.l_cut, cfg_.gamma, cfg_.amplitude, cfg_.seed + 1),
            random_su(ctx_, cfg_.l_cut, cfg_.gamma, cfg_.amplitude, cfg_.seed + 2)};
  }
  FieldSet step(const FieldSet& f, StageReport* rep) const override {
    auto [w, theta, chi] = hazeltine_midpoint_step(f[0], f[1], f[2], model_.triple_maps(),
                                                   cfg_.alpha, step_cfg_, AlgebraTag::su, rep);
    return {std::move(w), std::move(theta), std::move(chi)};
  }
  FieldSet rhs(const FieldSet& f) const override { return model_.rhs(f); }
  std::vector<double> series_values(const FieldSet& f) const override {
    std::vector<double> out;
    out.push_back(model_.hamiltonian(f[0], f[1], f[2]));
    for (int k = 2; k <= 4; ++k) out.push_back(trace_casimir(f[0] - f[2], k));
    for (int k = 2; k <= 4; ++k) out.push_back(trace_casimir(f[1], k));
    for (int d = 1; d <= 3; ++d) out.push_back(cross_helicity(f[2], f[1], d));
    return out;
  }
  std::vector<std::pair<std::string, SphCoeffs>> sphere_fields(const FieldSet& f) const override {
    return {{"omega", to_coeffs(f[0], ctx_)},
            {"theta", to_coeffs(f[1], ctx_)},
            {"chi", to_coeffs(f[2], ctx_)}};
  }

 protected:
  RunConfig cfg_;
  QuantizationContext ctx_;
  HazeltineModel model_;
  StepConfig step_cfg_;
};

class KirchhoffEngine : public Engine {
 public:
  explicit KirchhoffEngine(const RunConfig& cfg)
      : cfg_(cfg),
        model_(KirchhoffParams{cfg.kirchhoff_a, cfg.kirchhoff_b, cfg.kirchhoff_c}),
        step_cfg_{cfg.h, {cfg.fp_tol, cfg.fp_max_iters}} {}

  AlgebraTag tag() const override { return AlgebraTag::so3; }
  std::vector<std::string> field_names() const override { return {"w", "theta"}; }
  std::vector<std::string> series_names() const override {
    return {"hamiltonian", "p_square", "m_dot_p"};
  }
  FieldSet initial_state() const override {
    const auto [m, p] = random_body_state(cfg_.amplitude, cfg_.seed);
    return {hat(m), hat(p)};
  }
  FieldSet step(const FieldSet& f, StageReport* rep) const override {
    auto [w, theta] =
        magnetic_midpoint_step(f[0], f[1], model_.pair_maps(), step_cfg_, AlgebraTag::so3, rep);
    return {std::move(w), std::move(theta)};
  }
  FieldSet rhs(const FieldSet& f) const override { return model_.rhs(f); }
  std::vector<double> series_values(const FieldSet& f) const override {
    const Vec3 m = unhat(f[0]), p = unhat(f[1]);
    return {model_.hamiltonian(m, p), p.squaredNorm(), m.dot(p)};
  }

 protected:
  RunConfig cfg_;
  KirchhoffModel model_;
  StepConfig step_cfg_;
};

std::unique_ptr<Engine> make_engine(const RunConfig& cfg) {
  if (cfg.model == "euler") return std::make_unique<EulerEngine>(cfg);
  if (cfg.model == "mhd") return std::make_unique<MhdEngine>(cfg);
  if (cfg.model == "hazeltine") return std::make_unique<HazeltineEngine>(cfg);
  if (cfg.model == "kirchhoff") return std::make_unique<KirchhoffEngine>(cfg);
  throw ConfigError("unknown model '" + cfg.model + "'");
}

void append_matrix_text(std::ostringstream& out, const CMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) out << ' ';
      out << format_double(m(i, j).real()) << ' ' << format_double(m(i, j).imag());
    }
    out << '\n';
  }
}

void write_grid_file(const std::filesystem::path& path, const GridField& grid) {
  std::ostringstream out;
  out << "# n_lat = " << grid.n_lat << ", n_lon = " << grid.n_lon
      << ", row-major latitude x longitude\n";
  for (int a = 0; a < grid.n_lat; ++a) {
    for (int b = 0; b < grid.n_lon; ++b) {
      if (b > 0) out << ' ';
      out << format_double(grid.values(a, b));
    }
    out << '\n';
  }
  write_text_file(path, out.str());
}

}  // namespace

std::string serialize_snapshot(const SnapshotData& snap) {
  std::ostringstream out;
  out << "# state snapshot\n";
  out << "model = " << snap.model << '\n';
  out << "algebra = " << snap.algebra << '\n';
  out << "n = " << snap.n << '\n';
  out << "field_count = " << snap.field_names.size() << '\n';
  out << "step = " << snap.step << '\n';
  out << "time = " << format_double(snap.time) << '\n';
  for (size_t i = 0; i < snap.fields.size(); ++i) {
    out << "field " << snap.field_names[i] << '\n';
    append_matrix_text(out, snap.fields[i]);
  }
  return out.str();
}

SnapshotData parse_snapshot(const std::string& text) {
  std::istringstream in(text);
  SnapshotData snap;
  std::string line;
  int field_count = -1;
  auto fail = [](const std::string& why) -> void {
    throw std::runtime_error("snapshot: " + why);
  };

  // Header: key = value until the first "field <name>" line.
  std::string pending_field;
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == '#') continue;
    if (line.empty()) continue;
    if (line.rfind("field ", 0) == 0) {
      pending_field = line.substr(6);
      break;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("expected 'key = value' in header: " + line);
    std::istringstream ks(line.substr(0, eq));
    std::string key;
    ks >> key;
    std::istringstream vs(line.substr(eq + 1));
    std::string value;
    vs >> value;
    if (key == "model") snap.model = value;
    else if (key == "algebra") snap.algebra = value;
    else if (key == "n") snap.n = static_cast<int>(parse_int(value));
    else if (key == "field_count") field_count = static_cast<int>(parse_int(value));
    else if (key == "step") snap.step = parse_int(value);
    else if (key == "time") snap.time = parse_double(value);
    else fail("unknown header key '" + key + "'");
  }
  if (snap.model.empty() || snap.n < 2 || field_count < 1)
    fail("incomplete header");
  if (snap.algebra != "su" && snap.algebra != "so3") fail("bad algebra tag");

  while (!pending_field.empty()) {
    CMatrix m(snap.n, snap.n);
    for (int i = 0; i < snap.n; ++i) {
      if (!std::getline(in, line)) fail("truncated field data");
      std::istringstream row(line);
      for (int j = 0; j < snap.n; ++j) {
        std::string re, im;
        if (!(row >> re >> im)) fail("short row in field data");
        m(i, j) = Complex(parse_double(re), parse_double(im));
      }
    }
    snap.field_names.push_back(pending_field);
    snap.fields.push_back(std::move(m));
    pending_field.clear();
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      if (line.rfind("field ", 0) != 0) fail("unexpected line after field data: " + line);
      pending_field = line.substr(6);
      break;
    }
  }
  if (static_cast<int>(snap.fields.size()) != field_count)
    fail("field count mismatch");
  return snap;
}

SnapshotData read_snapshot_file(const std::filesystem::path& path) {
  return parse_snapshot(read_text_file(path));
}

RunOutcome run_simulation(const RunConfig& cfg, const std::filesystem::path& out_dir, bool quiet,
                          const SnapshotData* resume) {
  namespace fs = std::filesystem;
  const long long n_steps = std::llround(cfg.t_final / cfg.h);
  if (n_steps < 1) throw ConfigError("key 't_final': fewer than one step at this h");

  std::unique_ptr<Engine> engine = make_engine(cfg);

  long long start_step = 0;
  double start_time = 0.0;
  FieldSet state;
  if (resume) {
    if (resume->model != cfg.model)
      throw ConfigError("snapshot model '" + resume->model + "' does not match config model '" +
                        cfg.model + "'");
    if (resume->n != cfg.n)
      throw ConfigError("snapshot size n = " + std::to_string(resume->n) +
                        " does not match config n = " + std::to_string(cfg.n));
    if (resume->field_names != engine->field_names())
      throw ConfigError("snapshot field names do not match the model");
    if (resume->step >= n_steps)
      throw ConfigError("snapshot is already at or beyond t_final");
    start_step = resume->step;
    start_time = resume->time;
    state = resume->fields;
  } else {
    state = engine->initial_state();
  }

  fs::create_directories(out_dir);
  fs::create_directories(out_dir / "snapshots");
  const bool grids = cfg.quantized() && cfg.write_grids;
  if (grids) fs::create_directories(out_dir / "grids");

  // Manifest first, so an aborted run still documents itself.
  write_text_file(out_dir / "manifest.txt",
                  std::string("# version ") + kVersion + "\n" + serialize_config(cfg));

  RunOutcome outcome;
  outcome.record.names = engine->series_names();

  std::ofstream series(out_dir / "timeseries.dat", std::ios::binary | std::ios::trunc);
  if (!series) throw std::runtime_error("cannot write timeseries in " + out_dir.string());
  series << "# time";
  for (const auto& name : outcome.record.names) series << ' ' << name;
  series << " stage_iterations\n";

  auto sample = [&](long long step, double t, const FieldSet& f, int iters) {
    std::vector<double> values = engine->series_values(f);
    series << format_double(t);
    for (double v : values) series << ' ' << format_double(v);
    series << ' ' << iters << '\n';
    series.flush();
    outcome.record.append(t, std::move(values), iters);

    SnapshotData snap;
    snap.model = cfg.model;
    snap.algebra = engine->tag() == AlgebraTag::su ? "su" : "so3";
    snap.n = cfg.n;
    snap.step = step;
    snap.time = t;
    snap.field_names = engine->field_names();
    snap.fields = f;
    write_text_file(out_dir / "snapshots" / ("state_" + pad_step(step) + ".dat"),
                    serialize_snapshot(snap));

    if (grids)
      for (const auto& [name, coeffs] : engine->sphere_fields(f))
        write_grid_file(out_dir / "grids" / (name + "_" + pad_step(step) + ".dat"),
                        evaluate_on_grid(coeffs, cfg.n_lat, cfg.n_lon));

    if (!quiet)
      std::cout << "step " << step << "  t = " << format_double(t) << "  iters = " << iters
                << std::endl;
  };

  sample(start_step, start_time, state, 0);

  outcome.steps_taken = start_step;
  outcome.final_time = start_time;
  outcome.completed = true;
  for (long long step = start_step; step < n_steps; ++step) {
    StageReport rep;
    try {
      if (cfg.baseline) {
        FieldSet next = rk4_step(state, [&](const FieldSet& f) { return engine->rhs(f); }, cfg.h);
        for (auto& m : next) m = project_to_algebra(m, engine->tag());
        state = std::move(next);
        rep = StageReport{0, 0.0, true};
      } else {
        state = engine->step(state, &rep);
      }
    } catch (const StageFailure& e) {
      outcome.completed = false;
      outcome.failure = std::string(e.what()) + " at step " + std::to_string(step + 1) +
                        " (iterations = " + std::to_string(e.report.iterations) +
                        ", residual = " + format_double(e.report.residual) + ")";
      break;
    }
    const long long done = step + 1;
    const double t = start_time + (done - start_step) * cfg.h;
    outcome.steps_taken = done;
    outcome.final_time = t;
    if (done % cfg.output_every == 0 || done == n_steps) sample(done, t, state, rep.iterations);
  }

  outcome.state = state;
  return outcome;
}

}  // namespace lpflow
