#include "lpflow/integrators.hpp"

#include <cmath>

namespace lpflow {
namespace {

StageReport run_stage(const std::function<FieldSet(const FieldSet&)>& map,
                      FieldSet& state, const StepConfig& cfg, StageReport* report) {
  StageReport rep = fixed_point_solve(map, state, cfg.fp);
  if (report) *report = rep;
  return rep;
}

CMatrix maybe_project(CMatrix m, std::optional<AlgebraTag> tag) {
  return tag ? project_to_algebra(m, *tag) : std::move(m);
}

}  // namespace

StageReport fixed_point_solve(const std::function<FieldSet(const FieldSet&)>& map,
                              FieldSet& state, const FixedPointConfig& cfg) {
  StageReport rep;
  for (int it = 1; it <= cfg.max_iters; ++it) {
    FieldSet next = map(state);
    double res_sq = 0.0, scale_sq = 0.0;
    for (size_t i = 0; i < state.size(); ++i) {
      res_sq += (next[i] - state[i]).squaredNorm();
      scale_sq += state[i].squaredNorm();
    }
    const double residual = std::sqrt(res_sq) / std::max(1.0, std::sqrt(scale_sq));
    state = std::move(next);
    rep.iterations = it;
    rep.residual = residual;
    if (residual <= cfg.tol) {
      rep.converged = true;
      return rep;
    }
  }
  throw StageFailure("fixed_point_solve: no convergence within iteration budget", rep);
}

CMatrix isospectral_midpoint_step(const CMatrix& v,
                                  const std::function<CMatrix(const CMatrix&)>& m_fn,
                                  const StepConfig& cfg, std::optional<AlgebraTag> tag,
                                  StageReport* report) {
  const double h = cfg.h;
  auto stage = [&](const FieldSet& s) -> FieldSet {
    const CMatrix& vt = s[0];
    const CMatrix m = m_fn(vt);
    CMatrix next = v + (0.5 * h) * commutator(vt, m) + (0.25 * h * h) * (m * vt * m);
    return {std::move(next)};
  };
  FieldSet state{v};
  run_stage(stage, state, cfg, report);

  const CMatrix& vt = state[0];
  const CMatrix m = m_fn(vt);
  return maybe_project(v + h * commutator(vt, m), tag);
}

std::pair<CMatrix, CMatrix> magnetic_midpoint_step(const CMatrix& w, const CMatrix& theta,
                                                   const PairMaps& m_fns,
                                                   const StepConfig& cfg,
                                                   std::optional<AlgebraTag> tag,
                                                   StageReport* report) {
  const double h = cfg.h;
  auto stage = [&](const FieldSet& s) -> FieldSet {
    const CMatrix& wt = s[0];
    const CMatrix& tt = s[1];
    const auto [m1, m2] = m_fns(wt, tt);
    CMatrix w_next = w + (0.5 * h) * commutator(wt, m1) + (0.5 * h) * commutator(tt, m2) +
                     (0.25 * h * h) * (m1 * wt * m1 + m2 * tt * m1 + m1 * tt * m2);
    CMatrix t_next = theta + (0.5 * h) * commutator(tt, m1) + (0.25 * h * h) * (m1 * tt * m1);
    return {std::move(w_next), std::move(t_next)};
  };
  FieldSet state{w, theta};
  run_stage(stage, state, cfg, report);

  const CMatrix& wt = state[0];
  const CMatrix& tt = state[1];
  const auto [m1, m2] = m_fns(wt, tt);
  CMatrix w_out = w + h * commutator(wt, m1) + h * commutator(tt, m2);
  CMatrix t_out = theta + h * commutator(tt, m1);
  return {maybe_project(std::move(w_out), tag), maybe_project(std::move(t_out), tag)};
}

std::pair<CMatrix, CMatrix> block_embedding_step(const CMatrix& w, const CMatrix& theta,
                                                 const PairMaps& m_fns, const StepConfig& cfg,
                                                 std::optional<AlgebraTag> tag,
                                                 StageReport* report) {
  const int n = static_cast<int>(w.rows());
  auto embed = [n](const CMatrix& lower, const CMatrix& diag) {
    CMatrix v = CMatrix::Zero(2 * n, 2 * n);
    v.topLeftCorner(n, n) = diag;
    v.bottomRightCorner(n, n) = diag;
    v.bottomLeftCorner(n, n) = lower;
    return v;
  };
  auto m_block = [&](const CMatrix& v) -> CMatrix {
    const CMatrix wt = v.bottomLeftCorner(n, n);
    const CMatrix tt = v.topLeftCorner(n, n);
    const auto [m1, m2] = m_fns(wt, tt);
    return embed(m2, m1);
  };

  const CMatrix v0 = embed(w, theta);
  const CMatrix v1 = isospectral_midpoint_step(v0, m_block, cfg, std::nullopt, report);
  CMatrix w_out = v1.bottomLeftCorner(n, n);
  CMatrix t_out = v1.topLeftCorner(n, n);
  return {maybe_project(std::move(w_out), tag), maybe_project(std::move(t_out), tag)};
}

std::tuple<CMatrix, CMatrix, CMatrix> hazeltine_midpoint_step(
    const CMatrix& w, const CMatrix& theta, const CMatrix& chi, const TripleMaps& m_fns,
    double alpha, const StepConfig& cfg, std::optional<AlgebraTag> tag, StageReport* report) {
  const double h = cfg.h;
  auto stage = [&](const FieldSet& s) -> FieldSet {
    const CMatrix& wt = s[0];
    const CMatrix& tt = s[1];
    const CMatrix& ct = s[2];
    const auto [m1, m2, m3] = m_fns(wt, tt, ct);
    CMatrix w_next =
        w + (0.5 * h) * commutator(wt, m1) + (0.5 * h) * commutator(tt, m2) +
        (0.25 * h * h) * (m1 * wt * m1 + m2 * tt * m3 + m3 * tt * m2 -
                          alpha * (m1 * (ct * ct)) - alpha * ((ct * ct) * m1) +
                          (alpha * alpha) * (ct * ct * ct));
    CMatrix t_next = theta + (0.5 * h) * commutator(tt, m3) + (0.25 * h * h) * (m3 * tt * m3);
    CMatrix c_next = chi + (0.5 * h) * commutator(ct, m3) + (0.5 * h) * commutator(tt, m2) +
                     (0.25 * h * h) * (m3 * ct * m3 + m2 * tt * m3 + m3 * tt * m2);
    return {std::move(w_next), std::move(t_next), std::move(c_next)};
  };
  FieldSet state{w, theta, chi};
  run_stage(stage, state, cfg, report);

  const CMatrix& wt = state[0];
  const CMatrix& tt = state[1];
  const CMatrix& ct = state[2];
  const auto [m1, m2, m3] = m_fns(wt, tt, ct);
  CMatrix w_out = w + h * commutator(wt, m1) + h * commutator(tt, m2);
  CMatrix t_out = theta + h * commutator(tt, m3);
  CMatrix c_out = chi + h * commutator(ct, m3) + h * commutator(tt, m2);
  return {maybe_project(std::move(w_out), tag), maybe_project(std::move(t_out), tag),
          maybe_project(std::move(c_out), tag)};
}

FieldSet rk4_step(const FieldSet& fields, const std::function<FieldSet(const FieldSet&)>& rhs,
                  double h) {
  auto axpy = [](const FieldSet& x, double a, const FieldSet& d) {
    FieldSet out(x.size());
    for (size_t i = 0; i < x.size(); ++i) out[i] = x[i] + a * d[i];
    return out;
  };
  const FieldSet k1 = rhs(fields);
  const FieldSet k2 = rhs(axpy(fields, 0.5 * h, k1));
  const FieldSet k3 = rhs(axpy(fields, 0.5 * h, k2));
  const FieldSet k4 = rhs(axpy(fields, h, k3));
  FieldSet out(fields.size());
  for (size_t i = 0; i < fields.size(); ++i)
    out[i] = fields[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

}  // namespace lpflow
