#include "pstwalk/reduced.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pstwalk/step.hpp"

namespace pstwalk {

namespace {

double as_double(std::size_t x) { return static_cast<double>(x); }

void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

WalkState uniform_part1_rows(const WalkParams& params, auto&& include_row) {
  WalkState state(params);
  std::size_t count = 0;
  for (std::size_t i = 0; i < params.m; ++i)
    if (include_row(i)) ++count;
  const double amp = 1.0 / std::sqrt(as_double(count * params.n));
  for (std::size_t i = 0; i < params.m; ++i)
    if (include_row(i))
      for (auto& a : state.part1_row(i)) a = amp;
  return state;
}

WalkState uniform_part2(const WalkParams& params, auto&& include_cell) {
  WalkState state(params);
  std::size_t count = 0;
  for (std::size_t alpha = 0; alpha < params.n; ++alpha)
    for (std::size_t i = 0; i < params.m; ++i)
      if (include_cell(alpha, i)) ++count;
  const double amp = 1.0 / std::sqrt(as_double(count));
  for (std::size_t alpha = 0; alpha < params.n; ++alpha)
    for (std::size_t i = 0; i < params.m; ++i)
      if (include_cell(alpha, i)) state.part2(alpha, i) = amp;
  return state;
}

WalkState two_steps(const StepOperator& op, const WalkState& state) {
  return op(op(state));
}

}  // namespace

// ---------------------------------------------------------------------------
// ReducedModel

double ReducedModel::orthogonality_residual() const {
  const Eigen::MatrixXd gram = matrix.transpose() * matrix;
  return (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
}

double ReducedModel::basis_orthonormality_residual() const {
  double worst = 0.0;
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t k = 0; k < basis.size(); ++k) {
      const double expected = j == k ? 1.0 : 0.0;
      worst = std::max(worst, std::abs(basis[j].inner(basis[k]) - expected));
    }
  return worst;
}

Eigen::MatrixXd ReducedModel::rebuild_from_walk() const {
  const StepOperator op(params);
  const auto d = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd rebuilt(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    const WalkState image = two_steps(op, basis[static_cast<std::size_t>(k)]);
    for (Eigen::Index j = 0; j < d; ++j)
      rebuilt(j, k) = basis[static_cast<std::size_t>(j)].inner(image).real();
  }
  return rebuilt;
}

double ReducedModel::embedding_residual() const {
  return (rebuild_from_walk() - matrix).cwiseAbs().maxCoeff();
}

double ReducedModel::subspace_leakage() const {
  const StepOperator op(params);
  double worst = 0.0;
  for (const auto& phi : basis) {
    WalkState rest = two_steps(op, phi);
    for (const auto& other : basis) {
      const Amplitude coeff = other.inner(rest);
      auto dst = rest.amplitudes();
      const auto src = other.amplitudes();
      for (std::size_t q = 0; q < dst.size(); ++q) dst[q] -= coeff * src[q];
    }
    worst = std::max(worst, std::sqrt(rest.norm_squared()));
  }
  return worst;
}

Eigen::VectorXd ReducedModel::evolve_coords(std::size_t t) const {
  Eigen::VectorXd v = init_coords;
  for (std::size_t k = 0; k < t; ++k) v = matrix * v;
  return v;
}

double ReducedModel::fidelity_after(std::size_t t) const {
  const double overlap = target_coords.dot(evolve_coords(t));
  return overlap * overlap;
}

double ReducedModel::fidelity_at_step(std::size_t walk_step) const {
  const std::size_t offset = step_offset();
  if (walk_step < offset || (walk_step - offset) % 2 != 0) return 0.0;
  return fidelity_after((walk_step - offset) / 2);
}

// ---------------------------------------------------------------------------
// Builders

Eigen::Matrix3d reduced_matrix_same(std::size_t m) {
  require(m >= 3, "3x3 same-part reduction needs m >= 3");
  const double md = as_double(m);
  const double diag = 1.0 - 2.0 / md;
  const double off = -2.0 / md;
  const double side = 2.0 * std::sqrt(md - 2.0) / md;
  Eigen::Matrix3d u;
  u << diag, off, side,
       off, diag, side,
       -side, -side, 1.0 - 4.0 / md;
  return u;
}

ReducedModel build_reduced_same(const WalkParams& params) {
  params.validate();
  require(params.layout == Layout::SamePart, "build_reduced_same: layout must be same-part");
  require(params.m >= 3,
          "build_reduced_same: m >= 3 required (use build_reduced_same_degenerate for m = 2)");

  ReducedModel model{params, reduced_matrix_same(params.m), {}, {}, {}};
  const std::size_t s = params.sender0();
  const std::size_t r = params.receiver0();
  model.basis.push_back(initial_state(params));
  model.basis.push_back(target_state(params));
  model.basis.push_back(uniform_part1_rows(params, [&](std::size_t i) { return i != s && i != r; }));
  model.init_coords = Eigen::Vector3d(1.0, 0.0, 0.0);
  model.target_coords = Eigen::Vector3d(0.0, 1.0, 0.0);
  return model;
}

ReducedModel build_reduced_same(std::size_t m, std::size_t n) {
  return build_reduced_same(WalkParams::make(m, n, Layout::SamePart));
}

ReducedModel build_reduced_same_degenerate(const WalkParams& params) {
  params.validate();
  require(params.layout == Layout::SamePart && params.m == 2,
          "build_reduced_same_degenerate: same-part layout with m = 2 required");
  Eigen::Matrix2d u;
  // 1 - 2/m and -2/m at m = 2
  u << 0.0, -1.0,
       -1.0, 0.0;
  ReducedModel model{params, u, {}, {}, {}};
  model.basis.push_back(initial_state(params));
  model.basis.push_back(target_state(params));
  model.init_coords = Eigen::Vector2d(1.0, 0.0);
  model.target_coords = Eigen::Vector2d(0.0, 1.0);
  return model;
}

ReducedModel build_reduced_same_degenerate(std::size_t n) {
  return build_reduced_same_degenerate(WalkParams::make(2, n, Layout::SamePart));
}

Eigen::Matrix4d reduced_matrix_opposite(std::size_t m, std::size_t n) {
  require(m >= 2 && n >= 2, "4x4 opposite-part reduction needs m, n >= 2");
  const double md = as_double(m);
  const double nd = as_double(n);
  const double mn = md * nd;
  const double sm = std::sqrt(md - 1.0);
  const double sn = std::sqrt(nd - 1.0);
  Eigen::Matrix4d u;
  u << 1.0, 0.0, 0.0, 0.0,
       0.0, 1.0 - 2.0 / nd, 4.0 * sm * sn / mn, 2.0 * (md - 2.0) * sn / mn,
       0.0, 0.0, 1.0 - 2.0 / md, -2.0 * sm / md,
       0.0, -2.0 * sn / nd, 2.0 * (nd - 2.0) * sm / mn, (md - 2.0) * (nd - 2.0) / mn;
  return u;
}

ReducedModel build_reduced_opposite(const WalkParams& params) {
  params.validate();
  require(params.layout == Layout::OppositePart,
          "build_reduced_opposite: layout must be opposite-part");
  require(params.m >= 2 && params.n >= 2, "build_reduced_opposite: m, n >= 2 required");

  ReducedModel model{params, reduced_matrix_opposite(params.m, params.n), {}, {}, {}};
  const std::size_t s = params.sender0();
  const std::size_t rho = params.receiver0();
  model.basis.push_back(uniform_part2(
      params, [&](std::size_t alpha, std::size_t i) { return alpha == rho && i == s; }));
  model.basis.push_back(uniform_part2(
      params, [&](std::size_t alpha, std::size_t i) { return alpha == rho && i != s; }));
  model.basis.push_back(uniform_part2(
      params, [&](std::size_t alpha, std::size_t i) { return alpha != rho && i == s; }));
  model.basis.push_back(uniform_part2(
      params, [&](std::size_t alpha, std::size_t i) { return alpha != rho && i != s; }));

  const double md = as_double(params.m);
  const double nd = as_double(params.n);
  model.init_coords = Eigen::Vector4d(-1.0 / std::sqrt(nd), 0.0, -std::sqrt((nd - 1.0) / nd), 0.0);
  model.target_coords = Eigen::Vector4d(1.0 / std::sqrt(md), std::sqrt((md - 1.0) / md), 0.0, 0.0);
  return model;
}

ReducedModel build_reduced_opposite(std::size_t m, std::size_t n) {
  return build_reduced_opposite(WalkParams::make(m, n, Layout::OppositePart));
}

ReducedModel build_reduced(const WalkParams& params) {
  if (params.layout == Layout::SamePart)
    return params.m == 2 ? build_reduced_same_degenerate(params) : build_reduced_same(params);
  return build_reduced_opposite(params);
}

// ---------------------------------------------------------------------------
// Spectral model

double omega_opposite(std::size_t m, std::size_t n) {
  require(m >= 1 && n >= 1, "omega_opposite: m, n >= 1 required");
  const double md = as_double(m);
  const double nd = as_double(n);
  const double arg = (md * nd - 2.0 * md - 2.0 * nd + 2.0) / (md * nd);
  return std::acos(std::clamp(arg, -1.0, 1.0));
}

SpectralModel spectral_opposite(std::size_t m, std::size_t n) {
  require(m >= 2 && n >= 2, "spectral_opposite: m, n >= 2 required");
  using namespace std::complex_literals;
  const double md = as_double(m);
  const double nd = as_double(n);
  const double total = md + nd - 1.0;

  SpectralModel sm;
  sm.m = m;
  sm.n = n;
  sm.omega = omega_opposite(m, n);
  sm.a = -(md * nd - md - nd + 1.0) / std::sqrt(2.0 * nd * (md - 1.0) * (nd - 1.0) * total) -
         1i / std::sqrt(2.0 * nd);
  sm.b = std::sqrt(nd / (2.0 * total));
  sm.c = (md - 1.0) / std::sqrt(2.0 * nd * (md - 1.0) * total) - 1i * std::sqrt((nd - 1.0) / (2.0 * nd));

  sm.chi[0] = Eigen::Vector4cd(1.0, 0.0, 0.0, 0.0);
  sm.chi[1] = Eigen::Vector4cd(0.0, std::sqrt(nd - 1.0), std::sqrt(md - 1.0), -1.0) / std::sqrt(total);
  sm.chi[2] = Eigen::Vector4cd(0.0, sm.a, sm.b, sm.c);
  sm.chi[3] = Eigen::Vector4cd(0.0, std::conj(sm.a), sm.b, std::conj(sm.c));

  const std::complex<double> phase = std::polar(1.0, sm.omega);
  sm.eigenvalues = {1.0, 1.0, phase, std::conj(phase)};
  return sm;
}

double SpectralModel::eigen_residual(const Eigen::Matrix4d& matrix) const {
  const Eigen::Matrix4cd mc = matrix.cast<std::complex<double>>();
  double worst = 0.0;
  for (std::size_t k = 0; k < 4; ++k)
    worst = std::max(worst, (mc * chi[k] - eigenvalues[k] * chi[k]).norm());
  return worst;
}

Eigen::Vector4cd SpectralModel::evolved_coords(double t) const {
  const double md = as_double(m);
  const double nd = as_double(n);
  const double total = md + nd - 1.0;
  const std::complex<double> phase = std::polar(1.0, omega * t);
  return -1.0 / std::sqrt(nd) * chi[0] -
         std::sqrt((md * nd - md - nd + 1.0) / (nd * total)) * chi[1] -
         std::sqrt((nd - 1.0) / (2.0 * total)) * (phase * chi[2] + std::conj(phase) * chi[3]);
}

// ---------------------------------------------------------------------------
// Closed forms

double fidelity_closed_form_continuous(std::size_t m, std::size_t n, double t) {
  require(m >= 2 && n >= 2, "fidelity_closed_form: m, n >= 2 required");
  const double md = as_double(m);
  const double nd = as_double(n);
  const double total = md + nd - 1.0;
  const double wt = omega_opposite(m, n) * t;
  const double amp = md * nd - (md - 1.0) * (nd - 1.0) * std::cos(wt) +
                     std::sqrt((md - 1.0) * (nd - 1.0) * total) * std::sin(wt);
  return amp * amp / (md * nd * total * total);
}

double fidelity_closed_form(std::size_t m, std::size_t n, std::size_t steps) {
  require(steps % 2 == 1,
          "fidelity_closed_form: steps must be odd (even-step fidelity is identically 0), got " +
              std::to_string(steps));
  return fidelity_closed_form_continuous(m, n, as_double((steps - 1) / 2));
}

double fmax_opposite(std::size_t m, std::size_t n) {
  require(m >= 1 && n >= 1, "fmax_opposite: m, n >= 1 required");
  const double md = as_double(m);
  const double nd = as_double(n);
  const double amp = (std::sqrt((md - 1.0) * (nd - 1.0)) + std::sqrt(md * nd)) / (md + nd - 1.0);
  return amp * amp;
}

double transfer_time_same_real(std::size_t m) {
  require(m >= 2, "transfer_time_same_real: m >= 2 required");
  const double md = as_double(m);
  return 2.0 * std::numbers::pi / std::acos(std::clamp((md - 4.0) / md, -1.0, 1.0));
}

double transfer_time_opposite_real(std::size_t m, std::size_t n) {
  require(m >= 1 && n >= 1, "transfer_time_opposite_real: m, n >= 1 required");
  const double md = as_double(m);
  const double nd = as_double(n);
  const double peak_phase = std::acos(-std::sqrt((md - 1.0) * (nd - 1.0) / (md * nd)));
  return 2.0 * peak_phase / omega_opposite(m, n) + 1.0;
}

std::size_t nearest_with_parity(double x, unsigned parity) {
  const long floor_min = parity == 1 ? 1 : 2;
  long lower = static_cast<long>(std::floor(x));
  if (std::labs(lower % 2) != static_cast<long>(parity)) --lower;
  const long upper = lower + 2;
  long best = (upper - x) < (x - lower) ? upper : lower;
  best = std::max(best, floor_min);
  return static_cast<std::size_t>(best);
}

TransferReport transfer_time(const WalkParams& params) {
  params.validate();
  TransferReport report;
  report.params = params;

  if (params.layout == Layout::SamePart) {
    report.T_real = transfer_time_same_real(params.m);
    report.T_opt = nearest_with_parity(report.T_real, 0);
    report.F_max_analytic = 1.0;
    const ReducedModel model = build_reduced(params);
    report.F_at_T = model.fidelity_at_step(report.T_opt);
    if (report.T_opt >= 2) report.F_before = model.fidelity_at_step(report.T_opt - 2);
    report.F_after = model.fidelity_at_step(report.T_opt + 2);
    return report;
  }

  require(params.m >= 2 && params.n >= 2, "transfer_time: opposite-part layout needs m, n >= 2");
  report.omega = omega_opposite(params.m, params.n);
  report.T_real = transfer_time_opposite_real(params.m, params.n);
  report.T_opt = nearest_with_parity(report.T_real, 1);
  report.F_max_analytic = fmax_opposite(params.m, params.n);
  report.F_at_T = fidelity_closed_form(params.m, params.n, report.T_opt);
  if (report.T_opt >= 3) report.F_before = fidelity_closed_form(params.m, params.n, report.T_opt - 2);
  report.F_after = fidelity_closed_form(params.m, params.n, report.T_opt + 2);
  return report;
}

}  // namespace pstwalk
