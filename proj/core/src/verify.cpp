#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "pstwalk/analysis.hpp"
#include "pstwalk/dense_oracle.hpp"
#include "pstwalk/reduced.hpp"
#include "pstwalk/step.hpp"

namespace pstwalk {

namespace {

class Tracker {
 public:
  Tracker(std::string name, double tolerance) {
    result_.name = std::move(name);
    result_.tolerance = tolerance;
  }

  void observe(double residual, const std::string& where) {
    ++result_.cases;
    if (std::isnan(result_.worst_residual)) return;  // NaN sticks
    if (result_.cases == 1 || std::isnan(residual) || residual > result_.worst_residual) {
      result_.worst_residual = residual;
      worst_where_ = where;
    }
  }

  void fail(const std::string& why) { failures_.push_back(why); }

  PropertyResult finish() {
    const bool numeric_ok = !std::isnan(result_.worst_residual) &&
                            result_.worst_residual <= result_.tolerance;
    result_.passed = numeric_ok && failures_.empty();
    std::ostringstream os;
    if (!worst_where_.empty()) os << "worst at " << worst_where_;
    for (const auto& f : failures_) os << (os.tellp() > 0 ? "; " : "") << f;
    result_.detail = os.str();
    return result_;
  }

 private:
  PropertyResult result_;
  std::string worst_where_;
  std::vector<std::string> failures_;
};

std::string label(std::size_t m, std::size_t n, Layout layout) {
  std::ostringstream os;
  os << "K_{" << m << ',' << n << "} " << to_string(layout);
  return os.str();
}

std::vector<WalkParams> oracle_sizes(std::size_t max_cells) {
  std::vector<WalkParams> out;
  for (std::size_t m = 1; m <= max_cells; ++m)
    for (std::size_t n = 1; m * n <= max_cells; ++n) {
      if (m >= 2) out.push_back(WalkParams::make(m, n, Layout::SamePart));
      out.push_back(WalkParams::make(m, n, Layout::OppositePart));
    }
  return out;
}

WalkState random_state(const WalkParams& params, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  WalkState state(params);
  for (auto& a : state.amplitudes()) a = {gauss(rng), gauss(rng)};
  const double norm = std::sqrt(state.norm_squared());
  for (auto& a : state.amplitudes()) a /= norm;
  return state;
}

double max_abs_diff(const WalkState& a, const WalkState& b) {
  double worst = 0.0;
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, std::abs(x[k] - y[k]));
  return worst;
}

std::vector<double> full_fidelities(const WalkParams& params, std::size_t steps) {
  std::vector<double> out;
  out.reserve(steps);
  for (const auto& p : curve(params, steps, Source::FullSimulation).points) out.push_back(p.fidelity);
  return out;
}

// --- individual properties -------------------------------------------------

PropertyResult check_oracle_equivalence(const VerifyLimits& lim, VerificationReport& report) {
  Tracker tr("oracle_equivalence", 1e-12);
  Tracker unit("dense_unitarity", 1e-12);
  for (const auto& params : oracle_sizes(lim.max_oracle_cells)) {
    const DenseUnitary dense = build_dense(params);
    const double u_res = dense.unitarity_residual();
    report.unitarity.push_back({params.m, params.n, params.layout, u_res});
    unit.observe(u_res, label(params.m, params.n, params.layout));
    if (!dense.is_block_off_diagonal())
      unit.fail("dense matrix not block off-diagonal for " + label(params.m, params.n, params.layout));

    const StepOperator op(params);
    WalkState fast = initial_state(params);
    WalkState slow = fast;
    double worst = 0.0;
    for (std::size_t t = 0; t < lim.oracle_steps; ++t) {
      fast = op(fast);
      slow = dense.apply(slow);
      worst = std::max(worst, max_abs_diff(fast, slow));
    }
    tr.observe(worst, label(params.m, params.n, params.layout));
  }
  report.properties.push_back(unit.finish());
  return tr.finish();
}

PropertyResult check_marked_vertex_symmetry() {
  Tracker tr("marked_vertex_symmetry", 1e-12);
  constexpr std::size_t kSteps = 40;
  for (std::size_t m = 2; m <= 5; ++m)
    for (std::size_t n = 1; n <= 4; ++n) {
      const auto ref_same = full_fidelities(WalkParams::make(m, n, Layout::SamePart), kSteps);
      const auto ref_opp = full_fidelities(WalkParams::make(m, n, Layout::OppositePart), kSteps);
      for (std::size_t s = 1; s <= m; ++s) {
        for (std::size_t r = 1; r <= m; ++r) {
          if (r == s) continue;
          const auto f = full_fidelities(WalkParams::make(m, n, Layout::SamePart, s, r), kSteps);
          double worst = 0.0;
          for (std::size_t k = 0; k < kSteps; ++k) worst = std::max(worst, std::abs(f[k] - ref_same[k]));
          tr.observe(worst, label(m, n, Layout::SamePart));
        }
        for (std::size_t rho = 1; rho <= n; ++rho) {
          const auto f = full_fidelities(WalkParams::make(m, n, Layout::OppositePart, s, rho), kSteps);
          double worst = 0.0;
          for (std::size_t k = 0; k < kSteps; ++k) worst = std::max(worst, std::abs(f[k] - ref_opp[k]));
          tr.observe(worst, label(m, n, Layout::OppositePart));
        }
      }
    }
  return tr.finish();
}

PropertyResult check_norm_preservation(const VerifyLimits& lim, std::mt19937_64& rng) {
  Tracker tr("norm_preservation", 1e-9);
  for (const Layout layout : {Layout::SamePart, Layout::OppositePart}) {
    const auto params = WalkParams::make(5, 7, layout);
    for (int trial = 0; trial < 2; ++trial) {
      WalkState start = trial == 0 ? initial_state(params) : random_state(params, rng);
      Walker walker(params, std::move(start));
      double worst = 0.0;
      for (std::size_t t = 0; t < lim.norm_steps; ++t) {
        walker.advance();
        worst = std::max(worst, std::abs(walker.state().norm_squared() - 1.0));
      }
      tr.observe(worst, label(5, 7, layout) + (trial == 0 ? " initial" : " random"));
    }
  }
  return tr.finish();
}

PropertyResult check_single_step_norm(std::mt19937_64& rng) {
  Tracker tr("single_step_norm", 1e-12);
  std::uniform_int_distribution<std::size_t> size(1, 64);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = std::max<std::size_t>(2, size(rng));
    const std::size_t n = size(rng);
    const Layout layout = trial % 2 == 0 ? Layout::SamePart : Layout::OppositePart;
    const auto params = WalkParams::make(m, n, layout);
    const WalkState psi = random_state(params, rng);
    const WalkState out = StepOperator(params)(psi);
    tr.observe(std::abs(out.norm_squared() - 1.0), label(m, n, layout));
  }
  return tr.finish();
}

PropertyResult check_linearity(std::mt19937_64& rng) {
  Tracker tr("linearity", 1e-12);
  std::normal_distribution<double> gauss;
  for (const auto& [m, n] : {std::pair<std::size_t, std::size_t>{3, 4}, {6, 2}, {7, 7}, {12, 5}})
    for (const Layout layout : {Layout::SamePart, Layout::OppositePart}) {
      const auto params = WalkParams::make(m, n, layout);
      const StepOperator op(params);
      const Amplitude a{gauss(rng), gauss(rng)};
      const Amplitude b{gauss(rng), gauss(rng)};
      const WalkState psi = random_state(params, rng);
      const WalkState phi = random_state(params, rng);
      WalkState combo(params);
      for (std::size_t k = 0; k < combo.dim(); ++k)
        combo.amplitudes()[k] = a * psi.amplitudes()[k] + b * phi.amplitudes()[k];
      const WalkState lhs = op(combo);
      const WalkState up = op(psi);
      const WalkState uq = op(phi);
      double worst = 0.0;
      for (std::size_t k = 0; k < combo.dim(); ++k)
        worst = std::max(worst, std::abs(lhs.amplitudes()[k] - (a * up.amplitudes()[k] + b * uq.amplitudes()[k])));
      tr.observe(worst, label(m, n, layout));
    }
  return tr.finish();
}

PropertyResult check_grover_involution(const VerifyLimits& lim, std::mt19937_64& rng) {
  Tracker tr("grover_involution", 1e-14);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (std::size_t d = 1; d <= lim.grover_max_dim; d = d < 10 ? d + 1 : d * 10) {
    std::vector<Amplitude> v(d);
    for (auto& a : v) a = {unif(rng), unif(rng)};
    const auto twice = apply_grover(apply_grover(v));
    double worst = 0.0;
    for (std::size_t k = 0; k < d; ++k) worst = std::max(worst, std::abs(twice[k] - v[k]));
    tr.observe(worst, "d=" + std::to_string(d));
  }
  return tr.finish();
}

PropertyResult check_shift_adjointness(std::mt19937_64& rng) {
  Tracker tr("shift_adjointness", 1e-15);
  for (const auto& [m, n] : {std::pair<std::size_t, std::size_t>{1, 1}, {2, 3}, {5, 4}, {9, 13}}) {
    const auto params = WalkParams::make(m, n, Layout::OppositePart);
    const WalkState psi = random_state(params, rng);
    tr.observe(max_abs_diff(apply_shift(apply_shift(psi)), psi), label(m, n, params.layout));
  }
  return tr.finish();
}

PropertyResult check_bipartite_parity(const VerifyLimits& lim) {
  Tracker tr("bipartite_parity", 0.0);
  for (std::size_t m = 1; m <= 8; ++m)
    for (std::size_t n = 1; n <= 8; ++n)
      for (const Layout layout : {Layout::SamePart, Layout::OppositePart}) {
        if (layout == Layout::SamePart && m < 2) continue;
        const auto params = WalkParams::make(m, n, layout);
        const unsigned parity = target_parity(layout);
        const WalkState target = target_state(params);
        Walker walker(params);
        double worst = 0.0;
        for (std::size_t t = 1; t <= lim.oracle_steps; ++t) {
          walker.advance();
          // Even steps live in part 1, odd steps in part 2.
          const double wrong_part = walker.state().part_weight(t % 2 == 0 ? 2 : 1);
          worst = std::max(worst, wrong_part);
          if (t % 2 != parity) worst = std::max(worst, fidelity(walker.state(), target));
        }
        tr.observe(worst, label(m, n, layout));
      }
  return tr.finish();
}

void check_reduced_models(const VerifyLimits& lim, VerificationReport& report) {
  Tracker embed("reduced_embedding", 1e-12);
  Tracker leak("subspace_invariance", 1e-12);
  Tracker orth("reduced_orthogonality", 1e-12);
  Tracker eig("eigen_residuals", 1e-12);
  Tracker complete("spectral_completeness", 1e-12);
  for (std::size_t m = lim.analytic_min; m <= std::min<std::size_t>(lim.analytic_max, 10); ++m)
    for (std::size_t n = lim.analytic_min; n <= std::min<std::size_t>(lim.analytic_max, 10); ++n) {
      for (const Layout layout : {Layout::SamePart, Layout::OppositePart}) {
        const ReducedModel model = build_reduced(WalkParams::make(m, n, layout));
        const std::string where = label(m, n, layout);
        embed.observe(model.embedding_residual(), where);
        leak.observe(model.subspace_leakage(), where);
        orth.observe(std::max(model.orthogonality_residual(), model.basis_orthonormality_residual()), where);
      }
      const SpectralModel sm = spectral_opposite(m, n);
      eig.observe(sm.eigen_residual(reduced_matrix_opposite(m, n)), label(m, n, Layout::OppositePart));
      eig.observe(std::abs(std::norm(sm.a) + sm.b * sm.b + std::norm(sm.c) - 1.0), "normalization");
      const ReducedModel opp = build_reduced_opposite(m, n);
      for (const Eigen::VectorXd& v : {opp.init_coords, opp.target_coords}) {
        const Eigen::Vector4cd vc = v.cast<std::complex<double>>();
        double total = 0.0;
        for (const auto& chi : sm.chi) total += std::norm(chi.dot(vc));
        complete.observe(std::abs(total - v.squaredNorm()), label(m, n, Layout::OppositePart));
      }
    }
  report.properties.push_back(embed.finish());
  report.properties.push_back(leak.finish());
  report.properties.push_back(orth.finish());
  report.properties.push_back(eig.finish());
  report.properties.push_back(complete.finish());
}

PropertyResult check_reduced_full_equivalence() {
  Tracker tr("reduced_full_equivalence", 1e-12);
  constexpr std::size_t kIterations = 20;
  for (std::size_t m = 3; m <= 8; ++m)
    for (std::size_t n = 1; n <= 8; ++n) {
      const auto params = WalkParams::make(m, n, Layout::SamePart);
      const auto full = full_fidelities(params, 2 * kIterations);
      const ReducedModel model = build_reduced_same(params);
      double worst = 0.0;
      for (std::size_t t = 1; t <= kIterations; ++t)
        worst = std::max(worst, std::abs(model.fidelity_after(t) - full[2 * t - 1]));
      tr.observe(worst, label(m, n, Layout::SamePart));
    }
  for (std::size_t m = 2; m <= 8; ++m)
    for (std::size_t n = 2; n <= 8; ++n) {
      const auto params = WalkParams::make(m, n, Layout::OppositePart);
      const auto full = full_fidelities(params, 2 * kIterations + 1);
      const ReducedModel model = build_reduced_opposite(params);
      const SpectralModel sm = spectral_opposite(m, n);
      double worst = 0.0;
      for (std::size_t t = 0; t <= kIterations; ++t) {
        const Eigen::VectorXd coords = model.evolve_coords(t);
        const Eigen::Vector4cd spectral = sm.evolved_coords(static_cast<double>(t));
        worst = std::max(worst, (coords.cast<std::complex<double>>() - spectral).cwiseAbs().maxCoeff());
        worst = std::max(worst, std::abs(model.fidelity_after(t) - full[2 * t]));
      }
      tr.observe(worst, label(m, n, Layout::OppositePart));
    }
  return tr.finish();
}

void check_opposite_scans(const VerifyLimits& lim, VerificationReport& report) {
  Tracker closed("closed_form_agreement", 1e-10);
  Tracker dominance("fmax_dominance", 1e-12);
  Tracker peak("transfer_time_peak", 0.0);
  for (std::size_t m = lim.analytic_min; m <= lim.analytic_max; ++m)
    for (std::size_t n = lim.analytic_min; n <= lim.analytic_max; ++n) {
      const auto params = WalkParams::make(m, n, Layout::OppositePart);
      const std::string where = label(m, n, Layout::OppositePart);
      const FidelityCurve full = curve(params, lim.scan_steps, Source::FullSimulation);
      const double fmax = fmax_opposite(m, n);
      double worst_cf = 0.0;
      double worst_excess = 0.0;
      for (const auto& p : full.points) {
        if (p.step % 2 == 1)
          worst_cf = std::max(worst_cf, std::abs(p.fidelity - fidelity_closed_form(m, n, p.step)));
        worst_excess = std::max(worst_excess, p.fidelity - fmax);
      }
      closed.observe(worst_cf, where);
      dominance.observe(worst_excess, where);

      const TransferReport tr = transfer_time(params);
      const PeakInfo info = find_peak(full);
      const auto distance = info.first_peak_step > tr.T_opt ? info.first_peak_step - tr.T_opt
                                                            : tr.T_opt - info.first_peak_step;
      const double at_t = full.points[tr.T_opt - 1].fidelity;
      const double shortfall = std::max(0.0, at_t - info.first_peak_value - 1e-12);
      peak.observe(shortfall, where);
      if (distance > 2)
        peak.fail(where + ": peak at " + std::to_string(info.first_peak_step) + ", T_opt " +
                  std::to_string(tr.T_opt));
    }
  report.properties.push_back(closed.finish());
  report.properties.push_back(dominance.finish());
  report.properties.push_back(peak.finish());
}

PropertyResult check_same_part_n_independence() {
  Tracker tr("same_part_n_independence", 1e-12);
  constexpr std::size_t kSteps = 60;
  for (const std::size_t m : {3, 5, 10}) {
    const auto ref = full_fidelities(WalkParams::make(m, 1, Layout::SamePart), kSteps);
    for (const std::size_t n : {2, 5, 9}) {
      const auto f = full_fidelities(WalkParams::make(m, n, Layout::SamePart), kSteps);
      double worst = 0.0;
      for (std::size_t k = 1; k < kSteps; k += 2) worst = std::max(worst, std::abs(f[k] - ref[k]));
      tr.observe(worst, label(m, n, Layout::SamePart));
    }
  }
  return tr.finish();
}

}  // namespace

VerificationReport verify(const VerifyLimits& limits) {
  VerificationReport report;
  report.limits = limits;
  std::mt19937_64 rng(limits.seed);

  report.properties.push_back(check_oracle_equivalence(limits, report));
  report.properties.push_back(check_marked_vertex_symmetry());
  report.properties.push_back(check_norm_preservation(limits, rng));
  report.properties.push_back(check_single_step_norm(rng));
  report.properties.push_back(check_linearity(rng));
  report.properties.push_back(check_grover_involution(limits, rng));
  report.properties.push_back(check_shift_adjointness(rng));
  report.properties.push_back(check_bipartite_parity(limits));
  check_reduced_models(limits, report);
  report.properties.push_back(check_reduced_full_equivalence());
  check_opposite_scans(limits, report);
  report.properties.push_back(check_same_part_n_independence());
  return report;
}

}  // namespace pstwalk
