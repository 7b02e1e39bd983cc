// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "pstwalk/pstwalk.hpp"
#include "test_oracles.hpp"

using namespace pstwalk;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<double> simulate(const WalkParams& params, std::size_t steps) {
  std::vector<double> f(steps + 1, 0.0);
  const WalkState target = target_state(params);
  Walker walker(params);
  for (std::size_t k = 1; k <= steps; ++k) {
    walker.advance();
    f[k] = fidelity(walker.state(), target);
  }
  return f;
}

std::size_t argmax(const std::vector<double>& f) {
  std::size_t best = 1;
  for (std::size_t k = 1; k < f.size(); ++k)
    if (f[k] > f[best]) best = k;
  return best;
}

// First odd step k with F(k) >= F(k + 2), searched independently of find_peak.
std::size_t first_odd_peak(const std::vector<double>& f) {
  std::size_t k = 1;
  while (k + 2 < f.size() && f[k] < f[k + 2]) k += 2;
  return k;
}

Outcome balanced_hundred() {
  Outcome o;
  const auto params = WalkParams::make(100, 100, Layout::OppositePart);
  const auto f = simulate(params, 60);
  const std::size_t peak = first_odd_peak(f);
  const double formula = testing::fidelity_formula(100, 100, (23 - 1) / 2.0);
  o.require(peak == 23, "peak at " + std::to_string(peak));
  o.require(std::abs(f[23] - formula) <= 1e-10, "F(23) off by " + fmt("%.3g", std::abs(f[23] - formula)));
  o.require(fmax_opposite(100, 100) == 1.0, "F_max = " + fmt("%.17g", fmax_opposite(100, 100)));
  o.detail = o.passed ? "peak 23 (global max at " + std::to_string(argmax(f)) + "), F(23) = " + fmt("%.12f", f[23])
                       : o.detail;
  return o;
}

Outcome hundred_by_fifty() {
  Outcome o;
  const auto params = WalkParams::make(100, 50, Layout::OppositePart);
  const auto f = simulate(params, 60);
  const std::size_t peak = first_odd_peak(f);
  const double formula = testing::fidelity_formula(100, 50, (19 - 1) / 2.0);
  const double fmax = fmax_opposite(100, 50);
  o.require(peak == 19, "peak at " + std::to_string(peak));
  o.require(std::abs(fmax - 0.8873) <= 0.0005, "F_max = " + fmt("%.6f", fmax));
  o.require(std::abs(f[19] - formula) <= 1e-10, "F(19) off by " + fmt("%.3g", std::abs(f[19] - formula)));
  o.detail = o.passed ? "peak 19 (revival max at " + std::to_string(argmax(f)) + "), F_max = " + fmt("%.6f", fmax) + ", F(19) = " + fmt("%.12f", f[19]) : o.detail;
  return o;
}

Outcome transfer_time_formula() {
  Outcome o;
  std::size_t exact = 0, bracket = 0;
  for (std::size_t m = 2; m <= 12; ++m)
    for (std::size_t n = 2; n <= 12; ++n) {
      const auto params = WalkParams::make(m, n, Layout::OppositePart);
      const FidelityCurve c = curve(params, 200, Source::FullSimulation);
      const std::size_t peak = find_peak(c).first_peak_step;
      const std::size_t t_opt = transfer_time(params).T_opt;
      const std::string where = "K_{" + std::to_string(m) + "," + std::to_string(n) + "}";
      const std::size_t gap = peak > t_opt ? peak - t_opt : t_opt - peak;
      o.require(gap == 0 || gap == 2, where + " peak " + std::to_string(peak) + " vs T_opt " + std::to_string(t_opt));
      o.require(t_opt <= 200 && c.points[peak - 1].fidelity >= c.points[t_opt - 1].fidelity - 1e-12,
                where + " peak fidelity below F(T_opt)");
      (gap == 0 ? exact : bracket) += 1;
    }
  if (o.passed) o.detail = std::to_string(exact) + " exact, " + std::to_string(bracket) + " at +-2";
  return o;
}

Outcome same_part_n_independence() {
  Outcome o;
  double worst = 0.0;
  for (const std::size_t m : {3u, 5u, 10u, 100u}) {
    std::vector<double> reference;
    for (const std::size_t n : {1u, 2u, 7u, 50u}) {
      const auto f = simulate(WalkParams::make(m, n, Layout::SamePart), 60);
      std::vector<double> even;
      for (std::size_t k = 2; k <= 60; k += 2) even.push_back(f[k]);
      if (reference.empty()) {
        reference = even;
        continue;
      }
      for (std::size_t i = 0; i < even.size(); ++i) worst = std::max(worst, std::abs(even[i] - reference[i]));
    }
  }
  o.require(worst <= 1e-12, "max deviation " + fmt("%.3g", worst));
  if (o.passed) o.detail = "max deviation " + fmt("%.3g", worst);
  return o;
}

Outcome star_graph() {
  Outcome o;
  std::string summary;
  for (const std::size_t m : {2u, 4u, 5u, 20u, 100u}) {
    const double period = 2.0 * std::numbers::pi / std::acos((static_cast<double>(m) - 4.0) / m);
    const auto t = static_cast<std::size_t>(testing::nearest_parity_brute(period, 0));
    const auto f = simulate(WalkParams::make(m, 1, Layout::SamePart), t);
    const std::string where = "m=" + std::to_string(m);
    if (m >= 20) o.require(f[t] > 0.99, where + " F = " + fmt("%.6f", f[t]));
    if (m == 2 || m == 4) o.require(std::abs(f[t] - 1.0) <= 1e-12, where + " F = " + fmt("%.17g", f[t]));
    summary += (summary.empty() ? "" : ", ") + where + " F(" + std::to_string(t) + ")=" + fmt("%.6f", f[t]);
  }
  if (o.passed) o.detail = summary;
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  double worst_state = 0.0, worst_unitary = 0.0;
  std::size_t sizes = 0;
  for (std::size_t m = 1; m <= 36; ++m)
    for (std::size_t n = 1; m * n <= 36; ++n)
      for (const Layout layout : {Layout::SamePart, Layout::OppositePart}) {
        if (layout == Layout::SamePart && m < 2) continue;
        const auto params = WalkParams::make(m, n, layout);
        const DenseUnitary dense = build_dense(params);
        worst_unitary = std::max(worst_unitary, dense.unitarity_residual());
        WalkState reference = initial_state(params);
        Walker walker(params);
        for (std::size_t k = 0; k < 50; ++k) {
          reference = dense.apply(reference);
          walker.advance();
          worst_state = std::max(worst_state, testing::max_abs_diff(reference, walker.state()));
        }
        ++sizes;
      }
  o.require(worst_state <= 1e-12, "state deviation " + fmt("%.3g", worst_state));
  o.require(worst_unitary <= 1e-12, "unitarity residual " + fmt("%.3g", worst_unitary));
  if (o.passed)
    o.detail = std::to_string(sizes) + " cases, state " + fmt("%.3g", worst_state) + ", unitarity " +
               fmt("%.3g", worst_unitary);
  return o;
}

Outcome reduced_matrices() {
  Outcome o;
  double worst_entry = 0.0, worst_eigen = 0.0;
  for (std::size_t m = 2; m <= 10; ++m)
    for (std::size_t n = 2; n <= 10; ++n) {
      const ReducedModel same = build_reduced(WalkParams::make(m, n, Layout::SamePart));
      const Eigen::MatrixXd same_closed =
          m >= 3 ? Eigen::MatrixXd(reduced_matrix_same(m)) : build_reduced_same_degenerate(n).matrix;
      worst_entry = std::max(worst_entry, (same.rebuild_from_walk() - same_closed).cwiseAbs().maxCoeff());

      const ReducedModel opp = build_reduced_opposite(m, n);
      const Eigen::Matrix4d opp_closed = reduced_matrix_opposite(m, n);
      worst_entry = std::max(worst_entry, (opp.rebuild_from_walk() - Eigen::MatrixXd(opp_closed)).cwiseAbs().maxCoeff());

      const SpectralModel sm = spectral_opposite(m, n);
      worst_eigen = std::max(worst_eigen, sm.eigen_residual(opp_closed));
      worst_eigen = std::max(worst_eigen, std::abs(std::norm(sm.a) + sm.b * sm.b + std::norm(sm.c) - 1.0));
    }
  o.require(worst_entry <= 1e-12, "entry deviation " + fmt("%.3g", worst_entry));
  o.require(worst_eigen <= 1e-12, "eigen residual " + fmt("%.3g", worst_eigen));
  if (o.passed) o.detail = "entries " + fmt("%.3g", worst_entry) + ", eigen " + fmt("%.3g", worst_eigen);
  return o;
}

Outcome invariant_suite() {
  Outcome o;
  std::ostringstream out, err;
  const int code = cli::run({"pstwalk", "verify", "--quiet"}, out, err);
  o.require(code == cli::kExitOk, "verify exit status " + std::to_string(code));
  const auto doc = nlohmann::json::parse(out.str(), nullptr, false);
  o.require(!doc.is_discarded(), "verify output is not JSON");
  if (doc.is_discarded()) return o;
  for (const char* name : {"norm_preservation", "grover_involution", "shift_adjointness", "bipartite_parity",
                           "fmax_dominance"}) {
    bool found = false;
    for (const auto& p : doc["properties"])
      if (p["name"] == name) {
        found = true;
        o.require(p["passed"].get<bool>(), std::string(name) + " failed");
        if (std::string(name) == "norm_preservation")
          o.require(p["worst_residual"].get<double>() < 1e-9, "norm drift too large");
      }
    o.require(found, std::string(name) + " missing");
  }
  o.require(doc["all_passed"].get<bool>(), "some verify property failed");
  if (o.passed) o.detail = std::to_string(doc["properties"].size()) + " properties green, exit 0";
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "K_{100,100} peak and closed form", 1.0, balanced_hundred},
      {2, "K_{100,50} peak and F_max", 1.0, hundred_by_fifty},
      {3, "transfer-time formula over 2..12", 10.0, transfer_time_formula},
      {4, "same-part n-independence", 5.0, same_part_n_independence},
      {5, "star-graph transfer", 1.0, star_graph},
      {6, "walk vs dense oracle", 30.0, oracle_equivalence},
      {7, "reduced matrices and spectrum", 0.0, reduced_matrices},
      {8, "verify invariant suite", 0.0, invariant_suite},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0.0 && secs >= c.time_limit)
      outcome.require(false, "runtime " + fmt("%.3f", secs) + " s over " + fmt("%.0f", c.time_limit) + " s");
    std::printf("%s criterion %d (%s): %s [%.3f s]\n", outcome.passed ? "PASS" : "FAIL", c.id, c.name,
                outcome.detail.c_str(), secs);
    if (!outcome.passed) ++failures;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
