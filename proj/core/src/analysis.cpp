#include "pstwalk/analysis.hpp"

#include <algorithm>
#include <ostream>

#include "pstwalk/io.hpp"
#include "pstwalk/reduced.hpp"
#include "pstwalk/step.hpp"

namespace pstwalk {

std::string_view to_string(Source source) {
  switch (source) {
    case Source::FullSimulation: return "full";
    case Source::ReducedMatrix: return "reduced";
    case Source::ClosedForm: return "closed";
  }
  return "unknown";
}

Source parse_source(std::string_view text) {
  if (text == "full" || text == "FullSimulation") return Source::FullSimulation;
  if (text == "reduced" || text == "ReducedMatrix") return Source::ReducedMatrix;
  if (text == "closed" || text == "ClosedForm") return Source::ClosedForm;
  throw ConfigError("unknown curve source '" + std::string(text) +
                    "' (expected full, reduced or closed)");
}

unsigned target_parity(Layout layout) { return layout == Layout::SamePart ? 0 : 1; }

namespace {

FidelityCurve full_simulation_curve(const WalkParams& params, std::size_t max_steps) {
  FidelityCurve out{params, Source::FullSimulation, {}};
  out.points.reserve(max_steps);
  const WalkState target = target_state(params);
  Walker walker(params);
  for (std::size_t t = 1; t <= max_steps; ++t) {
    walker.advance();
    out.points.push_back({t, fidelity(walker.state(), target)});
  }
  return out;
}

FidelityCurve reduced_curve(const WalkParams& params, std::size_t max_steps) {
  FidelityCurve out{params, Source::ReducedMatrix, {}};
  out.points.reserve(max_steps);
  const ReducedModel model = build_reduced(params);
  const unsigned parity = target_parity(params.layout);
  Eigen::VectorXd coords = model.init_coords;
  for (std::size_t t = 1; t <= max_steps; ++t) {
    double f = 0.0;
    if (t % 2 == parity) {
      // Coordinates currently hold U_eff^k init for the previous right-parity
      // step; advance once except at the first hit of the OppositePart case.
      if (!(parity == 1 && t == 1)) coords = model.matrix * coords;
      const double overlap = model.target_coords.dot(coords);
      f = overlap * overlap;
    }
    out.points.push_back({t, f});
  }
  return out;
}

FidelityCurve closed_form_curve(const WalkParams& params, std::size_t max_steps) {
  if (params.layout != Layout::OppositePart)
    throw UnsupportedSource("closed-form fidelity is only available for the opposite-part layout");
  FidelityCurve out{params, Source::ClosedForm, {}};
  out.points.reserve(max_steps);
  for (std::size_t t = 1; t <= max_steps; ++t)
    out.points.push_back({t, t % 2 == 1 ? fidelity_closed_form(params.m, params.n, t) : 0.0});
  return out;
}

}  // namespace

FidelityCurve curve(const WalkParams& params, std::size_t max_steps, Source source) {
  params.validate();
  if (max_steps < 1) throw ConfigError("curve: max_steps must be >= 1");
  switch (source) {
    case Source::FullSimulation: return full_simulation_curve(params, max_steps);
    case Source::ReducedMatrix: return reduced_curve(params, max_steps);
    case Source::ClosedForm: return closed_form_curve(params, max_steps);
  }
  throw UnsupportedSource("unknown curve source");
}

std::vector<FidelityCurve> curve(const WalkParams& params, std::size_t max_steps,
                                 std::span<const Source> sources) {
  std::vector<FidelityCurve> out;
  out.reserve(sources.size());
  for (const Source s : sources) out.push_back(curve(params, max_steps, s));
  return out;
}

PeakInfo find_peak(const FidelityCurve& curve) {
  const unsigned parity = target_parity(curve.params.layout);
  std::vector<CurvePoint> candidates;
  for (const auto& p : curve.points)
    if (p.step % 2 == parity) candidates.push_back(p);

  PeakInfo info;
  if (candidates.empty()) return info;

  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const bool last = k + 1 == candidates.size();
    if (last || candidates[k].fidelity >= candidates[k + 1].fidelity) {
      info.first_peak_step = candidates[k].step;
      info.first_peak_value = candidates[k].fidelity;
      break;
    }
  }
  const auto best = std::max_element(
      candidates.begin(), candidates.end(),
      [](const CurvePoint& a, const CurvePoint& b) { return a.fidelity < b.fidelity; });
  info.global_peak_step = best->step;
  info.global_peak_value = best->fidelity;
  return info;
}

std::size_t peak_scan_length(std::size_t t_opt) { return std::max<std::size_t>(4 * t_opt, 100); }

std::vector<std::size_t> inclusive_range(std::size_t first, std::size_t last) {
  if (last < first) throw ConfigError("empty range (last < first)");
  std::vector<std::size_t> out;
  out.reserve(last - first + 1);
  for (std::size_t v = first; v <= last; ++v) out.push_back(v);
  return out;
}

SweepGrid sweep_fmax(std::span<const std::size_t> m_values, std::span<const std::size_t> n_values) {
  if (m_values.empty() || n_values.empty()) throw ConfigError("sweep_fmax: ranges must be nonempty");
  auto below_two = [](std::size_t v) { return v < 2; };
  if (std::ranges::any_of(m_values, below_two) || std::ranges::any_of(n_values, below_two))
    throw ConfigError("sweep_fmax: all sizes must be >= 2");

  SweepGrid grid{{m_values.begin(), m_values.end()}, {n_values.begin(), n_values.end()}, {}};
  grid.fmax.reserve(m_values.size() * n_values.size());
  for (const auto m : m_values)
    for (const auto n : n_values) grid.fmax.push_back(fmax_opposite(m, n));
  return grid;
}

void write_curves_csv(std::ostream& os, std::span<const FidelityCurve> curves) {
  os << "step,fidelity,source\n";
  for (const auto& c : curves)
    for (const auto& p : c.points)
      os << p.step << ',' << format_double(p.fidelity) << ',' << to_string(c.source) << '\n';
}

void write_grid_csv(std::ostream& os, const SweepGrid& grid) {
  os << "m\\n";
  for (const auto n : grid.n_values) os << ',' << n;
  os << '\n';
  for (std::size_t r = 0; r < grid.m_values.size(); ++r) {
    os << grid.m_values[r];
    for (std::size_t c = 0; c < grid.n_values.size(); ++c) os << ',' << format_double(grid.at(r, c));
    os << '\n';
  }
}

bool VerificationReport::all_passed() const {
  return std::ranges::all_of(properties, [](const PropertyResult& p) { return p.passed; });
}

const PropertyResult* VerificationReport::find(std::string_view name) const {
  const auto it = std::ranges::find(properties, name, &PropertyResult::name);
  return it == properties.end() ? nullptr : &*it;
}

}  // namespace pstwalk
