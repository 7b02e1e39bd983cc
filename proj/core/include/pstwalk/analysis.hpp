// analysis.hpp
// Fidelity curves from the three computation routes, peak location, F_max
// sweeps, and the cross-validation battery behind `pstwalk verify`.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pstwalk/params.hpp"

namespace pstwalk {

/// Requested a curve source that is not defined for the layout
/// (ClosedForm on SamePart).
class UnsupportedSource : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Source { FullSimulation, ReducedMatrix, ClosedForm };

std::string_view to_string(Source source);
/// "full", "reduced", "closed" (or the enum spellings).
Source parse_source(std::string_view text);

struct CurvePoint {
  std::size_t step = 0;
  double fidelity = 0.0;
};

struct FidelityCurve {
  WalkParams params;
  Source source = Source::FullSimulation;
  std::vector<CurvePoint> points;  // steps 1..max_steps
};

/// One curve per source, steps 1..max_steps. Fidelity at wrong-parity steps is
/// exactly 0.0 (odd steps for SamePart, even steps for OppositePart).
std::vector<FidelityCurve> curve(const WalkParams& params, std::size_t max_steps,
                                 std::span<const Source> sources);
FidelityCurve curve(const WalkParams& params, std::size_t max_steps, Source source);

/// Step parity at which the target can be reached: 0 SamePart, 1 OppositePart.
unsigned target_parity(Layout layout);

struct PeakInfo {
  std::size_t first_peak_step = 0;   // first local maximum over right-parity steps
  double first_peak_value = 0.0;
  std::size_t global_peak_step = 0;  // argmax over the whole curve (earliest on ties)
  double global_peak_value = 0.0;
};

/// The first local maximum is the first right-parity step k with
/// F(k) >= F(k+2) (or the last such step in the curve).
PeakInfo find_peak(const FidelityCurve& curve);

/// Scan length used when hunting for the peak: max(4 * T_opt, 100).
std::size_t peak_scan_length(std::size_t t_opt);

struct SweepGrid {
  std::vector<std::size_t> m_values;
  std::vector<std::size_t> n_values;
  std::vector<double> fmax;  // row-major, rows = m_values

  double at(std::size_t row, std::size_t col) const { return fmax[row * n_values.size() + col]; }
};

/// Inclusive integer range [first, last].
std::vector<std::size_t> inclusive_range(std::size_t first, std::size_t last);

/// Grid of fmax_opposite(m, n). Throws ConfigError on empty ranges or values < 2.
SweepGrid sweep_fmax(std::span<const std::size_t> m_values, std::span<const std::size_t> n_values);

/// `step,fidelity,source`, 17 significant digits. Curves are written one after
/// another under a single header.
void write_curves_csv(std::ostream& os, std::span<const FidelityCurve> curves);
/// Header row `m\n,<n values...>`, then one row per m.
void write_grid_csv(std::ostream& os, const SweepGrid& grid);

// ---------------------------------------------------------------------------
// Verification battery

struct VerifyLimits {
  std::size_t max_oracle_cells = 36;  // m*n bound for dense comparisons
  std::size_t oracle_steps = 50;
  std::size_t norm_steps = 10000;
  std::size_t analytic_min = 2;       // m, n range for analytic checks
  std::size_t analytic_max = 12;
  std::size_t scan_steps = 200;
  std::size_t grover_max_dim = 10000;
  std::uint64_t seed = 20161004;
};

struct PropertyResult {
  std::string name;
  bool passed = false;
  double worst_residual = 0.0;
  double tolerance = 0.0;
  std::size_t cases = 0;
  std::string detail;
};

struct SizeResidual {
  std::size_t m = 0;
  std::size_t n = 0;
  Layout layout = Layout::OppositePart;
  double residual = 0.0;
};

struct VerificationReport {
  VerifyLimits limits;
  std::vector<PropertyResult> properties;
  std::vector<SizeResidual> unitarity;  // one entry per tested (m, n, layout)

  bool all_passed() const;
  const PropertyResult* find(std::string_view name) const;
};

/// Runs every cross-check. Failures are recorded, never thrown.
VerificationReport verify(const VerifyLimits& limits = {});

}  // namespace pstwalk
