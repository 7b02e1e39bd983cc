// io.hpp
// Number formatting shared by the CSV writers, and JSON documents for the
// report types.

#pragma once

#include <span>
#include <string>

namespace pstwalk {

struct TransferReport;
struct VerificationReport;
struct FidelityCurve;
struct SweepGrid;

/// printf("%.17g"): round-trip exact for IEEE doubles.
std::string format_double(double value);

/// Flat document: m, n, layout, sender, receiver, omega (opposite only),
/// T_real, T_opt, F_max_analytic, F_at_T, F_before/F_after when present, and
/// `curve` as [[step, fidelity], ...] when nonempty.
std::string to_json(const TransferReport& report, int indent = 2);
std::string to_json(const VerificationReport& report, int indent = 2);
std::string to_json(std::span<const FidelityCurve> curves, int indent = 2);
std::string to_json(const SweepGrid& grid, int indent = 2);

}  // namespace pstwalk
