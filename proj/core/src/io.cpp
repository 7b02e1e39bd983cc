#include "pstwalk/io.hpp"

#include <array>
#include <cstdio>
#include <json.hpp>

#include "pstwalk/analysis.hpp"
#include "pstwalk/reduced.hpp"

namespace pstwalk {

using nlohmann::ordered_json;

std::string format_double(double value) {
  std::array<char, 40> buf{};
  const int len = std::snprintf(buf.data(), buf.size(), "%.17g", value);
  return {buf.data(), static_cast<std::size_t>(len)};
}

namespace {

ordered_json params_json(const WalkParams& p) {
  return {{"m", p.m},
          {"n", p.n},
          {"layout", std::string(to_string(p.layout))},
          {"sender", p.sender},
          {"receiver", p.receiver}};
}

}  // namespace

std::string to_json(const TransferReport& report, int indent) {
  ordered_json doc = params_json(report.params);
  if (report.omega) doc["omega"] = *report.omega;
  doc["T_real"] = report.T_real;
  doc["T_opt"] = report.T_opt;
  doc["F_max_analytic"] = report.F_max_analytic;
  doc["F_at_T"] = report.F_at_T;
  if (report.F_before) doc["F_before"] = *report.F_before;
  if (report.F_after) doc["F_after"] = *report.F_after;
  if (!report.curve.empty()) {
    ordered_json pts = ordered_json::array();
    for (const auto& [step, f] : report.curve) pts.push_back({step, f});
    doc["curve"] = std::move(pts);
  }
  return doc.dump(indent);
}

std::string to_json(const VerificationReport& report, int indent) {
  ordered_json doc;
  doc["all_passed"] = report.all_passed();
  doc["limits"] = {{"max_oracle_cells", report.limits.max_oracle_cells},
                   {"oracle_steps", report.limits.oracle_steps},
                   {"norm_steps", report.limits.norm_steps},
                   {"analytic_min", report.limits.analytic_min},
                   {"analytic_max", report.limits.analytic_max},
                   {"scan_steps", report.limits.scan_steps},
                   {"grover_max_dim", report.limits.grover_max_dim},
                   {"seed", report.limits.seed}};
  ordered_json props = ordered_json::array();
  for (const auto& p : report.properties)
    props.push_back({{"name", p.name},
                     {"passed", p.passed},
                     {"worst_residual", p.worst_residual},
                     {"tolerance", p.tolerance},
                     {"cases", p.cases},
                     {"detail", p.detail}});
  doc["properties"] = std::move(props);
  ordered_json unit = ordered_json::array();
  for (const auto& u : report.unitarity)
    unit.push_back({{"m", u.m},
                    {"n", u.n},
                    {"layout", std::string(to_string(u.layout))},
                    {"residual", u.residual}});
  doc["unitarity"] = std::move(unit);
  return doc.dump(indent);
}

std::string to_json(std::span<const FidelityCurve> curves, int indent) {
  ordered_json doc = ordered_json::array();
  for (const auto& c : curves) {
    ordered_json entry = params_json(c.params);
    entry["source"] = std::string(to_string(c.source));
    ordered_json pts = ordered_json::array();
    for (const auto& p : c.points) pts.push_back({{"step", p.step}, {"fidelity", p.fidelity}});
    entry["points"] = std::move(pts);
    doc.push_back(std::move(entry));
  }
  return doc.dump(indent);
}

std::string to_json(const SweepGrid& grid, int indent) {
  ordered_json doc;
  doc["m_values"] = grid.m_values;
  doc["n_values"] = grid.n_values;
  ordered_json rows = ordered_json::array();
  for (std::size_t r = 0; r < grid.m_values.size(); ++r) {
    ordered_json row = ordered_json::array();
    for (std::size_t c = 0; c < grid.n_values.size(); ++c) row.push_back(grid.at(r, c));
    rows.push_back(std::move(row));
  }
  doc["fmax"] = std::move(rows);
  return doc.dump(indent);
}

}  // namespace pstwalk
