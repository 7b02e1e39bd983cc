#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "pstwalk/pstwalk.hpp"

namespace pstwalk::cli {

namespace {

struct Options {
  std::size_t m = 0;
  std::size_t n = 0;
  std::string layout = "opposite";
  std::optional<std::size_t> steps;
  std::optional<std::size_t> sender;
  std::optional<std::size_t> receiver;
  std::string out_path;
  std::string format;
  bool quiet = false;

  // simulate
  std::vector<std::string> sources;
  std::string state_out;
  std::string dense_out;

  // analyze
  bool with_curve = false;

  // sweep
  std::string m_range;
  std::string n_range;

  // verify
  std::size_t max_cells = 36;
  std::size_t norm_steps = 10000;
  std::size_t scan_steps = 200;
};

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw OutputError("cannot open '" + path + "' for writing (check the directory exists and is writable)");
  file << contents;
  if (!file) throw OutputError("failed while writing '" + path + "'");
}

void emit(const Options& opt, const std::string& contents, std::ostream& out) {
  if (opt.out_path.empty()) {
    out << contents;
  } else {
    write_file(opt.out_path, contents);
  }
}

WalkParams make_params(const Options& opt) {
  return WalkParams::make(opt.m, opt.n, parse_layout(opt.layout), opt.sender, opt.receiver);
}

std::size_t default_steps(const WalkParams& params) {
  const bool analytic = params.layout == Layout::SamePart ? params.m >= 2 : (params.m >= 2 && params.n >= 2);
  if (!analytic) return 100;
  return 4 * transfer_time(params).T_opt;
}

int do_simulate(const Options& opt, std::ostream& out, std::ostream& err) {
  const WalkParams params = make_params(opt);
  const std::size_t steps = opt.steps.value_or(default_steps(params));
  if (steps < 1) throw ConfigError("--steps must be >= 1");

  std::vector<Source> sources;
  for (const auto& s : opt.sources) sources.push_back(parse_source(s));
  if (sources.empty()) sources.push_back(Source::FullSimulation);
  const auto curves = curve(params, steps, sources);

  std::ostringstream body;
  if (opt.format == "json") {
    body << to_json(std::span<const FidelityCurve>(curves)) << '\n';
  } else {
    write_curves_csv(body, curves);
  }
  emit(opt, body.str(), out);

  if (!opt.state_out.empty()) {
    Walker walker(params);
    walker.advance(steps);
    std::ostringstream snap;
    walker.state().write_csv(snap);
    write_file(opt.state_out, snap.str());
  }
  if (!opt.dense_out.empty()) {
    std::ostringstream dump;
    build_dense(params).write_csv(dump);
    write_file(opt.dense_out, dump.str());
  }

  if (!opt.quiet) {
    const PeakInfo peak = find_peak(curves.front());
    err << "simulated K_{" << params.m << ',' << params.n << "} " << to_string(params.layout)
        << " for " << steps << " steps; first peak F(" << peak.first_peak_step
        << ") = " << format_double(peak.first_peak_value) << '\n';
  }
  return kExitOk;
}

int do_analyze(const Options& opt, std::ostream& out, std::ostream& err) {
  const WalkParams params = make_params(opt);
  TransferReport report = transfer_time(params);
  if (opt.with_curve) {
    const std::size_t steps = opt.steps.value_or(peak_scan_length(report.T_opt));
    for (const auto& p : curve(params, steps, Source::FullSimulation).points)
      report.curve.emplace_back(p.step, p.fidelity);
  }

  std::ostringstream body;
  if (opt.format == "csv") {
    body << "key,value\n"
         << "m," << params.m << "\nn," << params.n << "\nlayout," << to_string(params.layout)
         << "\nsender," << params.sender << "\nreceiver," << params.receiver << '\n';
    if (report.omega) body << "omega," << format_double(*report.omega) << '\n';
    body << "T_real," << format_double(report.T_real) << "\nT_opt," << report.T_opt
         << "\nF_max_analytic," << format_double(report.F_max_analytic) << "\nF_at_T,"
         << format_double(report.F_at_T) << '\n';
    if (report.F_before) body << "F_before," << format_double(*report.F_before) << '\n';
    if (report.F_after) body << "F_after," << format_double(*report.F_after) << '\n';
  } else {
    body << to_json(report) << '\n';
  }
  emit(opt, body.str(), out);
  if (!opt.quiet)
    err << "T_opt = " << report.T_opt << ", F_max = " << format_double(report.F_max_analytic)
        << ", F(T_opt) = " << format_double(report.F_at_T) << '\n';
  return kExitOk;
}

int do_sweep(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto m_values = parse_range(opt.m_range);
  const auto n_values = parse_range(opt.n_range);
  const SweepGrid grid = sweep_fmax(m_values, n_values);
  std::ostringstream body;
  if (opt.format == "json") {
    body << to_json(grid) << '\n';
  } else {
    write_grid_csv(body, grid);
  }
  emit(opt, body.str(), out);
  if (!opt.quiet)
    err << "swept " << m_values.size() << " x " << n_values.size() << " cells\n";
  return kExitOk;
}

int do_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  VerifyLimits limits;
  limits.max_oracle_cells = opt.max_cells;
  limits.norm_steps = opt.norm_steps;
  limits.scan_steps = opt.scan_steps;
  if (limits.max_oracle_cells > kDenseMaxCells)
    throw ConfigError("--max-cells must be <= " + std::to_string(kDenseMaxCells));

  const VerificationReport report = verify(limits);

  std::ostringstream body;
  if (opt.format == "csv") {
    body << "name,passed,worst_residual,tolerance,cases\n";
    for (const auto& p : report.properties)
      body << p.name << ',' << (p.passed ? "true" : "false") << ','
           << format_double(p.worst_residual) << ',' << format_double(p.tolerance) << ','
           << p.cases << '\n';
  } else {
    body << to_json(report) << '\n';
  }
  emit(opt, body.str(), out);

  if (!opt.quiet) {
    for (const auto& p : report.properties)
      err << (p.passed ? "PASS " : "FAIL ") << p.name << "  worst=" << format_double(p.worst_residual)
          << " tol=" << format_double(p.tolerance) << " cases=" << p.cases
          << (p.passed || p.detail.empty() ? "" : "  [" + p.detail + "]") << '\n';
  }
  return report.all_passed() ? kExitOk : kExitVerifyFailed;
}

void add_walk_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--m", opt.m, "Vertices in part 1 (holds the sender)")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--n", opt.n, "Vertices in part 2")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--layout", opt.layout, "Receiver placement")
      ->check(CLI::IsMember({"same", "opposite"}))
      ->capture_default_str();
  cmd->add_option("--sender", opt.sender, "Sender vertex in part 1 (1-based, default 1)");
  cmd->add_option("--receiver", opt.receiver,
                  "Receiver vertex (1-based; part 1 for same, part 2 for opposite)");
}

void add_output_flags(CLI::App* cmd, Options& opt, std::string& format) {
  cmd->add_option("--out", opt.out_path, "Output file (default: stdout)");
  cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_flag("--quiet", opt.quiet, "Suppress progress messages");
}

}  // namespace

std::vector<std::size_t> parse_range(const std::string& text) {
  auto parse_one = [&](std::string_view piece) {
    std::size_t value = 0;
    const auto* first = piece.data();
    const auto* last = piece.data() + piece.size();
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (piece.empty() || ec != std::errc{} || ptr != last)
      throw ConfigError("bad range '" + text + "' (expected a:b with non-negative integers)");
    return value;
  };
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    const auto v = parse_one(text);
    return {v};
  }
  const std::string_view view(text);
  const auto first = parse_one(view.substr(0, colon));
  const auto last = parse_one(view.substr(colon + 1));
  if (last < first) throw ConfigError("bad range '" + text + "' (end before start)");
  return inclusive_range(first, last);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Perfect state transfer with coined quantum walks on complete bipartite graphs"};
  app.name(args.empty() ? "pstwalk" : args.front());
  app.require_subcommand(1);

  Options opt;
  std::string simulate_format = "csv";
  std::string analyze_format = "json";
  std::string sweep_format = "csv";
  std::string verify_format = "json";

  auto* simulate = app.add_subcommand("simulate", "Fidelity curve of the walk, step by step");
  add_walk_flags(simulate, opt);
  add_output_flags(simulate, opt, simulate_format);
  simulate->add_option("--steps", opt.steps, "Number of steps (default 4*T_opt)");
  simulate->add_option("--sources", opt.sources, "Curve sources: full, reduced, closed")
      ->delimiter(',')
      ->check(CLI::IsMember({"full", "reduced", "closed"}));
  simulate->add_option("--state-out", opt.state_out, "Write the final state as CSV");
  simulate->add_option("--dense-out", opt.dense_out, "Write the dense unitary (nonzeros) as CSV");

  auto* analyze = app.add_subcommand("analyze", "Transfer time and fidelity bounds");
  add_walk_flags(analyze, opt);
  add_output_flags(analyze, opt, analyze_format);
  analyze->add_flag("--curve", opt.with_curve, "Include the simulated fidelity curve");
  analyze->add_option("--steps", opt.steps, "Curve length (default max(4*T_opt, 100))");

  auto* sweep = app.add_subcommand("sweep", "Grid of maximal opposite-part fidelity");
  sweep->add_option("--m", opt.m_range, "Range a:b of part-1 sizes (>= 2)")->required();
  sweep->add_option("--n", opt.n_range, "Range a:b of part-2 sizes (>= 2)")->required();
  add_output_flags(sweep, opt, sweep_format);

  auto* verify_cmd = app.add_subcommand("verify", "Cross-check simulator, dense oracle and closed forms");
  add_output_flags(verify_cmd, opt, verify_format);
  verify_cmd->add_option("--max-cells", opt.max_cells, "Largest m*n compared against the dense oracle")
      ->capture_default_str();
  verify_cmd->add_option("--norm-steps", opt.norm_steps, "Steps in the norm-drift check")->capture_default_str();
  verify_cmd->add_option("--scan-steps", opt.scan_steps, "Steps scanned per size in the analytic checks")
      ->capture_default_str();

  std::vector<std::string> rest(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    err << app.help();
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      opt.format = simulate_format;
      return do_simulate(opt, out, err);
    }
    if (analyze->parsed()) {
      opt.format = analyze_format;
      return do_analyze(opt, out, err);
    }
    if (sweep->parsed()) {
      opt.format = sweep_format;
      return do_sweep(opt, out, err);
    }
    opt.format = verify_format;
    return do_verify(opt, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UnsupportedSource& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const OutputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
}

}  // namespace pstwalk::cli
