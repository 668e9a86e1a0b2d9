// Command-line front end: single-point analysis, vanishing-passage sweeps,
// trajectory sampling, dilation dumps, and the full verification suite.
//
// Exit status: 0 success, 1 verification/runtime failure, 2 config errors.

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ptbrach/format.hpp"
#include "ptbrach/matrix_json.hpp"
#include "ptbrach/naimark.hpp"
#include "ptbrach/protocol.hpp"
#include "ptbrach/pt_system.hpp"
#include "ptbrach/verify.hpp"

namespace {

using namespace ptbrach;

struct Options {
  double E0 = 0.0;
  std::optional<double> alpha, s, epsilon, omega0;
  std::vector<double> eps_grid;
  std::size_t n_samples = 200;
  std::string output;  // empty = stdout
  std::string format;  // csv | json; default depends on the command
  double tol = kDefaultTol;
};

PTParams resolve_params(const Options& opt) {
  const bool as_given = opt.alpha.has_value() || opt.s.has_value();
  const bool ew_given = opt.epsilon.has_value() || opt.omega0.has_value();
  if (as_given && ew_given)
    throw std::invalid_argument(
        "give either --alpha/--s or --epsilon/--omega0, not both");
  if (as_given) {
    if (!(opt.alpha && opt.s))
      throw std::invalid_argument("--alpha and --s must be given together");
    return PTParams(opt.E0, *opt.s, *opt.alpha);
  }
  if (!(opt.epsilon && opt.omega0))
    throw std::invalid_argument(
        "--epsilon and --omega0 must be given together");
  return PTParams::from_regime(opt.E0, *opt.omega0, *opt.epsilon);
}

std::string resolve_format(const Options& opt, const std::string& dflt) {
  const std::string f = opt.format.empty() ? dflt : opt.format;
  if (f != "csv" && f != "json")
    throw std::invalid_argument("--format must be csv or json");
  return f;
}

void emit(const Options& opt, const std::function<void(std::ostream&)>& write) {
  if (opt.output.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream os(opt.output, std::ios::binary);
  if (!os)
    throw std::invalid_argument("cannot open output file: " + opt.output);
  write(os);
}

nlohmann::json report_to_json(const RegimeReport& r) {
  return {{"epsilon", r.epsilon},   {"alpha", r.alpha},
          {"s", r.s},               {"tau", r.tau},
          {"tau_h", r.tau_h},       {"delta2", r.delta2},
          {"delta4", r.delta4},     {"p_success", r.p_success},
          {"energy_spread", r.energy_spread}, {"aa_product", r.aa_product}};
}

int run_analyze(const Options& opt) {
  const std::string fmt = resolve_format(opt, "csv");
  const PTSystem sys = build_system(resolve_params(opt), opt.tol);
  const DilatedSystem ds = dilate(sys, opt.tol);
  const RegimeReport row = analyze_point(sys, ds);

  emit(opt, [&](std::ostream& os) {
    if (fmt == "json") {
      nlohmann::json j = report_to_json(row);
      j["E_plus"] = sys.E_plus;
      j["E_minus"] = sys.E_minus;
      os << j.dump(2) << '\n';
      return;
    }
    os << "epsilon,alpha,s,E_plus,E_minus,tau,tau_h,delta2,delta4,p_success,"
          "energy_spread,aa_product\n";
    os << format_double(row.epsilon) << ',' << format_double(row.alpha) << ','
       << format_double(row.s) << ',' << format_double(sys.E_plus) << ','
       << format_double(sys.E_minus) << ',' << format_double(row.tau) << ','
       << format_double(row.tau_h) << ',' << format_double(row.delta2) << ','
       << format_double(row.delta4) << ',' << format_double(row.p_success)
       << ',' << format_double(row.energy_spread) << ','
       << format_double(row.aa_product) << '\n';
  });
  return 0;
}

int run_sweep(const Options& opt) {
  const std::string fmt = resolve_format(opt, "csv");
  if (!opt.omega0)
    throw std::invalid_argument("sweep requires --omega0");
  if (opt.eps_grid.empty())
    throw std::invalid_argument("sweep requires --eps-grid");
  if (opt.alpha || opt.s || opt.epsilon)
    throw std::invalid_argument(
        "sweep takes its points from --eps-grid; --alpha/--s/--epsilon do not apply");
  const std::vector<RegimeReport> rows =
      regime_report(*opt.omega0, opt.eps_grid, opt.E0);

  emit(opt, [&](std::ostream& os) {
    if (fmt == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (const RegimeReport& r : rows) arr.push_back(report_to_json(r));
      os << arr.dump(2) << '\n';
      return;
    }
    write_regime_csv(os, rows);
  });
  return 0;
}

int run_trajectory(const Options& opt) {
  const std::string fmt = resolve_format(opt, "csv");
  if (opt.n_samples < 2)
    throw std::invalid_argument("--n-samples must be at least 2");
  const PTSystem sys = build_system(resolve_params(opt), opt.tol);
  const Trajectory tr =
      trajectory(sys, passage_times(sys.params).tau, opt.n_samples);

  emit(opt, [&](std::ostream& os) {
    if (fmt == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (std::size_t k = 0; k < tr.times.size(); ++k) {
        nlohmann::json psi = nlohmann::json::array(), chi = nlohmann::json::array();
        for (std::size_t j = 0; j < 2; ++j) {
          psi.push_back({tr.psi[k][j].real(), tr.psi[k][j].imag()});
          chi.push_back({tr.chi[k][j].real(), tr.chi[k][j].imag()});
        }
        arr.push_back({{"t", tr.times[k]}, {"psi", psi}, {"chi", chi}});
      }
      os << arr.dump(2) << '\n';
      return;
    }
    write_trajectory_csv(os, tr);
  });
  return 0;
}

int run_dilate(const Options& opt) {
  const std::string fmt = resolve_format(opt, "json");
  if (fmt != "json")
    throw std::invalid_argument("dilate emits matrices; only --format json applies");
  const PTSystem sys = build_system(resolve_params(opt), opt.tol);
  const DilatedSystem ds = dilate(sys, opt.tol);

  emit(opt, [&](std::ostream& os) {
    const nlohmann::json doc = {
        {"M", matrix_to_json(ds.M)},          {"V", matrix_to_json(ds.V)},
        {"H4", matrix_to_json(ds.H4)},        {"Lambda", matrix_to_json(ds.Lambda)},
        {"Omega", matrix_to_json(ds.Omega)},  {"E4", matrix_to_json(ds.E4)}};
    os << doc.dump(2) << '\n';
  });
  return 0;
}

int run_verify(const Options& opt) {
  const std::vector<verify::CheckResult> results = verify::run_all_checks();
  bool all_pass = true;
  emit(opt, [&](std::ostream& os) {
    for (const verify::CheckResult& c : results) {
      all_pass = all_pass && c.pass;
      char line[160];
      std::snprintf(line, sizeof line, "%s %-34s max_err=%.3e tol=%.0e\n",
                    c.pass ? "PASS" : "FAIL", c.name.c_str(), c.max_err,
                    c.tolerance);
      os << line;
    }
    os << (all_pass ? "verification passed" : "verification FAILED") << " ("
       << results.size() << " invariants)\n";
  });
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PT-symmetric brachistochrone: Naimark dilation toolkit"};
  app.require_subcommand(1);

  Options opt;
  const auto add_params = [&opt](CLI::App* cmd, bool with_samples) {
    cmd->add_option("--E0", opt.E0, "energy offset (default 0)");
    cmd->add_option("--alpha", opt.alpha, "non-Hermiticity angle, in (-pi/2, pi/2)");
    cmd->add_option("--s", opt.s, "Hamiltonian scale, s > 0");
    cmd->add_option("--epsilon", opt.epsilon, "distance to the exceptional point, alpha = epsilon - pi/2");
    cmd->add_option("--omega0", opt.omega0, "level spacing (with --epsilon)");
    cmd->add_option("--output", opt.output, "output path (default: stdout)");
    cmd->add_option("--format", opt.format, "csv or json");
    cmd->add_option("--tol", opt.tol, "construction check tolerance (default 1e-10)");
    if (with_samples)
      cmd->add_option("--n-samples", opt.n_samples, "grid size (default 200)");
  };

  CLI::App* analyze = app.add_subcommand(
      "analyze", "single-point report: energies, times, distances, probabilities");
  add_params(analyze, false);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "vanishing-passage sweep over an epsilon grid at fixed omega0");
  add_params(sweep, false);
  sweep->add_option("--eps-grid", opt.eps_grid, "comma-separated epsilon values")
      ->delimiter(',');

  CLI::App* traj = app.add_subcommand(
      "trajectory", "sample psi(t) and chi(t) on [0, tau]");
  add_params(traj, true);

  CLI::App* dil = app.add_subcommand(
      "dilate", "dump M, V, H4, Lambda, Omega, E4 as JSON");
  add_params(dil, false);

  CLI::App* ver = app.add_subcommand(
      "verify", "run every module invariant on the built-in grid");
  ver->add_option("--output", opt.output, "output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (analyze->parsed()) return run_analyze(opt);
    if (sweep->parsed()) return run_sweep(opt);
    if (traj->parsed()) return run_trajectory(opt);
    if (dil->parsed()) return run_dilate(opt);
    if (ver->parsed()) return run_verify(opt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
