#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "bdfstab/report.hpp"

using namespace bdfstab;

namespace {

struct Common {
  std::string out;
  std::string format;
  std::uint64_t seed = 20240601;
};

void add_common(CLI::App* cmd, Common& c, const std::string& default_format) {
  c.format = default_format;
  cmd->add_option("--out", c.out, "write output to this file instead of stdout");
  cmd->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--seed", c.seed, "random seed");
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

int env_threads() {
  if (const char* s = std::getenv("BDFSTAB_THREADS")) {
    const int n = std::atoi(s);
    if (n > 0) return n;
  }
  return 1;
}

std::pair<Rational, Rational> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("range must be lo:hi, got '" + text + "'");
  return {parse_rational(text.substr(0, colon)), parse_rational(text.substr(colon + 1))};
}

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact multiplier certification and stability experiments for BDF methods"};
  app.require_subcommand(1);

  Common c_cert, c_search, c_g, c_toep, c_heat, c_conv, c_repro;

  auto* certify_cmd = app.add_subcommand("certify", "certify a multiplier for BDF-q (exit 0 multiplier, 1 not)");
  std::vector<std::string> cert_mu;
  int cert_q = 6;
  certify_cmd->add_option("mu", cert_mu, "mu_1 .. mu_q as p/q or decimals")->required();
  certify_cmd->add_option("--q", cert_q, "BDF order")->check(CLI::Range(1, 6));
  add_common(certify_cmd, c_cert, "json");

  auto* search_cmd = app.add_subcommand("search", "lattice search for six-step multipliers");
  std::vector<std::string> ranges;
  std::string step = "1/20";
  int max_results = 1000;
  search_cmd->add_option("--range", ranges, "lo:hi for mu_1, mu_2, ... (repeat; missing ones are 0:0)")->required();
  search_cmd->add_option("--step", step, "lattice spacing");
  search_cmd->add_option("--max-results", max_results, "stop after this many multipliers");
  add_common(search_cmd, c_search, "json");

  auto* g_cmd = app.add_subcommand("gmatrix", "construct G and delta for a multiplier");
  std::vector<std::string> g_mu;
  int g_q = 6;
  g_cmd->add_option("mu", g_mu, "mu_1 .. mu_q (default: the six-step multiplier)");
  g_cmd->add_option("--q", g_q, "BDF order")->check(CLI::Range(1, 6));
  add_common(g_cmd, c_g, "json");

  auto* t_cmd = app.add_subcommand("toeplitz", "eigenvalue sandwich for the symmetric Toeplitz part");
  std::vector<std::string> t_mu;
  std::string t_mu0 = "-31/32";
  std::vector<int> t_ns{2, 3, 5, 8, 13, 50, 200};
  t_cmd->add_option("mu", t_mu, "mu_1 .. mu_k (default: the six-step multiplier)");
  t_cmd->add_option("--mu0", t_mu0, "diagonal constant");
  t_cmd->add_option("--n", t_ns, "matrix sizes")->check(CLI::PositiveNumber);
  add_common(t_cmd, c_toep, "csv");

  auto* heat_cmd = app.add_subcommand("heat", "run BDF-q on the 1D heat equation and report energies");
  std::string config_path, kappa = "1", perturb = "none", traj_csv;
  RunConfig heat_cfg;
  heat_cmd->add_option("--config", config_path, "JSON run configuration (other flags are ignored)");
  heat_cmd->add_option("--q", heat_cfg.q)->check(CLI::Range(1, 6));
  heat_cmd->add_option("--M", heat_cfg.M)->check(CLI::Range(3, 100000));
  heat_cmd->add_option("--tau", heat_cfg.tau)->check(CLI::PositiveNumber);
  heat_cmd->add_option("--N", heat_cfg.N)->check(CLI::PositiveNumber);
  heat_cmd->add_option("--kappa", kappa, "1, 1+t/2 or 2+sin(t)");
  heat_cmd->add_option("--perturbations", perturb)->check(CLI::IsMember({"none", "random"}));
  heat_cmd->add_option("--trajectory-csv", traj_csv, "also write per-step norms here");
  add_common(heat_cmd, c_heat, "json");

  auto* conv_cmd = app.add_subcommand("converge", "temporal convergence table on a manufactured solution");
  int conv_q = 6, conv_M = 50;
  double conv_T = 1.0;
  std::vector<std::string> conv_taus;
  conv_cmd->add_option("--q", conv_q)->check(CLI::Range(1, 6));
  conv_cmd->add_option("--M", conv_M)->check(CLI::Range(3, 100000));
  conv_cmd->add_option("--T", conv_T)->check(CLI::PositiveNumber);
  conv_cmd->add_option("--taus", conv_taus, "time steps (default 1/10 1/20 1/40)");
  add_common(conv_cmd, c_conv, "csv");

  auto* repro_cmd = app.add_subcommand("reproduce", "run the acceptance suite (exit 0 iff all pass)");
  std::string only, repro_mu0 = "-31/32";
  repro_cmd->add_option("--only", only, "run one criterion");
  repro_cmd->add_option("--mu0", repro_mu0, "diagonal constant of the Toeplitz splitting");
  repro_cmd->add_flag("--list", [](std::int64_t) {
    for (const auto& id : criterion_ids()) std::cout << id << "\n";
    std::exit(0);
  }, "print criterion ids");
  Common& rc = c_repro;
  repro_cmd->add_option("--out", rc.out);
  repro_cmd->add_option("--format", rc.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  repro_cmd->add_option("--seed", rc.seed);
  rc.format = "text";

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*certify_cmd) {
      const Multiplier m = parse_multiplier(cert_mu);
      if (static_cast<int>(m.mu.size()) > cert_q) throw UsageError("more than q multiplier entries");
      const auto rep = certify(bdf_alpha(cert_q), m);
      emit(dump(to_json(rep)), c_cert.out);
      return rep.is_multiplier() ? 0 : 1;
    }
    if (*search_cmd) {
      std::vector<std::pair<Rational, Rational>> rs;
      for (const auto& r : ranges) rs.push_back(parse_range(r));
      SearchOptions opt;
      opt.max_results = max_results;
      opt.threads = env_threads();
      const auto res = grid_search(make_box(rs), parse_rational(step), opt);
      emit(c_search.format == "csv" ? search_csv(res) : dump(to_json(res)), c_search.out);
      return 0;
    }
    if (*g_cmd) {
      const Multiplier m = g_mu.empty() ? (g_q == 6 ? six_step_multiplier() : Multiplier{}) : parse_multiplier(g_mu);
      const auto gp = construct_G(bdf_alpha(g_q), m);
      emit(dump(to_json(gp)), c_g.out);
      return 0;
    }
    if (*t_cmd) {
      const Multiplier m = t_mu.empty() ? six_step_multiplier() : parse_multiplier(t_mu);
      const auto f = multiplier_symbol(m, parse_rational(t_mu0));
      const auto rows = toeplitz_sandwich(f, t_ns, kSandwichTolerance, env_threads());
      emit(c_toep.format == "csv" ? sandwich_csv(rows) : dump(to_json(rows)), c_toep.out);
      bool ok = true;
      for (const auto& r : rows) ok = ok && r.holds;
      return ok ? 0 : 1;
    }
    if (*heat_cmd) {
      RunConfig cfg = heat_cfg;
      if (!config_path.empty()) {
        std::ifstream f(config_path);
        if (!f) throw UsageError("cannot read " + config_path);
        Json j;
        try {
          j = Json::parse(f);
        } catch (const Json::parse_error& e) {
          throw UsageError(std::string("invalid JSON: ") + e.what());
        }
        cfg = parse_run_config(j);
      } else {
        cfg.kappa = kappa;
        cfg.time_dependent = kappa != "1";
        cfg.perturbations = perturb;
        cfg.seed = c_heat.seed;
        if (!traj_csv.empty()) cfg.trajectory_csv = traj_csv;
      }
      const auto run = run_heat(cfg);
      if (cfg.trajectory_csv) emit(trajectory_csv(run.trajectory), *cfg.trajectory_csv);
      const Json report = to_json(run, cfg);
      if (cfg.energy_json) emit(dump(report), *cfg.energy_json);
      emit(c_heat.format == "csv" ? trajectory_csv(run.trajectory) : dump(report), c_heat.out);
      return !run.energy || run.energy->pass() ? 0 : 1;
    }
    if (*conv_cmd) {
      std::vector<double> taus;
      for (const auto& t : conv_taus) taus.push_back(to_double(parse_rational(t)));
      if (taus.empty()) taus = {1.0 / 10, 1.0 / 20, 1.0 / 40};
      const auto table = convergence_table(conv_q, decaying_sine(), conv_M, taus, conv_T, env_threads());
      emit(c_conv.format == "csv" ? convergence_csv(table) : dump(to_json(table)), c_conv.out);
      return 0;
    }
    if (*repro_cmd) {
      AcceptanceOptions opt;
      opt.mu0 = parse_rational(repro_mu0);
      if (!only.empty()) opt.only = only;
      opt.threads = env_threads();
      opt.seed = rc.seed;
      std::vector<CriterionResult> results;
      try {
        results = run_acceptance(opt);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      std::string text;
      int failed = 0;
      for (const auto& r : results) {
        text += format_result(r);
        failed += !r.pass;
      }
      text += std::to_string(results.size() - failed) + "/" + std::to_string(results.size()) + " criteria passed\n";
      emit(rc.format == "json" ? dump(to_json(results)) : text, rc.out);
      return failed == 0 ? 0 : 1;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
