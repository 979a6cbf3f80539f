#include "bdfstab/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace bdfstab {

namespace {

// 17 significant digits, so repeated runs give byte-identical CSV
std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json rationals(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& r : v) out.push_back(to_string(r));
  return out;
}

Json witnesses(const std::vector<SignWitness>& ws) {
  Json out = Json::array();
  for (const auto& w : ws) out.push_back({{"lo", to_string(w.lo)}, {"hi", to_string(w.hi)}, {"evidence", w.evidence}});
  return out;
}

}  // namespace

Json to_json(const RationalPolynomial& p) { return rationals(p.coefficients()); }

Json to_json(const NonnegativityCertificate& c) {
  return {{"verdict", to_string(c.verdict)},
          {"strict", c.strict},
          {"passes", c.passes()},
          {"minimum", {{"x", c.minimum.x}, {"value", c.minimum.value}}},
          {"witnesses", witnesses(c.witnesses)}};
}

Json to_json(const CertificationReport& r) {
  Json condA = {{"pass", r.condA.pass()},
                {"nonnegativity", to_json(r.condA.certificate)},
                {"reduced", to_json(r.condA.reduced)},
                {"coprime", r.condA.coprime},
                {"resultant", to_string(r.condA.resultant)},
                {"mu_roots_inside_disk", r.condA.mu_roots_inside_disk},
                {"warnings", r.condA.warnings}};
  Json all = Json::array();
  for (const auto& w : r.condA.certificate.witnesses)
    all.push_back({{"condition", "A"}, {"lo", to_string(w.lo)}, {"hi", to_string(w.hi)}, {"evidence", w.evidence}});
  for (const auto& w : r.condP2.certificate.witnesses)
    all.push_back({{"condition", "P2"}, {"lo", to_string(w.lo)}, {"hi", to_string(w.hi)}, {"evidence", w.evidence}});
  return {{"q", r.q},
          {"mu", rationals(r.m.mu)},
          {"condA", condA},
          {"condP1", {{"pass", r.condP1.pass}, {"value", to_string(r.condP1.value)}}},
          {"condP2",
           {{"pass", r.condP2.pass()},
            {"polynomial", to_json(r.condP2.polynomial)},
            {"min_value", r.condP2.min_value},
            {"certificate", to_json(r.condP2.certificate)}}},
          {"verdict", to_string(r.verdict)},
          {"scaling_constant", to_string(r.scaling_constant)},
          {"P_poly", to_json(r.P_poly)},
          {"witnesses", all}};
}

Json to_json(const SearchResult& r) {
  Json box = Json::array();
  for (const auto& [lo, hi] : r.box.ranges) box.push_back({to_string(lo), to_string(hi)});
  Json found = Json::array();
  for (const auto& c : r.certified)
    found.push_back({{"mu", rationals(c.m.mu)},
                     {"verdict", to_string(c.verdict)},
                     {"abs_sum", to_double(c.m.abs_sum())},
                     {"P2_min", c.condP2.min_value}});
  return {{"box", box},
          {"step", to_string(r.step)},
          {"candidates_tested", r.candidates_tested},
          {"prefilter_rejected", r.prefilter_rejected},
          {"certified", found}};
}

Json to_json(const GPair& gp) {
  const auto eb = g_eigen_bounds(gp);
  Json G = Json::array();
  for (int i = 0; i < gp.q; ++i) {
    Json row = Json::array();
    for (int j = 0; j < gp.q; ++j) row.push_back(gp.G(i, j));
    G.push_back(row);
  }
  return {{"q", gp.q},
          {"G", G},
          {"delta", gp.delta},
          {"residual", gp.residual},
          {"c1", eb.c1},
          {"c2", eb.c2},
          {"alpha", gp.alpha},
          {"mu_polynomial", gp.mu}};
}

Json to_json(const std::vector<SandwichRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows)
    out.push_back({{"n", r.n},
                   {"lambda_min", r.lambda_min},
                   {"lambda_max", r.lambda_max},
                   {"f_min", r.f_min},
                   {"f_max", r.f_max},
                   {"holds", r.holds}});
  return out;
}

Json to_json(const EnergyReport& r) {
  return {{"mu0", to_string(r.mu0)},
          {"sum_I", r.sum_I},
          {"J", r.J},
          {"decomposition",
           {{"lhs", r.decomposition_lhs}, {"rhs", r.decomposition_rhs}, {"residual", r.decomposition_residual}}},
          {"telescoping",
           {{"checked", r.telescoping_checked}, {"max_relative", r.telescoping_max}, {"holds", r.telescoping_holds}}},
          {"toeplitz",
           {{"form", r.toeplitz_form},
            {"boundary_terms", r.boundary_terms},
            {"identity_residual", r.toeplitz_identity_residual},
            {"J_lower_bound_holds", r.j_lower_bound_holds}}},
          {"c1", r.c1},
          {"c2", r.c2},
          {"g_sandwich_holds", r.g_sandwich_holds},
          {"stability_ratio", {{"full", r.ratio.full}, {"reduced", r.ratio.reduced}, {"argmax", r.ratio.argmax}}},
          {"pass", r.pass()},
          {"eucl_sq", r.eucl_sq},
          {"energy_sq", r.energy_sq},
          {"dual_sq", r.dual_sq},
          {"g_norm_sq", r.g_norm_sq},
          {"I", r.I}};
}

Json to_json(const ConvergenceTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json row = {{"tau", r.tau}, {"error", r.error}};
    row["observed_order"] = r.observed_order ? Json(*r.observed_order) : Json(nullptr);
    rows.push_back(row);
  }
  return {{"q", t.q}, {"M", t.M}, {"T", t.T}, {"solution", t.solution}, {"rows", rows}};
}

Json to_json(const std::vector<CriterionResult>& results) {
  Json out = Json::array();
  for (const auto& r : results)
    out.push_back({{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"details", r.details}});
  return out;
}

std::string search_csv(const SearchResult& r) {
  std::ostringstream os;
  os << "mu1,mu2,mu3,mu4,mu5,mu6,verdict,abs_sum\n";
  for (const auto& c : r.certified) {
    for (int j = 1; j <= 6; ++j) os << to_string(c.m[j]) << ",";
    os << to_string(c.verdict) << "," << num(to_double(c.m.abs_sum())) << "\n";
  }
  return os.str();
}

std::string sandwich_csv(const std::vector<SandwichRow>& rows) {
  std::ostringstream os;
  os << "n,lambda_min,lambda_max,f_min,f_max\n";
  for (const auto& r : rows)
    os << r.n << "," << num(r.lambda_min) << "," << num(r.lambda_max) << "," << num(r.f_min) << "," << num(r.f_max)
       << "\n";
  return os.str();
}

std::string convergence_csv(const ConvergenceTable& t) {
  std::ostringstream os;
  os << "tau,error,observed_order\n";
  for (const auto& r : t.rows)
    os << num(r.tau) << "," << num(r.error) << "," << (r.observed_order ? num(*r.observed_order) : "") << "\n";
  return os.str();
}

std::string trajectory_csv(const Trajectory& tr) {
  std::ostringstream os;
  os << "n,t,eucl_sq,energy_sq\n";
  for (int n = 0; n <= tr.N(); ++n)
    os << n << "," << num(n * tr.tau) << "," << num(tr.states[n].squaredNorm()) << ","
       << num(tr.op.energy_sq(tr.states[n])) << "\n";
  return os.str();
}

RunConfig parse_run_config(const Json& j) {
  static const std::vector<std::string> keys{"q",        "M",           "tau",        "N",      "T",
                                             "operator", "starting",    "perturbations", "multiplier", "outputs"};
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
      throw std::invalid_argument("unknown config key '" + it.key() + "'");
  RunConfig c;
  c.q = j.value("q", c.q);
  c.M = j.value("M", c.M);
  c.tau = j.value("tau", c.tau);
  c.T = j.value("T", c.T);
  c.N = j.contains("N") ? j["N"].get<int>() : static_cast<int>(std::lround(c.T / c.tau));
  if (j.contains("operator")) {
    const auto& o = j["operator"];
    if (o.value("kind", std::string("laplacian_1d")) != "laplacian_1d")
      throw std::invalid_argument("operator kind must be laplacian_1d");
    c.kappa = o.value("kappa", c.kappa);
    c.time_dependent = o.value("time_dependent", c.kappa != "1");
  }
  if (j.contains("starting")) {
    c.starting = j["starting"].value("kind", c.starting);
    c.seed = j["starting"].value("seed", c.seed);
    if (c.starting != "random" && c.starting != "sine") throw std::invalid_argument("starting kind must be random or sine");
  }
  if (j.contains("perturbations")) {
    const auto& p = j["perturbations"];
    c.perturbations = p.value("kind", c.perturbations);
    c.perturbation_seed = p.value("seed", c.perturbation_seed);
    c.perturbation_scale = p.value("scale", c.perturbation_scale);
    if (c.perturbations != "none" && c.perturbations != "random")
      throw std::invalid_argument("perturbation kind must be none or random");
  }
  if (j.contains("multiplier")) {
    std::vector<std::string> entries;
    for (const auto& e : j["multiplier"]) entries.push_back(e.is_string() ? e.get<std::string>() : e.dump());
    c.multiplier = parse_multiplier(entries);
  }
  if (j.contains("outputs")) {
    const auto& o = j["outputs"];
    if (o.contains("trajectory_csv")) c.trajectory_csv = o["trajectory_csv"].get<std::string>();
    if (o.contains("energy_json")) c.energy_json = o["energy_json"].get<std::string>();
  }
  if (c.q < 1 || c.q > 6) throw std::invalid_argument("q must be in 1..6");
  return c;
}

HeatRun run_heat(const RunConfig& c) {
  const BdfMethod method = bdf_alpha(c.q);
  EllipticOperator op = assemble_laplacian_1d(c.M);
  if (c.kappa != "1" || c.time_dependent) op = with_kappa(op, c.kappa);
  std::vector<Eigen::VectorXd> start;
  if (c.starting == "random") {
    start = random_starting(c.q, c.M, c.seed);
  } else {
    const auto s = decaying_sine();
    for (int j = 0; j < c.q; ++j) start.push_back(s.u(op, j * c.tau));
  }
  std::vector<Eigen::VectorXd> pert;
  if (c.perturbations == "random") {
    pert = random_starting(c.N + 1, c.M, c.perturbation_seed);
    for (auto& v : pert) v *= c.perturbation_scale;
  }
  HeatRun run;
  run.trajectory = op.time_dependent() ? bdf_solve_timedep(method, op, c.tau, c.N, start, pert)
                                       : bdf_solve(method, op, c.tau, c.N, start, pert);
  run.ratio = stability_ratio(run.trajectory);
  if (c.q == 6 && !op.time_dependent()) {
    const GPair gp = construct_G(method, c.multiplier);
    run.energy = energy_ledger(run.trajectory, c.multiplier, gp);
  }
  return run;
}

Json to_json(const HeatRun& run, const RunConfig& c) {
  Json out = {{"q", c.q},
              {"M", c.M},
              {"tau", c.tau},
              {"N", c.N},
              {"kappa", c.kappa},
              {"seed", c.seed},
              {"stability_ratio",
               {{"full", run.ratio.full}, {"reduced", run.ratio.reduced}, {"argmax", run.ratio.argmax}}}};
  if (run.energy) out["energy"] = to_json(*run.energy);
  return out;
}

}  // namespace bdfstab
