// Copyright 2026 The usdkit Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>

#include <CLI11.hpp>

#include "usdkit/states.hpp"

#ifndef USDKIT_VERSION
#define USDKIT_VERSION "0.0.0"
#endif

namespace usdkit::cli {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(Errc::ParseError, what); }

double number(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_number()) parse_fail(std::string("missing number \"") + key + "\"");
  return doc[key].get<double>();
}

Complex entry(const json& e, const char* what) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  parse_fail(std::string(what) + ": entries must be numbers or [re, im] pairs");
}

StatePair generate(const json& gen) {
  if (!gen.is_object() || !gen.contains("name") || !gen["name"].is_string()) {
    parse_fail("generator needs a \"name\"");
  }
  const std::string name = gen["name"].get<std::string>();
  const json params = gen.value("params", json::object());
  if (!params.is_object()) parse_fail("generator params must be an object");

  if (name == "pure_pair") {
    return states::pure_pair(number(params, "overlap"), params.value("phase", 0.0));
  }
  if (name == "coherent_qkd_pair") {
    if (!params.contains("c") || !params["c"].is_array() || params["c"].size() != 4) {
      parse_fail("coherent_qkd_pair needs \"c\": four coefficients");
    }
    CoherentCoeffs c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = entry(params["c"][i], "c");
    return states::coherent_qkd_pair(c);
  }
  if (name == "counterexample") return states::counterexample_pair();
  if (name == "random") {
    const auto dim = static_cast<Eigen::Index>(number(params, "dim"));
    const auto r0 = static_cast<Eigen::Index>(params.value("rank0", static_cast<double>(dim / 2)));
    const auto r1 = static_cast<Eigen::Index>(params.value("rank1", static_cast<double>(dim - dim / 2)));
    const auto seed = params.value("seed", std::uint64_t{1});
    if (dim < 1 || r0 < 1 || r1 < 1 || r0 > dim || r1 > dim) parse_fail("random: bad dim or ranks");
    return {states::random_density(dim, r0, seed), states::random_density(dim, r1, seed + 7919)};
  }
  parse_fail("unknown generator \"" + name + "\"");
}

json scalars(const BoundsReport& b) {
  return {{"regime", std::string(to_string(b.regime))},
          {"alpha", b.alpha},
          {"q_bound", b.q_bound},
          {"q0_at_bound", b.q0_at_bound},
          {"q1_at_bound", b.q1_at_bound},
          {"fidelity", b.fidelity},
          {"t10", b.t10},
          {"t01", b.t01}};
}

json povm_json(const UsdPovm& m) {
  return {{"E0", matrix_to_json(m.e0)}, {"E1", matrix_to_json(m.e1)}, {"Eq", matrix_to_json(m.eq)}};
}

json header(const UsdProblem& p, const json& source) {
  json h = {{"version", USDKIT_VERSION}, {"problem", problem_to_json(p)}};
  if (!source.is_null()) h["generator"] = source;
  return h;
}

void print_analysis(std::ostream& out, const Analysis& a) {
  const auto& r = a.reduction;
  out << "dimension           " << a.problem.dim() << "\n"
      << "priors              " << a.problem.eta0() << " " << a.problem.eta1() << "\n"
      << "reduction           common " << r.common_dim << ", trimmed " << r.trimmed0 << "+" << r.trimmed1
      << ", null " << r.null_dim << ", reduced dim " << r.reduced_dim() << "\n"
      << "fidelity            " << a.fidelity << "\n"
      << "t10 t01             " << a.t10 << " " << a.t01 << "\n"
      << "regime              " << to_string(a.reduced_bounds.regime) << "\n"
      << "alpha               " << a.reduced_bounds.alpha << "\n"
      << "q_bound             " << a.q_bound << "\n"
      << "rudolph_bound       " << a.rudolph_bound << "\n"
      << "helstrom_q          " << a.helstrom_q << "\n";
  if (a.saturation) {
    out << "margins             " << a.saturation->cond0_min_eig << " " << a.saturation->cond1_min_eig << "\n";
  }
  out << "saturated           " << (a.saturated ? "yes" : "no") << "\n";
  if (a.probs) {
    out << "povm q q0 q1        " << a.probs->q << " " << a.probs->q0 << " " << a.probs->q1 << "\n"
        << "completeness error  " << a.diagnostics->completeness_error << "\n";
  }
}

void print_sweep(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "# ratio = eta1/eta0; margin0/1 = min eigenvalue of the two saturation conditions\n"
      << "# ratio regime alpha q_bound rudolph_bound helstrom_q margin0 margin1 saturated\n";
  for (const auto& r : rows) {
    out << r.ratio << " " << to_string(r.regime) << " " << r.alpha << " " << r.q_bound << " " << r.rudolph_bound
        << " " << r.helstrom_q << " " << r.margin0 << " " << r.margin1 << " " << (r.saturated ? 1 : 0) << "\n";
  }
}

}  // namespace

json matrix_to_json(const CMat& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

CMat matrix_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.empty()) parse_fail(std::string(what) + ": expected a non-empty array of rows");
  const auto n = static_cast<Eigen::Index>(j.size());
  CMat m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      parse_fail(std::string(what) + ": matrix must be square");
    }
    for (Eigen::Index k = 0; k < n; ++k) m(i, k) = entry(row[static_cast<std::size_t>(k)], what);
  }
  return m;
}

json problem_to_json(const UsdProblem& p) {
  return {{"rho0", matrix_to_json(p.rho0())},
          {"rho1", matrix_to_json(p.rho1())},
          {"eta0", p.eta0()},
          {"eta1", p.eta1()}};
}

LoadedProblem parse_problem(const json& doc, const NumericConfig& cfg) {
  if (!doc.is_object()) parse_fail("problem must be an object");
  const bool explicit_form = doc.contains("rho0") || doc.contains("rho1");
  const bool generated = doc.contains("generator");
  if (explicit_form == generated) parse_fail("give either rho0/rho1 or a generator, not both or neither");

  const double eta0 = number(doc, "eta0");
  const double eta1 = number(doc, "eta1");
  std::optional<UsdProblem> p;
  json source;
  if (generated) {
    source = doc["generator"];
    p = generate(source).with_priors(eta0, eta1, cfg);
  } else {
    if (!doc.contains("rho0") || !doc.contains("rho1")) parse_fail("need both rho0 and rho1");
    p = UsdProblem::make(matrix_from_json(doc["rho0"], "rho0"), matrix_from_json(doc["rho1"], "rho1"), eta0, eta1,
                         cfg);
  }

  LoadedProblem out{std::move(*p), source, std::nullopt};
  if (doc.contains("povm")) {
    const json& m = doc["povm"];
    if (!m.is_object() || !m.contains("E0") || !m.contains("E1") || !m.contains("Eq")) {
      parse_fail("povm needs E0, E1 and Eq");
    }
    UsdPovm povm{matrix_from_json(m["E0"], "E0"), matrix_from_json(m["E1"], "E1"), matrix_from_json(m["Eq"], "Eq")};
    for (const CMat* e : {&povm.e0, &povm.e1, &povm.eq}) {
      if (e->rows() != out.problem.dim()) parse_fail("povm dimension differs from the states");
    }
    out.povm = std::move(povm);
  }
  return out;
}

LoadedProblem load_problem(const std::string& path, const NumericConfig& cfg) {
  std::ifstream in(path);
  if (!in) parse_fail("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    parse_fail(path + ": " + e.what());
  }
  return parse_problem(doc, cfg);
}

Analysis analyze(const UsdProblem& p, const NumericConfig& cfg, bool build) {
  ReductionResult r = reduce::reduce_problem(p, cfg);
  const BoundsReport rb = usd::lower_bound(r.reduced, cfg);
  const FidelityData fd = usd::fidelity_data(p, cfg);
  const OverlapData od = usd::overlap_data(p, cfg);

  Analysis a{p, std::move(r), rb};
  a.q_bound = a.reduction.lift_failure(rb.q_bound);
  a.fidelity = fd.fidelity;
  a.t10 = od.t10;
  a.t01 = od.t01;
  a.rudolph_bound = usd::rudolph_bound(p.eta0(), p.eta1(), fd.fidelity);
  a.helstrom_q = usd::helstrom_bound(p);

  if (rb.zero_fidelity) {
    a.saturated = true;  // a projective measurement attains q = 0 on the reduced block
  } else {
    a.saturation = usd::check_saturation(a.reduction.reduced, cfg);
    a.saturated = a.saturation->saturated;
  }
  if (build && a.saturated) {
    a.povm = reduce::lift_povm(a.reduction, usd::build_povm(a.reduction.reduced, cfg));
    a.diagnostics = usd::diagnose_povm(p, *a.povm, cfg);
    a.probs = usd::failure_probs_unchecked(p, *a.povm);
  }
  return a;
}

std::vector<SweepRow> sweep(const UsdProblem& p, double ratio_min, double ratio_max, int steps,
                            const NumericConfig& cfg) {
  if (!(ratio_min > 0.0) || !(ratio_max >= ratio_min) || steps < 1) {
    throw Error(Errc::InvalidArgument, "sweep needs 0 < ratio_min <= ratio_max and steps >= 1");
  }
  std::vector<SweepRow> rows;
  const double lo = std::log(ratio_min);
  const double hi = std::log(ratio_max);
  for (int i = 0; i < steps; ++i) {
    const double ratio = steps == 1 ? ratio_min : std::exp(lo + (hi - lo) * i / (steps - 1));
    const Analysis a = analyze(p.with_ratio(ratio), cfg, false);
    SweepRow row;
    row.ratio = ratio;
    row.regime = a.reduced_bounds.regime;
    row.alpha = a.reduced_bounds.alpha;
    row.q_bound = a.q_bound;
    row.rudolph_bound = a.rudolph_bound;
    row.helstrom_q = a.helstrom_q;
    if (a.saturation) {
      row.margin0 = a.saturation->cond0_min_eig;
      row.margin1 = a.saturation->cond1_min_eig;
    }
    row.saturated = a.saturated;
    rows.push_back(row);
  }
  return rows;
}

OracleRun run_oracle(const UsdProblem& p, const OracleConfig& ocfg, const NumericConfig& cfg) {
  Analysis a = analyze(p, cfg, false);
  OracleResult res = oracle::optimize_usd(a.reduction.reduced, ocfg, cfg);
  OracleRun run{std::move(a), std::move(res)};
  run.best_q = run.analysis.reduction.lift_failure(run.result.best_q);
  run.gap_to_bound = run.best_q - run.analysis.q_bound;
  return run;
}

json analysis_json(const Analysis& a) {
  const auto& r = a.reduction;
  json j = {{"reduction",
             {{"common_dim", r.common_dim},
              {"trimmed0", r.trimmed0},
              {"trimmed1", r.trimmed1},
              {"null_dim", r.null_dim},
              {"reduced_dim", r.reduced_dim()},
              {"failure_offset", r.failure_offset},
              {"retained_prior", r.retained_prior}}},
            {"reduced", scalars(a.reduced_bounds)},
            {"fidelity", a.fidelity},
            {"t10", a.t10},
            {"t01", a.t01},
            {"q_bound", a.q_bound},
            {"rudolph_bound", a.rudolph_bound},
            {"helstrom_q", a.helstrom_q},
            {"saturated", a.saturated}};
  if (a.saturation) {
    j["margins"] = {a.saturation->cond0_min_eig, a.saturation->cond1_min_eig};
  }
  if (a.povm) {
    j["povm"] = povm_json(*a.povm);
    j["povm_q"] = {{"q", a.probs->q}, {"q0", a.probs->q0}, {"q1", a.probs->q1}};
    j["completeness_error"] = a.diagnostics->completeness_error;
  }
  return j;
}

json sweep_json(const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back({{"ratio", r.ratio},
                   {"regime", std::string(to_string(r.regime))},
                   {"alpha", r.alpha},
                   {"q_bound", r.q_bound},
                   {"rudolph_bound", r.rudolph_bound},
                   {"helstrom_q", r.helstrom_q},
                   {"margin0", r.margin0},
                   {"margin1", r.margin1},
                   {"saturated", r.saturated}});
  }
  return out;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optimal unambiguous discrimination of two mixed states"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", USDKIT_VERSION);

  std::string format = "text";
  std::optional<double> ratio;
  NumericConfig tol;
  app.add_option("--format", format, "text or machine")->check(CLI::IsMember({"text", "machine"}));
  app.add_option("--ratio", ratio, "override the priors with eta1/eta0 = RATIO")->check(CLI::PositiveNumber);
  app.add_option("--tol-hermitian", tol.hermitian);
  app.add_option("--tol-psd", tol.psd);
  app.add_option("--tol-rank", tol.rank);
  app.add_option("--tol-unitary", tol.unitary);
  app.add_option("--tol-equality", tol.equality);

  std::string file;
  auto* analyze_cmd = app.add_subcommand("analyze", "bounds, saturation and optimal measurement");
  auto* oracle_cmd = app.add_subcommand("oracle", "numerical search over USD measurements");
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte-Carlo outcome sampling");
  auto* sweep_cmd = app.add_subcommand("sweep", "bounds against the prior ratio");
  for (auto* c : {analyze_cmd, oracle_cmd, simulate_cmd, sweep_cmd}) {
    c->add_option("file", file, "problem file (JSON)")->required();
  }

  OracleConfig ocfg;
  std::uint64_t seed = 1;
  oracle_cmd->add_option("--restarts", ocfg.restarts)->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--max-iterations", ocfg.max_iterations)->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--seed", ocfg.seed);
  oracle_cmd->add_option("--threads", ocfg.threads);

  std::int64_t shots = 100000;
  int sim_threads = 0;
  simulate_cmd->add_option("--shots", shots)->check(CLI::PositiveNumber);
  simulate_cmd->add_option("--seed", seed);
  simulate_cmd->add_option("--threads", sim_threads);

  double ratio_min = 0.1;
  double ratio_max = 10.0;
  int steps = 41;
  sweep_cmd->add_option("--ratio-min", ratio_min)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--ratio-max", ratio_max)->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--steps", steps)->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInput;
  }

  const bool machine = format == "machine";
  out << std::setprecision(machine ? 17 : 10);
  try {
    tol.validate();
    LoadedProblem lp = load_problem(file, tol);
    UsdProblem p = ratio ? lp.problem.with_ratio(*ratio) : lp.problem;
    json report = header(p, lp.source);

    if (analyze_cmd->parsed()) {
      const Analysis a = analyze(p, tol);
      if (machine) {
        report["analysis"] = analysis_json(a);
        out << report.dump(2) << "\n";
      } else {
        print_analysis(out, a);
      }
      if (!a.saturated) {
        err << "not saturated: the bound is not attained\n";
        return kExitNotSaturated;
      }
      return kExitOk;
    }

    if (oracle_cmd->parsed()) {
      const OracleRun o = run_oracle(p, ocfg, tol);
      report["oracle"] = {{"seed", ocfg.seed},
                          {"restarts", ocfg.restarts},
                          {"max_iterations", ocfg.max_iterations},
                          {"best_q", o.best_q},
                          {"q_bound", o.analysis.q_bound},
                          {"gap_to_bound", o.gap_to_bound},
                          {"converged", o.result.converged},
                          {"evaluations", o.result.evaluations}};
      if (machine) {
        out << report.dump(2) << "\n";
      } else {
        out << "oracle seed         " << ocfg.seed << "\n"
            << "restarts            " << ocfg.restarts << "\n"
            << "best_q              " << o.best_q << "\n"
            << "q_bound             " << o.analysis.q_bound << "\n"
            << "gap_to_bound        " << o.gap_to_bound << "\n"
            << "converged           " << (o.result.converged ? "yes" : "no") << "\n";
      }
      return kExitOk;
    }

    if (simulate_cmd->parsed()) {
      UsdPovm m;
      double analytic = 0;
      if (lp.povm) {
        m = *lp.povm;
        analytic = usd::failure_probs(p, m, tol).q;
      } else {
        const Analysis a = analyze(p, tol);
        if (!a.povm) {
          err << "not saturated and no inline povm: nothing to simulate\n";
          return kExitNotSaturated;
        }
        m = *a.povm;
        analytic = a.probs->q;
      }
      const SimReport s = simulate::run_sim(p, m, shots, seed, tol, sim_threads);
      report["simulation"] = {{"seed", s.seed},         {"shots", s.shots},
                              {"n0", s.n0},             {"n1", s.n1},
                              {"nq", s.nq},             {"n_error", s.n_error},
                              {"empirical_q", s.empirical_q}, {"empirical_error_rate", s.empirical_error_rate},
                              {"stderr_q", s.stderr_q}, {"analytic_q", analytic}};
      if (machine) {
        out << report.dump(2) << "\n";
      } else {
        out << "seed                " << s.seed << "\n"
            << "shots               " << s.shots << "\n"
            << "counts n0 n1 nq err " << s.n0 << " " << s.n1 << " " << s.nq << " " << s.n_error << "\n"
            << "empirical_q         " << s.empirical_q << " +- " << s.stderr_q << "\n"
            << "analytic_q          " << analytic << "\n";
      }
      return kExitOk;
    }

    const auto rows = sweep(p, ratio_min, ratio_max, steps, tol);
    if (machine) {
      report["sweep"] = sweep_json(rows);
      out << report.dump(2) << "\n";
    } else {
      print_sweep(out, rows);
    }
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == Errc::NotSaturated ? kExitNotSaturated : kExitInput;
  }
}

}  // namespace usdkit::cli
