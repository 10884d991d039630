// Copyright 2026 The qnls Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qnls/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qnls/checks.hpp"
#include "qnls/classical_newton.hpp"
#include "qnls/problem_file.hpp"
#include "qnls/problems.hpp"
#include "qnls/quantum_newton.hpp"
#include "qnls/resources.hpp"

namespace qnls {
namespace {

struct SolveArgs {
  std::string problem;
  int iters = 5;
  std::string backend = "exact";
  double eps = 1e-6;
  double sigma_floor = 1e-3;
  std::string x0;
  std::uint64_t seed = 0;
  std::string trace;
  std::string report;
  std::string gamma_ref = "first";
  double norm_target = 0.5;
  double tol = 1e-12;
};

struct GpeArgs {
  GpeParams params;
  std::string potential;
  std::string psi_re;
  std::string psi_im;
  std::string boundary = "dirichlet";
  std::string out;
  std::string x0_out;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError(std::string("bad number in ") + what + ": '" + item + "'");
    }
  }
  return out;
}

/// Writes to path atomically, or to out when path is empty.
void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
  } else {
    write_file_atomic(path, text);
  }
}

std::string run_section(const std::optional<CostLedger>& ledger) {
  std::ostringstream out;
  const char* labels[] = {"amplification", "eigen_estimation", "inversion", "isometry",
                          "lcu",           "sparse_access",    "state_prep"};
  if (!ledger) {
    for (const char* key : {"run.oracle_queries", "run.primitive_ops", "run.amplification_cost"}) {
      out << key << " = not represented\n";
    }
    for (const char* l : labels) out << "run.term." << l << " = not represented\n";
    return out.str();
  }
  out << "run.oracle_queries = " << ledger->oracle_queries << "\n";
  out << "run.primitive_ops = " << ledger->primitive_ops << "\n";
  out << "run.amplification_cost = " << format_double(ledger->amplification_cost) << "\n";
  for (const char* l : labels) out << "run.term." << l << " = " << format_double(ledger->term(l)) << "\n";
  return out.str();
}

ReferenceMode reference_mode(const std::string& name) {
  if (name == "first") return ReferenceMode::kFirstBasis;
  if (name == "initial") return ReferenceMode::kInitialIterate;
  if (name == "previous") return ReferenceMode::kPreviousIterate;
  throw InputError("unknown --gamma-ref '" + name + "' (first, initial, previous)");
}

int cmd_solve(const SolveArgs& a, std::ostream& out, std::ostream& err) {
  if (a.iters < 0) throw InputError("--iters must be non-negative");
  if (!(a.eps > 0.0)) throw InputError("--eps must be positive");
  if (!(a.sigma_floor > 0.0 && a.sigma_floor < 1.0)) throw InputError("--sigma-floor must lie in (0, 1)");
  const Problem problem = read_problem_file(a.problem);
  const Index n = problem_n(problem);
  if (problem_kind(problem) == ProblemKind::kHomogeneous) {
    err << "warning: homogeneous systems contract to the origin under Newton's method; "
           "use a mixed system unless the contraction itself is under study\n";
  }
  Vector x0 = a.x0.empty() ? random_initial(n, a.seed) : read_vector_file(a.x0);
  if (x0.size() != n) {
    throw InputError("initial vector has " + std::to_string(x0.size()) + " entries, expected " +
                     std::to_string(n));
  }

  std::vector<TraceRecord> records;
  std::string halt;
  Vector final_x;
  std::optional<CostLedger> run_ledger;
  if (a.backend == "classical") {
    const ClassicalTrace t =
        classical_newton(problem_evaluator(problem), problem_jacobian(problem), x0, a.iters, a.tol);
    records = classical_records(t);
    halt = t.halt_reason;
    final_x = t.iterates.back();
  } else if (a.backend == "exact" || a.backend == "poly") {
    MixedSystem ms = [&]() -> MixedSystem {
      if (const auto* ps = std::get_if<PolynomialSystem>(&problem)) return as_mixed(*ps);
      if (const auto* m = std::get_if<MixedSystem>(&problem)) return *m;
      throw InputError("quantum backends accept homogeneous and mixed problems only");
    }();
    NewtonOptions opts;
    opts.inversion.eps = a.eps;
    opts.inversion.sigma_floor = a.sigma_floor;
    opts.inversion.backend =
        a.backend == "poly" ? InversionBackend::kPolynomial : InversionBackend::kExact;
    opts.reference = reference_mode(a.gamma_ref);
    const QuantumRun run = solve_quantum(ms, x0, a.iters, opts, a.norm_target);
    records = run.trace.records;
    halt = run.trace.halt_reason;
    final_x = run.iterates.back();
    run_ledger = run.state.ledger;
  } else {
    throw InputError("unknown --backend '" + a.backend + "' (exact, poly, classical)");
  }

  emit(a.trace, trace_csv(records), out);
  if (!a.report.empty()) {
    const ResourceReport r = estimate_resources(problem, a.iters, a.eps, a.sigma_floor);
    write_file_atomic(a.report, format_report(r) + run_section(run_ledger));
  }
  err << "backend " << a.backend << " iterations " << records.size() - 1 << " residual "
      << format_double(records.back().residual) << "\n";
  err << "x " << format_vector(final_x);
  if (!halt.empty()) {
    err << "halted: " << halt << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

int cmd_check(const std::string& problem_path, const std::vector<std::string>& suites,
              std::ostream& out) {
  if (suites.empty()) throw InputError("--suite is required (appendixA, appendixB, euler, gradient, all)");
  const Problem problem = read_problem_file(problem_path);
  bool all_pass = true;
  for (const CheckResult& r : run_checks(problem, suites)) {
    out << "CHECK " << r.name << " " << (r.pass ? "PASS" : "FAIL") << " " << r.detail << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? kExitOk : kExitInvariant;
}

int cmd_gen_gpe(GpeArgs a, std::ostream& out) {
  GpeParams& p = a.params;
  if (p.nx < 3) throw InputError("--nx must be at least 3");
  if (a.boundary == "dirichlet") {
    p.boundary = GpeBoundary::kDirichlet;
  } else if (a.boundary == "periodic") {
    p.boundary = GpeBoundary::kPeriodic;
  } else {
    throw InputError("--boundary must be dirichlet or periodic");
  }
  if (!a.potential.empty()) {
    p.potential = parse_list(a.potential, "--potential");
    if (p.potential.size() == 1) p.potential.assign(p.nx, p.potential.front());
  }
  std::vector<double> re = a.psi_re.empty() ? std::vector<double>{} : parse_list(a.psi_re, "--psi-re");
  std::vector<double> im = a.psi_im.empty() ? std::vector<double>{} : parse_list(a.psi_im, "--psi-im");
  if (re.empty()) {
    // Gaussian pulse centred on the grid.
    const double c = 0.5 * static_cast<double>(p.nx - 1);
    for (Index j = 0; j < p.nx; ++j) re.push_back(0.5 * std::exp(-0.5 * (j - c) * (j - c)));
  }
  if (im.empty()) im.assign(re.size(), 0.0);
  if (re.size() == 1) re.assign(p.nx, re.front());
  if (im.size() == 1) im.assign(p.nx, im.front());
  if (static_cast<Index>(re.size()) != p.nx || static_cast<Index>(im.size()) != p.nx) {
    throw InputError("--psi-re and --psi-im need nx values");
  }
  p.psi_prev.clear();
  for (Index j = 0; j < p.nx; ++j) p.psi_prev.emplace_back(re[j], im[j]);
  const MixedSystem ms = gpe_discretize(p);
  emit(a.out, write_problem(ms), out);
  if (!a.x0_out.empty()) write_file_atomic(a.x0_out, format_vector(gpe_state(p, p.psi_prev)));
  return kExitOk;
}

int cmd_gen_lv(const LvParams& p, const std::string& path, const std::string& x0_out,
               std::ostream& out) {
  emit(path, write_problem(lv_discretize(p)), out);
  if (!x0_out.empty()) write_file_atomic(x0_out, format_vector(lv_constant_guess(p)));
  return kExitOk;
}

int cmd_gen_random(Index n, int p, Index s, std::uint64_t seed, const std::string& path,
                   const std::string& x0_out, std::ostream& out) {
  if (n < 1 || p < 1 || s < 1) throw InputError("--n, --p and --s must be positive");
  emit(path, write_problem(random_system(n, p, s, seed)), out);
  if (!x0_out.empty()) write_file_atomic(x0_out, format_vector(random_initial(n, seed)));
  return kExitOk;
}

int cmd_resources(const std::string& problem_path, int iters, double eps, double sigma,
                  const std::string& report, std::ostream& out) {
  if (iters < 0) throw InputError("--iters must be non-negative");
  const Problem problem = read_problem_file(problem_path);
  emit(report, format_report(estimate_resources(problem, iters, eps, sigma)), out);
  return kExitOk;
}

}  // namespace

Vector parse_vector(const std::string& text) {
  std::vector<double> values;
  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    line = line.substr(0, line.find('#'));
    std::istringstream in(line);
    std::string tok;
    while (in >> tok) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || !std::isfinite(v)) throw ParseError(line_no, "bad number '" + tok + "'");
      values.push_back(v);
    }
  }
  if (values.empty()) throw ParseError(line_no, "vector file holds no values");
  return Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
}

Vector read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open vector file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_vector(buf.str());
}

std::string format_vector(const Vector& x) {
  std::string out;
  for (Index i = 0; i < x.size(); ++i) out += (i ? " " : "") + format_double(x(i));
  return out + "\n";
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qnls: Newton's method for polynomial systems through simulated block encodings"};
  app.require_subcommand(1);

  SolveArgs solve;
  CLI::App* s = app.add_subcommand("solve", "Run Newton's method and write the trace");
  s->add_option("--problem", solve.problem, "Problem file")->required();
  s->add_option("--iters", solve.iters, "Newton iterations T")->capture_default_str();
  s->add_option("--backend", solve.backend, "exact, poly or classical")->capture_default_str();
  s->add_option("--eps", solve.eps, "Total error budget")->capture_default_str();
  s->add_option("--sigma-floor", solve.sigma_floor, "Smallest admissible singular value")
      ->capture_default_str();
  auto* x0_opt = s->add_option("--x0", solve.x0, "Initial vector file");
  s->add_option("--seed", solve.seed, "Seed for a random initial vector")->excludes(x0_opt);
  s->add_option("--trace", solve.trace, "Trace CSV path (stdout when omitted)");
  s->add_option("--report", solve.report, "Resource report path");
  s->add_option("--gamma-ref", solve.gamma_ref, "Reference state: first, initial or previous")
      ->capture_default_str();
  s->add_option("--norm-target", solve.norm_target, "Norm of the rescaled initial vector")
      ->capture_default_str();
  s->add_option("--tol", solve.tol, "Classical backend stops once the residual is at most this")
      ->capture_default_str();

  std::string check_problem;
  std::vector<std::string> suites;
  CLI::App* c = app.add_subcommand("check", "Run invariant suites on a problem");
  c->add_option("--problem", check_problem, "Problem file")->required();
  c->add_option("--suite", suites, "appendixA, appendixB, euler, gradient or all");

  GpeArgs gpe;
  CLI::App* g = app.add_subcommand("gen-gpe", "Write a Gross-Pitaevskii Crank-Nicolson step");
  g->add_option("--nx", gpe.params.nx, "Grid points")->capture_default_str();
  g->add_option("--hbar2-over-2m", gpe.params.hbar2_over_2m, "Kinetic prefactor")->capture_default_str();
  g->add_option("--g", gpe.params.g, "Interaction strength")->capture_default_str();
  g->add_option("--dt", gpe.params.dt, "Time step")->capture_default_str();
  g->add_option("--dx", gpe.params.dx, "Grid spacing")->capture_default_str();
  g->add_option("--potential", gpe.potential, "Comma-separated V_j (one value broadcasts)");
  g->add_option("--psi-re", gpe.psi_re, "Comma-separated Re psi^n");
  g->add_option("--psi-im", gpe.psi_im, "Comma-separated Im psi^n");
  g->add_option("--boundary", gpe.boundary, "dirichlet or periodic")->capture_default_str();
  g->add_option("--out", gpe.out, "Output path (stdout when omitted)");
  g->add_option("--x0-out", gpe.x0_out, "Write psi^n as an initial vector");

  LvParams lv;
  std::string lv_out;
  std::string lv_x0;
  CLI::App* l = app.add_subcommand("gen-lv", "Write a forward-Euler Lotka-Volterra trajectory");
  l->add_option("--alpha", lv.alpha)->capture_default_str();
  l->add_option("--beta", lv.beta)->capture_default_str();
  l->add_option("--gamma", lv.gamma)->capture_default_str();
  l->add_option("--delta", lv.delta)->capture_default_str();
  l->add_option("--dt", lv.dt)->capture_default_str();
  l->add_option("--steps", lv.steps)->capture_default_str();
  l->add_option("--v0", lv.v0)->capture_default_str();
  l->add_option("--p0", lv.p0)->capture_default_str();
  l->add_option("--out", lv_out, "Output path (stdout when omitted)");
  l->add_option("--x0-out", lv_x0, "Write the constant trajectory as an initial vector");

  Index rn = 2;
  int rp = 1;
  Index rs = 1;
  std::uint64_t rseed = 0;
  std::string r_out;
  std::string r_x0;
  CLI::App* r = app.add_subcommand("gen-random", "Write a random canonical homogeneous system");
  r->add_option("--n", rn)->capture_default_str();
  r->add_option("--p", rp)->capture_default_str();
  r->add_option("--s", rs)->capture_default_str();
  r->add_option("--seed", rseed)->capture_default_str();
  r->add_option("--out", r_out, "Output path (stdout when omitted)");
  r->add_option("--x0-out", r_x0, "Write a random initial vector of norm 0.9");

  std::string res_problem;
  int res_iters = 5;
  double res_eps = 1e-6;
  double res_sigma = 1e-3;
  std::string res_report;
  CLI::App* rc = app.add_subcommand("resources", "Symbolic resource report");
  rc->add_option("--problem", res_problem, "Problem file")->required();
  rc->add_option("--iters", res_iters)->capture_default_str();
  rc->add_option("--eps", res_eps)->capture_default_str();
  rc->add_option("--sigma-floor", res_sigma)->capture_default_str();
  rc->add_option("--report", res_report, "Report path (stdout when omitted)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (s->parsed()) return cmd_solve(solve, out, err);
    if (c->parsed()) return cmd_check(check_problem, suites, out);
    if (g->parsed()) return cmd_gen_gpe(gpe, out);
    if (l->parsed()) return cmd_gen_lv(lv, lv_out, lv_x0, out);
    if (r->parsed()) return cmd_gen_random(rn, rp, rs, rseed, r_out, r_x0, out);
    if (rc->parsed()) return cmd_resources(res_problem, res_iters, res_eps, res_sigma, res_report, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const CompositionError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const AmplificationOverflow& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const RescaleRequired& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace qnls
