#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

#include "cvp/flow.hpp"
#include "cvp/instgen.hpp"
#include "cvp/io.hpp"
#include "cvp/lp.hpp"
#include "cvp/oracle.hpp"
#include "cvp/rounding.hpp"
#include "cvp/segmentation.hpp"

namespace cvp::cli {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  file << text;
}

Cap parse_cap(const std::string& text) {
  if (text == "inf") return Cap::infinite();
  const Rational r = parse_rational(text);
  if (r.get_den() != 1 || r < 0 || !r.get_num().fits_slong_p())
    throw Error(ErrorCode::kInvalidArgument, "C must be a nonnegative integer or inf");
  return Cap::finite(r.get_num().get_si());
}

struct SolveOptions {
  std::string input;
  std::string method = "auto";
  std::size_t trials = 32;
  std::uint64_t seed = 0;
  bool sum_preserving = false;
  std::string output;
  std::size_t threads = 1;
  std::string dump_network;
};

bool consecutive(const CvpInstance& inst) {
  return std::all_of(inst.generators.begin(), inst.generators.end(),
                     [](const auto& g) { return !has_consecutive_ones(g).is_scattered(); });
}

SolveReport solve_vector(const CvpInstance& inst, const SolveOptions& o) {
  std::string method = o.method;
  if (method == "auto") method = consecutive(inst) ? "flow" : "round";
  if (method == "flow") {
    if (!o.dump_network.empty()) {
      CvpInstance nonzero = inst;
      std::erase_if(nonzero.generators, [](const auto& g) { return has_consecutive_ones(g).is_empty(); });
      std::ostringstream edges;
      write_edge_list(edges, build_network(nonzero));
      emit(edges.str(), o.dump_network, edges);
    }
    return solve_by_flow(inst);
  }
  if (method == "round") return approx_solve(inst, o.seed, o.trials, o.sum_preserving, o.threads);
  if (method == "oracle") return brute_force_opt(inst);
  if (method == "lp") {
    const LpOutcome lp = solve_lp(build_lp(inst));
    SolveReport report;
    report.method = "lp";
    if (!lp.optimal()) return report;
    std::vector<std::int64_t> u;
    for (const auto& v : lp.u_star) {
      if (v.get_den() != 1)
        throw Error(ErrorCode::kUnsupported, "LP optimum is fractional; use --method round or oracle");
      u.push_back(v.get_num().get_si());
    }
    report.solution = evaluate(inst, u);
    report.lp_value = lp.value;
    report.status = SolveStatus::kOptimalExact;
    return report;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown method '" + method + "'");
}

int infeasible(std::ostream& err) {
  err << "infeasible: no vector within C\n";
  return kInfeasible;
}

int run_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  const AnyInstance any = parse_instance(read_file(o.input));
  if (const auto* inst = std::get_if<CvpInstance>(&any)) {
    const SolveReport report = solve_vector(*inst, o);
    if (report.status == SolveStatus::kInfeasible) return infeasible(err);
    emit(write_solution(to_solution_file(report)), o.output, out);
    return kOk;
  }
  const auto& mi = std::get<MatrixInstance>(any);
  if (std::holds_alternative<MinSeparation>(mi.constraint)) {
    if (o.method != "auto" && o.method != "flow")
      throw Error(ErrorCode::kUnsupported, "minimum separation instances are solved row by row with --method flow");
    const MatrixSolveResult result = solve_msc(mi);
    if (!result.plan) return infeasible(err);
    emit(write_solution(to_solution_file(*result.plan, result.status, "flow", std::nullopt)), o.output, out);
    return kOk;
  }
  const CvpInstance flat = flatten(mi);
  const SolveReport report = solve_vector(flat, o);
  if (report.status == SolveStatus::kInfeasible) return infeasible(err);
  const MatrixPlan plan = plan_from_coefficients(mi, report.solution->u);
  emit(write_solution(to_solution_file(plan, report.status, report.method, report.seed)), o.output, out);
  return kOk;
}

int run_verify(const std::string& input, const std::string& solution, std::ostream& out, std::ostream& err) {
  const AnyInstance any = parse_instance(read_file(input));
  const SolutionFile file = parse_solution(read_file(solution));
  const auto problems = verify_solution(any, file);
  if (problems.empty()) {
    out << "verified\n";
    return kOk;
  }
  for (const auto& p : problems) err << p << "\n";
  return kMismatch;
}

struct GenOptions {
  std::size_t d = 5;
  std::size_t k = 5;
  int m = 2;
  int n = 5;
  int lambda = 1;
  std::int64_t max_entry = 3;
  std::string cap = "inf";
  std::string mu = "1";
  std::string nu = "0";
  bool consecutive = false;
  bool decomposable = false;
  std::uint64_t seed = 0;
  std::string formula;
  std::string output;
};

ObjectiveWeights weights_of(const GenOptions& o) {
  ObjectiveWeights w{parse_rational(o.mu), parse_rational(o.nu)};
  if (w.mu < 0 || w.nu < 0) throw Error(ErrorCode::kInvalidArgument, "weights must be nonnegative");
  return w;
}

struct LemmaOptions {
  std::size_t q = 1;
  std::size_t trials = 100000;
  std::uint64_t seed = 0;
  std::string p_file;
  std::optional<double> p;
};

std::vector<double> read_probabilities(const std::string& path) {
  std::istringstream in(read_file(path));
  std::vector<double> p;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      p.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kParseError, "not a probability: '" + tok + "'");
    }
  }
  return p;
}

int run_lemma(const LemmaOptions& o, std::ostream& out, std::ostream& err) {
  if (o.trials == 0) {
    err << "--trials must be positive\n";
    return kUsage;
  }
  std::vector<double> p;
  if (!o.p_file.empty()) {
    p = read_probabilities(o.p_file);
  } else if (o.p) {
    p.assign(o.q, *o.p);
  } else {
    Rng rng(RngSpec{o.seed, 1});
    for (std::size_t j = 0; j < o.q; ++j) p.push_back(rng.uniform());
  }
  if (p.empty()) {
    err << "--q must be at least 1\n";
    return kUsage;
  }
  const DeviationEstimate e = deviation_estimate(p, o.trials, RngSpec{o.seed, 0});
  const bool pass = e.mean - 3.0 * e.standard_error <= e.bound;
  char line[256];
  std::snprintf(line, sizeof line, "q=%zu trials=%zu mean=%.6f se=%.6f bound=%.6f %s\n", p.size(), e.trials, e.mean,
                e.standard_error, e.bound, pass ? "PASS" : "FAIL");
  out << line;
  return pass ? kOk : kMismatch;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closest vector solver for binary generators"};
  app.require_subcommand(1);

  SolveOptions solve;
  auto* cmd_solve = app.add_subcommand("solve", "Solve an instance file");
  cmd_solve->add_option("--input", solve.input, "Instance JSON")->required();
  cmd_solve->add_option("--method", solve.method, "auto|lp|flow|round|oracle")
      ->check(CLI::IsMember({"auto", "lp", "flow", "round", "oracle"}));
  cmd_solve->add_option("--trials", solve.trials, "Rounding trials")->check(CLI::PositiveNumber);
  cmd_solve->add_option("--seed", solve.seed, "Random seed");
  cmd_solve->add_flag("--sum-preserving", solve.sum_preserving, "Dependent rounding keeping sum(u)");
  cmd_solve->add_option("--output", solve.output, "Solution path (default stdout)");
  cmd_solve->add_option("--threads", solve.threads, "Rounding worker threads")->check(CLI::PositiveNumber);
  cmd_solve->add_option("--dump-network", solve.dump_network, "Write the flow network edge list");

  std::string verify_input;
  std::string verify_solution_path;
  auto* cmd_verify = app.add_subcommand("verify", "Re-evaluate a solution against its instance");
  cmd_verify->add_option("--input", verify_input, "Instance JSON")->required();
  cmd_verify->add_option("--solution", verify_solution_path, "Solution JSON")->required();

  GenOptions gen;
  auto* cmd_gen = app.add_subcommand("gen", "Generate an instance file");
  cmd_gen->require_subcommand(1);
  auto* gen_random = cmd_gen->add_subcommand("random", "Random vector instance");
  gen_random->add_option("--d", gen.d)->check(CLI::PositiveNumber);
  gen_random->add_option("--k", gen.k);
  gen_random->add_option("--max-entry", gen.max_entry)->check(CLI::NonNegativeNumber);
  gen_random->add_option("--cap", gen.cap, "Integer or inf");
  gen_random->add_option("--mu", gen.mu);
  gen_random->add_option("--nu", gen.nu);
  gen_random->add_flag("--consecutive", gen.consecutive, "Interval generators only");
  auto* gen_msc = cmd_gen->add_subcommand("msc", "Random minimum separation matrix");
  gen_msc->add_option("--m", gen.m)->check(CLI::PositiveNumber);
  gen_msc->add_option("--n", gen.n)->check(CLI::PositiveNumber);
  gen_msc->add_option("--lambda", gen.lambda);
  gen_msc->add_option("--max-entry", gen.max_entry)->check(CLI::NonNegativeNumber);
  gen_msc->add_option("--cap", gen.cap, "Integer or inf");
  gen_msc->add_option("--mu", gen.mu);
  gen_msc->add_option("--nu", gen.nu);
  gen_msc->add_flag("--decomposable", gen.decomposable, "Realized matrix of a random plan");
  auto* gen_sat = cmd_gen->add_subcommand("sat", "Segmentation instance of a 3SAT-6 formula");
  gen_sat->add_option("--formula", gen.formula, "Formula file")->required();
  for (auto* sub : {gen_random, gen_msc, gen_sat}) {
    sub->add_option("--seed", gen.seed);
    sub->add_option("--output", gen.output);
  }

  LemmaOptions lemma;
  auto* cmd_lemma = app.add_subcommand("lemma-sim", "Monte Carlo check of E|X_1+...+X_q| <= sqrt(ln2/2) sqrt(q)");
  cmd_lemma->add_option("--q", lemma.q)->check(CLI::PositiveNumber);
  cmd_lemma->add_option("--trials", lemma.trials);
  cmd_lemma->add_option("--seed", lemma.seed);
  cmd_lemma->add_option("--p-file", lemma.p_file, "Whitespace separated p_j");
  cmd_lemma->add_option("--p", lemma.p, "Same p for every variable")->check(CLI::Range(0.0, 1.0));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*cmd_solve) return run_solve(solve, out, err);
    if (*cmd_verify) return run_verify(verify_input, verify_solution_path, out, err);
    if (*cmd_lemma) return run_lemma(lemma, out, err);
    Rng rng(RngSpec{gen.seed, 0});
    AnyInstance produced;
    if (*gen_random) {
      CvpInstance inst = gen_random_instance(gen.d, gen.k, gen.max_entry, parse_cap(gen.cap), gen.consecutive, rng);
      inst.weights = weights_of(gen);
      produced = std::move(inst);
    } else if (*gen_msc) {
      MatrixInstance mi = gen_msc_matrix({gen.m, gen.n, gen.lambda, gen.max_entry, parse_cap(gen.cap), gen.decomposable}, rng);
      mi.weights = weights_of(gen);
      produced = std::move(mi);
    } else {
      produced = reduce_3sat6(parse_sat36(read_file(gen.formula))).matrix_instance;
    }
    emit(write_instance(produced), gen.output, out);
    return kOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace cvp::cli
