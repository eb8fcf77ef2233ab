// itolog: command-line front end for expansions, the surjection algebra and
// the verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or input error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "itolog/config.hpp"
#include "itolog/flow.hpp"
#include "itolog/ito_symbolic.hpp"
#include "itolog/path_io.hpp"
#include "itolog/paths.hpp"
#include "itolog/qshuffle.hpp"
#include "itolog/report.hpp"
#include "itolog/serialization.hpp"
#include "itolog/surjection.hpp"
#include "verify_suites.hpp"

namespace {

using namespace itolog;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  bool json = false;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> max_grade;
  bool deterministic = false;
};

std::uint64_t require_seed(const Globals& g, const std::string& command) {
  if (!g.seed) throw UsageError(command + " is randomized and needs --seed");
  return *g.seed;
}

// Writes the command output to --out or stdout.
void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(g.out, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + g.out + " for writing");
  file << text;
}

std::string dump(const Globals& g, Json j, const std::string& command) {
  j["command"] = command;
  if (g.seed) j["seed"] = *g.seed;
  if (!g.deterministic && !j.contains("timestamp")) {
    // reuse the report helper for the timestamp format
    j["timestamp"] = suite_json("", {}, false)["timestamp"];
  }
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

int cmd_qsh(const Globals& g, const std::vector<std::string>& literals) {
  Expansion product = Expansion::unit();
  for (std::size_t i = 0; i < literals.size(); ++i) {
    BracketWord w;
    try {
      w = parse_word_literal(literals[i]);
    } catch (const ParseError& e) {
      throw UsageError("word " + std::to_string(i + 1) + " '" + literals[i] + "': " + e.what());
    }
    product = qsh(product, Expansion(w));
  }
  if (g.json) {
    emit(g, dump(g, Json{{"terms", product.size()}, {"result", to_json(product)}}, "qsh"));
  } else {
    emit(g, to_text(product) + "\n");
  }
  return 0;
}

int cmd_surj_log(const Globals& g, std::size_t grade, const std::string& form) {
  SurjElement log;
  if (form == "series") {
    log = log_identity_series(grade);
  } else if (form == "descent") {
    log = log_identity_closed_form(grade, ClosedForm::kDescentClasses);
  } else {
    log = log_identity_closed_form(grade, ClosedForm::kContainment);
  }
  if (g.json) {
    emit(g, dump(g, Json{{"form", form}, {"result", to_json(log)}}, "surj-log"));
    return 0;
  }
  std::string text;
  for (std::size_t n = 1; n <= grade; ++n) text += "n=" + std::to_string(n) + ": " + to_text(log.grade(n)) + "\n";
  emit(g, text);
  return 0;
}

std::string matrix_text(const MatrixExpansion& m) {
  std::string text;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    for (std::size_t j = 0; j < m.dim(); ++j) {
      text += "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "): " + to_text(m.at(i, j)) + "\n";
    }
  }
  return text;
}

int cmd_matrix_log(const Globals& g, std::size_t dim, std::size_t order, const std::string& command) {
  if (dim == 0) throw UsageError("matrix dimension must be positive");
  const MatrixExpansion m = matrix_log(dim, order);
  if (g.json) {
    emit(g, dump(g, Json{{"order", order}, {"result", to_json(m)}}, command));
  } else {
    emit(g, matrix_text(m));
  }
  return 0;
}

// "V_i V_j (1/2 I_{ij} - 1/2 I_{ji} - 1/2 I_{[i,j]})", or "V_i I_i" for a
// lone unit term.
std::string template_line(const std::vector<LogTerm>& terms) {
  const std::size_t n = terms.front().n();
  std::string ops;
  for (std::size_t p = 1; p <= n; ++p) ops += "V_" + position_name(p) + " ";
  if (terms.size() == 1 && terms.front().coeff == 1) return ops + render_integral(terms.front().partition);
  std::string body;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    const Rational& c = terms[t].coeff;
    const Rational magnitude = c < 0 ? Rational(-c) : c;
    if (t == 0) {
      if (c < 0) body += "-";
    } else {
      body += c < 0 ? " - " : " + ";
    }
    if (magnitude != 1) body += to_string(magnitude) + " ";
    body += render_integral(terms[t].partition);
  }
  return ops + "(" + body + ")";
}

int cmd_logflow(const Globals& g, std::size_t order, std::optional<std::size_t> drivers, bool jumps,
                std::optional<std::size_t> matrix) {
  if (matrix) return cmd_matrix_log(g, *matrix, order, "logflow");

  const std::size_t n_primary = drivers.value_or(1);
  if (n_primary == 0) throw UsageError("--drivers must be positive");
  DriverAlphabet alphabet = jumps ? DriverAlphabet::with_jumps(n_primary) : DriverAlphabet{};
  alphabet.n_primary = n_primary;

  if (drivers) {
    const auto expansion = log_flow_expansion(alphabet, order);
    if (g.json) {
      Json terms = Json::array();
      for (const auto& [ops, e] : expansion) terms.push_back({{"operator", ops}, {"expansion", to_json(e)}});
      emit(g, dump(g, Json{{"order", order}, {"drivers", n_primary}, {"continuous", !jumps}, {"terms", terms}},
                   "logflow"));
      return 0;
    }
    std::string text;
    for (const auto& [ops, e] : expansion) {
      std::string name;
      for (Letter l : ops) name += (name.empty() ? "V_" : " V_") + std::to_string(l);
      text += name + ": " + to_text(e) + "\n";
    }
    emit(g, text);
    return 0;
  }

  const auto terms = log_flow_terms(alphabet, order);
  if (g.json) {
    Json list = Json::array();
    for (const auto& t : terms) list.push_back(to_json(t));
    emit(g, dump(g, Json{{"order", order}, {"continuous", !jumps}, {"terms", list}}, "logflow"));
    return 0;
  }
  std::map<std::size_t, std::vector<LogTerm>> by_grade;
  for (const auto& t : terms) by_grade[t.n()].push_back(t);
  std::string text;
  for (const auto& [n, group] : by_grade) text += template_line(group) + "\n";
  emit(g, text);
  return 0;
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

int cmd_verify(const Globals& g, const std::string& suite, std::size_t grade, std::optional<std::size_t> steps,
               std::size_t paths, std::size_t order, std::size_t threads) {
  std::vector<VerificationReport> cases;
  std::optional<std::uint64_t> seed;
  if (suite == "algebra") {
    cases = cli::verify_algebra(grade);
  } else if (suite == "theorem") {
    cases = cli::verify_theorem(grade);
  } else if (suite == "pathwise") {
    cli::PathwiseOptions o;
    o.seed = require_seed(g, "verify pathwise");
    if (steps) o.steps = *steps;
    seed = o.seed;
    std::cerr << "verify pathwise: seed " << o.seed << "\n";
    cases = cli::verify_pathwise(o);
  } else {
    cli::FlowOptions o;
    o.seed = require_seed(g, "verify flow");
    if (steps) o.steps = *steps;
    o.paths = paths;
    o.max_order = order;
    o.threads = threads;
    seed = o.seed;
    std::cerr << "verify flow: seed " << o.seed << "\n";
    cases = cli::verify_flow(o);
  }

  const bool pass = all_pass(cases);
  if (g.json) {
    Json j = suite_json(suite, cases, g.deterministic);
    emit(g, dump(g, std::move(j), "verify"));
  } else {
    std::string text;
    for (const auto& c : cases) {
      text += std::string(c.pass ? "PASS " : "FAIL ") + c.test + "  max_abs_err=" + fmt(c.max_abs_err) +
              " tolerance=" + fmt(c.tolerance);
      if (!c.detail.empty()) text += "  (" + c.detail + ")";
      text += "\n";
    }
    if (seed) text += "seed: " + std::to_string(*seed) + "\n";
    text += "suite " + suite + ": " + (pass ? "PASS" : "FAIL") + "\n";
    emit(g, text);
  }
  return pass ? 0 : kExitFail;
}

DriverSpec parse_driver(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  double param = 1.0;
  if (colon != std::string::npos) {
    try {
      std::size_t used = 0;
      param = std::stod(spec.substr(colon + 1), &used);
      if (used != spec.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw UsageError("bad driver parameter in '" + spec + "'");
    }
  }
  DriverSpec d;
  if (kind == "brownian") {
    d = Brownian{param};
  } else if (kind == "poisson") {
    d = Poisson{param};
  } else if (kind == "drift") {
    d = LinearDrift{param};
  } else {
    throw UsageError("unknown driver kind '" + kind + "' (brownian, poisson, drift)");
  }
  validate(d);
  return d;
}

int cmd_simulate(const Globals& g, const std::vector<std::string>& specs, std::size_t steps, double horizon,
                 std::uint64_t path_index, const std::string& format) {
  const std::uint64_t seed = require_seed(g, "simulate");
  const auto grid = uniform_grid(horizon, steps);
  PathBundle bundle;
  for (std::size_t d = 0; d < specs.size(); ++d) {
    bundle.add("X" + std::to_string(d + 1), simulate(parse_driver(specs[d]), grid, seed, path_index, d));
  }
  std::cerr << "simulate: seed " << seed << "\n";
  std::ostringstream out;
  if (g.json) {
    Json j{{"times", bundle.times}, {"names", bundle.names}, {"columns", bundle.columns}, {"path_index", path_index}};
    out << dump(g, std::move(j), "simulate");
  } else if (format == "binary") {
    if (g.out.empty()) throw UsageError("binary output needs --out");
    write_binary(out, bundle);
  } else {
    write_csv(out, bundle);
  }
  emit(g, out.str());
  return 0;
}

int cmd_flow_compare(const Globals& g, std::size_t order, std::size_t paths, std::size_t steps, std::size_t threads) {
  FlowStudyConfig config;
  config.seed = require_seed(g, "flow-compare");
  config.problem = demo_flow_problem(steps);
  config.max_order = order;
  config.paths = paths;
  config.threads = threads;
  std::cerr << "flow-compare: seed " << config.seed << "\n";
  const FlowStudyResult r = run_flow_study(config);
  if (g.json) {
    Json j{{"paths", r.paths},
           {"steps", r.steps},
           {"log_error", r.log_error},
           {"taylor_error", r.taylor_error},
           {"log_taylor_gap", r.log_taylor_gap},
           {"gap_residual", r.gap_residual}};
    emit(g, dump(g, std::move(j), "flow-compare"));
    return 0;
  }
  std::string text = "order  log_error  taylor_error  log_taylor_gap  gap_residual\n";
  for (std::size_t k = 0; k < r.log_error.size(); ++k) {
    text += std::to_string(k + 1) + "  " + fmt(r.log_error[k]) + "  " + fmt(r.taylor_error[k]) + "  " +
            fmt(r.log_taylor_gap[k]) + "  " + fmt(r.gap_residual[k]) + "\n";
  }
  text += "paths " + std::to_string(r.paths) + ", steps " + std::to_string(r.steps) + ", seed " +
          std::to_string(config.seed) + "\n";
  emit(g, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ito quasi-shuffle logarithms: expansions, surjection algebra and verification suites"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  std::uint64_t seed = 0;
  std::size_t max_grade = 0;
  app.add_flag("--json", g.json, "JSON output");
  app.add_option("--out", g.out, "write output to FILE");
  auto* seed_opt = app.add_option("--seed", seed, "RNG seed for randomized commands");
  auto* grade_opt = app.add_option("--max-grade", max_grade, "raise or lower the grade cap (and the weight cap)")
                        ->check(CLI::Range(1, 12));
  app.add_flag("--deterministic", g.deterministic, "omit timestamps from JSON output");

  std::vector<std::string> words;
  auto* qsh_cmd = app.add_subcommand("qsh", "quasi-shuffle product of word literals (1.2, [1,3].2, \"\")");
  qsh_cmd->add_option("words", words, "word literals")->required()->expected(1, -1);

  std::size_t surj_grade = 4;
  std::string form = "descent";
  auto* surj_cmd = app.add_subcommand("surj-log", "logarithm of the identity series in the surjection algebra");
  surj_cmd->add_option("--grade", surj_grade, "truncation grade")->check(CLI::PositiveNumber);
  surj_cmd->add_option("--form", form, "series | descent | containment")
      ->check(CLI::IsMember({"series", "descent", "containment"}));

  std::size_t order = 3;
  std::size_t drivers = 1;
  std::size_t matrix_dim = 2;
  bool continuous = false;
  bool jumps = false;
  auto* logflow_cmd = app.add_subcommand("logflow", "logarithm of the Ito flow map");
  logflow_cmd->add_option("--order", order, "truncation order")->check(CLI::PositiveNumber);
  auto* drivers_opt = logflow_cmd->add_option("--drivers", drivers, "instantiate over N drivers");
  auto* cont_flag = logflow_cmd->add_flag("--continuous", continuous, "continuous drivers (default)");
  logflow_cmd->add_flag("--jumps", jumps, "general drivers with jumps")->excludes(cont_flag);
  auto* matrix_opt = logflow_cmd->add_option("--matrix", matrix_dim, "entries of the matrix logarithm, dim d");

  std::size_t mlog_order = 3;
  std::size_t mlog_dim = 2;
  auto* mlog_cmd = app.add_subcommand("matrix-log", "entry-wise logarithm of the Ito-Taylor series of dX = X dM");
  mlog_cmd->add_option("--order", mlog_order, "truncation order")->check(CLI::PositiveNumber);
  mlog_cmd->add_option("--dim", mlog_dim, "matrix dimension")->check(CLI::PositiveNumber);

  std::string suite;
  std::size_t verify_grade = 4;
  std::size_t verify_steps = 0;
  std::size_t verify_paths = 1000;
  std::size_t verify_order = 3;
  std::size_t threads = 0;
  auto* verify_cmd = app.add_subcommand("verify", "run a verification suite");
  verify_cmd->add_option("suite", suite, "algebra | theorem | pathwise | flow")
      ->required()
      ->check(CLI::IsMember({"algebra", "theorem", "pathwise", "flow"}));
  verify_cmd->add_option("--grade", verify_grade, "grade for algebra/theorem");
  auto* steps_opt = verify_cmd->add_option("--steps", verify_steps, "grid steps")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--paths", verify_paths, "Monte Carlo paths (flow)")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--order", verify_order, "maximal order (flow)")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--threads", threads, "worker threads, 0 = hardware");

  std::vector<std::string> specs;
  std::size_t sim_steps = 1024;
  double horizon = 1.0;
  std::uint64_t path_index = 0;
  std::string format = "csv";
  auto* sim_cmd = app.add_subcommand("simulate", "simulate a path bundle");
  sim_cmd->add_option("--driver", specs, "brownian[:sigma] | poisson[:rate] | drift[:slope], repeatable")
      ->required();
  sim_cmd->add_option("--steps", sim_steps, "grid steps")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--horizon", horizon, "final time")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--path-index", path_index, "path number within the seed");
  sim_cmd->add_option("--format", format, "csv | binary")->check(CLI::IsMember({"csv", "binary"}));

  std::size_t fc_order = 3;
  std::size_t fc_paths = 100;
  std::size_t fc_steps = 1024;
  auto* fc_cmd = app.add_subcommand("flow-compare", "log-flow vs Ito-Taylor vs Euler reference on the 2x2 study problem");
  fc_cmd->add_option("--order", fc_order, "maximal order")->check(CLI::PositiveNumber);
  fc_cmd->add_option("--paths", fc_paths, "Monte Carlo paths")->check(CLI::PositiveNumber);
  fc_cmd->add_option("--steps", fc_steps, "grid steps")->check(CLI::PositiveNumber);
  fc_cmd->add_option("--threads", threads, "worker threads, 0 = hardware");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (*seed_opt) g.seed = seed;
  if (*grade_opt) g.max_grade = max_grade;

  try {
    if (g.max_grade) {
      set_grade_cap(*g.max_grade);
      set_weight_cap(std::max(kDefaultWeightCap, *g.max_grade));
    }
    if (*qsh_cmd) return cmd_qsh(g, words);
    if (*surj_cmd) return cmd_surj_log(g, surj_grade, form);
    if (*logflow_cmd) {
      return cmd_logflow(g, order, *drivers_opt ? std::optional(drivers) : std::nullopt, jumps,
                         *matrix_opt ? std::optional(matrix_dim) : std::nullopt);
    }
    if (*mlog_cmd) return cmd_matrix_log(g, mlog_dim, mlog_order, "matrix-log");
    if (*verify_cmd) {
      return cmd_verify(g, suite, verify_grade, *steps_opt ? std::optional(verify_steps) : std::nullopt, verify_paths,
                        verify_order, threads);
    }
    if (*sim_cmd) return cmd_simulate(g, specs, sim_steps, horizon, path_index, format);
    if (*fc_cmd) return cmd_flow_compare(g, fc_order, fc_paths, fc_steps, threads);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << " (raise it with --max-grade)\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
