// Acceptance run: one PASS/FAIL line per criterion. Tolerances and time
// limits are fixed here; the exit status is nonzero if any line fails.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "itolog/flow.hpp"
#include "itolog/ito_symbolic.hpp"
#include "itolog/paths.hpp"
#include "itolog/qshuffle.hpp"
#include "itolog/surjection.hpp"
#include "oracles.hpp"
#include "verify_suites.hpp"

using namespace itolog;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  std::string name;
  double time_limit_s;
  std::function<Outcome()> run;
};

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(4);
  s << x;
  return s.str();
}

// Fixed seeds for the stochastic criteria.
constexpr std::uint64_t kPathwiseSeed = 42;
constexpr std::uint64_t kJumpSeed = 7;
constexpr std::uint64_t kFlowSeed = 2024;

Outcome reports_outcome(const std::vector<VerificationReport>& reports) {
  Outcome o{true, ""};
  for (const auto& r : reports) {
    if (!r.pass) o.pass = false;
    o.detail += (o.detail.empty() ? "" : "; ") + r.test + " " + fmt(r.max_abs_err) + "<=" + fmt(r.tolerance) +
                (r.pass ? "" : " FAILED");
  }
  return o;
}

// ---------------------------------------------------------------------------

Outcome theorem_oracle() {
  std::size_t mismatched = 0;
  std::size_t terms = 0;
  for (std::size_t n = 1; n <= 5; ++n) {
    const SurjElement series = log_identity_series(n);
    const SurjElement closed = log_identity_closed_form(n);
    if (series != closed) ++mismatched;
    // coefficient by descent count, recomputed from the values of f
    const SurjElement top = series.grade(n);
    for (const auto& [f, c] : top.terms()) {
      unsigned d = 0;
      for (std::size_t i = 1; i < f.arity(); ++i) d += f.values()[i - 1] >= f.values()[i] ? 1u : 0u;
      if (c != oracle::log_coefficient(static_cast<unsigned>(n), d)) ++mismatched;
    }
    terms = top.size();
  }
  const bool full_support = terms == oracle::fubini(5).get_ui();
  return {mismatched == 0 && full_support,
          "N=1..5 series == closed form; grade 5 has " + std::to_string(terms) + " terms (expected " +
              oracle::fubini(5).get_str() + "); mismatches " + std::to_string(mismatched)};
}

Outcome golden_expansion() {
  const Rational half(1, 2), third(1, 3), sixth(-1, 6);
  // the reference listing through order 3 (seven terms at -1/6)
  const std::map<std::string, Rational> listing = {
      {"I_i", 1},           {"I_{ij}", half},     {"I_{ji}", -half},    {"I_{[i,j]}", -half},
      {"I_{ijk}", third},   {"I_{jik}", sixth},   {"I_{kij}", sixth},   {"I_{[i,j]k}", sixth},
      {"I_{j[i,k]}", sixth}, {"I_{ikj}", sixth},  {"I_{jki}", sixth},   {"I_{i[j,k]}", sixth},
      {"I_{kji}", third},   {"I_{[j,k]i}", third}, {"I_{k[i,j]}", third}};

  std::map<std::string, Rational> produced;
  std::map<std::string, Surjection> source;
  for (const auto& t : log_flow_terms(DriverAlphabet{}, 3)) {
    const std::string key = render_integral(t.partition);
    produced.emplace(key, t.coeff);
    source.emplace(key, t.f);
  }

  std::size_t matched = 0;
  std::string missing;
  for (const auto& [key, c] : listing) {
    const auto it = produced.find(key);
    if (it != produced.end() && it->second == c) {
      ++matched;
    } else {
      missing += " " + key;
    }
  }
  std::string extra;
  bool extra_confirmed = true;
  const SurjElement series = log_identity_series(3);
  for (const auto& [key, c] : produced) {
    if (listing.count(key)) continue;
    extra += " " + key + " " + to_string(c) + " from " + to_string(source.at(key));
    // an unlisted term must carry the coefficient the power series gives its surjection
    if (series.coefficient(source.at(key)) != c) extra_confirmed = false;
  }
  // The only admissible unlisted term is I_{[i,k]j}: its surjection (121) sits in
  // the same descent class as the six listed -1/6 terms.
  const bool extra_ok = extra.empty() || (produced.size() == listing.size() + 1 && produced.count("I_{[i,k]j}") &&
                                          produced.at("I_{[i,k]j}") == sixth && extra_confirmed);
  return {missing.empty() && extra_ok,
          std::to_string(matched) + "/" + std::to_string(listing.size()) + " listed terms exact" +
              (missing.empty() ? "" : "; missing or wrong:" + missing) +
              (extra.empty() ? "" : "; additional term (absent from the listing, confirmed by the power series):" + extra)};
}

Outcome worked_coefficient() {
  for (const auto& t : log_flow_terms(DriverAlphabet{}, 3)) {
    if (t.f != Surjection({2, 1, 2})) continue;
    const bool ok = t.coeff == Rational(-1, 6) &&
                    t.partition.blocks() == std::vector<std::vector<std::size_t>>{{2}, {1, 3}};
    return {ok, "(212) -> " + to_string(t.coeff) + " on " + render_integral(t.partition)};
  }
  return {false, "(212) not produced"};
}

Outcome exp_of_log() {
  SurjElement identity = SurjElement::unit();
  for (std::size_t n = 1; n <= 5; ++n) identity.add(Surjection::identity(n), 1);
  const bool surj = exp_element(log_identity_closed_form(5), 5) == identity;
  bool matrix = true;
  for (std::size_t k = 1; k <= 4; ++k) matrix = matrix && matrix_exp(matrix_log(2, k), k) == matrix_ito_taylor(2, k);
  return {surj && matrix, std::string("Sj grade 5 ") + (surj ? "exact" : "MISMATCH") + "; dim 2 orders 1..4 " +
                              (matrix ? "exact" : "MISMATCH")};
}

Outcome definitional_equivalence() {
  std::vector<std::vector<BracketWord>> by_weight;
  for (std::size_t w = 0; w <= 6; ++w) by_weight.push_back(enumerate_words(w, 3));
  std::size_t pairs = 0, bad = 0;
  for (std::size_t a = 0; a <= 6; ++a) {
    for (std::size_t b = 0; a + b <= 6; ++b) {
      for (const auto& u : by_weight[a]) {
        for (const auto& v : by_weight[b]) {
          ++pairs;
          if (qsh(u, v) != qsh_via_surjections(u, v)) ++bad;
        }
      }
    }
  }
  // (a1)(a2) * (b1)(b2) with distinct letters: 6 shuffles, 6 with one
  // bracket, 1 with two; the same count as (12) <> (12)
  const BracketWord u = BracketWord::from_letters(std::vector<Letter>{1, 2});
  const BracketWord v = BracketWord::from_letters(std::vector<Letter>{3, 4});
  const Expansion uv = qsh(u, v);
  std::map<std::size_t, std::size_t> by_length;
  bool unit_coefficients = true;
  for (const auto& [w, c] : uv.terms()) {
    ++by_length[w.length()];
    unit_coefficients = unit_coefficients && c == 1;
  }
  const bool thirteen = uv.size() == 13 && qsh_via_surjections(u, v) == uv && unit_coefficients &&
                        by_length == std::map<std::size_t, std::size_t>{{4, 6}, {3, 6}, {2, 1}} &&
                        diamond(Surjection({1, 2}), Surjection({1, 2})).size() == 13;
  return {bad == 0 && thirteen, std::to_string(pairs) + " pairs, " + std::to_string(bad) + " mismatches; (2,2) case " +
                                    std::to_string(uv.size()) + " terms (" + std::to_string(by_length[4]) + "+" +
                                    std::to_string(by_length[3]) + "+" + std::to_string(by_length[2]) + ")"};
}

std::vector<Composition> compositions_of(std::size_t total) {
  if (total == 0) return {Composition{}};
  std::vector<Composition> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << (total - 1)); ++mask) {
    std::vector<std::size_t> parts{1};
    for (std::size_t p = 0; p + 1 < total; ++p) {
      if (mask & (std::size_t{1} << p)) {
        parts.push_back(1);
      } else {
        ++parts.back();
      }
    }
    out.emplace_back(std::move(parts));
  }
  return out;
}

Outcome morphism_lemma() {
  std::size_t pairs = 0, bad = 0;
  for (std::size_t total = 0; total <= 6; ++total) {
    for (std::size_t left = 0; left <= total; ++left) {
      for (const auto& a : compositions_of(left)) {
        for (const auto& b : compositions_of(total - left)) {
          ++pairs;
          if (diamond(iota(a), iota(b)) != iota(a * b)) ++bad;
        }
      }
    }
  }
  return {bad == 0, std::to_string(pairs) + " composition pairs, " + std::to_string(bad) + " mismatches"};
}

Outcome proof_identity() {
  std::size_t cases = 0, bad = 0;
  for (unsigned n = 1; n <= 8; ++n) {
    const unsigned full = (1u << (n - 1)) - 1;
    for (unsigned i = 0; i <= full; ++i) {
      mpq_class sum = 0;
      for (unsigned j = 0; j <= full; ++j) {
        if ((j & i) != i) continue;
        const int size = std::popcount(j);
        sum += mpq_class(size % 2 ? -1 : 1, size + 1);
      }
      sum.canonicalize();
      const unsigned d = static_cast<unsigned>(std::popcount(i));
      const mpq_class closed(mpz_class(d % 2 ? -1 : 1), n * oracle::choose(n - 1, d));
      ++cases;
      if (sum != closed || sum != oracle::log_coefficient(n, d) || sum != bch_coefficient(n, d)) ++bad;
    }
  }
  return {bad == 0, std::to_string(cases) + " (n, I) cases, " + std::to_string(bad) + " mismatches"};
}

Outcome pathwise_exactness() {
  cli::PathwiseOptions o;
  o.seed = kPathwiseSeed;
  o.steps = 4096;
  o.max_weight = 3;
  o.tolerance = 1e-9;
  return reports_outcome(cli::verify_pathwise(o));
}

Outcome jump_restriction() {
  const BracketWord triple({Block({1, 1, 1})});

  // Poisson: a unit jump cubed is itself, so the block equals N_T on paths
  // whose jumps sit in distinct cells.
  const auto grid = uniform_grid(1.0, 4096);
  std::size_t used = 0, exact = 0, skipped = 0;
  for (std::uint64_t p = 0; used < 200; ++p) {
    const auto n = simulate(Poisson{3.0}, grid, kJumpSeed, p);
    if (count_multi_jump_cells(n) > 0) {
      ++skipped;
      continue;
    }
    ++used;
    if (PathEvaluator(PathBinding{{1, n}}).evaluate(triple) == n.terminal()) ++exact;
  }

  // Brownian: the coarse path is every fourth point of the fine one, so both
  // grids see the same realisation.
  constexpr std::size_t kCoarse = 1024, kPaths = 200;
  const auto fine_grid = uniform_grid(1.0, 4 * kCoarse);
  const auto coarse_grid = uniform_grid(1.0, kCoarse);
  double coarse_sum = 0.0, fine_sum = 0.0;
  for (std::uint64_t p = 0; p < kPaths; ++p) {
    const auto fine = simulate(Brownian{1.0}, fine_grid, kJumpSeed, p, 1);
    std::vector<double> values;
    for (std::size_t m = 0; m <= kCoarse; ++m) values.push_back(fine.values()[4 * m]);
    const SamplePath coarse(coarse_grid, values);
    fine_sum += std::abs(PathEvaluator(PathBinding{{1, fine}}).evaluate(triple));
    coarse_sum += std::abs(PathEvaluator(PathBinding{{1, coarse}}).evaluate(triple));
  }
  const double shrink = coarse_sum / fine_sum;
  return {exact == used && shrink >= 2.0,
          "Poisson " + std::to_string(exact) + "/" + std::to_string(used) + " exact (" + std::to_string(skipped) +
              " skipped for multi-jump cells); Brownian mean |block| shrinks " + fmt(shrink) + "x under 4x refinement (" +
              std::to_string(kPaths) + " paths, need >= 2)"};
}

Outcome flow_comparison() {
  const FlowProblem demo = demo_flow_problem();
  const double commutator = (demo.drift * demo.diffusion - demo.diffusion * demo.drift).norm();
  const bool setup = demo.dim == 2 && demo.horizon == 0.1 && demo.steps == (1u << 14) && commutator > 0.0;
  cli::FlowOptions o;
  o.seed = kFlowSeed;
  o.paths = 1000;
  o.steps = 1u << 14;
  o.max_order = 3;
  Outcome out = reports_outcome(cli::verify_flow(o));
  out.pass = out.pass && setup;
  out.detail = "||[A,B]|| = " + fmt(commutator) + "; " + out.detail;
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"theorem_oracle", 60.0, theorem_oracle},
      {"golden_expansion", 1.0, golden_expansion},
      {"worked_coefficient", 1.0, worked_coefficient},
      {"exp_of_log_identity", 300.0, exp_of_log},
      {"definitional_equivalence", 600.0, definitional_equivalence},
      {"morphism_lemma", 600.0, morphism_lemma},
      {"proof_identity", 60.0, proof_identity},
      {"pathwise_exactness", 30.0, pathwise_exactness},
      {"jump_case_restriction", 120.0, jump_restriction},
      {"flow_comparison", 600.0, flow_comparison},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds <= c.time_limit_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s %-26s %8.2fs (limit %gs%s) %s\n", pass ? "PASS" : "FAIL", c.name.c_str(), seconds, c.time_limit_s,
                in_time ? "" : ", EXCEEDED", o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
