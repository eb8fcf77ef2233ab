#include "verify_suites.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <cmath>
#include <sstream>
#include <string>

#include "itolog/config.hpp"
#include "itolog/flow.hpp"
#include "itolog/ito_symbolic.hpp"
#include "itolog/paths.hpp"
#include "itolog/qshuffle.hpp"
#include "itolog/surjection.hpp"

namespace itolog::cli {

namespace {

template <class Element>
double max_coeff_diff(const Element& a, const Element& b) {
  double worst = 0.0;
  const Element diff = a - b;
  for (const auto& [key, c] : diff.terms()) worst = std::max(worst, std::abs(c.get_d()));
  return worst;
}

// Exact case: passes only on a zero difference.
struct ExactCase {
  std::string name;
  double worst = 0.0;
  std::size_t checked = 0;

  template <class Element>
  void compare(const Element& lhs, const Element& rhs) {
    ++checked;
    if (lhs != rhs) worst = std::max(worst, std::max(max_coeff_diff(lhs, rhs), 1e-300));
  }
  void mismatch(double amount) {
    ++checked;
    worst = std::max(worst, amount);
  }
  VerificationReport report() const {
    VerificationReport r;
    r.test = name;
    r.max_abs_err = worst;
    r.tolerance = 0.0;
    r.pass = worst == 0.0;
    r.detail = std::to_string(checked) + " cases";
    return r;
  }
};

std::vector<BracketWord> words_up_to(std::size_t max_weight, std::size_t alphabet, std::size_t min_weight = 1) {
  std::vector<BracketWord> out;
  for (std::size_t w = min_weight; w <= max_weight; ++w) {
    auto layer = enumerate_words(w, alphabet);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::vector<Surjection> surjections_up_to(std::size_t max_arity, std::size_t min_arity = 1) {
  std::vector<Surjection> out;
  for (std::size_t n = min_arity; n <= max_arity; ++n) {
    auto layer = enumerate_surjections(n);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

std::vector<Composition> compositions_of(std::size_t total) {
  std::vector<Composition> out;
  if (total == 0) return {Composition{}};
  const std::size_t masks = std::size_t{1} << (total - 1);
  for (std::size_t mask = 0; mask < masks; ++mask) {
    std::vector<std::size_t> parts;
    std::size_t run = 1;
    for (std::size_t p = 0; p + 1 < total; ++p) {
      if (mask & (std::size_t{1} << p)) {
        parts.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    parts.push_back(run);
    out.emplace_back(std::move(parts));
  }
  return out;
}

}  // namespace

std::vector<VerificationReport> verify_algebra(std::size_t grade) {
  std::vector<VerificationReport> out;

  ExactCase unit{"unit_laws"};
  for (const auto& w : words_up_to(2, 2, 0)) {
    unit.compare(qsh(BracketWord{}, w), Expansion(w));
    unit.compare(qsh(w, BracketWord{}), Expansion(w));
  }
  for (const auto& f : surjections_up_to(3, 0)) {
    unit.compare(diamond(Surjection{}, f), SurjElement(f));
    unit.compare(diamond(f, Surjection{}), SurjElement(f));
  }
  if (pack(std::span<const std::uint32_t>{}) != Surjection{}) unit.mismatch(1.0);
  out.push_back(unit.report());
  if (grade == 0) return out;

  check_cap(grade, weight_cap(), "algebra suite grade");
  const std::size_t pair_weight = std::min<std::size_t>(grade, 6);

  ExactCase commutative{"qsh_commutative"};
  ExactCase route{"qsh_recursion_vs_surjections"};
  const auto words3 = words_up_to(pair_weight - (pair_weight > 1 ? 1 : 0), 3);
  for (const auto& u : words3) {
    for (const auto& v : words3) {
      if (u.weight() + v.weight() > pair_weight) continue;
      const Expansion uv = qsh(u, v);
      commutative.compare(uv, qsh(v, u));
      route.compare(uv, qsh_via_surjections(u, v));
    }
  }
  out.push_back(commutative.report());
  out.push_back(route.report());

  ExactCase associative{"qsh_associative"};
  const std::size_t triple_weight = std::min<std::size_t>(grade, 5);
  const auto words2 = words_up_to(triple_weight, 2);
  for (const auto& a : words2) {
    for (const auto& b : words2) {
      if (a.weight() + b.weight() + 1 > triple_weight) continue;
      for (const auto& c : words2) {
        if (a.weight() + b.weight() + c.weight() > triple_weight) continue;
        associative.compare(qsh(qsh(Expansion(a), Expansion(b)), Expansion(c)),
                            qsh(Expansion(a), qsh(Expansion(b), Expansion(c))));
      }
    }
  }
  out.push_back(associative.report());

  ExactCase half{"half_shuffle_split"};
  for (const auto& u : words3) {
    for (const auto& v : words3) {
      if (u.weight() + v.weight() > pair_weight) continue;
      half.compare(half_up(u, v) + half_down(u, v) + bullet(u, v), qsh(u, v));
    }
  }
  out.push_back(half.report());

  ExactCase methods{"diamond_merge_vs_bruteforce"};
  ExactCase diamond_assoc{"diamond_associative"};
  const std::size_t arity = std::min<std::size_t>(grade, 6);
  const auto fs = surjections_up_to(arity - (arity > 1 ? 1 : 0));
  for (const auto& f : fs) {
    for (const auto& g : fs) {
      if (f.arity() + g.arity() > arity) continue;
      methods.compare(diamond(f, g, DiamondMethod::kMerge), diamond(f, g, DiamondMethod::kBruteForce));
    }
  }
  const std::size_t triple_arity = std::min<std::size_t>(grade, 5);
  const auto fs3 = surjections_up_to(triple_arity);
  for (const auto& f : fs3) {
    for (const auto& g : fs3) {
      if (f.arity() + g.arity() + 1 > triple_arity) continue;
      const SurjElement fg = diamond(f, g);
      for (const auto& h : fs3) {
        if (f.arity() + g.arity() + h.arity() > triple_arity) continue;
        diamond_assoc.compare(diamond(fg, SurjElement(h)), diamond(SurjElement(f), diamond(g, h)));
      }
    }
  }
  out.push_back(methods.report());
  out.push_back(diamond_assoc.report());

  ExactCase morphism{"ncsf_morphism"};
  for (std::size_t total = 2; total <= arity; ++total) {
    for (std::size_t left = 1; left < total; ++left) {
      for (const auto& a : compositions_of(left)) {
        for (const auto& b : compositions_of(total - left)) morphism.compare(diamond(iota(a), iota(b)), iota(a * b));
      }
    }
  }
  out.push_back(morphism.report());
  return out;
}

std::vector<VerificationReport> verify_theorem(std::size_t grade) {
  std::vector<VerificationReport> out;
  if (grade == 0) {
    ExactCase trivial{"log_grade_zero"};
    trivial.compare(SurjElement{}, SurjElement{});
    out.push_back(trivial.report());
    return out;
  }
  check_cap(grade, grade_cap(), "theorem suite grade");

  const SurjElement closed = log_identity_closed_form(grade);
  ExactCase series{"log_series_vs_closed_form"};
  series.compare(log_identity_series(grade), closed);
  out.push_back(series.report());

  ExactCase forms{"closed_form_descent_vs_containment"};
  forms.compare(closed, log_identity_closed_form(grade, ClosedForm::kContainment));
  out.push_back(forms.report());

  ExactCase round_trip{"exp_of_log_is_identity_series"};
  SurjElement identity = SurjElement::unit();
  for (std::size_t n = 1; n <= grade; ++n) identity.add(Surjection::identity(n), 1);
  round_trip.compare(exp_element(closed, grade), identity);
  out.push_back(round_trip.report());

  ExactCase subsets{"subset_sum_identity"};
  const std::size_t max_n = std::max<std::size_t>(grade, 8);
  for (std::size_t n = 1; n <= max_n; ++n) {
    const std::size_t full = (std::size_t{1} << (n - 1)) - 1;
    for (std::size_t mask = 0; mask <= full; ++mask) {
      Rational sum(0);
      // supersets J of I inside [n-1]
      for (std::size_t j = mask;; j = (j + 1) | mask) {
        const auto size = static_cast<unsigned long>(std::popcount(j));
        Rational term(1, size + 1);
        sum += (size % 2 == 0) ? term : Rational(-term);
        if (j == full) break;
      }
      const Rational expected = bch_coefficient(n, static_cast<std::size_t>(std::popcount(mask)));
      subsets.mismatch(sum == expected ? 0.0 : std::max(std::abs(Rational(sum - expected).get_d()), 1e-300));
    }
  }
  out.push_back(subsets.report());

  ExactCase matrix{"matrix_exp_of_log_is_taylor"};
  const std::size_t order = std::min<std::size_t>(grade, 4);
  for (std::size_t k = 1; k <= order; ++k) {
    const MatrixExpansion lhs = matrix_exp(matrix_log(2, k), k);
    const MatrixExpansion rhs = matrix_ito_taylor(2, k);
    for (std::size_t e = 0; e < rhs.entries().size(); ++e) matrix.compare(lhs.entries()[e], rhs.entries()[e]);
  }
  out.push_back(matrix.report());
  return out;
}

namespace {

struct Family {
  std::string name;
  std::vector<DriverSpec> drivers;
};

using ProductCase = std::pair<Expansion, std::pair<BracketWord, BracketWord>>;

VerificationReport pathwise_case(const std::string& name, const PathwiseOptions& o, const PathBinding& binding,
                                 const std::vector<ProductCase>& cases) {
  // Every distinct word once, evaluated in one trie pass.
  std::map<BracketWord, std::size_t> index;
  auto note = [&](const BracketWord& w) { index.emplace(w, 0); };
  for (const auto& [product, factors] : cases) {
    for (const auto& term : product.terms()) note(term.first);
    note(factors.first);
    note(factors.second);
  }
  std::vector<Expansion> singles;
  singles.reserve(index.size());
  for (auto& [w, i] : index) {
    i = singles.size();
    singles.emplace_back(w);
  }
  const auto values = PathEvaluator(binding).evaluate_all(singles);

  double worst = 0.0;
  for (const auto& [product, factors] : cases) {
    const double expected = values[index.at(factors.first)] * values[index.at(factors.second)];
    // scale: the largest magnitude among the product and its summands
    double scale = std::max(1.0, std::abs(expected));
    double sum = 0.0;
    for (const auto& [w, coeff] : product.terms()) {
      const double term = coeff.get_d() * values[index.at(w)];
      scale = std::max(scale, std::abs(term));
      sum += term;
    }
    worst = std::max(worst, std::abs(sum - expected) / scale);
  }
  VerificationReport r;
  r.test = name;
  r.max_abs_err = worst;
  r.tolerance = o.tolerance;
  r.pass = worst <= o.tolerance;
  r.seed = o.seed;
  r.grid_points = o.steps + 1;
  r.paths = 1;
  r.detail = std::to_string(cases.size()) + " products";
  return r;
}

}  // namespace

std::vector<VerificationReport> verify_pathwise(const PathwiseOptions& o) {
  check_cap(2 * o.max_weight, weight_cap(), "pathwise product weight");
  const auto grid = uniform_grid(o.horizon, o.steps);
  const std::vector<Family> families = {
      {"brownian", {Brownian{1.0}, Brownian{0.5}}},
      {"poisson", {Poisson{3.0}, Poisson{1.5}}},
      {"drift", {LinearDrift{0.7}, LinearDrift{-1.3}}},
      {"mixed", {Brownian{1.0}, Poisson{2.0}, LinearDrift{0.8}}},
  };

  std::vector<VerificationReport> out;
  for (std::size_t fi = 0; fi < families.size(); ++fi) {
    const auto& family = families[fi];
    PathBinding binding;
    for (std::size_t d = 0; d < family.drivers.size(); ++d) {
      binding.emplace(static_cast<Letter>(d + 1), simulate(family.drivers[d], grid, o.seed, fi, d));
    }
    std::vector<ProductCase> cases;
    const auto words = words_up_to(o.max_weight, family.drivers.size());
    for (const auto& u : words) {
      for (const auto& v : words) cases.push_back({qsh(u, v), {u, v}});
    }
    out.push_back(pathwise_case("qsh_product_rule_" + family.name, o, binding, cases));

    if (family.drivers.size() >= 3) {
      // B * int C dD as the five integrals BCD, CBD, CDB, [B,C]D, C[B,D]
      Expansion five;
      five.add(BracketWord{{1}, {2}, {3}}, 1);
      five.add(BracketWord{{2}, {1}, {3}}, 1);
      five.add(BracketWord{{2}, {3}, {1}}, 1);
      five.add(BracketWord{{1, 2}, {3}}, 1);
      five.add(BracketWord{{2}, {1, 3}}, 1);
      cases.clear();
      cases.push_back({five, {BracketWord{{1}}, BracketWord{{2}, {3}}}});
      out.push_back(pathwise_case("bracket_product_five_terms", o, binding, cases));
    }
  }
  return out;
}

std::vector<VerificationReport> verify_flow(const FlowOptions& o) {
  FlowStudyConfig config;
  config.problem = demo_flow_problem(o.steps);
  config.max_order = o.max_order;
  config.paths = o.paths;
  config.seed = o.seed;
  config.threads = o.threads;
  const FlowStudyResult result = run_flow_study(config);

  auto base = [&](const std::string& name) {
    VerificationReport r;
    r.test = name;
    r.seed = o.seed;
    r.grid_points = o.steps + 1;
    r.paths = o.paths;
    return r;
  };
  auto listing = [](const std::vector<double>& v) {
    std::ostringstream s;
    s.precision(6);
    for (std::size_t k = 0; k < v.size(); ++k) s << (k ? ", " : "") << v[k];
    return s.str();
  };
  // Largest increase between consecutive orders; <= 0 means strictly decreasing
  // once compared with tolerance 0 and strict inequality.
  auto decreasing = [&](const std::string& name, const std::vector<double>& v) {
    VerificationReport r = base(name);
    double worst = -1.0;
    for (std::size_t k = 1; k < v.size(); ++k) worst = std::max(worst, v[k] - v[k - 1]);
    r.max_abs_err = std::max(worst, 0.0);
    r.tolerance = 0.0;
    r.pass = v.size() < 2 || worst < 0.0;
    r.detail = "means by order: " + listing(v);
    return r;
  };

  std::vector<VerificationReport> out;
  out.push_back(decreasing("flow_log_error_decreasing", result.log_error));
  out.push_back(decreasing("flow_log_taylor_gap_decreasing", result.log_taylor_gap));
  for (std::size_t k = 0; k < result.gap_residual.size(); ++k) {
    VerificationReport r = base("flow_gap_leading_term_order_" + std::to_string(k + 1));
    r.max_abs_err = result.gap_residual[k];
    r.tolerance = kFlowResidualRatio * result.log_taylor_gap[k];
    r.pass = r.max_abs_err <= r.tolerance;
    r.detail = "gap " + listing({result.log_taylor_gap[k]}) + ", taylor error " + listing({result.taylor_error[k]});
    out.push_back(r);
  }
  return out;
}

}  // namespace itolog::cli
