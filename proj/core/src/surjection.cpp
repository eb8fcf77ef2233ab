#include "itolog/surjection.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "itolog/combinatorics.hpp"
#include "itolog/config.hpp"

namespace itolog {

// ---------------------------------------------------------------------------
// Surjection

Surjection::Surjection(std::vector<std::uint32_t> values) : values_(std::move(values)) {
  if (values_.empty()) return;
  const std::uint32_t k = *std::max_element(values_.begin(), values_.end());
  std::vector<bool> hit(k + 1, false);
  for (std::uint32_t v : values_) {
    if (v == 0) throw std::invalid_argument("surjection values are 1-based");
    hit[v] = true;
  }
  for (std::uint32_t v = 1; v <= k; ++v) {
    if (!hit[v]) throw std::invalid_argument("value sequence misses " + std::to_string(v) + "; not onto [k]");
  }
}

Surjection::Surjection(std::initializer_list<std::uint32_t> values)
    : Surjection(std::vector<std::uint32_t>(values)) {}

Surjection Surjection::identity(std::size_t n) {
  std::vector<std::uint32_t> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::uint32_t>(i + 1);
  return Surjection(std::move(v));
}

std::size_t Surjection::rank() const noexcept {
  return values_.empty() ? 0 : *std::max_element(values_.begin(), values_.end());
}

std::size_t Surjection::max_fiber() const {
  std::vector<std::size_t> counts(rank() + 1, 0);
  for (auto v : values_) ++counts[v];
  return values_.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
}

std::strong_ordering operator<=>(const Surjection& a, const Surjection& b) {
  if (auto c = a.arity() <=> b.arity(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.values_.begin(), a.values_.end(), b.values_.begin(),
                                                b.values_.end());
}

Surjection pack(std::span<const std::uint32_t> word) {
  std::vector<std::uint32_t> distinct(word.begin(), word.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<std::uint32_t> packed;
  packed.reserve(word.size());
  for (auto x : word) {
    auto rank = std::lower_bound(distinct.begin(), distinct.end(), x) - distinct.begin();
    packed.push_back(static_cast<std::uint32_t>(rank + 1));
  }
  return Surjection(std::move(packed));
}

std::string to_string(const Surjection& f) {
  const bool digits = std::all_of(f.values().begin(), f.values().end(), [](auto v) { return v <= 9; });
  std::string out;
  if (digits) {
    for (auto v : f.values()) out += static_cast<char>('0' + v);
    return out;
  }
  out = "(";
  for (std::size_t i = 0; i < f.arity(); ++i) {
    if (i) out += ',';
    out += std::to_string(f[i]);
  }
  out += ')';
  return out;
}

Surjection parse_surjection(std::string_view text) {
  std::string_view s = text;
  const bool parens = s.size() >= 2 && s.front() == '(' && s.back() == ')';
  if (parens) s = s.substr(1, s.size() - 2);
  std::vector<std::uint32_t> values;
  if (s.find(',') != std::string_view::npos) {
    std::size_t start = 0;
    while (start <= s.size()) {
      auto end = s.find(',', start);
      if (end == std::string_view::npos) end = s.size();
      auto part = s.substr(start, end - start);
      if (part.empty()) throw std::invalid_argument("empty value in surjection literal");
      std::uint32_t v = 0;
      for (char ch : part) {
        if (ch < '0' || ch > '9') throw std::invalid_argument("bad character in surjection literal");
        v = v * 10 + static_cast<std::uint32_t>(ch - '0');
      }
      values.push_back(v);
      start = end + 1;
    }
  } else {
    for (char ch : s) {
      if (ch < '1' || ch > '9') throw std::invalid_argument("bad character in surjection literal");
      values.push_back(static_cast<std::uint32_t>(ch - '0'));
    }
  }
  return Surjection(std::move(values));
}

// ---------------------------------------------------------------------------
// SurjElement

SurjElement::SurjElement(const Surjection& f, const Rational& coeff) { add(f, coeff); }

void SurjElement::add(const Surjection& f, const Rational& coeff) {
  if (coeff == 0) return;
  auto [it, inserted] = terms_.try_emplace(f, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

Rational SurjElement::coefficient(const Surjection& f) const {
  auto it = terms_.find(f);
  return it == terms_.end() ? Rational(0) : it->second;
}

SurjElement SurjElement::grade(std::size_t n) const {
  SurjElement out;
  for (const auto& [f, c] : terms_) {
    if (f.arity() == n) out.terms_.emplace_hint(out.terms_.end(), f, c);
  }
  return out;
}

SurjElement SurjElement::truncated(std::size_t max_grade) const {
  SurjElement out;
  for (const auto& [f, c] : terms_) {
    if (f.arity() <= max_grade) out.terms_.emplace_hint(out.terms_.end(), f, c);
  }
  return out;
}

std::size_t SurjElement::max_grade() const noexcept {
  return terms_.empty() ? 0 : terms_.rbegin()->first.arity();
}

bool SurjElement::is_homogeneous() const noexcept {
  return terms_.empty() || terms_.begin()->first.arity() == terms_.rbegin()->first.arity();
}

SurjElement& SurjElement::operator+=(const SurjElement& other) {
  for (const auto& [f, c] : other.terms_) add(f, c);
  return *this;
}

SurjElement& SurjElement::operator-=(const SurjElement& other) {
  for (const auto& [f, c] : other.terms_) add(f, -c);
  return *this;
}

SurjElement& SurjElement::operator*=(const Rational& scale) {
  if (scale == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [f, c] : terms_) c *= scale;
  return *this;
}

// ---------------------------------------------------------------------------
// Enumeration

namespace {

template <class Visit>
void enumerate_onto(std::size_t n, std::size_t k, std::size_t max_fiber, Visit&& visit) {
  std::vector<std::uint32_t> values(n);
  std::vector<std::size_t> counts(k + 1, 0);
  std::size_t unused = k;
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == n) {
      if (unused == 0) visit(values);
      return;
    }
    if (n - pos < unused) return;
    for (std::uint32_t v = 1; v <= k; ++v) {
      if (counts[v] == max_fiber) continue;
      values[pos] = v;
      if (counts[v]++ == 0) --unused;
      self(self, pos + 1);
      if (--counts[v] == 0) ++unused;
    }
  };
  rec(rec, 0);
}

void check_nk(std::size_t n, std::size_t k) {
  if (k < 1 || k > n) {
    throw std::invalid_argument("surjections [n]->[k] need 1 <= k <= n; got n=" + std::to_string(n) +
                                ", k=" + std::to_string(k));
  }
}

}  // namespace

std::vector<Surjection> enumerate_surjections(std::size_t n, std::size_t k) {
  check_nk(n, k);
  std::vector<Surjection> out;
  enumerate_onto(n, k, n, [&](const std::vector<std::uint32_t>& v) { out.emplace_back(v); });
  return out;
}

std::vector<Surjection> enumerate_surjections_bounded(std::size_t n, std::size_t k, std::size_t max_fiber) {
  check_nk(n, k);
  if (max_fiber == 0) throw std::invalid_argument("max_fiber must be positive");
  std::vector<Surjection> out;
  enumerate_onto(n, k, max_fiber, [&](const std::vector<std::uint32_t>& v) { out.emplace_back(v); });
  return out;
}

std::vector<Surjection> enumerate_surjections(std::size_t n) {
  if (n == 0) return {Surjection{}};
  std::vector<Surjection> out;
  for (std::size_t k = 1; k <= n; ++k) {
    auto part = enumerate_surjections(n, k);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Diamond product

SurjElement diamond(const Surjection& f, const Surjection& g, DiamondMethod method) {
  const std::size_t n = f.arity();
  const std::size_t m = g.arity();
  SurjElement out;
  if (method == DiamondMethod::kBruteForce) {
    for (const auto& h : enumerate_surjections(n + m)) {
      std::span<const std::uint32_t> hv(h.values());
      if (n > 0 && pack(hv.first(n)) != f) continue;
      if (m > 0 && pack(hv.last(m)) != g) continue;
      out.add(h, 1);
    }
    return out;
  }
  std::vector<std::uint32_t> h(n + m);
  const std::size_t k = f.rank();
  const std::size_t l = g.rank();
  for_each_quasi_shuffle(k, l, [&](std::span<const std::uint32_t> merge) {
    for (std::size_t i = 0; i < n; ++i) h[i] = merge[f[i] - 1];
    for (std::size_t j = 0; j < m; ++j) h[n + j] = merge[k + g[j] - 1];
    out.add(Surjection(h), 1);
  });
  return out;
}

SurjElement diamond(const SurjElement& a, const SurjElement& b, std::optional<std::size_t> max_grade,
                    DiamondMethod method) {
  SurjElement out;
  for (const auto& [f, cf] : a.terms()) {
    for (const auto& [g, cg] : b.terms()) {
      if (max_grade && f.arity() + g.arity() > *max_grade) continue;
      const Rational c = cf * cg;
      const SurjElement fg = diamond(f, g, method);
      for (const auto& [h, ch] : fg.terms()) out.add(h, c * ch);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Descents

PositionSet descent_set(const Surjection& f) {
  PositionSet out;
  for (std::size_t i = 0; i + 1 < f.arity(); ++i) {
    if (f[i] >= f[i + 1]) out.insert(i + 1);
  }
  return out;
}

std::size_t descent_count(const Surjection& f) {
  std::size_t d = 0;
  for (std::size_t i = 0; i + 1 < f.arity(); ++i) d += f[i] >= f[i + 1] ? 1 : 0;
  return d;
}

namespace {

void check_positions(std::size_t n, const PositionSet& positions) {
  for (auto p : positions) {
    if (p < 1 || p + 1 > n) {
      throw std::invalid_argument("descent position " + std::to_string(p) + " outside [n-1] for n=" +
                                  std::to_string(n));
    }
  }
}

}  // namespace

SurjElement descent_class(std::size_t n, const PositionSet& positions) {
  check_positions(n, positions);
  SurjElement out;
  for (const auto& f : enumerate_surjections(n)) {
    if (descent_set(f) == positions) out.add(f, 1);
  }
  return out;
}

SurjElement descent_class_within(std::size_t n, const PositionSet& positions) {
  check_positions(n, positions);
  SurjElement out;
  for (const auto& f : enumerate_surjections(n)) {
    const auto desc = descent_set(f);
    if (std::includes(positions.begin(), positions.end(), desc.begin(), desc.end())) out.add(f, 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Compositions and iota

Composition::Composition(std::vector<std::size_t> parts) : parts_(std::move(parts)) {
  for (auto p : parts_) {
    if (p == 0) throw std::invalid_argument("composition parts must be positive");
  }
}

Composition::Composition(std::initializer_list<std::size_t> parts)
    : Composition(std::vector<std::size_t>(parts)) {}

std::size_t Composition::total() const noexcept {
  std::size_t t = 0;
  for (auto p : parts_) t += p;
  return t;
}

PositionSet Composition::partial_sums() const {
  PositionSet out;
  std::size_t s = 0;
  for (std::size_t i = 0; i + 1 < parts_.size(); ++i) {
    s += parts_[i];
    out.insert(s);
  }
  return out;
}

Composition operator*(const Composition& a, const Composition& b) {
  std::vector<std::size_t> parts = a.parts_;
  parts.insert(parts.end(), b.parts_.begin(), b.parts_.end());
  return Composition(std::move(parts));
}

SurjElement iota(const Composition& c) {
  if (c.parts().empty()) return SurjElement::unit();
  return descent_class_within(c.total(), c.partial_sums());
}

// ---------------------------------------------------------------------------
// Logarithm and exponential of the identity series

Rational bch_coefficient(std::size_t n, std::size_t d) {
  if (n == 0 || d + 1 > n) throw std::invalid_argument("bch_coefficient needs 0 <= d < n");
  Rational q(mpz_class(1), mpz_class(n) * binomial(n - 1, d));
  q.canonicalize();
  return d % 2 == 0 ? q : Rational(-q);
}

namespace {

void check_series_grade(std::size_t max_grade) {
  if (max_grade < 1) throw std::invalid_argument("series truncation grade must be >= 1");
  check_cap(max_grade, grade_cap(), "series grade");
}

}  // namespace

SurjElement log_identity_series(std::size_t max_grade) {
  check_series_grade(max_grade);
  SurjElement x;
  for (std::size_t n = 1; n <= max_grade; ++n) x.add(Surjection::identity(n), 1);
  SurjElement power = x;
  SurjElement result = x;
  for (std::size_t k = 2; k <= max_grade; ++k) {
    power = diamond(power, x, max_grade);
    Rational c(1, static_cast<unsigned long>(k));
    if (k % 2 == 0) c = -c;
    result += power * c;
  }
  return result;
}

SurjElement log_identity_closed_form(std::size_t max_grade, ClosedForm form) {
  check_series_grade(max_grade);
  SurjElement out;
  for (std::size_t n = 1; n <= max_grade; ++n) {
    if (form == ClosedForm::kDescentClasses) {
      for (const auto& f : enumerate_surjections(n)) out.add(f, bch_coefficient(n, descent_count(f)));
      continue;
    }
    // Every subset I of [n-1] as a bitmask over positions 1..n-1.
    const std::size_t subsets = std::size_t{1} << (n - 1);
    for (std::size_t mask = 0; mask < subsets; ++mask) {
      PositionSet positions;
      for (std::size_t p = 0; p + 1 < n; ++p) {
        if (mask & (std::size_t{1} << p)) positions.insert(p + 1);
      }
      const auto size = static_cast<unsigned long>(std::popcount(mask));
      Rational c(1, size + 1);
      if (size % 2 == 1) c = -c;
      out += descent_class_within(n, positions) * c;
    }
  }
  return out;
}

SurjElement exp_element(const SurjElement& e, std::size_t max_grade) {
  check_cap(max_grade, grade_cap(), "series grade");
  if (e.coefficient(Surjection{}) != 0) {
    throw std::invalid_argument("exp_element requires an element without grade-0 term");
  }
  SurjElement result = SurjElement::unit();
  SurjElement power = SurjElement::unit();
  const SurjElement base = e.truncated(max_grade);
  for (std::size_t k = 1; k <= max_grade; ++k) {
    power = diamond(power, base, max_grade) * Rational(1, static_cast<unsigned long>(k));
    if (power.is_zero()) break;
    result += power;
  }
  return result;
}

SurjElement strichartz_restriction(std::size_t max_grade) {
  check_series_grade(max_grade);
  SurjElement out;
  const SurjElement log = log_identity_closed_form(max_grade);
  for (const auto& [f, c] : log.terms()) {
    if (f.is_bijection()) out.add(f, c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Action on words

BracketWord apply_surjection(const Surjection& f, const BracketWord& word) {
  return apply_values(f.values(), word);
}

Expansion apply_surjection(const SurjElement& e, const BracketWord& word) {
  Expansion out;
  for (const auto& [f, c] : e.terms()) out.add(apply_surjection(f, word), c);
  return out;
}

// ---------------------------------------------------------------------------
// Ordered set partitions

OrderedSetPartition::OrderedSetPartition(std::vector<std::vector<std::size_t>> blocks)
    : blocks_(std::move(blocks)) {
  std::size_t n = 0;
  for (auto& b : blocks_) {
    if (b.empty()) throw std::invalid_argument("ordered set partition has an empty block");
    std::sort(b.begin(), b.end());
    n += b.size();
  }
  std::vector<bool> seen(n + 1, false);
  for (const auto& b : blocks_) {
    for (auto p : b) {
      if (p < 1 || p > n) throw std::invalid_argument("partition does not cover [n] exactly");
      if (seen[p]) throw std::invalid_argument("partition blocks are not disjoint");
      seen[p] = true;
    }
  }
}

std::size_t OrderedSetPartition::size() const noexcept {
  std::size_t n = 0;
  for (const auto& b : blocks_) n += b.size();
  return n;
}

std::size_t OrderedSetPartition::max_block() const noexcept {
  std::size_t m = 0;
  for (const auto& b : blocks_) m = std::max(m, b.size());
  return m;
}

OrderedSetPartition OrderedSetPartition::of(const Surjection& f) {
  std::vector<std::vector<std::size_t>> blocks(f.rank());
  for (std::size_t i = 0; i < f.arity(); ++i) blocks[f[i] - 1].push_back(i + 1);
  return OrderedSetPartition(std::move(blocks));
}

Surjection OrderedSetPartition::to_surjection() const {
  std::vector<std::uint32_t> values(size());
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    for (auto p : blocks_[b]) values[p - 1] = static_cast<std::uint32_t>(b + 1);
  }
  return Surjection(std::move(values));
}

}  // namespace itolog
