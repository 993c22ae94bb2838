#include "pcert/decomposition.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "pcert/error.hpp"

namespace pcert {

namespace {

constexpr std::uint64_t kMaxBase = std::uint64_t{1} << 40;
// R3 only expands polynomials up to this degree.
constexpr std::uint64_t kMaxExpansionDegree = 4096;
// Largest l^v tried when rounding a numerator exponent up to a power of l.
constexpr std::uint64_t kMaxSplitPower = std::uint64_t{1} << 20;

char sign_char(Sign s) { return s == Sign::minus ? '-' : '+'; }

std::optional<unsigned> pure_power(std::uint64_t value, std::uint64_t ell) {
  if (value == 0) return std::nullopt;
  unsigned v = 0;
  while (value % ell == 0) {
    value /= ell;
    ++v;
  }
  if (value != 1) return std::nullopt;
  return v;
}

std::uint64_t ipow(std::uint64_t base, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= base;
  return r;
}

std::int64_t abs64(std::int64_t x) { return x < 0 ? -x : x; }
std::int64_t sgn64(std::int64_t x) { return x < 0 ? -1 : 1; }

bool factor_delta_supported(const Factor& f, std::uint64_t delta) {
  if (const auto* b = std::get_if<BinomialFactor>(&f)) return b->base % delta == 0;
  if (const auto* p = std::get_if<PolyFactor>(&f)) {
    for (std::size_t i = 0; i < p->coeffs.size(); ++i) {
      if (p->coeffs[i] != 0 && i % delta != 0) return false;
    }
    return true;
  }
  const auto& t = std::get<TailFamily>(f);
  const auto d = static_cast<std::int64_t>(delta);
  return t.base_mul % delta == 0 && t.base_add % d == 0;
}

/// Records rewrite steps after checking each one numerically.
class Rewriter {
 public:
  Rewriter(const Modulus& modulus, std::size_t length) : modulus_(modulus), length_(length) {}

  void record(RewriteStep step) {
    const ModSeries lhs = series_from_spec(ProductSpec{step.input}, modulus_, length_);
    const ModSeries rhs = series_from_spec(ProductSpec{step.output}, modulus_, length_);
    if (lhs != rhs) throw RuleValidationFailed("unsound rewrite " + step.describe());
    steps_.push_back(std::move(step));
  }

  const Modulus& modulus() const { return modulus_; }
  std::size_t length() const { return length_; }
  Derivation take() { return std::move(steps_); }

 private:
  Modulus modulus_;
  std::size_t length_;
  Derivation steps_;
};

// Power reduction of a factor whose exponent magnitude is l^v. The scale
// callback multiplies the factor's base (or base pattern) by l.
struct Reduced {
  Factor result;
  std::vector<RewriteStep> steps;
};

template <typename F>
std::optional<Reduced> power_reduce(const F& factor, std::int64_t exponent, const Modulus& m) {
  const std::uint64_t ell = m.prime();
  const unsigned n_exp = m.exponent();
  const auto v_opt = pure_power(static_cast<std::uint64_t>(abs64(exponent)), ell);
  if (!v_opt) return std::nullopt;
  unsigned v = *v_opt;
  const bool plus = factor.sign == Sign::plus;
  auto scale = [&](F f, unsigned times) -> std::optional<F> {
    const std::uint64_t mult = ipow(ell, times);
    if constexpr (std::is_same_v<F, BinomialFactor>) {
      if (f.base > kMaxBase / mult) return std::nullopt;
      f.base *= mult;
    } else {
      if (f.base_mul > kMaxBase / mult) return std::nullopt;
      f.base_mul *= mult;
      f.base_add *= static_cast<std::int64_t>(mult);
    }
    return f;
  };
  auto with_exponent = [](F f, std::int64_t e) {
    if constexpr (std::is_same_v<F, BinomialFactor>) {
      f.exponent = e;
    } else {
      f.exp_add = e;
    }
    return f;
  };

  Reduced out{factor, {}};
  if (n_exp == 1) {
    if (v < 1) return std::nullopt;
    auto scaled = scale(factor, v);
    if (!scaled) return std::nullopt;
    F next = with_exponent(*scaled, sgn64(exponent));
    out.steps.push_back({plus ? Rule::R1Plus : Rule::R1, {factor}, {next}, ell});
    out.result = next;
    return out;
  }
  if (v < n_exp) return std::nullopt;
  F current = factor;
  while (v >= n_exp) {
    auto scaled = scale(current, 1);
    if (!scaled) return std::nullopt;
    F next = with_exponent(*scaled, sgn64(exponent) * static_cast<std::int64_t>(ipow(ell, v - 1)));
    out.steps.push_back({plus ? Rule::R2Plus : Rule::R2, {current}, {next}, ipow(ell, v)});
    current = next;
    --v;
  }
  out.result = current;
  return out;
}

std::optional<Reduced> power_reduce_factor(const Factor& f, const Modulus& m) {
  if (const auto* b = std::get_if<BinomialFactor>(&f)) return power_reduce(*b, b->exponent, m);
  if (const auto* t = std::get_if<TailFamily>(&f)) {
    if (!t->constant_exponent()) return std::nullopt;
    return power_reduce(*t, t->exp_add, m);
  }
  return std::nullopt;
}

// R4: merge binomial factors sharing (sign, base); drop zero exponents.
std::vector<Factor> merge_binomials(const std::vector<Factor>& work, Rewriter& rw) {
  std::map<std::pair<int, std::uint64_t>, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (const auto* b = std::get_if<BinomialFactor>(&work[i])) {
      groups[{static_cast<int>(b->sign), b->base}].push_back(i);
    }
  }
  std::vector<std::optional<Factor>> slots(work.begin(), work.end());
  for (const auto& [key, idx] : groups) {
    std::int64_t total = 0;
    std::vector<Factor> input;
    for (std::size_t i : idx) {
      total += std::get<BinomialFactor>(work[i]).exponent;
      input.push_back(work[i]);
    }
    if (idx.size() == 1 && total != 0) continue;
    std::vector<Factor> output;
    if (total != 0) output.push_back(BinomialFactor{static_cast<Sign>(key.first), key.second, total});
    rw.record({Rule::R4, input, output, rw.modulus().value()});
    for (std::size_t i : idx) slots[i].reset();
    if (total != 0) slots[idx.front()] = output.front();
  }
  std::vector<Factor> out;
  for (auto& s : slots) {
    if (s) out.push_back(std::move(*s));
  }
  return out;
}

// ((1+x)/(1-x))^e == 1 (mod 2^N) when 2^N divides e; pairs binomials and tails.
std::vector<Factor> cancel_ratios(const std::vector<Factor>& work, Rewriter& rw) {
  const Modulus& m = rw.modulus();
  if (m.prime() != 2) return work;
  std::vector<bool> used(work.size(), false);
  auto exponent_ok = [&](std::int64_t e) {
    return e > 0 && static_cast<std::uint64_t>(e) % m.value() == 0;
  };
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (used[i]) continue;
    for (std::size_t j = 0; j < work.size(); ++j) {
      if (used[j] || i == j) continue;
      bool match = false;
      const auto* bp = std::get_if<BinomialFactor>(&work[i]);
      const auto* bm = std::get_if<BinomialFactor>(&work[j]);
      if (bp && bm) {
        match = bp->sign == Sign::plus && bm->sign == Sign::minus && bp->base == bm->base &&
                exponent_ok(bp->exponent) && bm->exponent == -bp->exponent;
      }
      const auto* tp = std::get_if<TailFamily>(&work[i]);
      const auto* tm = std::get_if<TailFamily>(&work[j]);
      if (tp && tm) {
        match = tp->sign == Sign::plus && tm->sign == Sign::minus && tp->base_mul == tm->base_mul &&
                tp->base_add == tm->base_add && tp->from == tm->from && tp->constant_exponent() &&
                tm->constant_exponent() && exponent_ok(tp->exp_add) && tm->exp_add == -tp->exp_add;
      }
      if (match) {
        rw.record({Rule::Ratio, {work[i], work[j]}, {}, m.value()});
        used[i] = used[j] = true;
        break;
      }
    }
  }
  std::vector<Factor> out;
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (!used[i]) out.push_back(work[i]);
  }
  return out;
}

// R3: (1+q^b)^e with e >= 2 as an explicit polynomial reduced mod l^N.
std::optional<PolyFactor> expand_binomial(const BinomialFactor& f, const Modulus& m) {
  if (f.exponent < 2) return std::nullopt;
  const std::uint64_t degree = f.base * static_cast<std::uint64_t>(f.exponent);
  if (degree > kMaxExpansionDegree) return std::nullopt;
  const ModSeries s = series_from_spec(ProductSpec{{f}}, m, degree + 1);
  PolyFactor p;
  p.coeffs.assign(s.coeffs().begin(), s.coeffs().end());
  while (p.coeffs.size() > 1 && p.coeffs.back() == 0) p.coeffs.pop_back();
  p.exponent = 1;
  return p;
}

std::int64_t to_signed(std::uint64_t x) { return static_cast<std::int64_t>(x); }

}  // namespace

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::R1: return "R1";
    case Rule::R2: return "R2";
    case Rule::R1Plus: return "R1+";
    case Rule::R2Plus: return "R2+";
    case Rule::R3: return "R3";
    case Rule::R4: return "R4";
    case Rule::Ratio: return "RATIO";
  }
  return "?";
}

std::string RewriteStep::describe() const {
  std::ostringstream os;
  os << rule_name(rule) << ": " << render_spec(ProductSpec{input}) << " -> "
     << render_spec(ProductSpec{output}) << " (mod " << valid_modulus << ")";
  return os.str();
}

std::string gf_name(const GFKind& kind) {
  return std::visit(
      [](const auto& k) -> std::string {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, gf::Partitions>) {
          return "partitions";
        } else if constexpr (std::is_same_v<K, gf::Plane>) {
          return "plane";
        } else if constexpr (std::is_same_v<K, gf::PlaneBox>) {
          return "plane_box(" + std::to_string(k.rows) + "," + std::to_string(k.cols) + ")";
        } else if constexpr (std::is_same_v<K, gf::PlaneRowed>) {
          return "plane_rowed(" + std::to_string(k.rows) + ")";
        } else if constexpr (std::is_same_v<K, gf::F>) {
          return "F(" + std::to_string(k.ell) + ")";
        } else if constexpr (std::is_same_v<K, gf::Overpartitions>) {
          return "overpartitions";
        } else if constexpr (std::is_same_v<K, gf::OverplaneRowed>) {
          return "overplane_rowed(" + std::to_string(k.rows) + ")";
        } else if constexpr (std::is_same_v<K, gf::MaxPart>) {
          return "maxpart(" + std::to_string(k.m) + ")";
        } else if constexpr (std::is_same_v<K, gf::Multiset>) {
          std::string out = "multiset(";
          bool first = true;
          for (const auto& [v, mult] : k.parts.entries()) {
            for (std::uint64_t i = 0; i < mult; ++i) {
              out += (first ? "" : ",") + std::to_string(v);
              first = false;
            }
          }
          return out + ")";
        } else {
          return "raw: " + render_spec(k.spec);
        }
      },
      kind);
}

ProductSpec build_spec(const GFKind& kind) {
  auto positive = [](std::uint64_t v, const char* what) {
    if (v < 1) throw InvalidParameter(std::string(what) + " must be positive");
  };
  ProductSpec spec;
  auto& fs = spec.factors;
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, gf::Partitions>) {
          fs.emplace_back(TailFamily{Sign::minus, 1, 0, 0, -1, 1});
        } else if constexpr (std::is_same_v<K, gf::Plane>) {
          fs.emplace_back(TailFamily{Sign::minus, 1, 0, -1, 0, 1});
        } else if constexpr (std::is_same_v<K, gf::PlaneBox>) {
          positive(k.rows, "row bound");
          positive(k.cols, "column bound");
          // base i+j-1 occurs once per cell on that anti-diagonal
          for (std::uint64_t b = 1; b + 1 <= k.rows + k.cols; ++b) {
            std::uint64_t count = 0;
            for (std::uint64_t i = 1; i <= k.rows; ++i) {
              if (b + 1 > i && b + 1 - i <= k.cols) ++count;
            }
            fs.emplace_back(BinomialFactor{Sign::minus, b, -to_signed(count)});
          }
        } else if constexpr (std::is_same_v<K, gf::PlaneRowed>) {
          positive(k.rows, "row bound");
          for (std::uint64_t n = 1; n < k.rows; ++n) {
            fs.emplace_back(BinomialFactor{Sign::minus, n, -to_signed(n)});
          }
          fs.emplace_back(TailFamily{Sign::minus, 1, 0, 0, -to_signed(k.rows), k.rows});
        } else if constexpr (std::is_same_v<K, gf::F>) {
          if (k.ell < 2) throw InvalidParameter("F(l) needs l >= 2");
          for (std::uint64_t n = 1; n < k.ell; ++n) {
            fs.emplace_back(BinomialFactor{Sign::minus, n, -to_signed(n)});
          }
        } else if constexpr (std::is_same_v<K, gf::Overpartitions>) {
          fs.emplace_back(TailFamily{Sign::plus, 1, 0, 0, 1, 1});
          fs.emplace_back(TailFamily{Sign::minus, 1, 0, 0, -1, 1});
        } else if constexpr (std::is_same_v<K, gf::OverplaneRowed>) {
          positive(k.rows, "row bound");
          for (std::uint64_t n = 1; n < k.rows; ++n) {
            fs.emplace_back(BinomialFactor{Sign::plus, n, to_signed(n)});
            fs.emplace_back(BinomialFactor{Sign::minus, n, -to_signed(n)});
          }
          fs.emplace_back(TailFamily{Sign::plus, 1, 0, 0, to_signed(k.rows), k.rows});
          fs.emplace_back(TailFamily{Sign::minus, 1, 0, 0, -to_signed(k.rows), k.rows});
        } else if constexpr (std::is_same_v<K, gf::MaxPart>) {
          positive(k.m, "largest part");
          for (std::uint64_t n = 1; n <= k.m; ++n) fs.emplace_back(BinomialFactor{Sign::minus, n, -1});
        } else if constexpr (std::is_same_v<K, gf::Multiset>) {
          if (k.parts.empty()) throw InvalidParameter("multiset target needs at least one part");
          spec = k.parts.generating_spec();
        } else {
          validate_spec(k.spec);
          spec = k.spec;
        }
      },
      kind);
  return spec;
}

std::size_t default_validation_length(const ProductSpec& spec, std::uint64_t delta) {
  return static_cast<std::size_t>(std::max<std::uint64_t>({2 * delta, 4 * max_finite_base(spec), 500}));
}

ReducedSpec reduce_spec(const ProductSpec& spec, const Modulus& modulus,
                        std::optional<std::size_t> validation_length) {
  validate_spec(spec);
  Rewriter rw(modulus, validation_length.value_or(default_validation_length(spec, 1)));
  std::vector<Factor> work = merge_binomials(spec.factors, rw);
  work = cancel_ratios(work, rw);

  std::vector<Factor> reduced;
  for (const auto& f : work) {
    auto r = power_reduce_factor(f, modulus);
    if (!r) {
      reduced.push_back(f);
      continue;
    }
    for (auto& s : r->steps) rw.record(std::move(s));
    reduced.push_back(r->result);
  }

  std::vector<Factor> expanded;
  for (const auto& f : reduced) {
    const auto* b = std::get_if<BinomialFactor>(&f);
    if (b && b->sign == Sign::plus) {
      if (auto poly = expand_binomial(*b, modulus)) {
        rw.record({Rule::R3, {f}, {*poly}, modulus.value()});
        expanded.emplace_back(*poly);
        continue;
      }
    }
    expanded.push_back(f);
  }

  ReducedSpec out;
  out.spec.factors = merge_binomials(expanded, rw);
  out.derivation = rw.take();
  return out;
}

bool is_delta_supported(const ProductSpec& spec, std::uint64_t delta) {
  if (delta < 1) throw InvalidParameter("delta must be positive");
  return std::all_of(spec.factors.begin(), spec.factors.end(),
                     [&](const Factor& f) { return factor_delta_supported(f, delta); });
}

bool validate_b_certificate(const ProductSpec& b, const Modulus& modulus, std::uint64_t delta,
                            std::size_t length) {
  if (delta < 1) throw InvalidParameter("delta must be positive");
  if (length < delta) throw InvalidParameter("validation length must be at least delta");
  const ModSeries beta = series_from_spec(b, modulus, length);
  if (beta[0] != 1 % modulus.value()) return false;
  for (std::size_t k = 1; k < length; ++k) {
    if (k % delta != 0 && beta[k] != 0) return false;
  }
  return true;
}

Decomposition split_ab(const ProductSpec& spec, const Modulus& modulus, std::uint64_t delta,
                       std::optional<std::size_t> validation_length) {
  if (delta < 1) throw InvalidParameter("delta must be positive");
  validate_spec(spec);
  const std::size_t length = validation_length.value_or(default_validation_length(spec, delta));
  Rewriter rw(modulus, length);
  const std::uint64_t ell = modulus.prime();

  std::vector<Factor> work = merge_binomials(spec.factors, rw);
  work = cancel_ratios(work, rw);

  // (1+q^b)^e = (1-q^{2b})^e (1-q^b)^{-e} for plus factors off the delta grid.
  std::vector<Factor> converted;
  for (const auto& f : work) {
    const auto* b = std::get_if<BinomialFactor>(&f);
    if (b && b->sign == Sign::plus && b->base % delta != 0) {
      if (b->base > kMaxBase / 2) throw SplitFailed("factor base too large: " + render_factor(f));
      std::vector<Factor> out{BinomialFactor{Sign::minus, 2 * b->base, b->exponent},
                              BinomialFactor{Sign::minus, b->base, -b->exponent}};
      rw.record({Rule::R4, {f}, out, modulus.value()});
      converted.insert(converted.end(), out.begin(), out.end());
    } else {
      converted.push_back(f);
    }
  }
  work = merge_binomials(converted, rw);

  std::vector<Factor> a_factors, b_factors;
  for (const auto& f : work) {
    if (factor_delta_supported(f, delta)) {
      b_factors.push_back(f);
      continue;
    }
    if (const auto* bf = std::get_if<BinomialFactor>(&f); bf && bf->sign == Sign::minus) {
      if (bf->exponent < 0) {
        // Denominator: move to B only if a power reduction lands on the grid.
        auto r = power_reduce_factor(f, modulus);
        if (r && factor_delta_supported(r->result, delta)) {
          for (auto& s : r->steps) rw.record(std::move(s));
          b_factors.push_back(r->result);
        } else {
          a_factors.push_back(f);
        }
        continue;
      }
      // Numerator: (1-q^b)^e = (1-q^b)^{l^v} * (1-q^b)^{e - l^v}, with l^v >= e
      // chosen so the l^v power reduces onto the grid.
      bool placed = false;
      const unsigned min_v = modulus.exponent();
      for (unsigned v = min_v; ipow(ell, v) <= kMaxSplitPower; ++v) {
        const auto power = to_signed(ipow(ell, v));
        if (power < bf->exponent) continue;
        const BinomialFactor head{Sign::minus, bf->base, power};
        auto r = power_reduce_factor(head, modulus);
        if (!r || !factor_delta_supported(r->result, delta)) continue;
        if (power != bf->exponent) {
          rw.record({Rule::R4,
                     {f},
                     {head, BinomialFactor{Sign::minus, bf->base, bf->exponent - power}},
                     modulus.value()});
          a_factors.emplace_back(BinomialFactor{Sign::minus, bf->base, bf->exponent - power});
        }
        for (auto& s : r->steps) rw.record(std::move(s));
        b_factors.push_back(r->result);
        placed = true;
        break;
      }
      if (!placed) throw SplitFailed("numerator factor " + render_factor(f) + " cannot be moved onto multiples of " + std::to_string(delta));
      continue;
    }
    if (std::holds_alternative<TailFamily>(f)) {
      auto r = power_reduce_factor(f, modulus);
      if (r && factor_delta_supported(r->result, delta)) {
        for (auto& s : r->steps) rw.record(std::move(s));
        b_factors.push_back(r->result);
        continue;
      }
    }
    throw SplitFailed("factor " + render_factor(f) + " is neither a finite denominator nor supported on multiples of " +
                      std::to_string(delta));
  }

  // A: finite denominators grouped by base.
  std::map<std::uint64_t, std::int64_t> a_exponents;
  for (const auto& f : a_factors) {
    const auto& bf = std::get<BinomialFactor>(f);
    a_exponents[bf.base] += bf.exponent;
  }
  if (a_exponents.size() != a_factors.size()) {
    std::vector<Factor> merged;
    for (const auto& [base, e] : a_exponents) merged.emplace_back(BinomialFactor{Sign::minus, base, e});
    rw.record({Rule::R4, a_factors, merged, modulus.value()});
  }

  Decomposition d{.a = {},
                  .a_multiset = {},
                  .b = ProductSpec{b_factors},
                  .delta = delta,
                  .modulus = modulus,
                  .derivation = {},
                  .validation_length = length};
  for (const auto& [base, e] : a_exponents) {
    if (e == 0) continue;
    if (e > 0) throw SplitFailed("A would contain the numerator factor (1-q^" + std::to_string(base) + ")^" + std::to_string(e));
    d.a.factors.emplace_back(BinomialFactor{Sign::minus, base, e});
    d.a_multiset.add(base, static_cast<std::uint64_t>(-e));
  }
  d.derivation = rw.take();

  if (!validate_b_certificate(d.b, modulus, delta, length)) {
    throw CertificateFailed("B = " + render_spec(d.b) + " is not supported on multiples of " +
                            std::to_string(delta) + " below " + std::to_string(length));
  }
  const ModSeries original = series_from_spec(spec, modulus, length);
  const ModSeries product =
      series_mul(series_from_spec(d.a, modulus, length), series_from_spec(d.b, modulus, length));
  if (original != product) {
    throw CertificateFailed("A*B does not reproduce the input modulo " + std::to_string(modulus.value()));
  }
  return d;
}

}  // namespace pcert
