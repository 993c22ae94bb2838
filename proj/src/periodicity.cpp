#include "pcert/periodicity.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <vector>

#include "pcert/error.hpp"

namespace pcert {

namespace {

void require_nonempty(const PartMultiset& s) {
  if (s.empty()) throw EmptyMultiset("multiset must contain at least one part");
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (b != 0 && a > UINT64_MAX / b) throw InvalidParameter("period exceeds 64 bits");
  return a * b;
}

}  // namespace

PartMultiset::PartMultiset(std::map<std::uint64_t, std::uint64_t> entries) {
  for (const auto& [v, mult] : entries) add(v, mult);
}

void PartMultiset::add(std::uint64_t value, std::uint64_t multiplicity) {
  if (value < 1) throw InvalidParameter("part values must be positive");
  if (multiplicity < 1) throw InvalidParameter("multiplicities must be positive");
  entries_[value] += multiplicity;
}

std::uint64_t PartMultiset::size() const noexcept {
  std::uint64_t total = 0;
  for (const auto& [v, mult] : entries_) total += mult;
  return total;
}

ProductSpec PartMultiset::generating_spec() const {
  ProductSpec spec;
  for (const auto& [v, mult] : entries_) {
    spec.factors.emplace_back(BinomialFactor{Sign::minus, v, -static_cast<std::int64_t>(mult)});
  }
  return spec;
}

std::string PartMultiset::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, mult] : entries_) {
    if (!first) os << ',';
    first = false;
    os << v;
    if (mult > 1) os << ':' << mult;
  }
  return os.str();
}

unsigned ord_prime(std::uint64_t n, std::uint64_t ell) {
  if (n == 0) throw InvalidParameter("ord is undefined at 0");
  unsigned ord = 0;
  while (n % ell == 0) {
    n /= ell;
    ++ord;
  }
  return ord;
}

std::uint64_t ell_free_part(std::uint64_t n, std::uint64_t ell) {
  if (n == 0) throw InvalidParameter("ell-free part is undefined at 0");
  while (n % ell == 0) n /= ell;
  return n;
}

unsigned b_ell(const PartMultiset& s, std::uint64_t ell) {
  require_nonempty(s);
  std::uint64_t total = 0;
  for (const auto& [v, mult] : s.entries()) {
    std::uint64_t power = 1;
    for (unsigned i = ord_prime(v, ell); i > 0; --i) power = checked_mul(power, ell);
    total += checked_mul(power, mult);
  }
  unsigned b = 0;
  for (std::uint64_t power = 1; power < total; power = checked_mul(power, ell)) ++b;
  return b;
}

std::uint64_t m_ell(const PartMultiset& s, std::uint64_t ell) {
  require_nonempty(s);
  std::uint64_t l = 1;
  for (const auto& [v, mult] : s.entries()) {
    const std::uint64_t free = ell_free_part(v, ell);
    l = checked_mul(l / std::gcd(l, free), free);
  }
  return l;
}

PeriodInfo kwong_period(const PartMultiset& s, std::uint64_t ell, unsigned exponent) {
  if (!is_prime(ell)) throw InvalidParameter(std::to_string(ell) + " is not prime");
  if (exponent < 1) throw InvalidParameter("modulus exponent must be at least 1");
  PeriodInfo info;
  info.b = b_ell(s, ell);
  info.m = m_ell(s, ell);
  std::uint64_t period = info.m;
  for (unsigned i = 0; i + 1 < exponent + info.b; ++i) period = checked_mul(period, ell);
  info.period = period;
  info.source = PeriodSource::kwong_formula;
  return info;
}

bool verify_period_prefix(const ModSeries& a, std::uint64_t d, std::size_t limit) {
  if (d < 1) throw InvalidWindow("candidate period must be at least 1");
  if (limit > a.length()) {
    throw InvalidWindow("window " + std::to_string(limit) + " exceeds series length " +
                        std::to_string(a.length()));
  }
  if (d >= limit) {
    throw InvalidWindow("candidate period " + std::to_string(d) + " leaves no room in window " +
                        std::to_string(limit));
  }
  for (std::size_t n = 0; n + d < limit; ++n) {
    if (a[n + d] != a[n]) return false;
  }
  return true;
}

std::uint64_t empirical_min_period(const ModSeries& a, std::uint64_t formula_period, unsigned window) {
  if (window < 2) throw InvalidWindow("window multiplier must be at least 2");
  if (formula_period < 1) throw InvalidWindow("formula period must be positive");
  const std::uint64_t limit = checked_mul(formula_period, window);
  if (limit > a.length()) {
    throw InvalidWindow("series of length " + std::to_string(a.length()) + " is shorter than " +
                        std::to_string(window) + " x " + std::to_string(formula_period));
  }
  if (!verify_period_prefix(a, formula_period, limit)) {
    throw NoPeriodFound(std::to_string(formula_period) + " is not a period of the expanded series");
  }
  std::vector<std::uint64_t> divisors;
  for (std::uint64_t d = 1; d * d <= formula_period; ++d) {
    if (formula_period % d == 0) {
      divisors.push_back(d);
      if (d * d != formula_period) divisors.push_back(formula_period / d);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  for (std::uint64_t d : divisors) {
    if (verify_period_prefix(a, d, limit)) return d;
  }
  return formula_period;
}

}  // namespace pcert
