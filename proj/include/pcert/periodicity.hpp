#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "pcert/product_spec.hpp"
#include "pcert/series.hpp"

namespace pcert {

/// Finite multiset of positive part values; equal values with different
/// copy indices count as distinct part types.
class PartMultiset {
 public:
  PartMultiset() = default;
  /// Throws InvalidParameter on a zero part value or zero multiplicity.
  explicit PartMultiset(std::map<std::uint64_t, std::uint64_t> entries);

  void add(std::uint64_t value, std::uint64_t multiplicity = 1);

  const std::map<std::uint64_t, std::uint64_t>& entries() const noexcept { return entries_; }
  bool empty() const noexcept { return entries_.empty(); }
  /// Total number of copies, counting multiplicity.
  std::uint64_t size() const noexcept;

  /// prod over copies of 1/(1 - q^value).
  ProductSpec generating_spec() const;

  /// "1,3:2,4:3" style rendering (value[:multiplicity]).
  std::string to_string() const;

  bool operator==(const PartMultiset&) const = default;

 private:
  std::map<std::uint64_t, std::uint64_t> entries_;
};

enum class PeriodSource { kwong_formula, empirical };

struct PeriodInfo {
  std::uint64_t period = 1;
  unsigned b = 0;
  std::uint64_t m = 1;
  PeriodSource source = PeriodSource::kwong_formula;

  bool operator==(const PeriodInfo&) const = default;
};

unsigned ord_prime(std::uint64_t n, std::uint64_t ell);
std::uint64_t ell_free_part(std::uint64_t n, std::uint64_t ell);

/// Least b with ell^b >= sum over copies of ell^{ord_ell(n)}.
unsigned b_ell(const PartMultiset& s, std::uint64_t ell);
/// ell-free part of the lcm of the distinct part values.
std::uint64_t m_ell(const PartMultiset& s, std::uint64_t ell);

/// ell^{N + b - 1} * m. Exactly minimal for |S| >= 2 or N = 1; for a single
/// part a with N >= 2 the true minimal period is a, and the formula value is
/// a multiple of it.
PeriodInfo kwong_period(const PartMultiset& s, std::uint64_t ell, unsigned exponent);

/// True iff a_{n+d} == a_n for every 0 <= n < limit - d.
bool verify_period_prefix(const ModSeries& a, std::uint64_t d, std::size_t limit);

inline constexpr unsigned kDefaultPeriodWindow = 3;

/// Smallest divisor d of `formula_period` passing verify_period_prefix over
/// window * formula_period coefficients. A minimal period divides every
/// period of a purely periodic sequence, so only divisors need testing.
std::uint64_t empirical_min_period(const ModSeries& a, std::uint64_t formula_period,
                                   unsigned window = kDefaultPeriodWindow);

}  // namespace pcert
