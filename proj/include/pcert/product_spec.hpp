#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "pcert/series.hpp"

namespace pcert {

enum class Sign : int { minus = -1, plus = 1 };

/// (1 + sign*q^base)^exponent; a negative exponent places it in the denominator.
struct BinomialFactor {
  Sign sign = Sign::minus;
  std::uint64_t base = 1;
  std::int64_t exponent = -1;

  bool operator==(const BinomialFactor&) const = default;
};

/// An explicit finitely supported polynomial raised to an integer power.
struct PolyFactor {
  std::vector<std::int64_t> coeffs{1};
  std::int64_t exponent = 1;

  bool operator==(const PolyFactor&) const = default;
};

/// prod_{n >= from} (1 + sign*q^{base_mul*n + base_add})^{exp_mul*n + exp_add}.
struct TailFamily {
  Sign sign = Sign::minus;
  std::uint64_t base_mul = 1;
  std::int64_t base_add = 0;
  std::int64_t exp_mul = 0;
  std::int64_t exp_add = -1;
  std::uint64_t from = 1;

  std::uint64_t base_at(std::uint64_t n) const {
    return static_cast<std::uint64_t>(static_cast<std::int64_t>(base_mul * n) + base_add);
  }
  std::int64_t exponent_at(std::uint64_t n) const {
    return exp_mul * static_cast<std::int64_t>(n) + exp_add;
  }
  bool constant_exponent() const { return exp_mul == 0; }

  bool operator==(const TailFamily&) const = default;
};

using Factor = std::variant<BinomialFactor, PolyFactor, TailFamily>;

struct ProductSpec {
  std::vector<Factor> factors;

  bool empty() const { return factors.empty(); }
  bool operator==(const ProductSpec&) const = default;
};

/// Throws InvalidParameter when a factor violates its structural invariants.
void validate_spec(const ProductSpec& spec);

/// First `length` coefficients of the product, reduced modulo l^N.
ModSeries series_from_spec(const ProductSpec& spec, const Modulus& modulus, std::size_t length);

/// Largest base among finite factors (binomial bases, polynomial degrees); 0 if none.
std::uint64_t max_finite_base(const ProductSpec& spec);

/// Binomial factors of a tail with base below `length`.
std::vector<BinomialFactor> materialize(const TailFamily& tail, std::size_t length);

std::string render_factor(const Factor& f);
std::string render_spec(const ProductSpec& spec);

}  // namespace pcert
