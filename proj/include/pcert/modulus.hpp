#pragma once

#include <cstdint>
#include <string>

namespace pcert {

using Residue = std::uint64_t;

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n);

/// A prime power l^N. The value is kept below 2^62 so sums of two residues
/// never overflow and products fit in 128 bits.
class Modulus {
 public:
  Modulus(std::uint64_t prime, unsigned exponent);

  std::uint64_t prime() const noexcept { return prime_; }
  unsigned exponent() const noexcept { return exponent_; }
  std::uint64_t value() const noexcept { return value_; }

  Residue reduce(std::int64_t x) const noexcept;
  Residue reduce_unsigned(std::uint64_t x) const noexcept { return x % value_; }

  Residue add(Residue a, Residue b) const noexcept {
    Residue s = a + b;
    return s >= value_ ? s - value_ : s;
  }
  Residue sub(Residue a, Residue b) const noexcept {
    return a >= b ? a - b : a + value_ - b;
  }
  Residue neg(Residue a) const noexcept { return a == 0 ? 0 : value_ - a; }
  Residue mul(Residue a, Residue b) const noexcept {
    return static_cast<Residue>(static_cast<unsigned __int128>(a) * b % value_);
  }

  bool is_unit(Residue a) const noexcept { return a % prime_ != 0; }
  /// Inverse of a unit; throws NonUnitConstantTerm otherwise.
  Residue inverse(Residue a) const;

  std::string to_string() const;

  bool operator==(const Modulus&) const = default;

 private:
  std::uint64_t prime_;
  unsigned exponent_;
  std::uint64_t value_;
};

}  // namespace pcert
