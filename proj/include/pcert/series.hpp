#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pcert/modulus.hpp"

namespace pcert {

/// Truncated power series c_0 + c_1 q + ... + c_{L-1} q^{L-1} with every
/// coefficient stored reduced into [0, l^N).
class ModSeries {
 public:
  ModSeries(Modulus modulus, std::vector<Residue> coeffs);

  static ModSeries from_integers(Modulus modulus, std::span<const std::int64_t> values);
  static ModSeries unit(Modulus modulus, std::size_t length);
  static ModSeries zero(Modulus modulus, std::size_t length);

  const Modulus& modulus() const noexcept { return modulus_; }
  std::size_t length() const noexcept { return coeffs_.size(); }
  std::span<const Residue> coeffs() const noexcept { return coeffs_; }

  /// Unchecked access; see coefficient() for the bounds-checked form.
  Residue operator[](std::size_t n) const noexcept { return coeffs_[n]; }

  /// First `length` coefficients; length must not exceed the current one.
  ModSeries truncated(std::size_t length) const;

  bool operator==(const ModSeries&) const = default;

 private:
  Modulus modulus_;
  std::vector<Residue> coeffs_;
};

ModSeries series_mul(const ModSeries& a, const ModSeries& b);
ModSeries series_add(const ModSeries& a, const ModSeries& b);
ModSeries series_inverse(const ModSeries& a);
Residue coefficient(const ModSeries& a, std::size_t n);

}  // namespace pcert
