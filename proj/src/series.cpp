#include "pcert/series.hpp"

#include <algorithm>
#include <string>

#include "pcert/error.hpp"

namespace pcert {

namespace {

void require_same_modulus(const ModSeries& a, const ModSeries& b) {
  if (a.modulus() != b.modulus()) {
    throw ModulusMismatch("series moduli differ: " + a.modulus().to_string() + " vs " +
                          b.modulus().to_string());
  }
}

}  // namespace

ModSeries::ModSeries(Modulus modulus, std::vector<Residue> coeffs)
    : modulus_(modulus), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidParameter("series length must be at least 1");
  for (auto& c : coeffs_) c = modulus_.reduce_unsigned(c);
}

ModSeries ModSeries::from_integers(Modulus modulus, std::span<const std::int64_t> values) {
  std::vector<Residue> coeffs(values.size());
  std::transform(values.begin(), values.end(), coeffs.begin(),
                 [&](std::int64_t v) { return modulus.reduce(v); });
  return ModSeries(modulus, std::move(coeffs));
}

ModSeries ModSeries::unit(Modulus modulus, std::size_t length) {
  std::vector<Residue> coeffs(length, 0);
  if (!coeffs.empty()) coeffs[0] = 1 % modulus.value();
  return ModSeries(modulus, std::move(coeffs));
}

ModSeries ModSeries::zero(Modulus modulus, std::size_t length) {
  return ModSeries(modulus, std::vector<Residue>(length, 0));
}

ModSeries ModSeries::truncated(std::size_t length) const {
  if (length > coeffs_.size()) {
    throw IndexOutOfRange("cannot extend a series of length " + std::to_string(coeffs_.size()) +
                          " to " + std::to_string(length));
  }
  return ModSeries(modulus_, std::vector<Residue>(coeffs_.begin(), coeffs_.begin() + length));
}

ModSeries series_mul(const ModSeries& a, const ModSeries& b) {
  require_same_modulus(a, b);
  const Modulus& m = a.modulus();
  const std::size_t len = std::min(a.length(), b.length());
  const unsigned __int128 mod = m.value();
  // Reduce the 128-bit accumulator before it can overflow.
  const unsigned __int128 limit = static_cast<unsigned __int128>(1) << 126;
  std::vector<Residue> out(len);
  for (std::size_t k = 0; k < len; ++k) {
    unsigned __int128 acc = 0;
    for (std::size_t i = 0; i <= k; ++i) {
      if (a[i] == 0 || b[k - i] == 0) continue;
      acc += static_cast<unsigned __int128>(a[i]) * b[k - i];
      if (acc >= limit) acc %= mod;
    }
    out[k] = static_cast<Residue>(acc % mod);
  }
  return ModSeries(m, std::move(out));
}

ModSeries series_add(const ModSeries& a, const ModSeries& b) {
  require_same_modulus(a, b);
  const std::size_t len = std::min(a.length(), b.length());
  std::vector<Residue> out(len);
  for (std::size_t k = 0; k < len; ++k) out[k] = a.modulus().add(a[k], b[k]);
  return ModSeries(a.modulus(), std::move(out));
}

ModSeries series_inverse(const ModSeries& a) {
  const Modulus& m = a.modulus();
  const Residue inv0 = m.inverse(a[0]);
  const Residue minus_inv0 = m.neg(inv0);
  std::vector<Residue> c(a.length(), 0);
  c[0] = inv0;
  for (std::size_t k = 1; k < c.size(); ++k) {
    Residue acc = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      if (a[i] != 0) acc = m.add(acc, m.mul(a[i], c[k - i]));
    }
    c[k] = m.mul(minus_inv0, acc);
  }
  return ModSeries(m, std::move(c));
}

Residue coefficient(const ModSeries& a, std::size_t n) {
  if (n >= a.length()) {
    throw IndexOutOfRange("coefficient index " + std::to_string(n) + " outside series of length " +
                          std::to_string(a.length()));
  }
  return a[n];
}

}  // namespace pcert
