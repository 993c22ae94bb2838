#pragma once

// Independent oracles shared by the test binaries. Nothing here calls the
// library's expansion kernels.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pcert/product_spec.hpp"

namespace testsupport {

using BigInt = boost::multiprecision::cpp_int;
using BigSeries = std::vector<BigInt>;

inline BigSeries big_mul(const BigSeries& a, const BigSeries& b) {
  const std::size_t len = std::min(a.size(), b.size());
  BigSeries out(len, 0);
  for (std::size_t i = 0; i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < len; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Inverse over Z; requires constant term +-1.
inline BigSeries big_inverse(const BigSeries& a) {
  BigSeries c(a.size(), 0);
  const BigInt a0 = a[0];
  c[0] = a0;  // a0 = +-1 is its own inverse
  for (std::size_t k = 1; k < a.size(); ++k) {
    BigInt s = 0;
    for (std::size_t i = 1; i <= k; ++i) s += a[i] * c[k - i];
    c[k] = -a0 * s;
  }
  return c;
}

inline BigSeries big_pow(BigSeries base, std::int64_t e, std::size_t len) {
  BigSeries out(len, 0);
  out[0] = 1;
  if (e < 0) {
    base = big_inverse(base);
    e = -e;
  }
  for (std::int64_t i = 0; i < e; ++i) out = big_mul(out, base);
  return out;
}

inline BigSeries binomial_series(int sign, std::uint64_t base, std::size_t len) {
  BigSeries b(len, 0);
  b[0] = 1;
  if (base < len) b[base] = sign;
  return b;
}

// Dense expansion over unbounded integers; tails expanded term by term.
inline BigSeries big_expand(const pcert::ProductSpec& spec, std::size_t len) {
  BigSeries acc(len, 0);
  acc[0] = 1;
  for (const auto& f : spec.factors) {
    if (const auto* b = std::get_if<pcert::BinomialFactor>(&f)) {
      acc = big_mul(acc, big_pow(binomial_series(static_cast<int>(b->sign), b->base, len), b->exponent, len));
    } else if (const auto* p = std::get_if<pcert::PolyFactor>(&f)) {
      BigSeries poly(len, 0);
      for (std::size_t i = 0; i < p->coeffs.size() && i < len; ++i) poly[i] = p->coeffs[i];
      acc = big_mul(acc, big_pow(poly, p->exponent, len));
    } else {
      const auto& t = std::get<pcert::TailFamily>(f);
      for (std::uint64_t n = t.from; t.base_at(n) < len; ++n) {
        acc = big_mul(acc, big_pow(binomial_series(static_cast<int>(t.sign), t.base_at(n), len), t.exponent_at(n), len));
      }
    }
  }
  return acc;
}

inline std::vector<std::uint64_t> reduce(const BigSeries& s, std::uint64_t m) {
  std::vector<std::uint64_t> out;
  for (const auto& x : s) {
    BigInt r = x % m;
    if (r < 0) r += m;
    out.push_back(static_cast<std::uint64_t>(r));
  }
  return out;
}

// Random spec whose every negative-exponent factor has constant term +-1.
inline pcert::ProductSpec random_spec(std::mt19937_64& rng, bool with_tail = true) {
  auto uni = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
  pcert::ProductSpec spec;
  const int n_factors = static_cast<int>(uni(1, 5));
  for (int i = 0; i < n_factors; ++i) {
    const auto kind = uni(0, with_tail ? 5 : 3);
    const auto sign = uni(0, 1) ? pcert::Sign::plus : pcert::Sign::minus;
    if (kind <= 2) {
      std::int64_t e = uni(-3, 3);
      if (e == 0) e = -1;
      spec.factors.emplace_back(pcert::BinomialFactor{sign, static_cast<std::uint64_t>(uni(1, 12)), e});
    } else if (kind == 3) {
      pcert::PolyFactor p;
      p.coeffs = {uni(0, 1) ? 1 : -1};
      for (int k = 0; k < uni(1, 4); ++k) p.coeffs.push_back(uni(-3, 3));
      p.exponent = uni(-2, 2);
      spec.factors.emplace_back(p);
    } else {
      pcert::TailFamily t;
      t.sign = sign;
      t.base_mul = static_cast<std::uint64_t>(uni(1, 3));
      t.base_add = uni(0, 2);
      t.from = static_cast<std::uint64_t>(uni(1, 4));
      if (uni(0, 1)) {
        t.exp_mul = 0;
        t.exp_add = uni(-2, 2);
        if (t.exp_add == 0) t.exp_add = -1;
      } else {
        t.exp_mul = -1;
        t.exp_add = 0;
      }
      spec.factors.emplace_back(t);
    }
  }
  return spec;
}

inline std::string instance_path(const std::string& name) { return std::string(PCERT_INSTANCE_DIR) + "/" + name; }

}  // namespace testsupport
