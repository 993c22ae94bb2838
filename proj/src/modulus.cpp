#include "pcert/modulus.hpp"

#include <array>

#include "pcert/error.hpp"

namespace pcert {

namespace {

using u128 = unsigned __int128;

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = static_cast<std::uint64_t>(u128(result) * base % m);
    base = static_cast<std::uint64_t>(u128(base) * base % m);
    exp >>= 1;
  }
  return result;
}

constexpr std::uint64_t kMaxModulus = std::uint64_t{1} << 62;

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  constexpr std::array<std::uint64_t, 12> bases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : bases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : bases) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = static_cast<std::uint64_t>(u128(x) * x % n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Modulus::Modulus(std::uint64_t prime, unsigned exponent) : prime_(prime), exponent_(exponent), value_(1) {
  if (!is_prime(prime)) {
    throw InvalidParameter("modulus base " + std::to_string(prime) + " is not prime");
  }
  if (exponent < 1) throw InvalidParameter("modulus exponent must be at least 1");
  for (unsigned i = 0; i < exponent; ++i) {
    if (value_ >= (kMaxModulus + prime - 1) / prime) {
      throw InvalidParameter("modulus " + std::to_string(prime) + "^" + std::to_string(exponent) +
                             " does not stay below 2^62");
    }
    value_ *= prime;
  }
}

Residue Modulus::reduce(std::int64_t x) const noexcept {
  auto m = static_cast<std::int64_t>(value_);
  std::int64_t r = x % m;
  return static_cast<Residue>(r < 0 ? r + m : r);
}

Residue Modulus::inverse(Residue a) const {
  if (!is_unit(a)) {
    throw NonUnitConstantTerm(std::to_string(a) + " is not a unit modulo " + std::to_string(value_));
  }
  // Extended Euclid on signed 128-bit values.
  __int128 r0 = static_cast<__int128>(value_), r1 = static_cast<__int128>(a % value_);
  __int128 t0 = 0, t1 = 1;
  while (r1 != 0) {
    __int128 q = r0 / r1;
    __int128 tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  __int128 m = static_cast<__int128>(value_);
  t0 %= m;
  if (t0 < 0) t0 += m;
  return static_cast<Residue>(t0);
}

std::string Modulus::to_string() const {
  if (exponent_ == 1) return std::to_string(prime_);
  return std::to_string(prime_) + "^" + std::to_string(exponent_) + " = " + std::to_string(value_);
}

}  // namespace pcert
