#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pcert/periodicity.hpp"
#include "pcert/product_spec.hpp"

namespace pcert {

namespace gf {
struct Partitions {
  bool operator==(const Partitions&) const = default;
};
struct Plane {
  bool operator==(const Plane&) const = default;
};
struct PlaneBox {
  std::uint64_t rows = 1, cols = 1;
  bool operator==(const PlaneBox&) const = default;
};
struct PlaneRowed {
  std::uint64_t rows = 1;
  bool operator==(const PlaneRowed&) const = default;
};
/// prod_{n<ell} (1-q^n)^{-n}
struct F {
  std::uint64_t ell = 2;
  bool operator==(const F&) const = default;
};
struct Overpartitions {
  bool operator==(const Overpartitions&) const = default;
};
struct OverplaneRowed {
  std::uint64_t rows = 1;
  bool operator==(const OverplaneRowed&) const = default;
};
/// Partitions into parts of size at most m.
struct MaxPart {
  std::uint64_t m = 1;
  bool operator==(const MaxPart&) const = default;
};
struct Multiset {
  PartMultiset parts;
  bool operator==(const Multiset&) const = default;
};
struct Raw {
  ProductSpec spec;
  bool operator==(const Raw&) const = default;
};
}  // namespace gf

using GFKind = std::variant<gf::Partitions, gf::Plane, gf::PlaneBox, gf::PlaneRowed, gf::F,
                            gf::Overpartitions, gf::OverplaneRowed, gf::MaxPart, gf::Multiset,
                            gf::Raw>;

/// "plane_rowed(3)", "multiset(1,3,3)", "raw: (1-q^1)^-1"...
std::string gf_name(const GFKind& kind);

ProductSpec build_spec(const GFKind& kind);

enum class Rule {
  R1,       // (1-q^j)^{l^v} == 1 - q^{j l^v}              (mod l)
  R2,       // (1-q^j)^{l^v} == (1-q^{j l})^{l^{v-1}}      (mod l^v)
  R1Plus,   // same as R1 with (1+q^j)
  R2Plus,   // same as R2 with (1+q^j)
  R3,       // binomial expansion into a reduced polynomial
  R4,       // exact regrouping: merge, split, (1+x) = (1-x^2)/(1-x)
  Ratio,    // ((1+x)/(1-x))^{2^N} == 1                     (mod 2^N)
};

std::string rule_name(Rule r);

struct RewriteStep {
  Rule rule = Rule::R4;
  std::vector<Factor> input;
  std::vector<Factor> output;
  /// Modulus the rewrite is valid for (a multiple of the working l^N).
  std::uint64_t valid_modulus = 1;

  std::string describe() const;
  bool operator==(const RewriteStep&) const = default;
};

using Derivation = std::vector<RewriteStep>;

struct ReducedSpec {
  ProductSpec spec;
  Derivation derivation;
};

/// max(2*delta, 4*max finite base, 500)
std::size_t default_validation_length(const ProductSpec& spec, std::uint64_t delta);

/// Rewrites `spec` into a congruent one modulo l^N. Every step is checked by
/// expanding both sides to `validation_length`; a mismatch raises
/// RuleValidationFailed.
ReducedSpec reduce_spec(const ProductSpec& spec, const Modulus& modulus,
                        std::optional<std::size_t> validation_length = std::nullopt);

struct Decomposition {
  ProductSpec a;  // finite product of (1-q^b)^{-e}, e > 0
  PartMultiset a_multiset;
  ProductSpec b;  // every factor a series in q^delta
  std::uint64_t delta = 1;
  Modulus modulus;
  Derivation derivation;
  std::size_t validation_length = 0;
};

/// Splits `spec` as A(q)*B(q) (mod l^N) with A an R_k form and B supported on
/// exponents divisible by delta. Throws SplitFailed when some factor is
/// neither, CertificateFailed when the numerical B check fails.
Decomposition split_ab(const ProductSpec& spec, const Modulus& modulus, std::uint64_t delta,
                       std::optional<std::size_t> validation_length = std::nullopt);

/// beta(0) == 1 and beta(m) == 0 for every m < length with m % delta != 0.
bool validate_b_certificate(const ProductSpec& b, const Modulus& modulus, std::uint64_t delta,
                            std::size_t length);

/// True when every factor of `spec` is structurally a series in q^delta.
bool is_delta_supported(const ProductSpec& spec, std::uint64_t delta);

}  // namespace pcert
