#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcert/decomposition.hpp"
#include "pcert/prover.hpp"
#include "pcert/search.hpp"

namespace pcert {

/// A family exactly as written in the file, before canonicalization.
struct FamilyDecl {
  std::vector<std::uint64_t> left;
  std::vector<std::uint64_t> right;  // empty = "== 0"
  bool operator==(const FamilyDecl&) const = default;
};

struct SearchBlock {
  std::uint64_t max_terms = 2;
  bool allow_zero_right = true;
  bool operator==(const SearchBlock&) const = default;
};

/// Line-oriented `key = value` document:
///
///   prime = 3
///   exponent = 1
///   delta = 3
///   target = plane_rowed(3)          # or: target = raw: (1-q^1)^-1 ...
///   family = {2} == 0
///   max_terms = 2                    # optional search block
///   allow_zero_right = true
///   validation_length = 500          # optional overrides
///   cap = 1000000
///   n_max = 100
///   length = 60
struct InstanceFile {
  std::uint64_t prime = 2;
  unsigned exponent = 1;
  std::uint64_t delta = 1;
  GFKind target = gf::Partitions{};
  std::vector<FamilyDecl> families;
  std::optional<SearchBlock> search;
  std::optional<std::size_t> validation_length;
  std::optional<std::uint64_t> cap;
  std::optional<std::uint64_t> n_max;
  std::optional<std::size_t> length;

  Modulus modulus() const { return Modulus(prime, exponent); }
  std::vector<CongruenceFamily> canonical_families() const;
  SearchSpace search_space() const;

  bool operator==(const InstanceFile&) const = default;
};

/// Strict parse: unknown or repeated keys and missing required keys are
/// errors. Throws ParseError (with line/column) or SemanticError.
InstanceFile parse_instance_file(std::string_view text);
InstanceFile load_instance_file(const std::string& path);

std::string render_instance_file(const InstanceFile& inst);

/// `NAME[(INT,...)]` or `raw: SPEC`.
GFKind parse_target(std::string_view text);
ProductSpec parse_spec(std::string_view text);
/// `v[:mult],...`
PartMultiset parse_multiset(std::string_view text);

}  // namespace pcert
