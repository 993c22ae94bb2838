#pragma once

#include <cstdint>
#include <vector>

#include "pcert/prover.hpp"

namespace pcert {

inline constexpr std::uint64_t kDefaultCandidateCap = 1'000'000;

struct SearchSpace {
  GFKind target;
  Modulus modulus;
  std::uint64_t delta = 1;
  std::uint64_t max_terms = 2;  // s + t, a "== 0" right side counting as one term
  bool allow_zero_right = true;
  std::uint64_t cap = kDefaultCandidateCap;
};

struct SearchOptions {
  unsigned threads = 1;
  /// Drop families implied by earlier emitted ones (sums/differences mod l^N).
  bool drop_redundant = false;
  ProverOptions prover;
};

/// Number of canonical families in the space, from the generating polynomial
/// (1 + sum_i x^i + sum_j y^j)^delta; saturates at UINT64_MAX.
std::uint64_t candidate_count(const SearchSpace& space);

/// Every canonical family of the space, in canonical order.
/// Throws SpaceTooLarge when candidate_count exceeds space.cap.
std::vector<CongruenceFamily> enumerate_candidates(const SearchSpace& space);

/// PROVED certificates of all candidates, in canonical order. The target is
/// decomposed and expanded once; throws SplitFailed when the space is not
/// amenable to the finite check.
std::vector<Certificate> search_certified(const SearchSpace& space, const SearchOptions& options = {});

/// Families whose coefficient vector lies in the Z/l^N-span of earlier ones
/// are removed; the first family of each independent direction is kept.
std::vector<Certificate> drop_implied(std::vector<Certificate> certificates);

}  // namespace pcert
