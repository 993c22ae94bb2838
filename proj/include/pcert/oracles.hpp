#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "pcert/periodicity.hpp"

namespace pcert::oracle {

// Brute-force counters that never touch a generating function. They exist
// to cross-check the series kernel, so they favour obviousness over speed.

struct Limits {
  std::uint64_t plane_partitions = 30;
  std::uint64_t overpartitions = 40;
  std::uint64_t plane_overpartitions = 12;
};

/// Partitions of n with parts drawn from the labelled copies of S.
std::uint64_t count_partitions_multiset(std::uint64_t n, const PartMultiset& s);

/// Plane partitions of n with at most `rows` rows and, when given, at most
/// `cols` columns. Throws ComplexityGuard above limits.plane_partitions.
std::uint64_t count_plane_partitions_rowed(std::uint64_t n, std::uint64_t rows,
                                           std::optional<std::uint64_t> cols = std::nullopt,
                                           const Limits& limits = {});

std::uint64_t count_overpartitions(std::uint64_t n, const Limits& limits = {});

/// Plane overpartitions of n with at most `rows` rows: every plane partition
/// shape is enumerated and every overline marking tested against the row
/// rule and the column rule.
std::uint64_t count_plane_overpartitions_rowed(std::uint64_t n, std::uint64_t rows,
                                               const Limits& limits = {});

using PlanePartition = std::vector<std::vector<std::uint64_t>>;

/// Visits every plane partition of n within the bounds.
void for_each_plane_partition(std::uint64_t n, std::uint64_t rows, std::optional<std::uint64_t> cols,
                              const std::function<void(const PlanePartition&)>& visit);

/// Row rule: in each row only the last occurrence of a value may be
/// overlined. Column rule: in each column the first occurrence of a value is
/// free and every later occurrence is overlined.
bool valid_overline_marking(const PlanePartition& pp, const std::vector<std::vector<bool>>& marks);

}  // namespace pcert::oracle
