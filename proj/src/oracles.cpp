#include "pcert/oracles.hpp"

#include <functional>
#include <string>

#include "pcert/error.hpp"

namespace pcert::oracle {

namespace {

void guard(std::uint64_t n, std::uint64_t cap, const char* what) {
  if (n > cap) {
    throw ComplexityGuard(std::string(what) + " enumeration capped at n = " + std::to_string(cap) +
                          ", got n = " + std::to_string(n));
  }
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  if (a > UINT64_MAX - b) throw ComplexityGuard("count overflows 64 bits");
  return a + b;
}

// Rows below `above`, each row non-increasing, dominated cellwise by the row above.
void extend_rows(std::uint64_t remaining, std::uint64_t rows_left, const std::vector<std::uint64_t>& above,
                 PlanePartition& pp, const std::function<void(const PlanePartition&)>& visit) {
  if (remaining == 0) {
    visit(pp);
    return;
  }
  if (rows_left == 0) return;
  std::vector<std::uint64_t> row;
  // Choose entries left to right; entry j is at most above[j] and row[j-1].
  std::function<void(std::uint64_t)> grow = [&](std::uint64_t left) {
    if (!row.empty()) {
      pp.push_back(row);
      extend_rows(left, rows_left - 1, row, pp, visit);
      pp.pop_back();
    }
    const std::size_t j = row.size();
    if (j >= above.size() || left == 0) return;
    std::uint64_t hi = std::min(above[j], left);
    if (!row.empty()) hi = std::min(hi, row.back());
    for (std::uint64_t v = 1; v <= hi; ++v) {
      row.push_back(v);
      grow(left - v);
      row.pop_back();
    }
  };
  grow(remaining);
}

}  // namespace

std::uint64_t count_partitions_multiset(std::uint64_t n, const PartMultiset& s) {
  // counts[k]: partitions of k using the labelled parts processed so far.
  std::vector<std::uint64_t> counts(n + 1, 0);
  counts[0] = 1;
  for (const auto& [value, mult] : s.entries()) {
    for (std::uint64_t copy = 0; copy < mult; ++copy) {
      for (std::uint64_t k = value; k <= n; ++k) counts[k] = checked_add(counts[k], counts[k - value]);
    }
  }
  return counts[n];
}

void for_each_plane_partition(std::uint64_t n, std::uint64_t rows, std::optional<std::uint64_t> cols,
                              const std::function<void(const PlanePartition&)>& visit) {
  if (rows < 1) throw InvalidParameter("row bound must be positive");
  PlanePartition pp;
  // A virtual row of n's above the first real row encodes the column bound.
  const std::vector<std::uint64_t> top(cols.value_or(n), n);
  extend_rows(n, rows, top, pp, visit);
}

std::uint64_t count_plane_partitions_rowed(std::uint64_t n, std::uint64_t rows, std::optional<std::uint64_t> cols,
                                           const Limits& limits) {
  guard(n, limits.plane_partitions, "plane partition");
  if (cols && *cols < 1) throw InvalidParameter("column bound must be positive");
  std::uint64_t count = 0;
  for_each_plane_partition(n, rows, cols, [&](const PlanePartition&) { ++count; });
  return count;
}

std::uint64_t count_overpartitions(std::uint64_t n, const Limits& limits) {
  guard(n, limits.overpartitions, "overpartition");
  // Walk partitions as non-increasing part lists; each distinct value may
  // carry an overline on its first occurrence.
  std::uint64_t total = 0;
  std::vector<std::uint64_t> parts;
  std::function<void(std::uint64_t, std::uint64_t)> walk = [&](std::uint64_t left, std::uint64_t max_part) {
    if (left == 0) {
      std::uint64_t distinct = 0;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i == 0 || parts[i] != parts[i - 1]) ++distinct;
      }
      total = checked_add(total, std::uint64_t{1} << distinct);
      return;
    }
    for (std::uint64_t p = std::min(left, max_part); p >= 1; --p) {
      parts.push_back(p);
      walk(left - p, p);
      parts.pop_back();
    }
  };
  walk(n, n);
  return total;
}

bool valid_overline_marking(const PlanePartition& pp, const std::vector<std::vector<bool>>& marks) {
  for (std::size_t i = 0; i < pp.size(); ++i) {
    for (std::size_t j = 0; j < pp[i].size(); ++j) {
      const std::uint64_t v = pp[i][j];
      // Row rule: an overlined entry must be the last v in its row.
      const bool last_in_row = j + 1 == pp[i].size() || pp[i][j + 1] != v;
      if (marks[i][j] && !last_in_row) return false;
      // Column rule: any v below the first v of this column is overlined.
      bool v_above = false;
      for (std::size_t k = 0; k < i; ++k) {
        if (pp[k][j] == v) v_above = true;
      }
      if (v_above && !marks[i][j]) return false;
    }
  }
  return true;
}

std::uint64_t count_plane_overpartitions_rowed(std::uint64_t n, std::uint64_t rows, const Limits& limits) {
  guard(n, limits.plane_overpartitions, "plane overpartition");
  std::uint64_t total = 0;
  for_each_plane_partition(n, rows, std::nullopt, [&](const PlanePartition& pp) {
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < pp.size(); ++i) {
      for (std::size_t j = 0; j < pp[i].size(); ++j) cells.emplace_back(i, j);
    }
    std::vector<std::vector<bool>> marks(pp.size());
    for (std::size_t i = 0; i < pp.size(); ++i) marks[i].assign(pp[i].size(), false);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << cells.size()); ++mask) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        marks[cells[c].first][cells[c].second] = (mask >> c) & 1;
      }
      if (valid_overline_marking(pp, marks)) ++total;
    }
  });
  return total;
}

}  // namespace pcert::oracle
