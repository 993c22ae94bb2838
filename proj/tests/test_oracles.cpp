#include <doctest.h>

#include "pcert/decomposition.hpp"
#include "pcert/error.hpp"
#include "pcert/oracles.hpp"

using namespace pcert;
using namespace pcert::oracle;

namespace {

const Modulus kBig(2305843009213693951ULL, 1);

std::vector<Residue> series(const GFKind& k, std::size_t len) {
  const auto s = series_from_spec(build_spec(k), kBig, len);
  return {s.coeffs().begin(), s.coeffs().end()};
}

PartMultiset range_multiset(std::uint64_t hi) {
  PartMultiset s;
  for (std::uint64_t v = 1; v <= hi; ++v) s.add(v);
  return s;
}

}  // namespace

TEST_CASE("multiset partition counts") {
  CHECK(count_partitions_multiset(5, range_multiset(5)) == 7);
  PartMultiset s;
  s.add(1, 2);
  s.add(2, 3);
  s.add(3);
  CHECK(count_partitions_multiset(2, s) == 6);
  CHECK(count_partitions_multiset(0, s) == 1);
  CHECK(count_partitions_multiset(0, PartMultiset{}) == 1);
  CHECK(count_partitions_multiset(3, PartMultiset{}) == 0);
}

TEST_CASE("plane partition counts") {
  CHECK(count_plane_partitions_rowed(3, 3, 3) == 6);
  CHECK(count_plane_partitions_rowed(2, 2) == 3);
  CHECK(count_plane_partitions_rowed(5, 1, 1) == 1);
  CHECK(count_plane_partitions_rowed(0, 1) == 1);
  CHECK_THROWS_AS(count_plane_partitions_rowed(31, 2), ComplexityGuard);
  CHECK_THROWS_AS(count_plane_partitions_rowed(3, 0), InvalidParameter);
  CHECK(count_plane_partitions_rowed(31, 2, std::nullopt, Limits{.plane_partitions = 31}) > 0);
}

TEST_CASE("every enumerated plane partition is well formed") {
  std::size_t seen = 0;
  for_each_plane_partition(8, 3, 4, [&](const PlanePartition& pp) {
    ++seen;
    CHECK(pp.size() <= 3);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < pp.size(); ++i) {
      CHECK(pp[i].size() <= 4);
      CHECK_FALSE(pp[i].empty());
      if (i) CHECK(pp[i].size() <= pp[i - 1].size());
      for (std::size_t j = 0; j < pp[i].size(); ++j) {
        total += pp[i][j];
        if (j) CHECK(pp[i][j] <= pp[i][j - 1]);
        if (i) CHECK(pp[i][j] <= pp[i - 1][j]);
      }
    }
    CHECK(total == 8);
  });
  CHECK(seen == count_plane_partitions_rowed(8, 3, 4));
}

TEST_CASE("overpartition counts") {
  CHECK(count_overpartitions(4) == 14);
  CHECK(count_overpartitions(1) == 2);
  CHECK(count_overpartitions(0) == 1);
  CHECK_THROWS_AS(count_overpartitions(41), ComplexityGuard);
}

TEST_CASE("plane overpartition counts") {
  for (std::uint64_t k : {3, 4, 5}) CHECK(count_plane_overpartitions_rowed(3, k) == 16);
  CHECK(count_plane_overpartitions_rowed(1, 1) == 2);
  CHECK(count_plane_overpartitions_rowed(4, 1) == 14);
  CHECK_THROWS_AS(count_plane_overpartitions_rowed(13, 2), ComplexityGuard);
}

TEST_CASE("overline marking rules") {
  const PlanePartition pp{{2, 2}, {2}};
  // row rule: only the last 2 of the first row may carry a line
  CHECK_FALSE(valid_overline_marking(pp, {{true, false}, {true}}));
  // column rule: the 2 below the first column's 2 must carry a line
  CHECK_FALSE(valid_overline_marking(pp, {{false, false}, {false}}));
  CHECK(valid_overline_marking(pp, {{false, false}, {true}}));
  CHECK(valid_overline_marking(pp, {{false, true}, {true}}));
}

TEST_CASE("enumerators agree with series coefficients for n <= 25") {
  const std::size_t len = 26;
  const auto p = series(gf::Partitions{}, len);
  for (std::uint64_t n = 0; n < len; ++n) CHECK(count_partitions_multiset(n, range_multiset(std::max<std::uint64_t>(n, 1))) == p[n]);
  for (std::uint64_t m = 1; m <= 6; ++m) {
    const auto s = series(gf::MaxPart{m}, len);
    for (std::uint64_t n = 0; n < len; ++n) CHECK(count_partitions_multiset(n, range_multiset(m)) == s[n]);
  }
  PartMultiset ms;
  ms.add(1, 2);
  ms.add(2, 3);
  ms.add(3);
  const auto sm = series(gf::Multiset{ms}, len);
  for (std::uint64_t n = 0; n < len; ++n) CHECK(count_partitions_multiset(n, ms) == sm[n]);

  const auto pl = series(gf::Plane{}, len);
  for (std::uint64_t n = 0; n < len; ++n) CHECK(count_plane_partitions_rowed(n, std::max<std::uint64_t>(n, 1)) == pl[n]);
  for (std::uint64_t r = 1; r <= 5; ++r) {
    const auto s = series(gf::PlaneRowed{r}, len);
    for (std::uint64_t n = 0; n < len; ++n) CHECK(count_plane_partitions_rowed(n, r) == s[n]);
  }
  for (std::uint64_t r = 1; r <= 4; ++r) {
    for (std::uint64_t c = 1; c <= 4; ++c) {
      const auto s = series(gf::PlaneBox{r, c}, len);
      for (std::uint64_t n = 0; n < len; ++n) CHECK(count_plane_partitions_rowed(n, r, c) == s[n]);
    }
  }
  const auto op = series(gf::Overpartitions{}, len);
  for (std::uint64_t n = 0; n < len; ++n) CHECK(count_overpartitions(n) == op[n]);
}

TEST_CASE("plane overpartition enumerator matches the series for n <= 10, k <= 4") {
  for (std::uint64_t k = 1; k <= 4; ++k) {
    const auto s = series(gf::OverplaneRowed{k}, 11);
    for (std::uint64_t n = 0; n <= 10; ++n) {
      INFO("k = " << k << ", n = " << n);
      CHECK(count_plane_overpartitions_rowed(n, k) == s[n]);
    }
  }
}

TEST_CASE("single-row plane overpartitions are overpartitions") {
  for (std::uint64_t n = 0; n <= 12; ++n) CHECK(count_plane_overpartitions_rowed(n, 1) == count_overpartitions(n));
}

TEST_CASE("row bound saturates at n") {
  for (std::uint64_t n = 1; n <= 12; ++n) {
    const auto pl = count_plane_partitions_rowed(n, n);
    for (std::uint64_t r = n; r <= n + 3; ++r) CHECK(count_plane_partitions_rowed(n, r) == pl);
  }
}
