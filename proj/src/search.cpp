#include "pcert/search.hpp"

#include <algorithm>
#include <thread>

#include "pcert/error.hpp"

namespace pcert {

namespace {

using u128 = unsigned __int128;
constexpr u128 kSaturated = static_cast<u128>(1) << 120;

u128 sat_add(u128 a, u128 b) { return std::min(a + b, kSaturated); }

void sorted_multisets(std::uint64_t delta, std::size_t size, std::vector<std::uint64_t>& cur,
                      std::uint64_t lo, const std::vector<bool>& banned,
                      std::vector<std::vector<std::uint64_t>>& out) {
  if (cur.size() == size) {
    out.push_back(cur);
    return;
  }
  for (std::uint64_t r = lo; r < delta; ++r) {
    if (banned[r]) continue;
    cur.push_back(r);
    sorted_multisets(delta, size, cur, r, banned, out);
    cur.pop_back();
  }
}

std::vector<std::vector<std::uint64_t>> multisets_avoiding(std::uint64_t delta, std::size_t size,
                                                           const std::vector<bool>& banned) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> cur;
  sorted_multisets(delta, size, cur, 0, banned, out);
  return out;
}

void validate_space(const SearchSpace& space) {
  if (space.delta < 1) throw InvalidParameter("delta must be positive");
  if (space.max_terms < 1) throw InvalidParameter("max_terms must be at least 1");
}

// Z/p^N row reduction with Howell closure, for span membership.
class ModuleSpan {
 public:
  ModuleSpan(const Modulus& m, std::size_t dim) : m_(m), dim_(dim) {}

  bool contains(std::vector<Residue> v) const {
    const auto rows = howell();
    for (const auto& [col, row] : rows) {
      const Residue pivot = row[col];
      if (v[col] == 0) continue;
      if (v[col] % pivot != 0) return false;
      const Residue factor = v[col] / pivot;
      for (std::size_t j = 0; j < dim_; ++j) v[j] = m_.sub(v[j], m_.mul(factor, row[j]));
    }
    return std::all_of(v.begin(), v.end(), [](Residue x) { return x == 0; });
  }

  void add(std::vector<Residue> v) { gens_.push_back(std::move(v)); }

 private:
  unsigned valuation(Residue x) const {
    unsigned v = 0;
    while (x % m_.prime() == 0 && v < m_.exponent()) {
      x /= m_.prime();
      ++v;
    }
    return v;
  }

  // Pivot rows (column, row) with each pivot entry a power of p.
  std::vector<std::pair<std::size_t, std::vector<Residue>>> howell() const {
    std::vector<std::vector<Residue>> pending = gens_;
    std::vector<std::pair<std::size_t, std::vector<Residue>>> pivots;
    for (std::size_t col = 0; col < dim_; ++col) {
      std::size_t best = pending.size();
      unsigned best_v = m_.exponent();
      for (std::size_t i = 0; i < pending.size(); ++i) {
        if (pending[i][col] == 0) continue;
        const unsigned v = valuation(pending[i][col]);
        if (v < best_v) {
          best_v = v;
          best = i;
        }
      }
      if (best == pending.size()) continue;
      std::vector<Residue> row = pending[best];
      pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(best));
      Residue ppow = 1;
      for (unsigned i = 0; i < best_v; ++i) ppow *= m_.prime();
      const Residue unit_inv = m_.inverse(row[col] / ppow);
      for (auto& x : row) x = m_.mul(x, unit_inv);
      for (auto& other : pending) {
        if (other[col] == 0) continue;
        const Residue factor = other[col] / ppow;
        for (std::size_t j = 0; j < dim_; ++j) other[j] = m_.sub(other[j], m_.mul(factor, row[j]));
      }
      if (best_v > 0) {
        // p^{N-v} * row kills the pivot but may carry information further right.
        Residue annihilator = m_.value() / ppow;
        std::vector<Residue> extra(dim_);
        for (std::size_t j = 0; j < dim_; ++j) extra[j] = m_.mul(annihilator, row[j]);
        if (std::any_of(extra.begin(), extra.end(), [](Residue x) { return x != 0; })) {
          pending.push_back(std::move(extra));
        }
      }
      pivots.emplace_back(col, std::move(row));
    }
    return pivots;
  }

  Modulus m_;
  std::size_t dim_;
  std::vector<std::vector<Residue>> gens_;
};

}  // namespace

std::uint64_t candidate_count(const SearchSpace& space) {
  validate_space(space);
  const std::size_t max_terms = static_cast<std::size_t>(space.max_terms);
  // dp[s][t]: ordered pairs of disjoint multisets with sizes s, t.
  std::vector<std::vector<u128>> dp(max_terms + 1, std::vector<u128>(max_terms + 1, 0));
  dp[0][0] = 1;
  for (std::uint64_t r = 0; r < space.delta; ++r) {
    auto next = dp;
    for (std::size_t s = 0; s <= max_terms; ++s) {
      for (std::size_t t = 0; s + t <= max_terms; ++t) {
        if (dp[s][t] == 0) continue;
        for (std::size_t i = 1; s + i + t <= max_terms; ++i) next[s + i][t] = sat_add(next[s + i][t], dp[s][t]);
        for (std::size_t j = 1; s + t + j <= max_terms; ++j) next[s][t + j] = sat_add(next[s][t + j], dp[s][t]);
      }
    }
    dp.swap(next);
  }
  u128 zero_families = 0, ordered_pairs = 0;
  for (std::size_t s = 1; s <= max_terms; ++s) {
    if (space.allow_zero_right && s + 1 <= max_terms) zero_families = sat_add(zero_families, dp[s][0]);
    for (std::size_t t = 1; s + t <= max_terms; ++t) ordered_pairs = sat_add(ordered_pairs, dp[s][t]);
  }
  const u128 total = sat_add(zero_families, ordered_pairs / 2);
  return total >= kSaturated ? UINT64_MAX : static_cast<std::uint64_t>(total);
}

std::vector<CongruenceFamily> enumerate_candidates(const SearchSpace& space) {
  const std::uint64_t count = candidate_count(space);
  if (count > space.cap) {
    throw SpaceTooLarge("search space has " + std::to_string(count) + " candidates, above the cap of " +
                        std::to_string(space.cap));
  }
  const std::size_t max_terms = static_cast<std::size_t>(space.max_terms);
  const std::vector<bool> none(space.delta, false);
  std::vector<CongruenceFamily> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::size_t s = 1; s <= max_terms; ++s) {
    for (const auto& left : multisets_avoiding(space.delta, s, none)) {
      if (space.allow_zero_right && s + 1 <= max_terms) {
        out.push_back(CongruenceFamily::make(space.delta, left, {}, space.modulus));
      }
      std::vector<bool> banned(space.delta, false);
      for (std::uint64_t r : left) banned[r] = true;
      for (std::size_t t = 1; s + t <= max_terms; ++t) {
        for (const auto& right : multisets_avoiding(space.delta, t, banned)) {
          if (left < right) out.push_back(CongruenceFamily::make(space.delta, left, right, space.modulus));
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Certificate> search_certified(const SearchSpace& space, const SearchOptions& options) {
  const auto candidates = enumerate_candidates(space);
  const PreparedTarget prepared = prepare_target(space.target, space.modulus, space.delta, options.prover);
  if (!prepared.applicable) throw SplitFailed("search space is not certifiable: " + prepared.reason);

  std::vector<std::optional<Certificate>> results(candidates.size());
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(candidates.size())));
  auto worker = [&](unsigned id) {
    for (std::size_t i = id; i < candidates.size(); i += threads) {
      Certificate c = check_family(prepared, candidates[i]);
      if (c.proved()) results[i] = std::move(c);
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  }

  std::vector<Certificate> proved;
  for (auto& r : results) {
    if (r) proved.push_back(std::move(*r));
  }
  if (options.drop_redundant) proved = drop_implied(std::move(proved));
  return proved;
}

std::vector<Certificate> drop_implied(std::vector<Certificate> certificates) {
  if (certificates.empty()) return certificates;
  const Modulus& m = certificates.front().family.modulus();
  const auto dim = static_cast<std::size_t>(certificates.front().family.delta());
  ModuleSpan span(m, dim);
  std::vector<Certificate> kept;
  for (auto& c : certificates) {
    std::vector<Residue> v(dim, 0);
    for (std::uint64_t a : c.family.left()) v[a] = m.add(v[a], 1);
    for (std::uint64_t b : c.family.right()) v[b] = m.sub(v[b], 1);
    if (span.contains(v)) continue;
    span.add(v);
    kept.push_back(std::move(c));
  }
  return kept;
}

}  // namespace pcert
