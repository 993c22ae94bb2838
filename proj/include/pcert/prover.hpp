#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pcert/decomposition.hpp"
#include "pcert/periodicity.hpp"
#include "pcert/series.hpp"

namespace pcert {

/// sum_{a in left} c(delta*n + a) == sum_{b in right} c(delta*n + b)  (mod l^N).
/// An empty right side means "== 0". Only canonical families can be built.
class CongruenceFamily {
 public:
  /// Sorts both sides, cancels common residues, orients the pair (an empty
  /// side goes right, otherwise the lexicographically smaller side is left).
  /// Throws InvalidParameter on a residue >= delta or a trivial family.
  static CongruenceFamily make(std::uint64_t delta, std::vector<std::uint64_t> left,
                               std::vector<std::uint64_t> right, Modulus modulus);

  std::uint64_t delta() const noexcept { return delta_; }
  const std::vector<std::uint64_t>& left() const noexcept { return left_; }
  const std::vector<std::uint64_t>& right() const noexcept { return right_; }
  const Modulus& modulus() const noexcept { return modulus_; }
  /// Number of terms, the "0" right side counting as one.
  std::size_t terms() const noexcept { return left_.size() + std::max<std::size_t>(right_.size(), 1); }

  /// e.g. "{0,1} == {3}" or "{2} == 0"
  std::string to_string() const;

  bool operator==(const CongruenceFamily&) const = default;
  /// Canonical order: by left side, then right side.
  bool operator<(const CongruenceFamily& o) const {
    return std::tie(left_, right_) < std::tie(o.left_, o.right_);
  }

 private:
  CongruenceFamily(std::uint64_t delta, std::vector<std::uint64_t> left,
                   std::vector<std::uint64_t> right, Modulus modulus)
      : delta_(delta), left_(std::move(left)), right_(std::move(right)), modulus_(modulus) {}

  std::uint64_t delta_;
  std::vector<std::uint64_t> left_;
  std::vector<std::uint64_t> right_;
  Modulus modulus_;
};

enum class Status { proved, counterexample, inapplicable };

std::string status_name(Status s);

struct Witness {
  std::uint64_t n = 0;
  Residue left_sum = 0;
  Residue right_sum = 0;

  bool operator==(const Witness&) const = default;
};

struct Certificate {
  CongruenceFamily family;
  GFKind target;
  PartMultiset a_multiset;
  PeriodInfo kwong;                 // period of A from its multiset
  std::uint64_t period_used = 0;    // lcm(kwong.period, delta)
  std::uint64_t check_bound = 0;    // period_used / delta
  Status status = Status::inapplicable;
  std::optional<Witness> witness;
  std::string reason;               // set when inapplicable
  std::optional<Decomposition> decomposition;

  bool proved() const { return status == Status::proved; }
};

/// Everything about a (target, modulus, delta) triple that candidate
/// families share: the decomposition, the period and the expanded lambda.
struct PreparedTarget {
  GFKind target;
  Modulus modulus;
  std::uint64_t delta = 1;
  bool applicable = false;
  std::string reason;
  std::optional<Decomposition> decomposition;
  PeriodInfo kwong;
  std::uint64_t period_used = 0;
  std::uint64_t check_bound = 0;
  std::optional<ModSeries> lambda;  // length period_used + delta
};

struct ProverOptions {
  std::optional<std::size_t> validation_length;
};

PreparedTarget prepare_target(const GFKind& target, const Modulus& modulus, std::uint64_t delta,
                              const ProverOptions& options = {});

/// Checks one family against a prepared target; no expansion happens here.
Certificate check_family(const PreparedTarget& prepared, const CongruenceFamily& family);

Certificate certify(const GFKind& target, const CongruenceFamily& family,
                    const ProverOptions& options = {});

struct SpotCheckResult {
  std::uint64_t n_max = 0;
  std::optional<Witness> failure;

  bool ok() const { return !failure.has_value(); }
};

/// Direct check of every 0 <= n <= n_max on an expansion of length
/// delta*n_max + delta, with no periodicity argument.
SpotCheckResult spot_check(const GFKind& target, const CongruenceFamily& family, std::uint64_t n_max);

/// Same check on an already expanded series (length >= delta*n_max + delta).
SpotCheckResult spot_check_series(const ModSeries& lambda, const CongruenceFamily& family,
                                  std::uint64_t n_max);

}  // namespace pcert
