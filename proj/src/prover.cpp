#include "pcert/prover.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "pcert/error.hpp"

namespace pcert {

namespace {

std::string residues(const std::vector<std::uint64_t>& v) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << '}';
  return os.str();
}

Residue side_sum(const ModSeries& lambda, const std::vector<std::uint64_t>& side, std::uint64_t base) {
  const Modulus& m = lambda.modulus();
  Residue s = 0;
  for (std::uint64_t r : side) s = m.add(s, lambda[base + r]);
  return s;
}

std::optional<Witness> first_failure(const ModSeries& lambda, const CongruenceFamily& family,
                                     std::uint64_t n_end) {
  for (std::uint64_t n = 0; n < n_end; ++n) {
    const std::uint64_t base = family.delta() * n;
    const Residue l = side_sum(lambda, family.left(), base);
    const Residue r = side_sum(lambda, family.right(), base);
    if (l != r) return Witness{n, l, r};
  }
  return std::nullopt;
}

Certificate blank_certificate(const PreparedTarget& p, const CongruenceFamily& family) {
  Certificate c{.family = family,
                .target = p.target,
                .a_multiset = {},
                .kwong = p.kwong,
                .period_used = p.period_used,
                .check_bound = p.check_bound,
                .status = Status::inapplicable,
                .witness = std::nullopt,
                .reason = p.reason,
                .decomposition = p.decomposition};
  if (p.decomposition) c.a_multiset = p.decomposition->a_multiset;
  return c;
}

}  // namespace

CongruenceFamily CongruenceFamily::make(std::uint64_t delta, std::vector<std::uint64_t> left,
                                        std::vector<std::uint64_t> right, Modulus modulus) {
  if (delta < 1) throw InvalidParameter("delta must be positive");
  for (const auto* side : {&left, &right}) {
    for (std::uint64_t r : *side) {
      if (r >= delta) {
        throw InvalidParameter("residue " + std::to_string(r) + " is not below delta = " + std::to_string(delta));
      }
    }
  }
  std::sort(left.begin(), left.end());
  std::sort(right.begin(), right.end());
  std::vector<std::uint64_t> l, r;
  std::set_difference(left.begin(), left.end(), right.begin(), right.end(), std::back_inserter(l));
  std::set_difference(right.begin(), right.end(), left.begin(), left.end(), std::back_inserter(r));
  if (l.empty() && r.empty()) throw InvalidParameter("family is trivial after cancelling common residues");
  if (l.empty() || (!r.empty() && r < l)) std::swap(l, r);
  return CongruenceFamily(delta, std::move(l), std::move(r), modulus);
}

std::string CongruenceFamily::to_string() const {
  return residues(left_) + " == " + (right_.empty() ? std::string("0") : residues(right_));
}

std::string status_name(Status s) {
  switch (s) {
    case Status::proved: return "PROVED";
    case Status::counterexample: return "COUNTEREXAMPLE";
    case Status::inapplicable: return "INAPPLICABLE";
  }
  return "?";
}

PreparedTarget prepare_target(const GFKind& target, const Modulus& modulus, std::uint64_t delta,
                              const ProverOptions& options) {
  if (delta < 1) throw InvalidParameter("delta must be positive");
  PreparedTarget p{.target = target, .modulus = modulus, .delta = delta};
  const ProductSpec spec = build_spec(target);
  try {
    p.decomposition = split_ab(spec, modulus, delta, options.validation_length);
  } catch (const SplitFailed& e) {
    p.reason = std::string("split failed: ") + e.what();
    return p;
  } catch (const CertificateFailed& e) {
    p.reason = std::string("B certificate failed: ") + e.what();
    return p;
  } catch (const RuleValidationFailed& e) {
    p.reason = std::string("rewrite rejected: ") + e.what();
    return p;
  } catch (const NonUnitConstantTerm& e) {
    p.reason = std::string("non-invertible factor: ") + e.what();
    return p;
  }
  if (p.decomposition->a_multiset.empty()) {
    p.reason = "A(q) = 1 is not periodic";
    return p;
  }
  p.kwong = kwong_period(p.decomposition->a_multiset, modulus.prime(), modulus.exponent());
  p.period_used = std::lcm(p.kwong.period, delta);
  p.check_bound = p.period_used / delta;
  // lambda comes from the unreduced spec; the decomposition only shows applicability.
  p.lambda = series_from_spec(spec, modulus, static_cast<std::size_t>(p.period_used + delta));
  p.applicable = true;
  return p;
}

Certificate check_family(const PreparedTarget& prepared, const CongruenceFamily& family) {
  Certificate c = blank_certificate(prepared, family);
  if (!prepared.applicable) return c;
  if (family.delta() != prepared.delta) {
    c.reason = "family delta " + std::to_string(family.delta()) + " differs from the decomposition delta " +
               std::to_string(prepared.delta);
    return c;
  }
  if (family.modulus() != prepared.modulus) {
    c.reason = "family modulus differs from the prepared modulus";
    return c;
  }
  c.reason.clear();
  c.witness = first_failure(*prepared.lambda, family, prepared.check_bound);
  c.status = c.witness ? Status::counterexample : Status::proved;
  return c;
}

Certificate certify(const GFKind& target, const CongruenceFamily& family, const ProverOptions& options) {
  return check_family(prepare_target(target, family.modulus(), family.delta(), options), family);
}

SpotCheckResult spot_check_series(const ModSeries& lambda, const CongruenceFamily& family,
                                  std::uint64_t n_max) {
  if (n_max < 1) throw InvalidParameter("n_max must be at least 1");
  if (lambda.length() < family.delta() * n_max + family.delta()) {
    throw InvalidParameter("series too short for spot check to n = " + std::to_string(n_max));
  }
  return SpotCheckResult{n_max, first_failure(lambda, family, n_max + 1)};
}

SpotCheckResult spot_check(const GFKind& target, const CongruenceFamily& family, std::uint64_t n_max) {
  if (n_max < 1) throw InvalidParameter("n_max must be at least 1");
  const ModSeries lambda = series_from_spec(build_spec(target), family.modulus(),
                                            static_cast<std::size_t>(family.delta() * n_max + family.delta()));
  return spot_check_series(lambda, family, n_max);
}

}  // namespace pcert
