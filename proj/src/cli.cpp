#include "pcert/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <iomanip>
#include <json.hpp>
#include <ostream>
#include <set>

#include "pcert/error.hpp"
#include "pcert/instance.hpp"
#include "pcert/oracles.hpp"
#include "pcert/search.hpp"

namespace pcert {

namespace {

using nlohmann::json;

// 2^61 - 1: large enough that exact counts in the oracle range never wrap.
constexpr std::uint64_t kOraclePrime = 2305843009213693951ULL;

struct CommonFlags {
  std::string instance;
  bool json = false;
  std::optional<std::size_t> length;
  std::optional<std::uint64_t> n_max;
  std::optional<std::uint64_t> max_terms;
  std::optional<std::uint64_t> cap;
  unsigned threads = 1;
};

InstanceFile require_instance(const CommonFlags& flags) {
  if (flags.instance.empty()) throw UsageError("--instance FILE is required");
  return load_instance_file(flags.instance);
}

ProverOptions prover_options(const InstanceFile& inst) { return ProverOptions{inst.validation_length}; }

std::string residue_list(const std::vector<std::uint64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

json witness_json(const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return json{{"n", w->n}, {"left", w->left_sum}, {"right", w->right_sum}};
}

json certificate_json(const Certificate& c) {
  json derivation = json::array();
  if (c.decomposition) {
    for (const auto& step : c.decomposition->derivation) derivation.push_back(step.describe());
  }
  json doc{{"status", status_name(c.status)},
           {"prime", c.family.modulus().prime()},
           {"exponent", c.family.modulus().exponent()},
           {"delta", c.family.delta()},
           {"family", c.family.to_string()},
           {"target", gf_name(c.target)},
           {"period", c.period_used},
           {"check_bound", c.check_bound},
           {"witness", witness_json(c.witness)},
           {"derivation", derivation}};
  if (c.status != Status::inapplicable) {
    doc["a_multiset"] = c.a_multiset.to_string();
    doc["a_period"] = c.kwong.period;
  }
  if (!c.reason.empty()) doc["reason"] = c.reason;
  return doc;
}

void print_certificate(const Certificate& c, std::ostream& out) {
  const Modulus& m = c.family.modulus();
  out << "target       " << gf_name(c.target) << '\n'
      << "modulus      " << m.to_string() << '\n'
      << "delta        " << c.family.delta() << '\n'
      << "family       " << c.family.to_string() << '\n';
  if (c.status != Status::inapplicable) {
    out << "A multiset   {" << c.a_multiset.to_string() << "}\n"
        << "period       " << c.period_used << " (A alone: " << c.kwong.period << ")\n"
        << "check bound  n < " << c.check_bound << '\n';
    if (c.decomposition) {
      out << "A            " << render_spec(c.decomposition->a) << '\n'
          << "B            " << render_spec(c.decomposition->b) << '\n';
      for (const auto& step : c.decomposition->derivation) out << "  " << step.describe() << '\n';
    }
  } else {
    out << "period       " << c.period_used << '\n' << "check bound  " << c.check_bound << '\n';
  }
  out << "status       " << status_name(c.status) << '\n';
  if (c.witness) {
    out << "witness      n = " << c.witness->n << ": left " << c.witness->left_sum << ", right "
        << c.witness->right_sum << '\n';
  }
  if (!c.reason.empty()) out << "reason       " << c.reason << '\n';
}

int exit_code_for(const std::vector<Certificate>& certs) {
  int code = kExitOk;
  for (const auto& c : certs) {
    if (c.status == Status::inapplicable) return kExitInapplicable;
    if (c.status == Status::counterexample) code = kExitFailed;
  }
  return code;
}

int cmd_certify(const CommonFlags& flags, std::ostream& out) {
  const InstanceFile inst = require_instance(flags);
  const auto families = inst.canonical_families();
  if (families.empty()) throw UsageError("instance declares no family to certify");
  const PreparedTarget prepared = prepare_target(inst.target, inst.modulus(), inst.delta, prover_options(inst));
  std::vector<Certificate> certs;
  for (const auto& f : families) certs.push_back(check_family(prepared, f));
  if (flags.json) {
    json doc = json::array();
    for (const auto& c : certs) doc.push_back(certificate_json(c));
    out << (certs.size() == 1 ? doc.front() : doc).dump(2) << '\n';
  } else {
    for (std::size_t i = 0; i < certs.size(); ++i) {
      if (i) out << '\n';
      print_certificate(certs[i], out);
    }
  }
  return exit_code_for(certs);
}

int cmd_spot_check(const CommonFlags& flags, std::ostream& out) {
  const InstanceFile inst = require_instance(flags);
  const auto families = inst.canonical_families();
  if (families.empty()) throw UsageError("instance declares no family to check");
  const std::uint64_t n_max = flags.n_max.value_or(inst.n_max.value_or(100));
  if (n_max < 1) throw UsageError("--n-max must be at least 1");
  const ModSeries lambda = series_from_spec(build_spec(inst.target), inst.modulus(),
                                            static_cast<std::size_t>(inst.delta * n_max + inst.delta));
  int code = kExitOk;
  json doc = json::array();
  for (const auto& f : families) {
    const SpotCheckResult r = spot_check_series(lambda, f, n_max);
    if (!r.ok()) code = kExitFailed;
    if (flags.json) {
      doc.push_back({{"status", r.ok() ? "PASSED" : "FAILED"},
                     {"prime", inst.prime},
                     {"exponent", inst.exponent},
                     {"delta", inst.delta},
                     {"family", f.to_string()},
                     {"n_max", n_max},
                     {"witness", witness_json(r.failure)}});
    } else {
      out << f.to_string() << "  n <= " << n_max << "  " << (r.ok() ? "PASSED" : "FAILED");
      if (r.failure) out << " at n = " << r.failure->n << " (" << r.failure->left_sum << " vs " << r.failure->right_sum << ")";
      out << '\n';
    }
  }
  if (flags.json) out << (doc.size() == 1 ? doc.front() : doc).dump(2) << '\n';
  return code;
}

int cmd_search(const CommonFlags& flags, bool drop_redundant, std::ostream& out) {
  const InstanceFile inst = require_instance(flags);
  SearchSpace space = inst.search_space();
  if (flags.max_terms) space.max_terms = *flags.max_terms;
  if (flags.cap) space.cap = *flags.cap;
  const std::uint64_t count = candidate_count(space);
  SearchOptions options{flags.threads, drop_redundant, prover_options(inst)};
  const auto proved = search_certified(space, options);
  if (flags.json) {
    json doc{{"target", gf_name(space.target)},
             {"prime", inst.prime},
             {"exponent", inst.exponent},
             {"delta", inst.delta},
             {"max_terms", space.max_terms},
             {"candidates", count},
             {"certified", json::array()}};
    for (const auto& c : proved) doc["certified"].push_back(certificate_json(c));
    out << doc.dump(2) << '\n';
  } else {
    out << "target      " << gf_name(space.target) << '\n'
        << "modulus     " << space.modulus.to_string() << '\n'
        << "delta       " << space.delta << '\n'
        << "candidates  " << count << '\n'
        << "certified   " << proved.size() << '\n';
    if (!proved.empty()) {
      out << "period      " << proved.front().period_used << '\n'
          << "check bound n < " << proved.front().check_bound << '\n';
    }
    for (const auto& c : proved) out << "  " << c.family.to_string() << '\n';
  }
  return kExitOk;
}

int cmd_period(const CommonFlags& flags, const std::string& multiset, std::optional<std::uint64_t> prime,
               std::optional<unsigned> power, bool verify, std::ostream& out) {
  PartMultiset s;
  std::uint64_t ell = 0;
  unsigned exponent = 0;
  std::optional<PreparedTarget> prepared;
  if (!flags.instance.empty()) {
    const InstanceFile inst = load_instance_file(flags.instance);
    prepared = prepare_target(inst.target, inst.modulus(), inst.delta, prover_options(inst));
    if (!prepared->applicable) {
      out << "inapplicable: " << prepared->reason << '\n';
      return kExitInapplicable;
    }
    s = prepared->decomposition->a_multiset;
    ell = inst.prime;
    exponent = inst.exponent;
  } else {
    if (multiset.empty() || !prime || !power) {
      throw UsageError("period needs --multiset, --prime and --power, or --instance");
    }
    s = parse_multiset(multiset);
    ell = *prime;
    exponent = *power;
  }
  const Modulus modulus(ell, exponent);
  const PeriodInfo info = kwong_period(s, ell, exponent);
  std::optional<std::uint64_t> empirical;
  if (verify) {
    const std::size_t len = std::max<std::size_t>(flags.length.value_or(0), kDefaultPeriodWindow * info.period);
    const ModSeries a = series_from_spec(s.generating_spec(), modulus, len);
    empirical = empirical_min_period(a, info.period);
  }
  if (flags.json) {
    json doc{{"multiset", s.to_string()}, {"prime", ell}, {"exponent", exponent},
             {"period", info.period},     {"b", info.b},  {"m", info.m}};
    if (empirical) doc["empirical_period"] = *empirical;
    if (prepared) {
      doc["delta"] = prepared->delta;
      doc["lifted_period"] = prepared->period_used;
      doc["check_bound"] = prepared->check_bound;
    }
    out << doc.dump(2) << '\n';
  } else {
    out << info.period << '\n';
    out << "  multiset {" << s.to_string() << "}, modulus " << modulus.to_string() << ", b = " << info.b
        << ", m = " << info.m << '\n';
    if (empirical) out << "  empirical minimal period " << *empirical << '\n';
    if (prepared) {
      out << "  lifted period " << prepared->period_used << ", check bound n < " << prepared->check_bound << '\n';
    }
  }
  if (empirical && *empirical != info.period) return kExitFailed;
  return kExitOk;
}

struct TargetSource {
  GFKind target;
  Modulus modulus;
};

TargetSource target_source(const CommonFlags& flags, const std::string& target_text,
                           std::optional<std::uint64_t> prime, std::optional<unsigned> power) {
  if (!flags.instance.empty()) {
    const InstanceFile inst = load_instance_file(flags.instance);
    return {inst.target, inst.modulus()};
  }
  if (target_text.empty()) throw UsageError("need --instance or --target");
  return {parse_target(target_text), Modulus(prime.value_or(kOraclePrime), power.value_or(1))};
}

int cmd_expand(const CommonFlags& flags, const std::string& target_text, std::optional<std::uint64_t> prime,
               std::optional<unsigned> power, std::ostream& out) {
  const TargetSource src = target_source(flags, target_text, prime, power);
  std::size_t length = flags.length.value_or(0);
  if (length == 0 && !flags.instance.empty()) length = load_instance_file(flags.instance).length.value_or(0);
  if (length == 0) length = 20;
  const ModSeries s = series_from_spec(build_spec(src.target), src.modulus, length);
  if (flags.json) {
    json doc{{"target", gf_name(src.target)},
             {"prime", src.modulus.prime()},
             {"exponent", src.modulus.exponent()},
             {"length", length},
             {"coefficients", std::vector<Residue>(s.coeffs().begin(), s.coeffs().end())}};
    out << doc.dump(2) << '\n';
  } else {
    out << gf_name(src.target) << " mod " << src.modulus.to_string() << '\n';
    for (std::size_t n = 0; n < length; ++n) out << n << ' ' << s[n] << '\n';
  }
  return kExitOk;
}

// Exact counts from the brute-force enumerators, for targets that have one.
std::optional<std::uint64_t> enumerate(const GFKind& target, std::uint64_t n) {
  using namespace gf;
  if (std::holds_alternative<Partitions>(target)) {
    PartMultiset s;
    for (std::uint64_t v = 1; v <= std::max<std::uint64_t>(n, 1); ++v) s.add(v);
    return oracle::count_partitions_multiset(n, s);
  }
  if (const auto* t = std::get_if<MaxPart>(&target)) {
    PartMultiset s;
    for (std::uint64_t v = 1; v <= t->m; ++v) s.add(v);
    return oracle::count_partitions_multiset(n, s);
  }
  if (const auto* t = std::get_if<Multiset>(&target)) return oracle::count_partitions_multiset(n, t->parts);
  if (std::holds_alternative<Plane>(target)) return oracle::count_plane_partitions_rowed(n, std::max<std::uint64_t>(n, 1));
  if (const auto* t = std::get_if<PlaneRowed>(&target)) return oracle::count_plane_partitions_rowed(n, t->rows);
  if (const auto* t = std::get_if<PlaneBox>(&target)) return oracle::count_plane_partitions_rowed(n, t->rows, t->cols);
  if (std::holds_alternative<Overpartitions>(target)) return oracle::count_overpartitions(n);
  if (const auto* t = std::get_if<OverplaneRowed>(&target)) return oracle::count_plane_overpartitions_rowed(n, t->rows);
  return std::nullopt;
}

int cmd_oracle(const CommonFlags& flags, const std::string& target_text, std::ostream& out) {
  const TargetSource src = target_source(flags, target_text, std::nullopt, std::nullopt);
  const std::uint64_t n_max = flags.n_max.value_or(10);
  if (!enumerate(src.target, 0)) throw UsageError("no enumerator for target " + gf_name(src.target));
  const Modulus big(kOraclePrime, 1);
  const ModSeries s = series_from_spec(build_spec(src.target), big, static_cast<std::size_t>(n_max + 1));
  int code = kExitOk;
  json rows = json::array();
  if (!flags.json) out << "n enumerated series\n";
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    const std::uint64_t count = *enumerate(src.target, n);
    const bool match = count == s[n];
    if (!match) code = kExitFailed;
    if (flags.json) {
      rows.push_back({{"n", n}, {"enumerated", count}, {"series", s[n]}, {"match", match}});
    } else {
      out << n << ' ' << count << ' ' << s[n] << (match ? "" : "  MISMATCH") << '\n';
    }
  }
  if (flags.json) out << json{{"target", gf_name(src.target)}, {"rows", rows}}.dump(2) << '\n';
  return code;
}

int cmd_table(const CommonFlags& flags, std::uint64_t rows, std::ostream& out) {
  const InstanceFile inst = require_instance(flags);
  if (inst.families.empty()) throw UsageError("instance declares no family to tabulate");
  const Modulus m = inst.modulus();
  const ModSeries lambda = series_from_spec(build_spec(inst.target), m,
                                            static_cast<std::size_t>(inst.delta * rows + inst.delta));
  json tables = json::array();
  for (std::size_t t = 0; t < inst.families.size(); ++t) {
    const auto& f = inst.families[t];
    std::vector<std::uint64_t> cols = f.left;
    cols.insert(cols.end(), f.right.begin(), f.right.end());
    json grid = json::array();
    if (!flags.json) {
      if (t) out << '\n';
      out << "n";
      for (auto r : cols) out << "  c(" << inst.delta << "n+" << r << ")";
      out << '\n';
    }
    for (std::uint64_t n = 0; n < rows; ++n) {
      json row = json::array();
      if (!flags.json) out << n;
      for (auto r : cols) {
        const Residue v = lambda[inst.delta * n + r];
        row.push_back(v);
        if (!flags.json) out << "  " << std::setw(static_cast<int>(std::to_string(inst.delta).size() + 6 + std::to_string(r).size())) << v;
      }
      if (!flags.json) out << '\n';
      grid.push_back(row);
    }
    tables.push_back({{"residues", cols}, {"rows", grid}});
  }
  if (flags.json) {
    out << json{{"target", gf_name(inst.target)}, {"prime", inst.prime}, {"exponent", inst.exponent},
                {"delta", inst.delta}, {"tables", tables}}
               .dump(2)
        << '\n';
  }
  return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certify partition congruences through a finite coefficient check", "pcert"};
  app.require_subcommand(1);
  CommonFlags flags;
  std::string multiset, target_text;
  std::optional<std::uint64_t> prime;
  std::optional<unsigned> power;
  std::uint64_t rows = 6;
  bool verify = false, drop_redundant = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--instance", flags.instance, "instance file");
    sub->add_flag("--json", flags.json, "machine-readable output");
  };
  auto* period = app.add_subcommand("period", "period of a multiset generating function");
  add_common(period);
  period->add_option("--multiset", multiset, "parts as v[:mult],...");
  period->add_option("--prime", prime);
  period->add_option("--power,--exponent", power);
  period->add_option("--length", flags.length, "expansion length for --verify");
  period->add_flag("--verify", verify, "confirm minimality on the expanded series");

  auto* expand = app.add_subcommand("expand", "expand a target modulo l^N");
  add_common(expand);
  expand->add_option("--target", target_text);
  expand->add_option("--prime", prime);
  expand->add_option("--power,--exponent", power);
  expand->add_option("--length", flags.length);

  auto* certify_cmd = app.add_subcommand("certify", "certify every family of an instance");
  add_common(certify_cmd);

  auto* spot = app.add_subcommand("spot-check", "direct check of every n up to --n-max");
  add_common(spot);
  spot->add_option("--n-max", flags.n_max);

  auto* search = app.add_subcommand("search", "enumerate and certify candidate families");
  add_common(search);
  search->add_option("--max-terms", flags.max_terms);
  search->add_option("--cap", flags.cap);
  search->add_option("--threads", flags.threads)->check(CLI::PositiveNumber);
  search->add_flag("--drop-redundant", drop_redundant, "omit families implied by earlier ones");

  auto* oracle_cmd = app.add_subcommand("oracle", "compare brute-force counts with series coefficients");
  add_common(oracle_cmd);
  oracle_cmd->add_option("--target", target_text);
  oracle_cmd->add_option("--n-max", flags.n_max);

  auto* table = app.add_subcommand("table", "residue grid c(delta*n + r) for each family");
  add_common(table);
  table->add_option("--rows", rows)->check(CLI::PositiveNumber);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitInapplicable;
  }

  try {
    if (period->parsed()) return cmd_period(flags, multiset, prime, power, verify, out);
    if (expand->parsed()) return cmd_expand(flags, target_text, prime, power, out);
    if (certify_cmd->parsed()) return cmd_certify(flags, out);
    if (spot->parsed()) return cmd_spot_check(flags, out);
    if (search->parsed()) return cmd_search(flags, drop_redundant, out);
    if (oracle_cmd->parsed()) return cmd_oracle(flags, target_text, out);
    if (table->parsed()) return cmd_table(flags, rows, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInapplicable;
  }
  err << "usage error: no subcommand\n";
  return kExitInapplicable;
}

}  // namespace pcert
