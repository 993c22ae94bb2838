#include "pcert/instance.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "pcert/error.hpp"

namespace pcert {

namespace {

struct Linear {
  std::int64_t mul = 0;
  std::int64_t add = 0;
};

/// Character cursor over one value, reporting positions in file coordinates.
class Cursor {
 public:
  Cursor(std::string_view text, int line, int column) : text_(text), line_(line), column_(column) {}

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  bool accept_word(std::string_view w) {
    skip_ws();
    if (text_.substr(pos_, w.size()) != w) return false;
    pos_ += w.size();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  void expect_end() {
    if (!at_end()) fail("unexpected trailing text '" + std::string(text_.substr(pos_)) + "'");
  }

  std::uint64_t integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected an integer");
    const std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 18) fail("integer too large");
    return std::stoull(digits);
  }
  std::int64_t signed_integer() {
    const bool negative = accept('-');
    if (!negative) accept('+');
    const auto v = static_cast<std::int64_t>(integer());
    return negative ? -v : v;
  }

  std::string identifier() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  // [INT]['*']'n' | INT, joined by + and -
  Linear linear() {
    Linear lin;
    bool first = true;
    for (;;) {
      int sign = 1;
      if (accept('-')) {
        sign = -1;
      } else if (!accept('+') && !first) {
        break;
      }
      first = false;
      skip_ws();
      std::int64_t coef = 1;
      bool have_number = false;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coef = static_cast<std::int64_t>(integer());
        have_number = true;
      }
      accept('*');
      if (accept('n')) {
        lin.mul += sign * coef;
      } else if (have_number) {
        lin.add += sign * coef;
      } else {
        fail("expected an integer or n");
      }
      const char c = peek();
      if (c != '+' && c != '-') break;
    }
    return lin;
  }

  std::vector<std::uint64_t> integer_list(char open, char close) {
    std::vector<std::uint64_t> out;
    expect(open);
    if (accept(close)) return out;
    do {
      out.push_back(integer());
    } while (accept(','));
    expect(close);
    return out;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what, line_, column_ + static_cast<int>(pos_));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
  int column_;
};

// '(' '1' sign 'q^' BASE ')' ['^' EXP], BASE and EXP linear in n when allowed.
struct BinomialTemplate {
  Sign sign = Sign::minus;
  Linear base;
  Linear exponent{0, 1};
};

BinomialTemplate parse_binomial(Cursor& cur, bool allow_n) {
  BinomialTemplate t;
  cur.expect('(');
  if (cur.integer() != 1) cur.fail("binomial factors must have the form (1+q^b) or (1-q^b)");
  if (cur.accept('-')) {
    t.sign = Sign::minus;
  } else if (cur.accept('+')) {
    t.sign = Sign::plus;
  } else {
    cur.fail("expected '+' or '-'");
  }
  cur.expect('q');
  cur.expect('^');
  if (cur.accept('(')) {
    t.base = cur.linear();
    cur.expect(')');
  } else {
    t.base = {0, static_cast<std::int64_t>(cur.integer())};
  }
  cur.expect(')');
  if (cur.accept('^')) {
    if (cur.accept('(')) {
      t.exponent = cur.linear();
      cur.expect(')');
    } else {
      t.exponent = {0, cur.signed_integer()};
    }
  }
  if (!allow_n && (t.base.mul != 0 || t.exponent.mul != 0)) {
    cur.fail("'n' may only appear inside tail(...)");
  }
  return t;
}

Factor parse_factor(Cursor& cur) {
  if (cur.accept_word("tail")) {
    cur.expect('(');
    const BinomialTemplate t = parse_binomial(cur, true);
    cur.expect(',');
    if (!cur.accept_word("from")) cur.fail("expected from=INT");
    cur.expect('=');
    const std::uint64_t from = cur.integer();
    cur.expect(')');
    if (t.base.mul < 1) cur.fail("tail base must grow with n");
    TailFamily tail{t.sign, static_cast<std::uint64_t>(t.base.mul), t.base.add, t.exponent.mul, t.exponent.add, from};
    if (from < 1 || static_cast<std::int64_t>(tail.base_mul * from) + tail.base_add < 1) {
      cur.fail("tail base must be positive from its first index");
    }
    return tail;
  }
  if (cur.accept_word("poly")) {
    PolyFactor p;
    p.coeffs.clear();
    cur.expect('(');
    do {
      p.coeffs.push_back(cur.signed_integer());
    } while (cur.accept(','));
    cur.expect(')');
    if (cur.accept('^')) p.exponent = cur.signed_integer();
    return p;
  }
  const BinomialTemplate t = parse_binomial(cur, false);
  if (t.base.add < 1) cur.fail("binomial base must be positive");
  return BinomialFactor{t.sign, static_cast<std::uint64_t>(t.base.add), t.exponent.add};
}

ProductSpec parse_spec_at(Cursor& cur) {
  ProductSpec spec;
  if (cur.at_end()) cur.fail("empty product specification");
  if (cur.peek() == '1') {
    // "1" alone denotes the empty product.
    Cursor probe = cur;
    probe.integer();
    if (probe.at_end()) {
      cur = probe;
      return spec;
    }
  }
  while (!cur.at_end()) spec.factors.push_back(parse_factor(cur));
  return spec;
}

PartMultiset parse_multiset_at(Cursor& cur) {
  PartMultiset s;
  do {
    const std::uint64_t v = cur.integer();
    std::uint64_t mult = 1;
    if (cur.accept(':')) mult = cur.integer();
    if (v < 1 || mult < 1) cur.fail("multiset values and multiplicities must be positive");
    s.add(v, mult);
  } while (cur.accept(','));
  cur.expect_end();
  return s;
}

GFKind parse_target_at(Cursor& cur) {
  if (cur.accept_word("raw:")) return gf::Raw{parse_spec_at(cur)};
  const std::string name = cur.identifier();
  std::vector<std::uint64_t> args;
  if (cur.peek() == '(') args = cur.integer_list('(', ')');
  cur.expect_end();
  auto arity = [&](std::size_t n) {
    if (args.size() != n) {
      throw SemanticError("builder " + name + " takes " + std::to_string(n) + " argument(s), got " +
                          std::to_string(args.size()));
    }
  };
  auto positive = [&]() {
    for (auto a : args) {
      if (a < 1) throw SemanticError("builder " + name + " needs positive arguments");
    }
  };
  positive();
  if (name == "partitions") { arity(0); return gf::Partitions{}; }
  if (name == "plane") { arity(0); return gf::Plane{}; }
  if (name == "overpartitions") { arity(0); return gf::Overpartitions{}; }
  if (name == "plane_box") { arity(2); return gf::PlaneBox{args[0], args[1]}; }
  if (name == "plane_rowed") { arity(1); return gf::PlaneRowed{args[0]}; }
  if (name == "overplane_rowed") { arity(1); return gf::OverplaneRowed{args[0]}; }
  if (name == "maxpart") { arity(1); return gf::MaxPart{args[0]}; }
  if (name == "F") {
    arity(1);
    if (args[0] < 2) throw SemanticError("F(l) needs l >= 2");
    return gf::F{args[0]};
  }
  if (name == "multiset") {
    if (args.empty()) throw SemanticError("multiset needs at least one part");
    PartMultiset s;
    for (auto a : args) s.add(a);
    return gf::Multiset{s};
  }
  throw SemanticError("unknown target builder '" + name + "'");
}

FamilyDecl parse_family_at(Cursor& cur) {
  FamilyDecl f;
  f.left = cur.integer_list('{', '}');
  if (!cur.accept_word("==")) cur.fail("expected '=='");
  if (cur.peek() == '{') {
    f.right = cur.integer_list('{', '}');
  } else if (cur.integer() != 0) {
    cur.fail("right-hand side must be a residue set or 0");
  }
  cur.expect_end();
  return f;
}

bool parse_bool(Cursor& cur) {
  if (cur.accept_word("true")) return true;
  if (cur.accept_word("false")) return false;
  cur.fail("expected true or false");
}

std::string render_list(const std::vector<std::uint64_t>& v) {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + "}";
}

}  // namespace

GFKind parse_target(std::string_view text) {
  Cursor cur(text, 1, 1);
  return parse_target_at(cur);
}

ProductSpec parse_spec(std::string_view text) {
  Cursor cur(text, 1, 1);
  return parse_spec_at(cur);
}

PartMultiset parse_multiset(std::string_view text) {
  Cursor cur(text, 1, 1);
  return parse_multiset_at(cur);
}

InstanceFile parse_instance_file(std::string_view text) {
  InstanceFile inst;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t eq = line.find('=');
    const std::size_t key_start = line.find_first_not_of(" \t");
    if (eq == std::string_view::npos) throw ParseError("expected key = value", line_no, static_cast<int>(key_start) + 1);
    std::string_view key = line.substr(key_start, eq - key_start);
    while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.remove_suffix(1);
    const std::string k(key);
    if (k != "family" && !seen.insert(k).second) {
      throw ParseError("duplicate key '" + k + "'", line_no, static_cast<int>(key_start) + 1);
    }
    Cursor cur(line.substr(eq + 1), line_no, static_cast<int>(eq) + 2);
    if (k == "prime") {
      inst.prime = cur.integer();
      cur.expect_end();
    } else if (k == "exponent") {
      inst.exponent = static_cast<unsigned>(cur.integer());
      cur.expect_end();
    } else if (k == "delta") {
      inst.delta = cur.integer();
      cur.expect_end();
    } else if (k == "target") {
      inst.target = parse_target_at(cur);
    } else if (k == "family") {
      inst.families.push_back(parse_family_at(cur));
    } else if (k == "max_terms") {
      if (!inst.search) inst.search = SearchBlock{};
      inst.search->max_terms = cur.integer();
      cur.expect_end();
    } else if (k == "allow_zero_right") {
      if (!inst.search) inst.search = SearchBlock{};
      inst.search->allow_zero_right = parse_bool(cur);
      cur.expect_end();
    } else if (k == "validation_length") {
      inst.validation_length = cur.integer();
      cur.expect_end();
    } else if (k == "cap") {
      inst.cap = cur.integer();
      cur.expect_end();
    } else if (k == "n_max") {
      inst.n_max = cur.integer();
      cur.expect_end();
    } else if (k == "length") {
      inst.length = cur.integer();
      cur.expect_end();
    } else {
      throw ParseError("unknown key '" + k + "'", line_no, static_cast<int>(key_start) + 1);
    }
    if (end == text.size()) break;
  }

  for (const char* required : {"prime", "exponent", "delta", "target"}) {
    if (!seen.count(required)) throw ParseError(std::string("missing required key '") + required + "'", line_no, 1);
  }
  if (!is_prime(inst.prime)) throw SemanticError("prime = " + std::to_string(inst.prime) + " is not prime");
  if (inst.exponent < 1) throw SemanticError("exponent must be at least 1");
  if (inst.delta < 1) throw SemanticError("delta must be at least 1");
  try {
    (void)inst.modulus();
  } catch (const InvalidParameter& e) {
    throw SemanticError(e.what());
  }
  for (const auto& f : inst.families) {
    for (const auto* side : {&f.left, &f.right}) {
      for (auto r : *side) {
        if (r >= inst.delta) {
          throw SemanticError("residue " + std::to_string(r) + " is not below delta = " + std::to_string(inst.delta));
        }
      }
    }
    if (f.left.empty() && f.right.empty()) throw SemanticError("family has no terms");
  }
  if (inst.search && inst.search->max_terms < 1) throw SemanticError("max_terms must be at least 1");
  return inst;
}

InstanceFile load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open instance file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance_file(buf.str());
}

std::string render_instance_file(const InstanceFile& inst) {
  std::ostringstream os;
  os << "prime = " << inst.prime << '\n'
     << "exponent = " << inst.exponent << '\n'
     << "delta = " << inst.delta << '\n'
     << "target = " << gf_name(inst.target) << '\n';
  for (const auto& f : inst.families) {
    os << "family = " << render_list(f.left) << " == " << (f.right.empty() ? "0" : render_list(f.right)) << '\n';
  }
  if (inst.search) {
    os << "max_terms = " << inst.search->max_terms << '\n'
       << "allow_zero_right = " << (inst.search->allow_zero_right ? "true" : "false") << '\n';
  }
  if (inst.validation_length) os << "validation_length = " << *inst.validation_length << '\n';
  if (inst.cap) os << "cap = " << *inst.cap << '\n';
  if (inst.n_max) os << "n_max = " << *inst.n_max << '\n';
  if (inst.length) os << "length = " << *inst.length << '\n';
  return os.str();
}

std::vector<CongruenceFamily> InstanceFile::canonical_families() const {
  std::vector<CongruenceFamily> out;
  for (const auto& f : families) out.push_back(CongruenceFamily::make(delta, f.left, f.right, modulus()));
  return out;
}

SearchSpace InstanceFile::search_space() const {
  const SearchBlock block = search.value_or(SearchBlock{});
  return SearchSpace{.target = target,
                     .modulus = modulus(),
                     .delta = delta,
                     .max_terms = block.max_terms,
                     .allow_zero_right = block.allow_zero_right,
                     .cap = cap.value_or(kDefaultCandidateCap)};
}

}  // namespace pcert
