#include <doctest.h>

#include "pcert/error.hpp"
#include "pcert/prover.hpp"

using namespace pcert;

namespace {

CongruenceFamily fam(std::uint64_t delta, std::vector<std::uint64_t> l, std::vector<std::uint64_t> r, Modulus m) {
  return CongruenceFamily::make(delta, std::move(l), std::move(r), m);
}

struct Case {
  GFKind target;
  CongruenceFamily family;
  std::uint64_t period;
};

// Every congruence of the regression set with the period it must be certified at.
std::vector<Case> regression_set() {
  const Modulus m2(2, 1), m3(3, 1), m4(2, 2), m5(5, 1), m7(7, 1);
  return {
      {gf::PlaneRowed{2}, fam(2, {1}, {0}, m2), 2},
      {gf::PlaneRowed{3}, fam(3, {2}, {}, m3), 6},
      {gf::PlaneRowed{3}, fam(3, {1}, {0}, m3), 6},
      {gf::PlaneRowed{5}, fam(5, {2}, {4}, m5), 300},
      {gf::PlaneRowed{5}, fam(5, {1}, {3}, m5), 300},
      {gf::PlaneRowed{7}, fam(7, {2, 3}, {4, 5}, m7), 2940},
      {gf::PlaneRowed{4}, fam(4, {3}, {}, m2), 12},
      {gf::PlaneRowed{4}, fam(4, {0}, {1}, m2), 12},
      {gf::PlaneRowed{4}, fam(4, {1}, {2}, m2), 12},
      {gf::PlaneRowed{8}, fam(8, {0, 1}, {3}, m2), 3360},
      {gf::PlaneRowed{8}, fam(8, {5}, {}, m2), 3360},
      {gf::PlaneRowed{8}, fam(8, {6}, {}, m2), 3360},
      {gf::PlaneRowed{8}, fam(8, {7}, {}, m2), 3360},
      {gf::PlaneRowed{9}, fam(9, {1}, {8}, m3), 22680},
      {gf::OverplaneRowed{4}, fam(4, {1, 2, 3}, {}, m4), 96},
      {gf::MaxPart{2}, fam(3, {1, 2}, {}, m3), 6},
      {gf::MaxPart{4}, fam(10, {6, 7, 8}, {}, m5), 60},
      {gf::MaxPart{4}, fam(10, {2, 3, 4}, {}, m5), 60},
  };
}

}  // namespace

TEST_CASE("family canonicalization") {
  const Modulus m(5, 1);
  const auto f = fam(5, {4, 2}, {1, 2}, m);
  CHECK(f.left() == std::vector<std::uint64_t>{1});
  CHECK(f.right() == std::vector<std::uint64_t>{4});
  CHECK(f.to_string() == "{1} == {4}");
  CHECK(fam(5, {}, {3}, m).to_string() == "{3} == 0");
  CHECK(fam(5, {0, 1}, {3}, m).to_string() == "{0,1} == {3}");
  CHECK(fam(5, {3}, {0, 1}, m) == fam(5, {0, 1}, {3}, m));
  CHECK(fam(5, {3}, {}, m).terms() == 2);
  CHECK(fam(5, {1, 1}, {2}, m).terms() == 3);
  CHECK_THROWS_AS(fam(3, {5}, {2}, m), InvalidParameter);
  CHECK_THROWS_AS(fam(3, {1}, {1}, m), InvalidParameter);
  CHECK_THROWS_AS(fam(3, {}, {}, m), InvalidParameter);
  CHECK_THROWS_AS(fam(0, {0}, {}, m), InvalidParameter);
}

TEST_CASE("certify examples") {
  const auto g2 = certify(gf::PlaneRowed{3}, fam(3, {2}, {}, Modulus(3, 1)));
  CHECK(g2.status == Status::proved);
  CHECK(g2.period_used % 3 == 0);

  const auto bad = certify(gf::PlaneRowed{2}, fam(2, {0}, {}, Modulus(2, 1)));
  CHECK(bad.status == Status::counterexample);
  REQUIRE(bad.witness.has_value());
  CHECK(bad.witness->n == 0);
  CHECK(bad.witness->left_sum == 1);
  CHECK(bad.witness->right_sum == 0);

  const auto p3 = certify(gf::PlaneRowed{8}, fam(8, {0, 1}, {3}, Modulus(2, 1)));
  CHECK(p3.status == Status::proved);
  CHECK(p3.check_bound == 420);
  CHECK(p3.period_used == 3360);
  CHECK(p3.kwong.period == 3360);
  CHECK_FALSE(p3.witness.has_value());
}

TEST_CASE("inapplicable targets are reported, not thrown") {
  const auto c = certify(gf::Plane{}, fam(3, {2}, {}, Modulus(3, 1)));
  CHECK(c.status == Status::inapplicable);
  CHECK_FALSE(c.reason.empty());
  // A = 1 has no part to be periodic in
  const auto trivial = certify(gf::Raw{ProductSpec{}}, fam(2, {1}, {}, Modulus(2, 1)));
  CHECK(trivial.status == Status::inapplicable);
  // family and target prepared at different delta
  const auto prepared = prepare_target(gf::PlaneRowed{3}, Modulus(3, 1), 3);
  CHECK(check_family(prepared, fam(6, {2}, {}, Modulus(3, 1))).status == Status::inapplicable);
  CHECK(check_family(prepared, fam(3, {2}, {}, Modulus(3, 2))).status == Status::inapplicable);
}

TEST_CASE("lifted period uses lcm with delta") {
  // A = 1/(1-q) mod 2 has period 1; delta = 2 lifts it to 2
  const auto c = certify(gf::PlaneRowed{2}, fam(2, {1}, {0}, Modulus(2, 1)));
  CHECK(c.kwong.period == 1);
  CHECK(c.period_used == 2);
  CHECK(c.check_bound == 1);
  // q2: period 6 with delta 3
  const auto q2 = certify(gf::MaxPart{2}, fam(3, {1, 2}, {}, Modulus(3, 1)));
  CHECK(q2.period_used == 6);
  CHECK(q2.check_bound == 2);
}

TEST_CASE("spot_check examples") {
  CHECK(spot_check(gf::PlaneRowed{5}, fam(5, {2}, {4}, Modulus(5, 1)), 2000).ok());
  CHECK(spot_check(gf::PlaneRowed{9}, fam(9, {1}, {8}, Modulus(3, 1)), 3000).ok());
  const auto r = spot_check(gf::PlaneRowed{2}, fam(2, {1}, {}, Modulus(2, 1)), 10);
  REQUIRE_FALSE(r.ok());
  CHECK(r.failure->n == 0);
  CHECK(r.failure->left_sum == 1);
  CHECK_THROWS_AS(spot_check(gf::PlaneRowed{2}, fam(2, {1}, {}, Modulus(2, 1)), 0), InvalidParameter);
}

TEST_CASE("regression set is proved at the expected periods and survives 5x spot checks") {
  for (const auto& c : regression_set()) {
    INFO(gf_name(c.target) << " " << c.family.to_string() << " mod " << c.family.modulus().to_string());
    const auto cert = certify(c.target, c.family);
    CHECK(cert.status == Status::proved);
    CHECK(cert.period_used == c.period);
    CHECK(cert.check_bound * c.family.delta() == c.period);
    CHECK(spot_check(c.target, c.family, 5 * cert.check_bound).ok());
  }
}

TEST_CASE("the three candidates on 2-rowed plane partitions") {
  const Modulus m(2, 1);
  CHECK(certify(gf::PlaneRowed{2}, fam(2, {0}, {1}, m)).status == Status::proved);
  for (const auto& f : {fam(2, {0}, {}, m), fam(2, {1}, {}, m)}) {
    const auto c = certify(gf::PlaneRowed{2}, f);
    CHECK(c.status == Status::counterexample);
    CHECK(c.witness->n == 0);
  }
}

TEST_CASE("certify is deterministic") {
  const auto f = fam(4, {1, 2, 3}, {}, Modulus(2, 2));
  const auto a = certify(gf::OverplaneRowed{4}, f), b = certify(gf::OverplaneRowed{4}, f);
  CHECK(a.status == b.status);
  CHECK(a.period_used == b.period_used);
  CHECK(a.kwong == b.kwong);
  CHECK(a.a_multiset == b.a_multiset);
  REQUIRE(a.decomposition.has_value());
  REQUIRE(b.decomposition.has_value());
  CHECK(a.decomposition->derivation == b.decomposition->derivation);
  CHECK(a.decomposition->a == b.decomposition->a);
  CHECK(a.decomposition->b == b.decomposition->b);
}

TEST_CASE("counterexample witnesses agree with a direct check") {
  const Modulus m(5, 1);
  const auto f = fam(5, {2}, {3}, m);
  const auto c = certify(gf::PlaneRowed{5}, f);
  REQUIRE(c.status == Status::counterexample);
  CHECK(c.witness->n < c.check_bound);
  const auto s = spot_check(gf::PlaneRowed{5}, f, std::max<std::uint64_t>(c.witness->n, 1));
  REQUIRE_FALSE(s.ok());
  CHECK(s.failure->n == c.witness->n);
}
