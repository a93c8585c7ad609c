#include <doctest.h>

#include "ffs/monic.hpp"
#include "ffs/rng.hpp"

using namespace ffsv;

static Context& ctx2() {
  static Context c({2, 1, 1, 6}, {});
  return c;
}
static Context& ctx3() {
  static Context c({3, 1, 1, 6}, {});
  return c;
}

TEST_CASE("series inversion: (theta^2+theta)^{-1} multiplies back to 1") {
  auto& cx = ctx2();
  RSeries x = RSeries::theta(cx).pow(2) + RSeries::theta(cx);
  RSeries z = x.inv();
  CHECK((x * z - RSeries::one(cx)).certified_below(40));
  // leading expansion theta^{-2} + theta^{-3} + ...
  CHECK(z.coeff(-2 * cx.R()) == 1);
  CHECK(z.coeff(-3 * cx.R()) == 1);
  CHECK(z.coeff(-4 * cx.R()) == 1);
}

TEST_CASE("x * 1 = x and ord(theta) = -1") {
  auto& cx = ctx2();
  RSeries x = RSeries::theta(cx).pow(3) + RSeries::one(cx);
  CHECK(x * RSeries::one(cx) == x);
  CHECK(*RSeries::theta(cx).ord_num() == -cx.R());
}

TEST_CASE("inverting a floor-zero series fails cleanly") {
  auto& cx = ctx2();
  RSeries z = RSeries::zero_at(cx, 10 * cx.R());
  CHECK_THROWS_AS(z.inv(), error);
}

TEST_CASE("frobenius twists") {
  auto& cx = ctx2();
  RSeries x = RSeries::theta(cx) + RSeries::one(cx);
  CHECK(x.twist(1) == RSeries::theta(cx).pow(2) + RSeries::one(cx));
  CHECK(x.twist(0) == x);
  // tau^{-1}(theta) = theta^{1/2}
  CHECK(RSeries::theta(cx).twist(-1) == RSeries::theta_pow(cx, 1, 2, 1));
  // budget exceeded: theta^{1/64} exists but theta^{1/128} does not (M = 6)
  RSeries deep = RSeries::theta_pow(cx, 1, 64, 1);
  CHECK_THROWS_AS(deep.twist(-1), error);
}

TEST_CASE("frobenius is a ring homomorphism (seeded)") {
  auto& cx = ctx3();
  Rng rng(101);
  for (int t = 0; t < 20; ++t) {
    RSeries a = rng.series(cx, -5, 5, 4);
    RSeries b = rng.series(cx, -5, 5, 4);
    CHECK((a + b).twist(1) == a.twist(1) + b.twist(1));
    CHECK((a * b).twist(1) == a.twist(1) * b.twist(1));
    CHECK(a.twist(1).twist(-1) == a);
  }
}

TEST_CASE("norm multiplicativity on exactly-known series (seeded)") {
  auto& cx = ctx2();
  Rng rng(102);
  for (int t = 0; t < 20; ++t) {
    RSeries a = rng.series(cx, -4, 6, 4);
    RSeries b = rng.series(cx, -4, 6, 4);
    if (a.is_zero() || b.is_zero()) continue;
    CHECK(*(a * b).max_exp_num() == *a.max_exp_num() + *b.max_exp_num());
  }
}

TEST_CASE("floor soundness: deeper recomputation reproduces reported terms") {
  auto& cx = ctx2();
  RSeries x = RSeries::theta(cx).pow(2) + RSeries::theta(cx);
  RSeries shallow = x.inv(20 * cx.R());
  RSeries deep = x.inv(60 * cx.R());
  for (auto& [e, c] : shallow.terms()) CHECK(deep.coeff(e) == c);
}

TEST_CASE("monic enumeration") {
  auto& cx = ctx2();
  int count = 0;
  enumerate_monic(cx, 0, [&](const MonicPoly& a) {
    ++count;
    CHECK(a.degree() == 0);
  });
  CHECK(count == 1);

  std::vector<RSeries> deg1;
  enumerate_monic(cx, 1, [&](const MonicPoly& a) { deg1.push_back(a.as_series(cx)); });
  REQUIRE(deg1.size() == 2);  // theta, theta+1
  CHECK(deg1[0] == RSeries::theta(cx));
  CHECK(deg1[1] == RSeries::theta(cx) + RSeries::one(cx));

  CHECK(monic_count(cx, 2) == 4);
  CHECK(monic_count(ctx3(), 3) == 27);
  // duplicate-free
  std::set<std::string> seen;
  enumerate_monic(ctx3(), 2, [&](const MonicPoly& a) { seen.insert(a.as_series(ctx3()).str()); });
  CHECK(seen.size() == 9);
}

TEST_CASE("enumeration cap") {
  Context small({2, 1, 1, 6}, PrecisionParams{40, 24, 12, 64, 8});
  CHECK_THROWS_AS(monic_count(small, 5), error);
}

TEST_CASE("monic evaluation at a variable and at field points") {
  auto& cx = ctx2();
  MonicPoly a;  // theta + 1
  a.low = {cx.F().one()};
  Tate at = a.at_var(cx, 1);
  CHECK(at == Tate::var(cx, 1) + Tate::one(cx));
  CHECK(a.at_fq(cx, 0) == 1);
  CHECK(a.at_fq(cx, 1) == 0);
}
