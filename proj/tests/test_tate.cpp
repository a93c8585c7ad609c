#include <doctest.h>

#include "ffs/rng.hpp"
#include "ffs/monic.hpp"
#include "ffs/serialize.hpp"

using namespace ffsv;

static Context& cx() {
  static Context c({2, 1, 2, 6}, {});  // F_4 available
  return c;
}

TEST_CASE("gauss norms of basic elements") {
  auto& c = cx();
  Tate f = Tate::var_minus_theta(c, 1);
  CHECK(*f.norm_exp_num() == c.R());  // ||t_1 - theta|| = q
  // alpha for U = {1,2}: norm q^2
  Tate a = Tate::var_minus_theta(c, 1) * Tate::var_minus_theta(c, 2);
  CHECK(*a.norm_exp_num() == 2 * c.R());
  CHECK(f * Tate::one(c) == f);
}

TEST_CASE("twisting fixes the variables") {
  auto& c = cx();
  Tate f = Tate::var_minus_theta(c, 1);
  CHECK(f.twist(1) == Tate::var(c, 1) - Tate::scalar(RSeries::theta(c).pow(2)));
  // constants from F_q[t] are fixed
  Tate g = Tate::var(c, 1) * Tate::var(c, 2) + Tate::one(c);
  CHECK(g.twist(1) == g);
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    Tate h = rng.tate(c, {1, 2}, -3, 3);
    CHECK(h.twist(1).twist(-1) == h);
  }
}

TEST_CASE("unit inversion and non-units") {
  auto& c = cx();
  Tate f = Tate::var_minus_theta(c, 1);
  Tate z = f.inv_unit();
  CHECK((f * z - Tate::one(c)).certified_below(40));
  // t_1 alone has no dominant scalar term
  CHECK_THROWS_AS(Tate::var(c, 1).inv_unit(), error);
  // t_1 + theta^0: scalar term does not dominate
  CHECK_THROWS_AS((Tate::var(c, 1) + Tate::one(c)).inv_unit(), error);
}

TEST_CASE("specialization") {
  auto& c = cx();
  // (t_1 - t)|_{t=theta} = t_1 - theta
  Tate f = Tate::var(c, 1) - Tate::var(c, 0);
  CHECK(f.eval_at_theta() == Tate::var_minus_theta(c, 1));
  // binding an absent variable is a no-op
  CHECK(f.specialize({{3, RSeries::theta(c)}}) == f);
  // a(t_1)|_{t_1=xi} for a = theta+1 and xi a root of x^2+x+1 in F_4
  auto roots = c.F().poly_roots({c.F().one(), c.F().one(), c.F().one()});
  REQUIRE(roots.size() == 2);
  fq_t xi = roots[0];
  MonicPoly a;
  a.low = {c.F().one()};
  Tate at = a.at_var(c, 1).specialize({{1, RSeries::constant(c, xi)}});
  CHECK(at == Tate::scalar(RSeries::constant(c, c.F().add(xi, c.F().one()))));
}

TEST_CASE("norm multiplicativity and ord relation (seeded)") {
  auto& c = cx();
  Rng rng(8);
  for (int t = 0; t < 15; ++t) {
    Tate a = rng.tate(c, {1, 2}, -4, 4);
    Tate b = rng.tate(c, {1, 2}, -4, 4);
    auto na = a.norm_exp_num(), nb = b.norm_exp_num();
    if (!na || !nb) continue;
    auto nab = (a * b).norm_exp_num();
    REQUIRE(nab.has_value());
    CHECK(*nab == *na + *nb);  // T_Sigma is a domain
  }
}

TEST_CASE("twist commutes with specialization at F_q-rational points") {
  auto& c = cx();
  Rng rng(9);
  for (int t = 0; t < 10; ++t) {
    Tate a = rng.tate(c, {1}, -3, 3);
    // xi in F_q is fixed by tau
    std::map<int, RSeries> bind{{1, RSeries::one(c)}};
    CHECK(a.twist(1).specialize(bind) == a.specialize(bind).twist(1));
  }
}

TEST_CASE("disc warning on capped elements") {
  auto& c = cx();
  Tate f = (Tate::one(c) - Tate::var(c, 1).scale(RSeries::theta(c).inv())).inv_unit().with_cap(6);
  bool warn = false;
  f.specialize({{1, RSeries::theta(c)}}, &warn);
  CHECK(warn);
  warn = false;
  f.specialize({{1, RSeries::one(c)}}, &warn);
  CHECK_FALSE(warn);
}

TEST_CASE("serialization round trip (seeded)") {
  auto& c = cx();
  Rng rng(10);
  for (int t = 0; t < 20; ++t) {
    Tate a = rng.tate(c, {1, 2}, -5, 5);
    if (t % 3 == 0) a = a.truncated((10 + (long long)rng.below(30)) * c.R());
    if (t % 4 == 0) a = a.with_cap(int(rng.below(8)));
    CHECK(parse_tate(c, to_canonical(a)) == a);
  }
  RSeries r = rng.series(c, -6, 6, 5).truncated(20 * c.R());
  CHECK(parse_rseries(c, to_canonical(r)) == r);
  CHECK(parse_point(c, "t_2") == Tate::var(c, 2));
  CHECK(parse_point(c, "1") == Tate::one(c));
}
