#include <doctest.h>

#include "ffs/constants.hpp"

using namespace ffsv;

static Context& cx() {
  static Context c({2, 1, 1, 6}, {});
  return c;
}
static Constants& cc() {
  static Constants c(cx());
  return c;
}

TEST_CASE("b_i basics and the Demeslay twist identity") {
  auto& c = cx();
  CHECK(cc().b(0, 1) == Tate::one(c));
  CHECK(cc().b(1, 1) == Tate::var_minus_theta(c, 1));
  // tau^d(b_i) = b_{d+i}/b_d, checked by multiplication
  for (int d = 1; d <= 2; ++d)
    for (int i = 1; i <= 2; ++i)
      CHECK(cc().b(i, 1).twist(d) * cc().b(d, 1) == cc().b(d + i, 1));
  // negative i needs budget
  CHECK_THROWS_AS(cc().b(-7, 1), error);
  // b_{-1} b_1^{(-1)}... b_{-i} is the inverse of tau^{-i}(b_i)
  Tate prod = cc().b(-2, 1) * cc().b(2, 1).twist(-2);
  CHECK((prod - Tate::one(c)).certified_below(40));
}

TEST_CASE("Demeslay(ii): 1/tau(b_i) at t_1 = theta") {
  auto& c = cx();
  // tau(b_i) specializes exactly to ell_i, so its inverse specializes to
  // ell_i^{-1}; the series route cannot certify |theta| > 1 substitutions
  for (int i = 0; i <= 3; ++i) {
    Tate at = cc().b(i, 1).twist(1).specialize({{1, RSeries::theta(c)}});
    CHECK(at == Tate::scalar(cc().ell(i)));
  }
  for (int i = -2; i <= -1; ++i) {
    // 1/tau(b_i) is a polynomial vanishing at theta
    Tate poly = Tate::one(c);
    for (int k = 0; k < -i; ++k)
      poly = poly * (Tate::var(c, 1) -
                     Tate::scalar(RSeries::theta_pow(c, 1, cc().ctx().qpow(k), 1)));
    CHECK(poly.specialize({{1, RSeries::theta(c)}}).known_zero());
  }
}

TEST_CASE("Omega functional equation and constant term") {
  auto& c = cx();
  long long deep = c.work_num() * c.q();
  Tate Om = cc().Omega(deep);
  Tate resid = Om.twist(-1) - (Tate::var(c, 0) - Tate::scalar(RSeries::theta(c))) * Om;
  CHECK(resid.certified_below(40));
  // constant term (-theta)^{-q/(q-1)} = theta^{-2} at q=2
  RSeries c0 = Om.coeff_of_power(0, 0).scalar_part();
  CHECK(c0.coeff(-2 * c.R()) == 1);
  // Omega^{(n)} = Omega / (t-theta^q)...(t-theta^{q^n}) at n = 1
  Tate lhs = Om.twist(1) * (Tate::var(c, 0) - Tate::scalar(RSeries::theta(c).pow(2)));
  CHECK((lhs - Om).certified_below(40));
  // Omega(theta) pi = 1
  Tate at = Om.eval_at_theta().scale(cc().pi_carlitz(deep));
  CHECK((at - Tate::one(c)).certified_below(40));
}

TEST_CASE("Anderson-Thakur elements") {
  auto& c = cx();
  Tate beta = Tate::var_minus_theta(c, 1);
  Tate w = cc().omega_beta(beta);
  CHECK((w.twist(1) - beta * w).certified_below(40));
  CHECK(*w.norm_exp_num() == c.R() / (c.q() - 1));
  // beta = 1: gamma with gamma^{q-1} = 1, the canonical pick is 1
  CHECK(cc().omega_beta(Tate::one(c)) == Tate::one(c));
  // omega_{b1 b2} = c omega_{b1} omega_{b2} with c in F_q^x
  Tate b2 = Tate::var_minus_theta(c, 2);
  Tate lhs = cc().omega_beta(beta * b2);
  Tate rhs = cc().omega_beta(beta) * cc().omega_beta(b2);
  Tate ratio = lhs * rhs.inv_unit();
  // ratio is a constant in F_q^x up to the floor
  RSeries r0 = ratio.scalar_part();
  CHECK(r0.coeff(0) != 0);
  CHECK(c.F().in_fq(r0.coeff(0)));
  Tate dev = ratio - Tate::scalar(RSeries::constant(c, r0.coeff(0)));
  CHECK(dev.certified_below(35));
}

TEST_CASE("Gamma for small N") {
  auto& c = cx();
  CHECK(cc().Gamma(1) == RSeries::one(c));
  // N < q: only the 0 digit appears
  Context c3({3, 1, 1, 6}, {});
  Constants cc3(c3);
  CHECK(cc3.Gamma(1) == RSeries::one(c3));
  CHECK(cc3.Gamma(2) == RSeries::one(c3));
  CHECK(cc().D(1) == cc().bracket(1));
  CHECK(cc().D(2) == cc().bracket(2) * cc().bracket(1).pow(c.q()));
}
