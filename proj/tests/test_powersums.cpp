#include <doctest.h>

#include "ffs/powersums.hpp"

using namespace ffsv;

static Context& cx() {
  static Context c({2, 1, 1, 6}, {});
  return c;
}
static Constants& cc() {
  static Constants c(cx());
  return c;
}

TEST_CASE("small power sums") {
  auto& c = cx();
  CHECK(power_sum_bruteforce(c, {}, 1, 0) == Tate::one(c));
  RSeries denom = (RSeries::theta(c).pow(2) + RSeries::theta(c)).inv();
  CHECK((power_sum_bruteforce(c, {}, 1, 1) - Tate::scalar(denom)).certified_below(40));
  Tate expect = (Tate::var(c, 1) + Tate::scalar(RSeries::theta(c))).scale(denom);
  CHECK((power_sum_bruteforce(c, {1}, 1, 1) - expect).certified_below(40));
}

TEST_CASE("pinned Q polynomials") {
  auto& c = cx();
  Constants& C = cc();
  QPolynomial q11 = q_poly(C, {1}, 1);
  CHECK(q11.as_tate(c) == Tate::var(c, 1) - Tate::var(c, 0));  // Ex. value, snapped exact
  QPolynomial q01 = q_poly(C, {}, 1);
  CHECK(q01.as_tate(c) == Tate::one(c));
  // S_d(empty,1) = 1/ell_d via Q
  for (int d = 0; d <= 3; ++d)
    CHECK((power_sum_via_q(C, q01, d) - Tate::scalar(C.ell(d).inv())).certified_below(40));
  // S_0 normalization and the d=1 value through Q
  QPolynomial q = q_poly(C, {1}, 1);
  CHECK((power_sum_via_q(C, q, 0) - Tate::one(c)).certified_below(40));
  RSeries denom = (RSeries::theta(c).pow(2) + RSeries::theta(c)).inv();
  Tate expect = (Tate::var(c, 1) + Tate::scalar(RSeries::theta(c))).scale(denom);
  CHECK((power_sum_via_q(C, q, 1) - expect).certified_below(40));
}

TEST_CASE("constructive path agrees with interpolation") {
  auto& c = cx();
  Constants& C = cc();
  for (long long N : {1, 2}) {
    QPolynomial qi = q_poly_interpolate(C, {1}, N, 4);
    QPolynomial qc = q_poly_constructive(C, {1}, N);
    CHECK((qi.as_tate(c) - qc.as_tate(c)).certified_below(40));
  }
  CHECK_THROWS_AS(q_poly_constructive(C, {}, 1), error);
}

TEST_CASE("z-degree bound of exp_z(L(1,s,z)) for s = q") {
  // Prop bound: deg_z <= (s-1)/(q-1) = 1 at s = q = 2; the z^2 coefficient of
  // exp_z(L(1,2,z)) must vanish
  auto& c = cx();
  Constants& C = cc();
  long long prec = c.work_num();
  std::vector<int> vars{1, 2};
  std::vector<Tate> L;
  for (int d = 0; d <= 2; ++d) L.push_back(power_sum_bruteforce_vars(c, vars, 1, d, prec));
  Tate z2(c);
  for (int a = 0; a <= 2; ++a) {
    Tate t = L[2 - a].twist(a);
    for (int v : vars) t = t * C.b(a, v);
    z2.accumulate(t.scale(C.D(a).inv(prec)));
  }
  CHECK(z2.certified_below(40));
}

TEST_CASE("normalizer identity of the power-sum theorem, d <= 3") {
  // ell_{r-1}^{q^r-N} b_r(U) omega_U / pi^N * S_d = (omega_U Q Omega^N)^{(d)}|_{t=theta}
  auto& c = cx();
  Constants& C = cc();
  VarSet U{1};
  long long N = 1;
  QPolynomial Q = q_poly(C, U, N);
  long long deep = c.work_num() * c.qpow(3);
  Tate omU = C.omega_U(U, deep);
  Tate Om = C.Omega(deep);
  RSeries pi = C.pi_carlitz(deep);
  Tate right_base = omU * Q.as_tate(c) * Om.pow(N);
  for (int d = 0; d <= 3; ++d) {
    Tate lhs = C.b_U(1, U) * omU * power_sum_bruteforce(c, U, N, d);
    lhs = lhs.scale(pi.pow(N).inv());
    Tate rhs = right_base.twist(d).eval_at_theta();
    CHECK((lhs - rhs).certified_below(30));
  }
}

TEST_CASE("norm certificates") {
  auto& c = cx();
  Constants& C = cc();
  for (auto& U : std::vector<VarSet>{{}, {1}})
    for (long long N : {1, 2}) {
      QPolynomial Q = q_poly(C, U, N);
      CHECK(Q.norm_certificate(c));
    }
  QPolynomial q0 = q_poly(C, {}, 2);
  CHECK(q0.as_tate(c).polynomial_over_A(40));
}
