#pragma once

#include <vector>

#include "ffs/constants.hpp"
#include "ffs/monic.hpp"

namespace ffsv {

// S_d(U,N) = sum over monic a of degree d of  prod_{j in U} a(t_j) / a^N.
Tate power_sum_bruteforce(const Context& ctx, const VarSet& U, long long N, int d,
                          long long prec_num = -1);
// same but over an explicit variable list (used by the z-series machinery)
Tate power_sum_bruteforce_vars(const Context& ctx, const std::vector<int>& vars,
                               long long N, int d, long long prec_num = -1);

// The unique polynomial with S_d(U,N) = b_d(U)/(ell_d^N ell_{r-1}^{q^r-N} b_r(U))
// (tau^d Q)|_{t=theta} for all d (for U = empty the normalizer is ell_d^N Gamma_N).
struct QPolynomial {
  VarSet U;
  long long N = 1;
  int r = 1;                  // minimal r >= 1 with N <= q^r
  std::vector<Tate> coeffs;   // t^k coefficient, auxiliary t not inside
  std::string built_by;       // "interpolation" or "constructive"

  int deg() const { return int(coeffs.size()) - 1; }
  Tate as_tate(const Context& ctx) const;  // sum coeffs[k] t^k
  // Gauss norm certificate || Q || < q^{(Nq-|U|)/(q-1)}
  bool norm_certificate(const Context& ctx) const;
};

int minimal_r(const Context& ctx, long long N);

// Lagrange interpolation through the nodes t = theta^{q^-d}; validates at two
// held-out degrees.  max_b limits the trial degree (enumeration / budget).
QPolynomial q_poly_interpolate(Constants& cc, const VarSet& U, long long N, int max_b);

// The exp_z / L(1,s,z) construction of Q_{U,N}; U must be nonempty.
QPolynomial q_poly_constructive(Constants& cc, const VarSet& U, long long N);

// Dispatch: interpolation while the trial degree stays within the enumeration
// and twist budgets, else the constructive path; result always validated
// against brute force at low degrees plus two held-out degrees.
QPolynomial q_poly(Constants& cc, const VarSet& U, long long N);

// S_d via Q: running product keeps term counts bounded at any d.
Tate power_sum_via_q(Constants& cc, const QPolynomial& Q, int d,
                     long long prec_num = -1);

// Memoizing provider used by the zeta/polylog machinery.
class PowerSumProvider {
public:
  explicit PowerSumProvider(Constants& cc) : cc_(&cc) {}
  const QPolynomial& q_for(const VarSet& U, long long N);
  Tate S(const VarSet& U, long long N, int d);
  Constants& constants() { return *cc_; }

private:
  Constants* cc_;
  std::map<std::pair<std::vector<int>, long long>, QPolynomial> qpolys_;
  std::map<std::tuple<std::vector<int>, long long, int>, Tate> svals_;
};

} // namespace ffsv
