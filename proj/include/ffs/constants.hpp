#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "ffs/tate.hpp"

namespace ffsv {

// Named special elements: ell_i, D_i, Gamma_N, b_i(t_j), Omega, the Carlitz
// period, Anderson-Thakur elements.  Memoized per context; the cache is
// append-only behind a mutex, values handed out by copy.
class Constants {
public:
  explicit Constants(const Context& ctx) : ctx_(&ctx) {}

  const Context& ctx() const { return *ctx_; }

  RSeries ell(int i);              // ell_0 = 1, ell_i = (theta-theta^q)...(theta-theta^{q^i})
  RSeries D(int i);                // D_0 = 1, D_i = (theta^{q^i}-theta) D_{i-1}^q
  RSeries Gamma(long long N);      // prod D_i^{n_i} over base-q digits of N
  RSeries bracket(int i);          // [i] = theta^{q^i} - theta

  // b_i(t_var); i < 0 gives the truncated inverse product and needs budget
  Tate b(long long i, int var, long long prec_num = -1);
  Tate b_U(long long i, const VarSet& U, long long prec_num = -1);
  // 1 / b_i(U) for i >= 0, inverted factor by factor (linear factors have
  // short closed-form inverses)
  Tate b_U_inv(long long i, const VarSet& U, long long prec_num = -1);
  Tate alpha(const VarSet& U);     // prod_{j in U} (t_j - theta)

  Tate Omega(long long prec_num = -1);          // truncation of Omega(t), var 0
  RSeries pi_carlitz(long long prec_num = -1);  // Carlitz period (normalized so Omega(theta) pi = 1)

  // Anderson-Thakur element for a unit beta; gamma^{q-1} = dominant scalar y
  Tate omega_beta(const Tate& beta, long long prec_num = -1);
  Tate omega_var(int i, long long prec_num = -1);   // omega_{t_i - theta}
  Tate omega_U(const VarSet& U, long long prec_num = -1);

  // one-variable omega evaluated at t = xi by factor-wise products
  RSeries omega_at_fq(fq_t xi, long long prec_num = -1);

private:
  long long prec_or_work(long long p) const {
    return p < 0 ? ctx_->work_num() : p;
  }
  const Context* ctx_;
  std::mutex mu_;
  std::vector<RSeries> ell_, D_;
  std::map<std::pair<long long, int>, std::pair<long long, Tate>> b_;  // (i,var) -> (prec, value)
  std::pair<long long, Tate> omega_cache_{-1, Tate()};
  std::pair<long long, RSeries> pi_cache_{-1, RSeries()};
  std::map<int, std::pair<long long, Tate>> omega_var_;
};

} // namespace ffsv
