#pragma once

#include "ffs/powersums.hpp"

namespace ffsv {

// The pair of rows (U_1..U_r ; s_1..s_r): weight sum s_i, depth r.
struct CompositionArray {
  struct Row {
    VarSet U;
    long long s = 1;
  };
  std::vector<Row> rows;

  int depth() const { return int(rows.size()); }
  long long weight() const {
    long long w = 0;
    for (auto& r : rows) w += r.s;
    return w;
  }
  VarSet Sigma() const {
    VarSet S;
    for (auto& r : rows) S.insert(r.U.begin(), r.U.end());
    return S;
  }
  std::string str() const;
};

struct Residual {
  Tate value;
  long long cert_num = 0;  // certified valuation numerator of the residual
  bool pass = false;
  std::string detail;
};

// Deformed multiple zeta values, multiple (star) polylogarithms, the Theorem
// 1.1 decomposition, star decomposition, and Dirichlet-Goss specialization.
class MzvEngine {
public:
  explicit MzvEngine(PowerSumProvider& ps) : ps_(&ps) {}
  const Context& ctx() const { return ps_->constants().ctx(); }
  Constants& constants() { return ps_->constants(); }
  PowerSumProvider& powersums() { return *ps_; }

  // sum over i_1 > ... > i_r >= 0 of S_{i_1}(U_1,s_1)...S_{i_r}(U_r,s_r);
  // shells on i_1 stop after two consecutive drops below target+8
  Tate zeta(const CompositionArray& C, long long target_floor);
  // partial sum over the shells i_1 <= d_max only
  Tate zeta_partial(const CompositionArray& C, int d_max);
  // direct enumeration over polynomial tuples with |a_1| > ... > |a_r|,
  // deg a_1 <= d_max (the oracle for small instances)
  Tate zeta_bruteforce(const CompositionArray& C, int d_max);

  // convergence-domain certificates
  bool in_D_prime(const CompositionArray& C, const std::vector<Tate>& u) const;
  bool in_D_dprime(const CompositionArray& C, const std::vector<Tate>& u) const;

  // multiple polylogarithm (strict chains) and its star variant (weak chains)
  Tate li(const CompositionArray& C, const std::vector<Tate>& u, bool star,
          long long target_floor);

  struct StarTerm {
    int gamma = 0;  // number of '+' symbols merged
    CompositionArray C;
    std::vector<Tate> u;
  };
  // all 2^(r-1) symbol vectors of Eq. Li = sum (-1)^gamma Li*
  static std::vector<StarTerm> star_decompose(const CompositionArray& C,
                                              const std::vector<Tate>& u);

  struct Thm11Data {
    Tate GammaC;
    std::vector<int> degs;  // t-degree of Q_{U_i,s_i}
    struct Term {
      long long theta_exp = 0;    // a_i = theta^(j_1+...+j_r)
      std::vector<Tate> u;        // (u_{1 j_1}, ..., u_{r j_r})
    };
    std::vector<Term> terms;      // zero tuples dropped
  };
  Thm11Data thm11_assemble(const CompositionArray& C);

  // residual of Gamma_C zeta - sum a_i Li(u_i)
  Residual verify_thm11(const CompositionArray& C, long long target_floor);
  // residual of Gamma_C zeta - sum a_l (-1)^(dep-1) Li*(u_l)  (Theorem star0)
  Residual verify_star_theorem(const CompositionArray& C, long long target_floor);

  // Dirichlet-Goss: specialize zeta at t_j = xi_j (U_i pairwise disjoint)
  Tate lvalue_specialize(const CompositionArray& C, const std::map<int, fq_t>& xi,
                         long long target_floor);
  // oracle: direct character-sum enumeration
  Tate lvalue_direct(const CompositionArray& C, const std::map<int, fq_t>& xi,
                     long long target_floor);

  // g(v_p) = p'(xi)^{-1} omega(xi) for irreducible monic p with root xi
  RSeries gauss_thakur(const MonicPoly& p, fq_t xi);

  // Li weight factor b_i(U)/ell_i^s, memoized per row
  Tate li_weight(const VarSet& U, long long s, int i);

private:
  Tate zeta_inner(const CompositionArray& C, int j, int bound,
                  std::map<std::pair<int, int>, Tate>& memo);
  PowerSumProvider* ps_;
  std::map<std::tuple<std::vector<int>, long long, int>, Tate> li_w_;
};

} // namespace ffsv
