#pragma once

#include "ffs/matrix.hpp"
#include "ffs/mzv.hpp"

namespace ffsv {

// Element of A = F_q[theta], low coefficients first.
struct APoly {
  std::vector<fq_t> c;
  static APoly theta_power(long long e, fq_t lead) {
    APoly a;
    a.c.assign(std::size_t(e) + 1, 0);
    a.c.back() = lead;
    return a;
  }
};

// phi(theta) = theta Id + N + E tau with N nilpotent over F_q.
class AndersonModule {
public:
  AndersonModule() = default;
  AndersonModule(const Context& ctx, TMat N, TMat E);

  const Context& ctx() const { return *ctx_; }
  int dim() const { return n_; }
  int dprime() const { return dprime_; }
  const TMat& N() const { return N_; }
  const TMat& E() const { return E_; }
  TMat A0() const;      // theta Id + N
  TMat A0_inv() const;  // exact finite expansion

  const TMat& beta(int i) const;  // exp stream (lazily extended)
  const TMat& P(int i) const;     // log stream

  Vec theta_action(const Vec& x) const;          // A0 x + E tau(x)
  Vec poly_action(const APoly& a, const Vec& x) const;
  Vec partial_action(const APoly& a, const Vec& x) const;   // a(A0) x

  Vec exp_apply(const Vec& x, long long target_floor) const;
  // When certified_domain is false the generic P-norm bound must also decay;
  // module-G callers certify convergence via the per-coordinate domain
  // bounds first and then stop
  // on observed decay alone.
  Vec log_apply(const Vec& x, long long target_floor,
                bool certified_domain = false) const;

  // exp-coefficient norm bound and ad-nilpotency vanishing
  bool beta_norm_bound_holds(int upto) const;
  bool ad_vanishing_holds() const;

private:
  const Context* ctx_ = nullptr;
  int n_ = 0, dprime_ = 1;
  TMat N_, E_;
  mutable std::vector<TMat> beta_, P_;
};

// ad(N)^j(Y) iterates [N, -].
TMat ad_pow(const TMat& N, const TMat& Y, int j);

// The block module G attached to a composition array and a point u.
struct ModuleG {
  CompositionArray C;
  std::vector<Tate> u;
  std::vector<long long> d;  // d_j = s_j + ... + s_r
  long long k = 0;
  AndersonModule mod;

  static ModuleG build(Constants& cc, const CompositionArray& C, const std::vector<Tate>& u);
  // offset of the block-j corner coordinate d_1 + ... + d_j (1-based place)
  long long corner(int j) const;
  bool log_domain_ok(const Vec& x) const;  // per-coordinate norm gate
  Vec special_point() const;
  // closed-form corner entries of the log coefficients P_i
  Tate log_corner_closed_form(Constants& cc, int i, int l, int m) const;
  TMat Phi(Constants& cc) const;                   // sigma-action matrix, r x r
  TMat Psi(MzvEngine& mz, long long target) const; // trivialization, r x r
};

CompositionArray reversed(const CompositionArray& C);
std::vector<Tate> reversed(const std::vector<Tate>& u);

// L_{u_{l,j}}-type series: sum over strict chains of prod over rows of
// (omega_{U_a} Omega^{s_a} f_a)^{(i_a)}; f_a are Tate elements (for the
// section-2.5 matrices they are the polynomials Q_{U_a,s_a}(t)).
Tate twisted_L_series(MzvEngine& mz, const std::vector<CompositionArray::Row>& rows,
                      const std::vector<Tate>& f, long long target_floor);

// Theorem star0 tuples (zero components dropped, depth-1 first).
struct StarTuple {
  fq_t sign;            // (-1)^{r-1} folded with nothing else; a_l = sign theta^e
  long long theta_exp;
  CompositionArray C;
  std::vector<Tate> u;
};

struct GCAssembly {
  CompositionArray C;
  long long w = 0, kC = 0;
  int s_count = 0;                    // number of depth-1 tuples
  std::vector<StarTuple> tuples;
  std::vector<ModuleG> G;             // for (reversed C_l, reversed u_l)
  AndersonModule GC;
  TMat Lambda;                        // kC x sum k_l
  std::vector<Vec> vl, Zl;
  Vec vC, ZC;
};

GCAssembly assemble_GC(MzvEngine& mz, const CompositionArray& C, long long target_floor);

struct CheckReport {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Logarithmic interpretation: w-th coordinate of Z_C vs Gamma_C zeta_C,
// exp(Z_C) = v_C,
// Lambda intertwining (exact and under exp on seeded vectors).
std::vector<CheckReport> verify_result2(MzvEngine& mz, GCAssembly& A,
                                        long long target_floor, std::uint64_t seed);

// Coordinates of log_G at the special point vs star polylogarithms.
std::vector<CheckReport> verify_log_special(MzvEngine& mz, const CompositionArray& C,
                                            const std::vector<Tate>& u,
                                            long long target_floor);

// Rigid-analytic checks.
CheckReport rigid_verify_moduleG(MzvEngine& mz, const ModuleG& g, long long target_floor);
// column trivialization built from the Q-polynomials, plus the evaluation
// identity L_{r+1}(theta) pi^w = prod omega_{U_i} Gamma_C zeta_C
std::vector<CheckReport> rigid_verify_zeta_column(MzvEngine& mz, const CompositionArray& C,
                                                 long long target_floor);

// Solves the twisted fixed-point equation H(F^{(-1)} - Q^{(-1)} G^{(-1)}) = F.
Tate solve_twist(const Tate& H, const Tate& Q, const Tate& G, long long target_floor);
// Lower-triangular U with U^{(-1)} b_0 = U; returns U and b_0.
std::pair<TMat, TMat> matrix_U(MzvEngine& mz, const CompositionArray& C,
                               long long target_floor);

// Appendix: division towers and the delta operators.
std::vector<CheckReport> division_tower(const AndersonModule& mod, const Vec& zeta,
                                        int n_max, long long target_floor);

// row sigma-polynomial (coefficients are 1 x k row matrices)
struct SigmaPoly {
  std::vector<TMat> c;
};
SigmaPoly sigma_mul_star(const SigmaPoly& h, const AndersonModule& mod);  // h * G_theta^*
Vec delta0(const SigmaPoly& h);
Vec delta1(const SigmaPoly& h);
CheckReport delta_identity_check(const AndersonModule& mod, std::uint64_t seed, int count);

} // namespace ffsv
