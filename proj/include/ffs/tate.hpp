#pragma once

#include <climits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ffs/rseries.hpp"

namespace ffsv {

// Variable index 0 is the reserved auxiliary t; indices >= 1 are the t_i.
using VarSet = std::set<int>;

struct Monomial {
  std::vector<std::pair<int, int>> v;  // sorted (var, exp), exp > 0
  int deg() const {
    int d = 0;
    for (auto& [var, e] : v) d += e;
    return d;
  }
  // total degree in the Sigma-variables (the auxiliary t is var 0 and is
  // never capped: its truncation is floor-driven)
  int deg_sigma() const {
    int d = 0;
    for (auto& [var, e] : v)
      if (var != 0) d += e;
    return d;
  }
  int exp_of(int var) const {
    for (auto& [w, e] : v)
      if (w == var) return e;
    return 0;
  }
  Monomial times(const Monomial& o) const;
  static Monomial one() { return {}; }
  static Monomial single(int var, int e) { return Monomial{{{var, e}}}; }
  bool operator==(const Monomial& o) const { return v == o.v; }
};

// graded-lex: total degree first, then lexicographic with t < t_1 < t_2 < ...
struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

// Finite sum of t-monomials with RSeries coefficients plus a total t-degree
// truncation marker (INT_MAX for genuine polynomials).  floor() bounds the
// valuation of every unknown coefficient.
class Tate {
public:
  using Map = std::map<Monomial, RSeries, MonomialLess>;

  Tate() : ctx_(nullptr), floor_(RSeries::EXACT), tcap_(INT_MAX) {}
  explicit Tate(const Context& ctx)
      : ctx_(&ctx), floor_(RSeries::EXACT), tcap_(INT_MAX) {}

  static Tate zero(const Context& ctx) { return Tate(ctx); }
  static Tate scalar(const RSeries& c);
  // raw assembly from parsed parts (coefficient floors kept verbatim)
  static Tate assemble(const Context& ctx,
                       std::vector<std::pair<Monomial, RSeries>> items,
                       long long floor_num, int cap);
  static Tate one(const Context& ctx) { return scalar(RSeries::one(ctx)); }
  static Tate var(const Context& ctx, int j);  // t_j (j = 0 is the auxiliary t)
  // value - theta  (the ubiquitous t_j - theta)
  static Tate var_minus_theta(const Context& ctx, int j);

  const Context& ctx() const { return *ctx_; }
  const Map& terms() const { return terms_; }
  long long floor_num() const { return floor_; }
  int tcap() const { return tcap_; }
  bool is_polynomial() const { return tcap_ == INT_MAX; }
  bool known_zero() const { return terms_.empty() && floor_ == RSeries::EXACT; }

  RSeries coeff(const Monomial& m) const;
  RSeries scalar_part() const { return coeff(Monomial::one()); }
  // coefficient of var^k collected as a Tate element in the other variables
  Tate coeff_of_power(int var, int k) const;
  int degree_in(int var) const;
  VarSet vars() const;

  // Gauss norm exponent (sup over coefficient norms); nullopt when no known term
  std::optional<long long> norm_exp_num() const;
  long long cert_valuation_num() const;
  bool certified_below(long long target_valuation) const;

  Tate operator-() const;
  Tate operator+(const Tate& o) const;
  Tate operator-(const Tate& o) const;
  Tate operator*(const Tate& o) const;
  void accumulate(const Tate& o);  // in-place +=
  bool operator==(const Tate& o) const {
    return terms_ == o.terms_ && floor_ == o.floor_ && tcap_ == o.tcap_;
  }
  bool operator!=(const Tate& o) const { return !(*this == o); }

  Tate scale(const RSeries& c) const;
  Tate scale_fq(fq_t c) const;
  Tate with_cap(int cap) const;       // lower the Sigma-degree cap
  // drop terms of degree > k in the auxiliary t (check-time truncation)
  Tate truncate_t_degree(int k) const;
  Tate truncated(long long floor_num) const;

  // inverse of a unit with dominant scalar coefficient
  Tate inv_unit(long long rel_num = -1) const;
  Tate pow(long long n) const;
  Tate twist(long long n) const;

  // substitute t_j -> value for all (j, value) in bindings; values with norm
  // > 1 applied to a capped element set *disc_warning (computed on truncation)
  Tate specialize(const std::map<int, RSeries>& bindings,
                  bool* disc_warning = nullptr) const;
  Tate eval_at_theta() const;  // specialize the auxiliary t at theta

  // true if all coefficients lie in F_q[theta] up to the given floor
  bool polynomial_over_A(long long target_valuation) const;

  std::string str() const;

private:
  void put(const Monomial& m, const RSeries& c);
  void normalize();
  const Context* ctx_;
  Map terms_;
  long long floor_;
  int tcap_;
};

} // namespace ffsv
