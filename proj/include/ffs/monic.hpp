#pragma once

#include <functional>
#include <vector>

#include "ffs/tate.hpp"

namespace ffsv {

// Monic polynomial in A = F_q[theta]; coefficients are F_q elements embedded
// in F_{q^m}, low degree first, with an implicit leading 1.
struct MonicPoly {
  std::vector<fq_t> low;  // coefficients of theta^0 .. theta^(d-1)
  int degree() const { return int(low.size()); }

  RSeries as_series(const Context& ctx) const {
    RSeries r = RSeries::monomial(ctx, ctx.F().one(), ctx.R() * degree());
    for (int k = 0; k < degree(); ++k)
      if (low[k]) r = r + RSeries::monomial(ctx, low[k], ctx.R() * k);
    return r;
  }
  // a(t_j): substitute theta -> t_j
  Tate at_var(const Context& ctx, int j) const {
    Tate r = Tate::scalar(RSeries::zero(ctx));
    for (int k = 0; k < degree(); ++k)
      if (low[k]) r = r + Tate::var(ctx, j).pow(k).scale_fq(low[k]);
    return r + Tate::var(ctx, j).pow(degree());
  }
  // a(xi) for xi in F_{q^m}
  fq_t at_fq(const Context& ctx, fq_t xi) const {
    const auto& F = ctx.F();
    fq_t acc = F.one();  // leading coefficient
    for (int k = degree() - 1; k >= 0; --k) acc = F.add(F.mul(acc, xi), low[k]);
    return acc;
  }
  // derivative with respect to theta, evaluated at xi
  fq_t derivative_at_fq(const Context& ctx, fq_t xi) const {
    const auto& F = ctx.F();
    auto mod_scale = [&](fq_t c, long long k) {
      fq_t r = 0;
      for (long long i = 0; i < k % ctx.F().p(); ++i) r = F.add(r, c);
      return r;
    };
    fq_t acc = mod_scale(F.one(), degree());
    for (int k = degree() - 1; k >= 1; --k)
      acc = F.add(F.mul(acc, xi), mod_scale(low[k], k));
    return acc;
  }
  bool irreducible(const Context& ctx) const;
};

// Exactly q^d monic polynomials of degree d, visited in a fixed order: the
// k-th has coefficients given by the base-q digits of k mapped through the
// canonical F_q order.
void enumerate_monic(const Context& ctx, int d,
                     const std::function<void(const MonicPoly&)>& fn);
long long monic_count(const Context& ctx, int d);  // errc::enumeration_cap beyond cap

} // namespace ffsv
