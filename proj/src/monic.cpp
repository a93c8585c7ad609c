#include "ffs/monic.hpp"

namespace ffsv {

long long monic_count(const Context& ctx, int d) {
  require(d >= 0, errc::config, "negative degree");
  long long n = 1;
  for (int i = 0; i < d; ++i) {
    n *= ctx.q();
    require(n <= ctx.prec().enum_cap, errc::enumeration_cap,
            "enumeration cap exceeded");
  }
  return n;
}

void enumerate_monic(const Context& ctx, int d,
                     const std::function<void(const MonicPoly&)>& fn) {
  long long n = monic_count(ctx, d);
  const auto& sub = ctx.F().subfield_fq();
  MonicPoly a;
  a.low.assign(d, 0);
  for (long long k = 0; k < n; ++k) {
    long long t = k;
    for (int i = 0; i < d; ++i) { a.low[i] = sub[t % ctx.q()]; t /= ctx.q(); }
    fn(a);
  }
}

bool MonicPoly::irreducible(const Context& ctx) const {
  if (degree() == 0) return false;
  if (degree() == 1) return true;
  // trial division by monic polynomials of degree <= d/2
  auto rem_is_zero = [&](const MonicPoly& g) {
    std::vector<fq_t> r = low;
    r.push_back(ctx.F().one());
    int dg = g.degree();
    const auto& F = ctx.F();
    for (int k = int(r.size()) - 1; k >= dg; --k) {
      fq_t top = r[k];
      if (!top) continue;
      r[k] = 0;
      for (int j = 0; j < dg; ++j)
        r[k - dg + j] = F.sub(r[k - dg + j], F.mul(top, g.low[j]));
    }
    for (int j = 0; j < dg; ++j)
      if (r[j]) return false;
    return true;
  };
  for (int dg = 1; 2 * dg <= degree(); ++dg) {
    bool found = false;
    enumerate_monic(ctx, dg, [&](const MonicPoly& g) {
      if (!found && rem_is_zero(g)) found = true;
    });
    if (found) return false;
  }
  return true;
}

} // namespace ffsv
