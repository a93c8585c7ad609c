#pragma once

#include <cstdint>

#include "ffs/tate.hpp"

namespace ffsv {

// splitmix64: tiny deterministic generator for seeded test vectors
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  std::uint64_t below(std::uint64_t n) { return next() % n; }

  fq_t field_elem(const Context& ctx) { return fq_t(below(ctx.F().size())); }
  fq_t field_unit(const Context& ctx) { return fq_t(1 + below(ctx.F().size() - 1)); }

  // random series with integer exponents in [lo_exp, hi_exp], a handful of terms
  RSeries series(const Context& ctx, long long lo_exp, long long hi_exp, int max_terms = 4) {
    RSeries r(ctx);
    int n = 1 + int(below(max_terms));
    for (int i = 0; i < n; ++i) {
      long long e = lo_exp + (long long)below(std::uint64_t(hi_exp - lo_exp + 1));
      r = r + RSeries::monomial(ctx, field_elem(ctx), e * ctx.R());
    }
    return r;
  }

  // random Tate polynomial in the given variables
  Tate tate(const Context& ctx, const VarSet& vars, long long lo_exp, long long hi_exp,
            int max_deg = 2, int max_terms = 3) {
    Tate r(ctx);
    int n = 1 + int(below(max_terms));
    for (int i = 0; i < n; ++i) {
      Tate mono = Tate::scalar(series(ctx, lo_exp, hi_exp, 2));
      for (int v : vars)
        mono = mono * Tate::var(ctx, v).pow(below(max_deg + 1));
      r.accumulate(mono);
    }
    return r;
  }
};

} // namespace ffsv
