#include "ffs/context.hpp"

namespace ffsv {

Context::Context(FieldParams fp, PrecisionParams pp) : fp_(fp), pp_(pp) {
  require(fp.p >= 2 && fp.e >= 1 && fp.m >= 1 && fp.M >= 1, errc::config, "bad field params");
  require(pp.v_floor >= 1 && pp.slack >= 0 && pp.t_cap >= 1, errc::config, "bad precision params");
  q_ = 1;
  for (int i = 0; i < fp.e; ++i) {
    q_ *= fp.p;
    require(q_ <= 256, errc::config, "q too large");
  }

  // Raise m until F_{q^m} contains a (q-1)-st root of -1.
  m_eff_ = fp.m;
  for (;; ++m_eff_) {
    require(m_eff_ <= 8, errc::config, "no (q-1)-st root of -1 within m <= 8");
    auto F = std::make_unique<SmallField>(fp.p, fp.e, m_eff_);
    fq_t neg1 = F->neg_one();
    // smallest power of the canonical generator whose (q-1)-st power is -1
    bool found = false;
    if (q_ == 2) { zeta_ = F->one(); found = true; }
    else {
      fq_t x = F->one();
      for (std::uint32_t j = 0; j + 1 < F->size(); ++j) {
        if (F->pow(x, q_ - 1) == neg1) { zeta_ = x; found = true; break; }
        x = F->mul(x, F->generator());
      }
    }
    if (found) { F_ = std::move(F); break; }
  }

  R_ = q_ - 1;
  for (int i = 0; i < fp.M; ++i) {
    R_ *= q_;
    require(R_ < (1LL << 40), errc::config, "ramification denominator too large");
  }
}

long long Context::qpow(int k) const {
  require(k >= 0, errc::config, "qpow of negative");
  long long r = 1;
  for (int i = 0; i < k; ++i) {
    require(r < (1LL << 56) / q_, errc::config, "qpow overflow");
    r *= q_;
  }
  return r;
}

} // namespace ffsv
