#include "ffs/constants.hpp"

namespace ffsv {

RSeries Constants::bracket(int i) {
  require(i >= 1, errc::config, "[i] needs i >= 1");
  const auto& F = ctx_->F();
  return RSeries::monomial(*ctx_, F.one(), ctx_->R() * ctx_->qpow(i)) +
         RSeries::monomial(*ctx_, F.neg_one(), ctx_->R());
}

RSeries Constants::ell(int i) {
  require(i >= 0, errc::config, "ell_i needs i >= 0");
  std::lock_guard<std::mutex> lk(mu_);
  if (ell_.empty()) ell_.push_back(RSeries::one(*ctx_));
  while ((int)ell_.size() <= i) {
    int k = (int)ell_.size();
    // theta - theta^{q^k}
    RSeries f = RSeries::theta(*ctx_) -
                RSeries::monomial(*ctx_, ctx_->F().one(), ctx_->R() * ctx_->qpow(k));
    ell_.push_back(ell_.back() * f);
  }
  return ell_[i];
}

RSeries Constants::D(int i) {
  require(i >= 0, errc::config, "D_i needs i >= 0");
  std::lock_guard<std::mutex> lk(mu_);
  if (D_.empty()) D_.push_back(RSeries::one(*ctx_));
  while ((int)D_.size() <= i) {
    int k = (int)D_.size();
    RSeries f = RSeries::monomial(*ctx_, ctx_->F().one(), ctx_->R() * ctx_->qpow(k)) -
                RSeries::theta(*ctx_);
    D_.push_back(f * D_.back().twist(1));
  }
  return D_[i];
}

RSeries Constants::Gamma(long long N) {
  // Carlitz gamma: digits of N-1 (the convention under which Q_{empty,N}
  // lands in A[t])
  require(N >= 1, errc::config, "Gamma_N needs N >= 1");
  RSeries g = RSeries::one(*ctx_);
  long long q = ctx_->q();
  long long n = N - 1;
  for (int i = 0; n > 0; ++i, n /= q) {
    long long ni = n % q;
    if (ni) g = g * D(i).pow(ni);
  }
  return g;
}

Tate Constants::b(long long i, int var, long long prec_num) {
  long long prec = prec_or_work(prec_num);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = b_.find({i, var});
    if (it != b_.end() && (i >= 0 || it->second.first >= prec)) return it->second.second;
  }
  Tate r = Tate::one(*ctx_);
  if (i >= 1) {
    for (long long k = 0; k < i; ++k) {
      Tate f = Tate::var(*ctx_, var) -
               Tate::scalar(RSeries::monomial(*ctx_, ctx_->F().one(), ctx_->R() * ctx_->qpow(int(k))));
      r = r * f;
    }
  } else if (i <= -1) {
    require(-i <= ctx_->M(), errc::ramification_budget,
            "ramification budget exceeded for b_i, i < 0");
    for (long long k = 0; k < -i; ++k) {
      // (t_var - theta^{q^{-k-1}})^{-1}
      long long e = ctx_->R() / ctx_->qpow(int(k + 1));
      Tate f = Tate::var(*ctx_, var) -
               Tate::scalar(RSeries::monomial(*ctx_, ctx_->F().one(), e));
      r = r * f.inv_unit(prec);
    }
  }
  std::lock_guard<std::mutex> lk(mu_);
  b_[{i, var}] = {prec, r};
  return r;
}

Tate Constants::b_U(long long i, const VarSet& U, long long prec_num) {
  Tate r = Tate::one(*ctx_);
  for (int j : U) r = r * b(i, j, prec_num);
  return r;
}

Tate Constants::b_U_inv(long long i, const VarSet& U, long long prec_num) {
  require(i >= 0, errc::config, "b_U_inv expects i >= 0");
  long long prec = prec_or_work(prec_num);
  Tate r = Tate::one(*ctx_);
  for (int j : U) {
    for (long long k = 0; k < i; ++k) {
      Tate f = Tate::var(*ctx_, j) -
               Tate::scalar(RSeries::monomial(*ctx_, ctx_->F().one(),
                                              ctx_->R() * ctx_->qpow(int(k))));
      r = r * f.inv_unit(prec);
    }
  }
  return r;
}

Tate Constants::alpha(const VarSet& U) {
  Tate r = Tate::one(*ctx_);
  for (int j : U) r = r * Tate::var_minus_theta(*ctx_, j);
  return r;
}

Tate Constants::Omega(long long prec_num) {
  long long prec = prec_or_work(prec_num);
  {
    std::lock_guard<std::mutex> lk(mu_);
    if (omega_cache_.first >= prec) return omega_cache_.second;
  }
  const auto& F = ctx_->F();
  long long q = ctx_->q(), R = ctx_->R();
  // (-theta)^{-q/(q-1)} = zeta^{-q} theta^{-q/(q-1)}
  fq_t c = F.pow(F.inv(ctx_->zeta()), q);
  Tate r = Tate::scalar(RSeries::monomial(*ctx_, c, -q * (R / (q - 1))));
  int I = 1;
  while (ctx_->qpow(I + 1) * R <= prec) ++I;
  for (int i = 1; i <= I; ++i) {
    Tate f = Tate::one(*ctx_) -
             Tate::var(*ctx_, 0).scale(RSeries::monomial(*ctx_, F.one(), -R * ctx_->qpow(i)));
    r = r * f;
  }
  // omitted factors perturb by valuation >= q^{I+1} + q/(q-1)
  r = r.truncated(ctx_->qpow(I + 1) * R);
  std::lock_guard<std::mutex> lk(mu_);
  if (omega_cache_.first < prec) omega_cache_ = {prec, r};
  return r;
}

RSeries Constants::pi_carlitz(long long prec_num) {
  long long prec = prec_or_work(prec_num);
  {
    std::lock_guard<std::mutex> lk(mu_);
    if (pi_cache_.first >= prec) return pi_cache_.second;
  }
  const auto& F = ctx_->F();
  long long q = ctx_->q(), R = ctx_->R();
  // -theta (-theta)^{1/(q-1)} prod (1 - theta^{1-q^i})^{-1}
  RSeries r = RSeries::monomial(*ctx_, F.neg(ctx_->zeta()), R + R / (q - 1));
  int I = 1;
  while ((ctx_->qpow(I) - 1) * R <= prec) ++I;
  for (int i = 1; i <= I; ++i) {
    RSeries f = RSeries::one(*ctx_) -
                RSeries::monomial(*ctx_, F.one(), R * (1 - ctx_->qpow(i)));
    r = r * f.inv(prec);
  }
  r = r.truncated(*r.ord_num() + prec);
  std::lock_guard<std::mutex> lk(mu_);
  if (pi_cache_.first < prec) pi_cache_ = {prec, r};
  return r;
}

Tate Constants::omega_beta(const Tate& beta, long long prec_num) {
  long long prec = prec_or_work(prec_num);
  const auto& F = ctx_->F();
  long long q = ctx_->q();
  RSeries c0 = beta.scalar_part();
  require(!c0.floor_zero(), errc::not_a_unit, "leading-term extraction failed");
  long long e_lead = *c0.max_exp_num();
  fq_t c_lead = c0.leading_coeff();
  // dominant-monomial check: || beta - y || < || beta ||
  Tate dev = beta - Tate::scalar(RSeries::monomial(*ctx_, c_lead, e_lead));
  auto ndev = dev.norm_exp_num();
  long long delta;  // valuation gap of (beta - y)/y, > 0
  if (!ndev) delta = prec;
  else {
    require(*ndev < e_lead, errc::not_a_unit, "leading-term extraction failed");
    delta = e_lead - *ndev;
  }
  // gamma with gamma^{q-1} = y = c_lead theta^{e_lead}
  require(e_lead % (q - 1) == 0, errc::ramification_budget,
          "no canonical (q-1)-st root for the leading exponent");
  fq_t gc;
  bool ok = false;
  {  // smallest power of the generator with g^{k(q-1)} = c_lead
    fq_t x = F.one();
    for (std::uint32_t j = 0; j < F.size(); ++j) {
      if (F.pow(x, q - 1) == c_lead) { gc = x; ok = true; break; }
      x = F.mul(x, F.generator());
    }
  }
  require(ok, errc::config, "no (q-1)-st root of the leading coefficient");
  RSeries gamma = RSeries::monomial(*ctx_, gc, e_lead / (q - 1));

  Tate r = Tate::scalar(gamma);
  RSeries y = RSeries::monomial(*ctx_, c_lead, e_lead);
  for (int i = 0; delta * ctx_->qpow(i) <= prec; ++i) {
    Tate ti = beta.twist(i).inv_unit(prec).scale(y.twist(i));
    r = r * ti;
  }
  long long vr = -(e_lead / (q - 1));  // valuation of omega_beta
  if (r.floor_num() != RSeries::EXACT) r = r.truncated(vr + prec);
  return r;
}

Tate Constants::omega_var(int i, long long prec_num) {
  long long prec = prec_or_work(prec_num);
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = omega_var_.find(i);
    if (it != omega_var_.end() && it->second.first >= prec) return it->second.second;
  }
  Tate r = omega_beta(Tate::var_minus_theta(*ctx_, i), prec);
  std::lock_guard<std::mutex> lk(mu_);
  auto& slot = omega_var_[i];
  if (slot.first < prec) slot = {prec, r};
  return r;
}

Tate Constants::omega_U(const VarSet& U, long long prec_num) {
  Tate r = Tate::one(*ctx_);
  for (int j : U) r = r * omega_var(j, prec_num);
  return r;
}

RSeries Constants::omega_at_fq(fq_t xi, long long prec_num) {
  long long prec = prec_or_work(prec_num);
  const auto& F = ctx_->F();
  long long R = ctx_->R(), q = ctx_->q();
  // gamma = zeta theta^{1/(q-1)}; factors y^{q^i} / (xi - theta^{q^i})
  RSeries r = RSeries::monomial(*ctx_, ctx_->zeta(), R / (q - 1));
  for (int i = 0; ctx_->qpow(i) * R <= prec + R; ++i) {
    RSeries denom = RSeries::constant(*ctx_, xi) -
                    RSeries::monomial(*ctx_, F.one(), R * ctx_->qpow(i));
    RSeries ynum = RSeries::monomial(*ctx_, F.pow(F.neg_one(), ctx_->qpow(i)),
                                     R * ctx_->qpow(i));
    r = r * (ynum * denom.inv(prec));
  }
  return r.truncated(*r.ord_num() + prec);
}

} // namespace ffsv
