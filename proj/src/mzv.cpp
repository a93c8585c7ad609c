#include "ffs/mzv.hpp"

#include <sstream>

namespace ffsv {

std::string CompositionArray::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < rows.size(); ++i) {
    if (i) os << ",";
    os << "{";
    bool first = true;
    for (int v : rows[i].U) {
      if (!first) os << " ";
      first = false;
      os << v;
    }
    os << "}";
  }
  os << ";";
  for (size_t i = 0; i < rows.size(); ++i) {
    if (i) os << ",";
    os << rows[i].s;
  }
  os << ")";
  return os.str();
}

Tate MzvEngine::zeta_inner(const CompositionArray& C, int j, int bound,
                           std::map<std::pair<int, int>, Tate>& memo) {
  const Context& cx = ctx();
  if (j >= C.depth()) return Tate::one(cx);
  auto key = std::make_pair(j, bound);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  Tate acc(cx);
  for (int i = C.depth() - 1 - j; i < bound; ++i) {
    Tate term = ps_->S(C.rows[j].U, C.rows[j].s, i) * zeta_inner(C, j + 1, i, memo);
    acc.accumulate(term);
  }
  memo.emplace(key, acc);
  return acc;
}

Tate MzvEngine::zeta(const CompositionArray& C, long long target_floor) {
  const Context& cx = ctx();
  require(C.depth() >= 1, errc::config, "composition array needs depth >= 1");
  long long tgt = target_floor + 8;  // two-shell safety margin (recompute deeper)
  std::map<std::pair<int, int>, Tate> memo;
  Tate acc(cx);
  int small_shells = 0;
  int d = C.depth() - 1;
  for (; d <= cx.d_cap(); ++d) {
    Tate shell = ps_->S(C.rows[0].U, C.rows[0].s, d) * zeta_inner(C, 1, d, memo);
    acc.accumulate(shell);
    auto ne = shell.norm_exp_num();
    bool small = !ne || *ne < -tgt * cx.R();
    small_shells = small ? small_shells + 1 : 0;
    if (small_shells >= 2) break;
  }
  require(d <= cx.d_cap(), errc::precision_unreachable,
          "precision unreachable at cap: zeta shells did not decay");
  return acc.truncated(tgt * cx.R());
}

Tate MzvEngine::zeta_partial(const CompositionArray& C, int d_max) {
  const Context& cx = ctx();
  std::map<std::pair<int, int>, Tate> memo;
  Tate acc(cx);
  for (int d = C.depth() - 1; d <= d_max; ++d)
    acc.accumulate(ps_->S(C.rows[0].U, C.rows[0].s, d) * zeta_inner(C, 1, d, memo));
  return acc;
}

Tate MzvEngine::zeta_bruteforce(const CompositionArray& C, int d_max) {
  const Context& cx = ctx();
  int r = C.depth();
  long long prec = cx.work_num();
  Tate total(cx);
  // enumerate degree tuples d_1 > d_2 > ... > d_r >= 0, then polynomial tuples
  std::vector<int> ds(r);
  std::function<void(int, int, Tate)> rec = [&](int j, int bound, Tate partial) {
    if (j == r) {
      total.accumulate(partial);
      return;
    }
    for (int dj = r - 1 - j; dj < bound; ++dj) {
      enumerate_monic(cx, dj, [&](const MonicPoly& a) {
        Tate term = Tate::scalar(a.as_series(cx).pow(C.rows[j].s).inv(prec));
        for (int v : C.rows[j].U) term = term * a.at_var(cx, v);
        rec(j + 1, dj, partial * term);
      });
    }
  };
  rec(0, d_max + 1, Tate::one(cx));
  return total;
}

bool MzvEngine::in_D_prime(const CompositionArray& C, const std::vector<Tate>& u) const {
  const Context& cx = ctx();
  for (int i = 0; i < C.depth(); ++i) {
    auto ne = u[i].norm_exp_num();
    if (!ne) continue;
    long long n = (long long)C.rows[i].U.size();
    if (*ne * (cx.q() - 1) >= (C.rows[i].s * cx.q() - n) * cx.R()) return false;
  }
  return true;
}

bool MzvEngine::in_D_dprime(const CompositionArray& C, const std::vector<Tate>& u) const {
  const Context& cx = ctx();
  for (int i = 0; i < C.depth(); ++i) {
    auto ne = u[i].norm_exp_num();
    if (!ne) continue;
    long long n = (long long)C.rows[i].U.size();
    long long lhs = *ne * (cx.q() - 1);
    long long rhs = (C.rows[i].s * cx.q() - n) * cx.R();
    if (i == 0 ? lhs >= rhs : lhs > rhs) return false;
  }
  return true;
}

Tate MzvEngine::li_weight(const VarSet& U, long long s, int i) {
  const Context& cx = ctx();
  auto key = std::make_tuple(std::vector<int>(U.begin(), U.end()), s, i);
  auto it = li_w_.find(key);
  if (it != li_w_.end()) return it->second;
  Tate w;
  if (i == 0) {
    w = Tate::one(cx);
  } else {
    w = li_weight(U, s, i - 1);
    for (int v : U)
      w = w * (Tate::var(cx, v) -
               Tate::scalar(RSeries::monomial(cx, cx.F().one(), cx.R() * cx.qpow(i - 1))));
    RSeries step = RSeries::theta(cx) -
                   RSeries::monomial(cx, cx.F().one(), cx.R() * cx.qpow(i));
    w = w.scale(step.pow(s).inv());
  }
  li_w_.emplace(key, w);
  return w;
}

Tate MzvEngine::li(const CompositionArray& C, const std::vector<Tate>& u, bool star,
                   long long target_floor) {
  const Context& cx = ctx();
  int r = C.depth();
  require((int)u.size() == r, errc::config, "point arity mismatch");
  require(star ? in_D_dprime(C, u) : in_D_prime(C, u), errc::domain,
          "outside convergence domain");
  long long tgt = target_floor + 8;

  // F_j(bound) = sum over chains below the bound; strict chains for the plain
  // polylogarithm, weak chains for the star variant
  std::map<std::pair<int, int>, Tate> memo;
  std::function<Tate(int, int)> inner = [&](int j, int bound) -> Tate {
    if (j >= r) return Tate::one(cx);
    auto key = std::make_pair(j, bound);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Tate acc(cx);
    int top = star ? bound : bound - 1;
    int lo = star ? 0 : (r - 1 - j);
    for (int i = lo; i <= top; ++i) {
      Tate term = li_weight(C.rows[j].U, C.rows[j].s, i) * u[j].twist(i) * inner(j + 1, i);
      acc.accumulate(term);
    }
    memo.emplace(key, acc);
    return acc;
  };

  Tate acc(cx);
  int small_shells = 0;
  int d = star ? 0 : r - 1;
  for (; d <= cx.d_cap(); ++d) {
    Tate shell = li_weight(C.rows[0].U, C.rows[0].s, d) * u[0].twist(d) * inner(1, d);
    acc.accumulate(shell);
    auto ne = shell.norm_exp_num();
    bool small = !ne || *ne < -tgt * cx.R();
    small_shells = small ? small_shells + 1 : 0;
    if (small_shells >= 2) break;
  }
  require(d <= cx.d_cap(), errc::precision_unreachable,
          "precision unreachable at cap: polylog shells did not decay");
  return acc.truncated(tgt * cx.R());
}

std::vector<MzvEngine::StarTerm> MzvEngine::star_decompose(const CompositionArray& C,
                                                           const std::vector<Tate>& u) {
  int r = C.depth();
  std::vector<StarTerm> out;
  for (unsigned mask = 0; mask < (1u << (r - 1)); ++mask) {
    StarTerm t;
    t.gamma = __builtin_popcount(mask);
    t.C.rows.push_back(C.rows[0]);
    t.u.push_back(u[0]);
    for (int k = 1; k < r; ++k) {
      if (mask & (1u << (k - 1))) {  // '+': merge with the previous block
        t.C.rows.back().U.insert(C.rows[k].U.begin(), C.rows[k].U.end());
        t.C.rows.back().s += C.rows[k].s;
        t.u.back() = t.u.back() * u[k];
      } else {
        t.C.rows.push_back(C.rows[k]);
        t.u.push_back(u[k]);
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

MzvEngine::Thm11Data MzvEngine::thm11_assemble(const CompositionArray& C) {
  const Context& cx = ctx();
  Thm11Data data;
  data.GammaC = Tate::one(cx);
  std::vector<std::vector<Tate>> coeff_lists;
  for (auto& row : C.rows) {
    const QPolynomial& Q = ps_->q_for(row.U, row.s);
    data.degs.push_back(Q.deg());
    coeff_lists.push_back(Q.coeffs);
    if (row.U.empty()) {
      data.GammaC = data.GammaC.scale(constants().Gamma(row.s));
    } else {
      int rs = minimal_r(cx, row.s);
      long long e = cx.qpow(rs) - row.s;
      if (e > 0) data.GammaC = data.GammaC.scale(constants().ell(rs - 1).pow(e));
      data.GammaC = data.GammaC * constants().b_U(rs, row.U);
    }
  }
  // index set: product of {0..C_i}; drop tuples with a zero component
  int r = C.depth();
  std::vector<int> idx(r, 0);
  for (;;) {
    Thm11Data::Term term;
    bool zero = false;
    for (int i = 0; i < r; ++i) {
      const Tate& c = coeff_lists[i][idx[i]];
      if (c.terms().empty()) { zero = true; break; }
      term.u.push_back(c);
      term.theta_exp += idx[i];
    }
    if (!zero) data.terms.push_back(std::move(term));
    int i = r - 1;
    while (i >= 0 && idx[i] == data.degs[i]) idx[i--] = 0;
    if (i < 0) break;
    ++idx[i];
  }
  return data;
}

Residual MzvEngine::verify_thm11(const CompositionArray& C, long long target_floor) {
  const Context& cx = ctx();
  Thm11Data data = thm11_assemble(C);
  auto gn = data.GammaC.norm_exp_num();
  long long tgt = target_floor + (gn ? (*gn + cx.R() - 1) / cx.R() : 0) + 8;
  Tate lhs = data.GammaC * zeta(C, tgt);
  Tate rhs(cx);
  for (auto& term : data.terms) {
    require(in_D_prime(C, term.u), errc::domain,
            "Theorem 1.1 point outside D'");
    Tate val = li(C, term.u, false, tgt)
                   .scale(RSeries::monomial(cx, cx.F().one(), cx.R() * term.theta_exp));
    rhs.accumulate(val);
  }
  Residual res;
  res.value = lhs - rhs;
  res.cert_num = res.value.cert_valuation_num();
  res.pass = res.value.certified_below(target_floor);
  std::ostringstream os;
  os << "thm11 " << C.str() << " residual certified below theta^-("
     << exp_to_string(res.cert_num, cx.R()) << ")";
  res.detail = os.str();
  return res;
}

Residual MzvEngine::verify_star_theorem(const CompositionArray& C, long long target_floor) {
  const Context& cx = ctx();
  Thm11Data data = thm11_assemble(C);
  auto gn = data.GammaC.norm_exp_num();
  long long tgt = target_floor + (gn ? (*gn + cx.R() - 1) / cx.R() : 0) + 8;
  Tate lhs = data.GammaC * zeta(C, tgt);
  int r = C.depth();
  fq_t sign_r = cx.F().pow(cx.F().neg_one(), r - 1);  // (-1)^{r-1}
  Tate rhs(cx);
  for (auto& term : data.terms) {
    for (auto& st : star_decompose(C, term.u)) {
      // a_l (-1)^{dep-1} Li*: a_l = (-1)^{r-1} theta^e, dep = r - gamma
      fq_t sgn = cx.F().mul(sign_r, cx.F().pow(cx.F().neg_one(), st.C.depth() - 1));
      bool zero = false;
      for (auto& uu : st.u)
        if (uu.terms().empty()) zero = true;
      if (zero) continue;
      Tate val = li(st.C, st.u, true, tgt)
                     .scale(RSeries::monomial(cx, sgn, cx.R() * term.theta_exp));
      rhs.accumulate(val);
    }
  }
  Residual res;
  res.value = lhs - rhs;
  res.cert_num = res.value.cert_valuation_num();
  res.pass = res.value.certified_below(target_floor);
  std::ostringstream os;
  os << "star-theorem " << C.str() << " residual certified below theta^-("
     << exp_to_string(res.cert_num, cx.R()) << ")";
  res.detail = os.str();
  return res;
}

Tate MzvEngine::lvalue_specialize(const CompositionArray& C, const std::map<int, fq_t>& xi,
                                  long long target_floor) {
  const Context& cx = ctx();
  // the U_i must be pairwise disjoint
  VarSet seen;
  for (auto& row : C.rows)
    for (int v : row.U) {
      require(!seen.count(v), errc::config,
              "Dirichlet-Goss specialization needs pairwise disjoint U_i");
      seen.insert(v);
    }
  Tate z = zeta(C, target_floor);
  std::map<int, RSeries> bind;
  for (auto& [v, x] : xi) bind.emplace(v, RSeries::constant(cx, x));
  return z.specialize(bind);
}

Tate MzvEngine::lvalue_direct(const CompositionArray& C, const std::map<int, fq_t>& xi,
                              long long target_floor) {
  const Context& cx = ctx();
  long long prec = cx.work_num();
  long long tgt = target_floor + 8;
  int r = C.depth();
  auto chi = [&](int j, const MonicPoly& a) {
    fq_t v = cx.F().one();
    for (int var : C.rows[j].U) {
      auto it = xi.find(var);
      require(it != xi.end(), errc::config, "missing character value");
      v = cx.F().mul(v, a.at_fq(cx, it->second));
    }
    return v;
  };
  // per-row degree sums T_j(d) = sum_{a in A_{+,d}} chi_j(a)/a^{s_j}
  std::map<std::pair<int, int>, RSeries> tmemo;
  auto T = [&](int j, int d) {
    auto key = std::make_pair(j, d);
    auto it = tmemo.find(key);
    if (it != tmemo.end()) return it->second;
    RSeries acc(cx);
    enumerate_monic(cx, d, [&](const MonicPoly& a) {
      acc.accumulate(a.as_series(cx).pow(C.rows[j].s).inv(prec).scale(chi(j, a)));
    });
    tmemo.emplace(key, acc);
    return acc;
  };
  std::map<std::pair<int, int>, RSeries> memo;
  std::function<RSeries(int, int)> inner = [&](int j, int bound) -> RSeries {
    if (j >= r) return RSeries::one(cx);
    auto key = std::make_pair(j, bound);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    RSeries acc(cx);
    for (int i = r - 1 - j; i < bound; ++i) acc.accumulate(T(j, i) * inner(j + 1, i));
    memo.emplace(key, acc);
    return acc;
  };
  RSeries acc(cx);
  int small_shells = 0;
  int d = r - 1;
  for (; d <= cx.d_cap(); ++d) {
    RSeries shell = T(0, d) * inner(1, d);
    acc.accumulate(shell);
    auto ne = shell.max_exp_num();
    bool small = !ne || *ne < -tgt * cx.R();
    small_shells = small ? small_shells + 1 : 0;
    if (small_shells >= 2) break;
  }
  require(d <= cx.d_cap(), errc::precision_unreachable,
          "precision unreachable at cap: L-value shells did not decay");
  return Tate::scalar(acc.truncated(tgt * cx.R()));
}

RSeries MzvEngine::gauss_thakur(const MonicPoly& p, fq_t xi) {
  const Context& cx = ctx();
  require(p.irreducible(cx), errc::config, "Gauss-Thakur sum needs irreducible p");
  require(p.at_fq(cx, xi) == 0, errc::config, "xi is not a root of p");
  fq_t dp = p.derivative_at_fq(cx, xi);
  require(dp != 0, errc::config, "inseparable p");  // cannot happen when irreducible
  return constants().omega_at_fq(xi).scale(cx.F().inv(dp));
}

} // namespace ffsv
