#include "ffs/tate.hpp"

#include <algorithm>
#include <sstream>

namespace ffsv {

namespace {
long long sat_add(long long a, long long b) {
  if (a == RSeries::EXACT || b == RSeries::EXACT) return RSeries::EXACT;
  return a + b;
}
} // namespace

Monomial Monomial::times(const Monomial& o) const {
  Monomial r;
  auto a = v.begin();
  auto b = o.v.begin();
  while (a != v.end() || b != o.v.end()) {
    if (b == o.v.end() || (a != v.end() && a->first < b->first)) r.v.push_back(*a++);
    else if (a == v.end() || a->first > b->first) r.v.push_back(*b++);
    else { r.v.emplace_back(a->first, a->second + b->second); ++a; ++b; }
  }
  return r;
}

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  int da = a.deg(), db = b.deg();
  if (da != db) return da < db;
  return a.v < b.v;  // lexicographic on sorted (var, exp) pairs
}

Tate Tate::scalar(const RSeries& c) {
  Tate r(c.ctx());
  r.floor_ = c.floor_num();
  if (!c.floor_zero()) r.terms_[Monomial::one()] = c;
  return r;
}

Tate Tate::var(const Context& ctx, int j) {
  Tate r(ctx);
  r.terms_[Monomial::single(j, 1)] = RSeries::one(ctx);
  return r;
}

Tate Tate::assemble(const Context& ctx, std::vector<std::pair<Monomial, RSeries>> items,
                    long long floor_num, int cap) {
  Tate r(ctx);
  r.floor_ = floor_num;
  r.tcap_ = cap;
  for (auto& [m, c] : items) {
    if (c.floor_zero()) r.floor_ = std::min(r.floor_, c.floor_num());
    else r.terms_[m] = c;
  }
  return r;
}

Tate Tate::var_minus_theta(const Context& ctx, int j) {
  return var(ctx, j) - scalar(RSeries::theta(ctx));
}

RSeries Tate::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  if (it != terms_.end()) return it->second;
  return floor_ == RSeries::EXACT ? RSeries::zero(*ctx_)
                                  : RSeries::zero_at(*ctx_, floor_);
}

Tate Tate::coeff_of_power(int var, int k) const {
  Tate r(*ctx_);
  r.floor_ = floor_;
  r.tcap_ = tcap_;
  for (auto& [m, c] : terms_) {
    if (m.exp_of(var) != k) continue;
    Monomial rest;
    for (auto& [w, e] : m.v)
      if (w != var) rest.v.emplace_back(w, e);
    r.terms_[rest] = c;
  }
  return r;
}

int Tate::degree_in(int var) const {
  int d = 0;
  for (auto& [m, c] : terms_) d = std::max(d, m.exp_of(var));
  return d;
}

VarSet Tate::vars() const {
  VarSet s;
  for (auto& [m, c] : terms_)
    for (auto& [w, e] : m.v) s.insert(w);
  return s;
}

std::optional<long long> Tate::norm_exp_num() const {
  std::optional<long long> r;
  for (auto& [m, c] : terms_) {
    auto e = c.max_exp_num();
    if (e && (!r || *e > *r)) r = e;
  }
  return r;
}

long long Tate::cert_valuation_num() const {
  long long v = floor_;
  for (auto& [m, c] : terms_) v = std::min(v, c.cert_valuation_num());
  return v;
}

bool Tate::certified_below(long long target_valuation) const {
  return cert_valuation_num() > target_valuation * ctx_->R();
}

void Tate::put(const Monomial& m, const RSeries& c) {
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (!c.floor_zero()) terms_.emplace(m, c);
    else floor_ = std::min(floor_, c.floor_num());
  } else {
    it->second.accumulate(c);
    if (it->second.floor_zero()) {
      floor_ = std::min(floor_, it->second.floor_num());
      terms_.erase(it);
    }
  }
}

void Tate::normalize() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = it->second.floor_zero() ? terms_.erase(it) : std::next(it);
}

Tate Tate::operator-() const {
  Tate r = *this;
  for (auto& [m, c] : r.terms_) c = -c;
  return r;
}

Tate Tate::operator+(const Tate& o) const {
  Tate r = *this;
  r.accumulate(o);
  return r;
}

void Tate::accumulate(const Tate& o) {
  if (!ctx_) ctx_ = o.ctx_;
  // a coefficient absent on one side is only known to be zero up to that
  // side's element floor
  long long fs = floor_;
  for (auto it = terms_.begin(); it != terms_.end(); ++it)
    if (!o.terms_.count(it->first)) it->second = it->second.truncated(o.floor_);
  floor_ = std::min(floor_, o.floor_);
  int cap = std::min(tcap_, o.tcap_);
  for (auto& [m, c] : o.terms_) {
    if (m.deg_sigma() > cap) continue;
    put(m, terms_.count(m) ? c : c.truncated(fs));
  }
  if (cap < tcap_) {
    tcap_ = cap;
    for (auto it = terms_.begin(); it != terms_.end();)
      it = it->first.deg_sigma() > cap ? terms_.erase(it) : std::next(it);
  }
  normalize();
}

Tate Tate::operator-(const Tate& o) const { return *this + (-o); }

Tate Tate::operator*(const Tate& o) const {
  Tate r(*ctx_);
  r.tcap_ = std::min(tcap_, o.tcap_);
  auto vx = norm_exp_num();  // -ord
  auto vy = o.norm_exp_num();
  long long fx = sat_add(floor_, vy ? -*vy : o.floor_);
  long long fy = sat_add(o.floor_, vx ? -*vx : floor_);
  r.floor_ = std::min(fx, fy);
  for (auto& [ma, ca] : terms_) {
    for (auto& [mb, cb] : o.terms_) {
      Monomial m = ma.times(mb);
      if (m.deg_sigma() > r.tcap_) continue;
      r.put(m, ca * cb);
    }
  }
  // unknown coefficients of either factor pollute every product monomial
  if (r.floor_ != RSeries::EXACT)
    for (auto& [m, c] : r.terms_) c = c.truncated(r.floor_);
  r.normalize();
  return r;
}

Tate Tate::scale(const RSeries& c) const {
  Tate r(*ctx_);
  r.tcap_ = tcap_;
  auto vx = norm_exp_num();
  long long fc = sat_add(c.floor_num(), vx ? -*vx : floor_);
  auto vc = c.max_exp_num();
  long long fx = sat_add(floor_, vc ? -*vc : c.floor_num());
  r.floor_ = std::min(fc, fx);
  for (auto& [m, co] : terms_) r.put(m, co * c);
  r.normalize();
  return r;
}

Tate Tate::scale_fq(fq_t c) const {
  if (c == 0) {
    Tate r(*ctx_);
    r.floor_ = floor_;
    r.tcap_ = tcap_;
    return r;
  }
  Tate r = *this;
  for (auto& [m, co] : r.terms_) co = co.scale(c);
  return r;
}

Tate Tate::with_cap(int cap) const {
  Tate r = *this;
  r.tcap_ = std::min(r.tcap_, cap);
  for (auto it = r.terms_.begin(); it != r.terms_.end();)
    it = it->first.deg_sigma() > r.tcap_ ? r.terms_.erase(it) : std::next(it);
  return r;
}

Tate Tate::truncate_t_degree(int k) const {
  Tate r = *this;
  for (auto it = r.terms_.begin(); it != r.terms_.end();)
    it = it->first.exp_of(0) > k ? r.terms_.erase(it) : std::next(it);
  return r;
}

Tate Tate::truncated(long long floor_num) const {
  Tate r = *this;
  r.floor_ = std::min(r.floor_, floor_num);
  for (auto& [m, c] : r.terms_) c = c.truncated(floor_num);
  r.normalize();
  return r;
}

Tate Tate::inv_unit(long long rel_num) const {
  RSeries c0 = scalar_part();
  require(!c0.floor_zero(), errc::not_a_unit,
          "not a unit at this precision: no scalar term");
  if (rel_num < 0) rel_num = ctx_->work_num();
  long long v0 = *c0.ord_num();
  // u = 1 - this / c0 must have Gauss norm < 1 relative to nothing: every
  // coefficient of u strictly smaller than 1 in norm
  RSeries c0inv = c0.inv(rel_num);
  Tate u = (Tate::one(*ctx_) - scale(c0inv)).with_cap(ctx_->t_cap());
  auto nu = u.norm_exp_num();
  long long du;  // valuation step of u
  if (!nu) {
    du = rel_num;  // u is zero to its floor
  } else {
    require(*nu < 0, errc::not_a_unit,
            "not a unit at this precision: non-dominant scalar term");
    du = -*nu;
  }
  long long rel = rel_num;
  if (floor_ != RSeries::EXACT) rel = std::min(rel, floor_ - v0);
  // geometric series via binary product: sum_{k<2^j} u^k = prod (1 + u^(2^i))
  Tate acc = Tate::one(*ctx_);
  Tate upow = u.truncated(rel);
  long long covered = 1;
  while (covered * du < rel && !upow.terms().empty()) {
    Tate delta = (acc * upow).truncated(rel);
    acc.accumulate(delta);
    acc = acc.truncated(rel);
    upow = (upow * upow).truncated(rel);
    covered *= 2;
  }
  Tate r = acc.scale(c0inv);
  bool exact_monomial = (floor_ == RSeries::EXACT && u.known_zero());
  if (!exact_monomial) r = r.truncated(rel - v0);
  return r;
}

Tate Tate::pow(long long n) const {
  require(n >= 0, errc::config, "negative power");
  Tate r = Tate::one(*ctx_);
  Tate base = *this;
  while (n) {
    if (n & 1) r = r * base;
    if (n >>= 1) base = base * base;
  }
  return r;
}

Tate Tate::twist(long long n) const {
  Tate r(*ctx_);
  r.tcap_ = tcap_;
  if (floor_ == RSeries::EXACT) r.floor_ = RSeries::EXACT;
  else {
    RSeries probe = RSeries::zero_at(*ctx_, floor_).twist(n);
    r.floor_ = probe.floor_num();
  }
  for (auto& [m, c] : terms_) r.terms_[m] = c.twist(n);
  r.normalize();
  return r;
}

Tate Tate::specialize(const std::map<int, RSeries>& bindings, bool* disc_warning) const {
  Tate r(*ctx_);
  r.tcap_ = tcap_;
  // floor bookkeeping: unknown coefficients can sit under any monomial; when a
  // bound value has norm > 1 the worst stored degree in that variable scales it
  long long fl = floor_;
  for (auto& [j, val] : bindings) {
    auto w = val.max_exp_num();
    if (!w || *w <= 0) continue;
    if (tcap_ != INT_MAX && disc_warning) *disc_warning = true;
    if (fl != RSeries::EXACT) {
      int dmax = degree_in(j);
      if (j != 0 && tcap_ != INT_MAX) dmax = std::max(dmax, tcap_);
      fl -= *w * dmax;
    }
  }
  r.floor_ = fl;
  for (auto& [m, c] : terms_) {
    RSeries cc = c;
    Monomial rest;
    for (auto& [var, e] : m.v) {
      auto it = bindings.find(var);
      if (it == bindings.end()) rest.v.emplace_back(var, e);
      else cc = cc * it->second.pow(e);
    }
    r.put(rest, cc);
  }
  // unknown coefficients can collapse onto any surviving monomial
  if (r.floor_ != RSeries::EXACT && !bindings.empty())
    for (auto& [m, c] : r.terms_) c = c.truncated(r.floor_);
  r.normalize();
  return r;
}

Tate Tate::eval_at_theta() const {
  return specialize({{0, RSeries::theta(*ctx_)}});
}

bool Tate::polynomial_over_A(long long target_valuation) const {
  long long lim = target_valuation * ctx_->R();
  for (auto& [m, c] : terms_) {
    for (auto& [e, co] : c.terms()) {
      if (e >= 0 && e % ctx_->R() == 0 && ctx_->F().in_fq(co)) continue;
      if (-e > lim) continue;  // residue below the floor is fine
      return false;
    }
  }
  return true;
}

std::string Tate::str() const {
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : terms_) {
    if (!first) os << " ; ";
    first = false;
    if (m.v.empty()) os << "1";
    for (auto& [var, e] : m.v) {
      if (var == 0) os << "t";
      else os << "t_" << var;
      if (e > 1) os << "^" << e;
      os << " ";
    }
    os << ": " << c.str();
  }
  if (first) os << "0";
  if (floor_ != RSeries::EXACT)
    os << " ++ O(theta^-(" << exp_to_string(floor_, ctx_->R()) << "))";
  if (tcap_ != INT_MAX) os << " [sdeg<=" << tcap_ << "]";
  return os.str();
}

} // namespace ffsv
