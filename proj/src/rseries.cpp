#include "ffs/rseries.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace ffsv {

namespace {
long long sat_add(long long a, long long b) {
  if (a == RSeries::EXACT || b == RSeries::EXACT) return RSeries::EXACT;
  return a + b;
}
long long ceil_div(long long a, long long b) {  // b > 0
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}
} // namespace

RSeries RSeries::zero_at(const Context& ctx, long long floor_num) {
  RSeries r(ctx);
  r.floor_ = floor_num;
  return r;
}

RSeries RSeries::monomial(const Context& ctx, fq_t c, long long exp_num) {
  RSeries r(ctx);
  if (c != 0) r.terms_[exp_num] = c;
  return r;
}

RSeries RSeries::theta_pow(const Context& ctx, long long a, long long b, fq_t c) {
  require(b > 0 && ctx.R() % b == 0, errc::ramification_budget,
          "exponent denominator does not divide R");
  return monomial(ctx, c, a * (ctx.R() / b));
}

std::optional<long long> RSeries::max_exp_num() const {
  if (terms_.empty()) return std::nullopt;
  return terms_.rbegin()->first;
}

std::optional<long long> RSeries::ord_num() const {
  auto e = max_exp_num();
  if (!e) return std::nullopt;
  return -*e;
}

fq_t RSeries::leading_coeff() const {
  return terms_.empty() ? 0 : terms_.rbegin()->second;
}

fq_t RSeries::coeff(long long exp_num) const {
  auto it = terms_.find(exp_num);
  return it == terms_.end() ? 0 : it->second;
}

long long RSeries::cert_valuation_num() const {
  long long c = floor_;
  if (!terms_.empty()) c = std::min(c, -terms_.rbegin()->first);
  return c;
}

bool RSeries::certified_below(long long target_valuation) const {
  return cert_valuation_num() > target_valuation * ctx_->R();
}

void RSeries::put(long long exp_num, fq_t c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.try_emplace(exp_num, c);
  if (!fresh) {
    it->second = ctx_->F().add(it->second, c);
    if (it->second == 0) terms_.erase(it);
  }
}

void RSeries::drop_below_floor() {
  if (floor_ == EXACT) return;
  // keep terms with valuation < floor, i.e. exponent > -floor
  auto it = terms_.begin();
  while (it != terms_.end() && -it->first >= floor_) it = terms_.erase(it);
}

RSeries RSeries::operator-() const {
  RSeries r = *this;
  for (auto& [e, c] : r.terms_) c = ctx_->F().neg(c);
  return r;
}

RSeries RSeries::operator+(const RSeries& o) const {
  RSeries r = *this;
  r.accumulate(o);
  return r;
}

void RSeries::accumulate(const RSeries& o) {
  if (!ctx_) ctx_ = o.ctx_;
  floor_ = std::min(floor_, o.floor_);
  for (auto& [e, c] : o.terms_) put(e, c);
  drop_below_floor();
}

RSeries RSeries::operator-(const RSeries& o) const { return *this + (-o); }

RSeries RSeries::operator*(const RSeries& o) const {
  RSeries r(*ctx_);
  // floor of the product: unknown tails multiply against the known leading parts
  long long vx = terms_.empty() ? floor_ : -terms_.rbegin()->first;
  long long vy = o.terms_.empty() ? o.floor_ : -o.terms_.rbegin()->first;
  r.floor_ = std::min(sat_add(floor_, vy), sat_add(o.floor_, vx));
  if (terms_.empty() || o.terms_.empty()) return r;
  const auto& F = ctx_->F();
  for (auto& [ea, ca] : terms_) {
    for (auto& [eb, cb] : o.terms_) {
      long long e = ea + eb;
      if (r.floor_ != EXACT && -e >= r.floor_) continue;
      r.put(e, F.mul(ca, cb));
    }
  }
  r.drop_below_floor();
  return r;
}

RSeries RSeries::scale(fq_t c) const {
  if (c == 0) { RSeries r(*ctx_); r.floor_ = floor_; return r; }
  RSeries r = *this;
  for (auto& [e, co] : r.terms_) co = ctx_->F().mul(co, c);
  return r;
}

RSeries RSeries::shift(fq_t c, long long exp_num) const {
  RSeries r(*ctx_);
  r.floor_ = sat_add(floor_, -exp_num);
  if (c == 0) return r;
  const auto& F = ctx_->F();
  for (auto& [e, co] : terms_) r.terms_[e + exp_num] = F.mul(co, c);
  return r;
}

RSeries RSeries::truncated(long long floor_num) const {
  RSeries r = *this;
  r.floor_ = std::min(r.floor_, floor_num);
  r.drop_below_floor();
  return r;
}

RSeries RSeries::inv(long long rel_num) const {
  require(!terms_.empty(), errc::precision_exhausted,
          "inverting a series indistinguishable from 0 at current floor");
  if (rel_num < 0) rel_num = ctx_->work_num();
  long long lead = terms_.rbegin()->first;  // exponent of the dominant term
  fq_t clead = terms_.rbegin()->second;
  long long v = -lead;  // valuation of this
  long long rel = rel_num;
  if (floor_ != EXACT) rel = std::min(rel, floor_ - v);
  long long out_floor = -v + rel;

  // long division: peel the leading term of the remainder, emit a quotient
  // term, subtract; the remainder's leading valuation strictly increases
  const auto& F = ctx_->F();
  fq_t cinv = F.inv(clead);
  RSeries z(*ctx_);
  RSeries rem = RSeries::one(*ctx_);
  while (!rem.terms_.empty()) {
    long long er = rem.terms_.rbegin()->first;
    fq_t cr = rem.terms_.rbegin()->second;
    long long ez = er - lead;
    if (-ez >= out_floor) break;  // quotient term below the output floor
    fq_t cz = F.mul(cr, cinv);
    z.terms_[ez] = cz;
    // rem -= term * this
    for (auto& [e, c] : terms_) {
      long long ee = ez + e;
      if (-ee >= rel) continue;
      rem.put(ee, F.neg(F.mul(cz, c)));
    }
  }
  bool exact_monomial = (floor_ == EXACT && terms_.size() == 1);
  z.floor_ = exact_monomial ? EXACT : out_floor;
  z.drop_below_floor();
  return z;
}

RSeries RSeries::pow(long long n) const {
  require(n >= 0, errc::config, "negative power; use inv first");
  RSeries r = RSeries::one(*ctx_);
  RSeries base = *this;
  while (n) {
    if (n & 1) r = r * base;
    if (n >>= 1) base = base * base;
  }
  return r;
}

RSeries RSeries::twist(long long n) const {
  if (n == 0) return *this;
  const auto& F = ctx_->F();
  RSeries r(*ctx_);
  if (n > 0) {
    long long qn = 1;
    for (long long i = 0; i < n; ++i) {
      require(qn < (1LL << 58) / ctx_->q(), errc::config, "twist exponent overflow");
      qn *= ctx_->q();
    }
    for (auto& [e, c] : terms_) {
      require(std::llabs(e) < (1LL << 62) / qn, errc::config, "twist exponent overflow");
      r.terms_[e * qn] = F.frob_q_pow(c, n);
    }
    if (floor_ == EXACT) r.floor_ = EXACT;
    else if (floor_ > (1LL << 60) / qn) r.floor_ = (1LL << 60);  // deep enough for anything stored
    else r.floor_ = floor_ * qn;
  } else {
    long long qn = 1;
    for (long long i = 0; i < -n; ++i) qn *= ctx_->q();
    for (auto& [e, c] : terms_) {
      require(e % qn == 0, errc::ramification_budget,
              "ramification budget exceeded: negative twist leaves the exponent lattice");
      r.terms_[e / qn] = F.frob_q_pow(c, n);
    }
    r.floor_ = floor_ == EXACT ? EXACT : ceil_div(floor_, qn);
    r.drop_below_floor();
  }
  return r;
}

fq_t RSeries::eval_fq(fq_t xi) const {
  const auto& F = ctx_->F();
  fq_t acc = 0;
  for (auto& [e, c] : terms_) {
    require(e >= 0 && e % ctx_->R() == 0, errc::config,
            "eval_fq needs nonnegative integer exponents");
    acc = F.add(acc, F.mul(c, F.pow(xi, e / ctx_->R())));
  }
  return acc;
}

std::string exp_to_string(long long num, long long R) {
  long long g = std::gcd(num < 0 ? -num : num, R);
  if (g == 0) g = 1;
  long long a = num / g, b = R / g;
  std::ostringstream os;
  os << a;
  if (b != 1) os << "/" << b;
  return os.str();
}

std::string RSeries::str() const {
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "c" << it->second << "*theta^(" << exp_to_string(it->first, ctx_->R()) << ")";
  }
  if (first) os << "0";
  if (floor_ != EXACT) os << " + O(theta^-(" << exp_to_string(floor_, ctx_->R()) << "))";
  return os.str();
}

} // namespace ffsv
