#include "ffs/fq.hpp"

#include <numeric>

namespace ffsv {

namespace {

// Digits of a in base p, low first, length n.
std::vector<int> digits(std::uint32_t a, int p, int n) {
  std::vector<int> d(n, 0);
  for (int i = 0; i < n && a; ++i) { d[i] = int(a % p); a /= p; }
  return d;
}

std::uint32_t pack(const std::vector<int>& d, int p) {
  std::uint32_t a = 0;
  for (int i = int(d.size()) - 1; i >= 0; --i) a = a * p + std::uint32_t(d[i]);
  return a;
}

// Multiply two F_p[x] polynomials and reduce mod the monic modulus of degree n.
std::vector<int> polymulmod(const std::vector<int>& a, const std::vector<int>& b,
                            const std::vector<std::uint16_t>& mod, int p, int n) {
  std::vector<int> c(2 * n, 0);
  for (int i = 0; i < n; ++i) {
    if (!a[i]) continue;
    for (int j = 0; j < n; ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  }
  for (int k = 2 * n - 1; k >= n; --k) {
    int top = c[k];
    if (!top) continue;
    c[k] = 0;
    for (int j = 0; j < n; ++j) {
      // modulus is monic: x^n = -sum mod[j] x^j
      c[k - n + j] = ((c[k - n + j] - top * mod[j]) % p + p * p) % p;
    }
  }
  c.resize(n);
  return c;
}

bool is_irreducible(const std::vector<std::uint16_t>& mod, int p, int n) {
  // Trial division by every monic polynomial of degree 1..n/2 (sizes are tiny).
  if (n == 1) return true;
  auto divides = [&](const std::vector<int>& g, int dg) {
    // remainder of (x^n + mod) divided by monic g of degree dg
    std::vector<int> r(n + 1, 0);
    for (int i = 0; i < n; ++i) r[i] = mod[i];
    r[n] = 1;
    for (int k = n; k >= dg; --k) {
      int top = r[k];
      if (!top) continue;
      r[k] = 0;
      for (int j = 0; j < dg; ++j)
        r[k - dg + j] = ((r[k - dg + j] - top * g[j]) % p + p * p) % p;
    }
    for (int j = 0; j < dg; ++j)
      if (r[j]) return false;
    return true;
  };
  for (int dg = 1; 2 * dg <= n; ++dg) {
    long long count = 1;
    for (int i = 0; i < dg; ++i) count *= p;
    for (long long low = 0; low < count; ++low) {
      std::vector<int> g = digits(std::uint32_t(low), p, dg);
      if (divides(g, dg)) return false;
    }
  }
  return true;
}

} // namespace

SmallField::SmallField(int p, int e, int m) : p_(p), e_(e), m_(m), n_(e * m) {
  require(p >= 2 && e >= 1 && m >= 1, errc::config, "bad field parameters");
  q_ = 1;
  for (int i = 0; i < e; ++i) q_ *= p;
  long long sz = 1;
  for (int i = 0; i < n_; ++i) {
    sz *= p;
    require(sz <= (1 << 16), errc::config, "field too large for table arithmetic");
  }
  size_ = std::uint32_t(sz);

  // Lexicographically-first monic irreducible of degree n over F_p.
  modulus_.assign(n_, 0);
  if (n_ == 1) {
    modulus_[0] = 0;  // x itself; F_p needs no extension
  } else {
    bool found = false;
    for (std::uint32_t low = 0; low < size_ && !found; ++low) {
      auto d = digits(low, p_, n_);
      std::vector<std::uint16_t> cand(n_);
      for (int i = 0; i < n_; ++i) cand[i] = std::uint16_t(d[i]);
      if (is_irreducible(cand, p_, n_)) { modulus_ = cand; found = true; }
    }
    require(found, errc::config, "no irreducible modulus found");
  }

  // Tables.
  add_.resize(std::size_t(size_) * size_);
  mul_.resize(std::size_t(size_) * size_);
  neg_.resize(size_);
  inv_.assign(size_, 0);
  for (std::uint32_t a = 0; a < size_; ++a) {
    auto da = digits(a, p_, n_);
    std::vector<int> dn(n_);
    for (int i = 0; i < n_; ++i) dn[i] = (p_ - da[i]) % p_;
    neg_[a] = pack(dn, p_);
    for (std::uint32_t b = 0; b < size_; ++b) {
      auto db = digits(b, p_, n_);
      std::vector<int> ds(n_);
      for (int i = 0; i < n_; ++i) ds[i] = (da[i] + db[i]) % p_;
      add_[idx(a, b)] = pack(ds, p_);
      mul_[idx(a, b)] = pack(polymulmod(da, db, modulus_, p_, n_), p_);
    }
  }
  for (std::uint32_t a = 1; a < size_; ++a) {
    for (std::uint32_t b = 1; b < size_; ++b)
      if (mul_[idx(a, b)] == 1) { inv_[a] = b; break; }
  }

  // Frobenius x -> x^q as a permutation, and its inverse.
  frob_.resize(size_);
  frob_inv_.resize(size_);
  for (std::uint32_t a = 0; a < size_; ++a) frob_[a] = pow(a, q_);
  for (std::uint32_t a = 0; a < size_; ++a) frob_inv_[frob_[a]] = a;

  // Canonical generator: smallest index of full multiplicative order.
  for (std::uint32_t g = 2; g < size_; ++g) {
    std::uint32_t x = g;
    std::uint32_t ord = 1;
    while (x != 1) { x = mul(x, g); ++ord; }
    if (ord == size_ - 1) { gen_ = g; break; }
  }
  if (size_ == 2) gen_ = 1;

  // F_q subfield in canonical order 0, 1, g_q, g_q^2, ...
  subfield_.push_back(0);
  subfield_.push_back(1);
  if (q_ > 2) {
    fq_t gq = pow(gen_, ((long long)size_ - 1) / (q_ - 1));
    fq_t x = gq;
    while (x != 1) { subfield_.push_back(x); x = mul(x, gq); }
  }
  require((long long)subfield_.size() == q_, errc::config, "subfield enumeration failed");
}

fq_t SmallField::pow(fq_t a, long long k) const {
  if (a == 0) return k == 0 ? 1 : 0;
  long long ord = (long long)size_ - 1;
  k %= ord;
  if (k < 0) k += ord;
  fq_t r = 1, base = a;
  while (k) {
    if (k & 1) r = mul(r, base);
    base = mul(base, base);
    k >>= 1;
  }
  return r;
}

fq_t SmallField::frob_q_pow(fq_t a, long long k) const {
  k %= m_;
  if (k < 0) k += m_;
  for (long long i = 0; i < k; ++i) a = frob_q(a);
  return a;
}

bool SmallField::kth_root(fq_t c, long long k, fq_t& out) const {
  if (c == 0) { out = 0; return true; }
  for (std::uint32_t x = 1; x < size_; ++x)
    if (pow(x, k) == c) { out = x; return true; }
  return false;
}

std::vector<fq_t> SmallField::poly_roots(const std::vector<fq_t>& coeffs) const {
  std::vector<fq_t> roots;
  for (std::uint32_t x = 0; x < size_; ++x) {
    fq_t acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it)
      acc = add(mul(acc, x), *it);
    if (acc == 0) roots.push_back(x);
  }
  return roots;
}

} // namespace ffsv
