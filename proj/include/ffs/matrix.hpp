#pragma once

#include "ffs/tate.hpp"

namespace ffsv {

using Vec = std::vector<Tate>;

// Small dense matrix over the Tate algebra.
struct TMat {
  const Context* ctx = nullptr;
  int rows = 0, cols = 0;
  std::vector<Tate> e;

  TMat() = default;
  TMat(const Context& c, int r, int co)
      : ctx(&c), rows(r), cols(co), e(std::size_t(r) * co, Tate(c)) {}

  static TMat identity(const Context& c, int n) {
    TMat m(c, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Tate::one(c);
    return m;
  }

  Tate& at(int i, int j) { return e[std::size_t(i) * cols + j]; }
  const Tate& at(int i, int j) const { return e[std::size_t(i) * cols + j]; }

  TMat operator+(const TMat& o) const {
    TMat r = *this;
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = r.e[i] + o.e[i];
    return r;
  }
  TMat operator-(const TMat& o) const {
    TMat r = *this;
    for (std::size_t i = 0; i < e.size(); ++i) r.e[i] = r.e[i] - o.e[i];
    return r;
  }
  TMat operator*(const TMat& o) const {
    TMat r(*ctx, rows, o.cols);
    for (int i = 0; i < rows; ++i)
      for (int k = 0; k < cols; ++k) {
        const Tate& a = at(i, k);
        if (a.terms().empty() && a.floor_num() == RSeries::EXACT) continue;
        for (int j = 0; j < o.cols; ++j) r.at(i, j).accumulate(a * o.at(k, j));
      }
    return r;
  }
  Vec apply(const Vec& v) const {
    Vec r(rows, Tate(*ctx));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r[i].accumulate(at(i, j) * v[j]);
    return r;
  }
  TMat scale(const RSeries& c) const {
    TMat r = *this;
    for (auto& x : r.e) x = x.scale(c);
    return r;
  }
  TMat scale_fq(fq_t c) const {
    TMat r = *this;
    for (auto& x : r.e) x = x.scale_fq(c);
    return r;
  }
  TMat twist(long long n) const {
    TMat r = *this;
    for (auto& x : r.e) x = x.twist(n);
    return r;
  }
  TMat transpose() const {
    TMat r(*ctx, cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) r.at(j, i) = at(i, j);
    return r;
  }
  std::optional<long long> norm_exp_num() const {
    std::optional<long long> m;
    for (auto& x : e) {
      auto n = x.norm_exp_num();
      if (n && (!m || *n > *m)) m = n;
    }
    return m;
  }
  long long cert_valuation_num() const {
    long long v = RSeries::EXACT;
    for (auto& x : e) v = std::min(v, x.cert_valuation_num());
    return v;
  }
  bool certified_below(long long target_valuation) const {
    return cert_valuation_num() > target_valuation * ctx->R();
  }
  bool operator==(const TMat& o) const {
    return rows == o.rows && cols == o.cols && e == o.e;
  }
};

inline std::optional<long long> vec_norm_exp_num(const Vec& v) {
  std::optional<long long> m;
  for (auto& x : v) {
    auto n = x.norm_exp_num();
    if (n && (!m || *n > *m)) m = n;
  }
  return m;
}
inline long long vec_cert_valuation_num(const Vec& v) {
  long long c = RSeries::EXACT;
  for (auto& x : v) c = std::min(c, x.cert_valuation_num());
  return c;
}
inline bool vec_certified_below(const Vec& v, long long target, long long R) {
  return vec_cert_valuation_num(v) > target * R;
}

} // namespace ffsv
