#pragma once

#include <cstdint>
#include <vector>

#include "ffs/errors.hpp"

namespace ffsv {

// An element of F_{p^n} is an index packing its coordinates over F_p in base p
// (coordinate of x^k is digit k, relative to the table's modulus polynomial).
using fq_t = std::uint32_t;

// F_{p^n} with full multiplication/inverse tables.  n = e*m so the field is
// F_{q^m} for q = p^e; the Frobenius x -> x^q and its inverse are precomputed
// permutations.  Sizes stay tiny here (q^m <= a few thousand).
class SmallField {
public:
  SmallField(int p, int e, int m);

  int p() const { return p_; }
  int e() const { return e_; }
  int m() const { return m_; }
  long long q() const { return q_; }
  std::uint32_t size() const { return size_; }

  fq_t zero() const { return 0; }
  fq_t one() const { return 1; }
  fq_t neg_one() const { return neg(1); }

  fq_t add(fq_t a, fq_t b) const { return add_[idx(a, b)]; }
  fq_t sub(fq_t a, fq_t b) const { return add(a, neg(b)); }
  fq_t neg(fq_t a) const { return neg_[a]; }
  fq_t mul(fq_t a, fq_t b) const { return mul_[idx(a, b)]; }
  fq_t inv(fq_t a) const {
    require(a != 0, errc::not_a_unit, "inverse of 0 in F_q^m");
    return inv_[a];
  }
  fq_t pow(fq_t a, long long k) const;

  // Frobenius relative to F_q and its inverse (order m).
  fq_t frob_q(fq_t a) const { return frob_[a]; }
  fq_t frob_q_inv(fq_t a) const { return frob_inv_[a]; }
  fq_t frob_q_pow(fq_t a, long long k) const;

  // Canonical generator of F_{q^m}^x: the smallest index that has full order.
  fq_t generator() const { return gen_; }

  // The F_q subfield in canonical order: 0, 1, g_q, g_q^2, ... with
  // g_q = generator()^((q^m-1)/(q-1)).
  const std::vector<fq_t>& subfield_fq() const { return subfield_; }
  bool in_fq(fq_t a) const { return frob_q(a) == a; }

  // Smallest-index solution of x^k = c, if any (k >= 1).
  bool kth_root(fq_t c, long long k, fq_t& out) const;

  // Roots in F_{p^n} of a monic polynomial with F_q coefficients
  // (coefficient vector low-to-high, values already embedded in this field).
  std::vector<fq_t> poly_roots(const std::vector<fq_t>& coeffs) const;

private:
  std::size_t idx(fq_t a, fq_t b) const { return std::size_t(a) * size_ + b; }
  int p_, e_, m_, n_;
  long long q_;
  std::uint32_t size_;
  std::vector<std::uint16_t> modulus_;  // monic irreducible of degree n over F_p
  std::vector<fq_t> add_, mul_, neg_, inv_, frob_, frob_inv_;
  std::vector<fq_t> subfield_;
  fq_t gen_ = 0;
};

} // namespace ffsv
