#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>

#include "ffs/context.hpp"

namespace ffsv {

// Exponents live on the lattice (1/R)Z and are stored as integer numerators.
// A term (a, c) is c * theta^(a/R); its valuation at the infinite place is
// -a/R (ord(theta) = -1, |theta| = q).
//
// `floor_` is a valuation bound: terms of valuation >= floor_/R are unknown.
// EXACT (= LLONG_MAX) marks values known in full (polynomials in theta and
// their twists).  Invariants: no zero coefficients, every stored term has
// valuation < floor_.
class RSeries {
public:
  static constexpr long long EXACT = std::numeric_limits<long long>::max();

  RSeries() : ctx_(nullptr), floor_(EXACT) {}
  explicit RSeries(const Context& ctx) : ctx_(&ctx), floor_(EXACT) {}

  static RSeries zero(const Context& ctx) { return RSeries(ctx); }
  static RSeries zero_at(const Context& ctx, long long floor_num);
  static RSeries one(const Context& ctx) { return monomial(ctx, ctx.F().one(), 0); }
  static RSeries constant(const Context& ctx, fq_t c) { return monomial(ctx, c, 0); }
  static RSeries theta(const Context& ctx) { return monomial(ctx, ctx.F().one(), ctx.R()); }
  // c * theta^(exp_num/R)
  static RSeries monomial(const Context& ctx, fq_t c, long long exp_num);
  // c * theta^(a/b), b | R
  static RSeries theta_pow(const Context& ctx, long long a, long long b, fq_t c);

  const Context& ctx() const { return *ctx_; }
  bool is_zero() const { return terms_.empty() && floor_ == EXACT; }
  bool floor_zero() const { return terms_.empty(); }
  long long floor_num() const { return floor_; }
  const std::map<long long, fq_t>& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  // max exponent numerator (norm = q^(max_exp/R)); nullopt when no known term
  std::optional<long long> max_exp_num() const;
  // valuation numerator of the known part
  std::optional<long long> ord_num() const;
  // leading (largest-exponent) coefficient
  fq_t leading_coeff() const;
  fq_t coeff(long long exp_num) const;

  // certified exponent: every term, known or not, has valuation strictly
  // above cert... returns min(floor, smallest known valuation)
  long long cert_valuation_num() const;
  // true when the whole value is certified of norm < q^(-target)
  bool certified_below(long long target_valuation) const;

  RSeries operator-() const;
  RSeries operator+(const RSeries& o) const;
  RSeries operator-(const RSeries& o) const;
  RSeries operator*(const RSeries& o) const;
  void accumulate(const RSeries& o);  // in-place +=
  bool operator==(const RSeries& o) const {
    return terms_ == o.terms_ && floor_ == o.floor_;
  }
  bool operator!=(const RSeries& o) const { return !(*this == o); }

  RSeries scale(fq_t c) const;
  // multiply by c * theta^(exp_num/R)
  RSeries shift(fq_t c, long long exp_num) const;

  // inverse up to relative precision (default: context working precision)
  RSeries inv(long long rel_num = -1) const;
  RSeries pow(long long n) const;  // n >= 0
  // raise the floor (drop information): keeps min(floor, f)
  RSeries truncated(long long floor_num) const;

  // Frobenius twist tau^n: exponents scale by q^n, coefficients by x -> x^(q^n)
  RSeries twist(long long n) const;

  // substitute theta -> xi in a series with nonnegative integer exponents only
  fq_t eval_fq(fq_t xi) const;

  std::string str() const;  // canonical text form

private:
  void put(long long exp_num, fq_t c);  // accumulate, dropping zeros
  void drop_below_floor();
  const Context* ctx_;
  std::map<long long, fq_t> terms_;
  long long floor_;
};

// a/b reduced to lowest terms rendered as text (exponents in displays)
std::string exp_to_string(long long num, long long R);

} // namespace ffsv
