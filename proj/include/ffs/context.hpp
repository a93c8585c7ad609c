#pragma once

#include <cstdint>
#include <memory>

#include "ffs/errors.hpp"
#include "ffs/fq.hpp"

namespace ffsv {

struct FieldParams {
  int p = 2;   // characteristic
  int e = 1;   // q = p^e
  int m = 1;   // constant field F_{q^m}; auto-raised if it lacks a (q-1)-st root of -1
  int M = 6;   // ramification budget: R = (q-1) * q^M
};

struct PrecisionParams {
  long long v_floor = 40;  // reporting floor (valuation units)
  long long slack = 24;    // extra working digits for unit inversions / products
  int t_cap = 12;          // total t-degree truncation
  int d_cap = 64;          // shell / stream hard cap
  long long enum_cap = 1 << 21;  // max number of monic polynomials per enumeration
};

// Shared computation context: the constant field, the exponent lattice (1/R)Z,
// the canonical (q-1)-st root of -1, and precision knobs.  All values built
// against a context keep a pointer to it; contexts are immutable once built.
class Context {
public:
  Context(FieldParams fp, PrecisionParams pp);

  const SmallField& F() const { return *F_; }
  long long q() const { return q_; }
  int m() const { return m_eff_; }
  long long R() const { return R_; }
  int M() const { return fp_.M; }
  const FieldParams& field_params() const { return fp_; }
  const PrecisionParams& prec() const { return pp_; }

  // canonical zeta with zeta^(q-1) = -1
  fq_t zeta() const { return zeta_; }

  long long v_floor_num() const { return pp_.v_floor * R_; }
  long long work_num() const { return (pp_.v_floor + pp_.slack) * R_; }
  int t_cap() const { return pp_.t_cap; }
  int d_cap() const { return pp_.d_cap; }

  // q^k as exponent-arithmetic helper, overflow-checked
  long long qpow(int k) const;

private:
  FieldParams fp_;
  PrecisionParams pp_;
  int m_eff_;
  long long q_, R_;
  std::unique_ptr<SmallField> F_;
  fq_t zeta_ = 0;
};

} // namespace ffsv
