#pragma once

#include <string>

#include "ffs/tate.hpp"

namespace ffsv {

// Canonical text form.  Monomial groups are sorted graded-lex, coefficients
// print terms by decreasing theta-exponent as reduced fractions, and a
// trailing O(theta^-(v)) carries the floor:
//   [1 | c1*theta^(2) + c1*theta^(1/2)] [t t_1^2 | c3*theta^(-1)] O(theta^-(40)) cap(12)
// Exact polynomials have no O() marker and no cap() marker.
std::string to_canonical(const RSeries& x);
std::string to_canonical(const Tate& x);

RSeries parse_rseries(const Context& ctx, const std::string& s);
Tate parse_tate(const Context& ctx, const std::string& s);

// small expression shorthands accepted by the CLI for points: "0", "1",
// "t_3", "theta^(a/b)", "c5*theta^(2)", or a full canonical form
Tate parse_point(const Context& ctx, const std::string& s);

} // namespace ffsv
