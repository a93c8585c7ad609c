#include "ffs/serialize.hpp"

#include <numeric>
#include <sstream>

namespace ffsv {

namespace {

void put_exp(std::ostream& os, long long num, long long R) {
  os << exp_to_string(num, R);
}

// parse "a" or "a/b" into an exponent numerator over R
long long read_exp(const Context& ctx, const std::string& s) {
  long long a = 0, b = 1;
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    a = std::stoll(s);
  } else {
    a = std::stoll(s.substr(0, slash));
    b = std::stoll(s.substr(slash + 1));
  }
  require(b > 0 && ctx.R() % b == 0, errc::config,
          "exponent denominator does not divide R");
  return a * (ctx.R() / b);
}

struct Lexer {
  const std::string& s;
  size_t i = 0;
  explicit Lexer(const std::string& str) : s(str) {}
  void skip_ws() {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  }
  bool eat(const std::string& tok) {
    skip_ws();
    if (s.compare(i, tok.size(), tok) == 0) {
      i += tok.size();
      return true;
    }
    return false;
  }
  void expect(const std::string& tok, const char* what) {
    require(eat(tok), errc::config, std::string("parse error: expected ") + what);
  }
  std::string until(char stop) {
    skip_ws();
    size_t j = s.find(stop, i);
    require(j != std::string::npos, errc::config, "parse error: unterminated token");
    std::string r = s.substr(i, j - i);
    i = j;
    return r;
  }
  long long number() {
    skip_ws();
    size_t j = i;
    if (j < s.size() && (s[j] == '-' || s[j] == '+')) ++j;
    while (j < s.size() && isdigit((unsigned char)s[j])) ++j;
    require(j > i, errc::config, "parse error: number expected");
    long long v = std::stoll(s.substr(i, j - i));
    i = j;
    return v;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
};

std::string rseries_body(const RSeries& x) {
  std::ostringstream os;
  bool first = true;
  for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    os << "c" << it->second << "*theta^(";
    put_exp(os, it->first, x.ctx().R());
    os << ")";
  }
  if (first) os << "0";
  return os.str();
}

RSeries parse_rseries_body(const Context& ctx, Lexer& lx, const std::string& stop_chars) {
  RSeries r(ctx);
  lx.skip_ws();
  if (lx.eat("0")) return r;
  for (;;) {
    lx.expect("c", "coefficient");
    long long c = lx.number();
    lx.expect("*theta^(", "theta power");
    std::string e = lx.until(')');
    lx.expect(")", ")");
    r = r + RSeries::monomial(ctx, fq_t(c), read_exp(ctx, e));
    lx.skip_ws();
    if (lx.i >= lx.s.size() || stop_chars.find(lx.s[lx.i]) != std::string::npos) break;
    // "+ O(...)" belongs to the floor marker, not the term list
    size_t save = lx.i;
    lx.expect("+", "+");
    lx.skip_ws();
    if (lx.i < lx.s.size() && lx.s[lx.i] == 'O') {
      lx.i = save;
      break;
    }
  }
  return r;
}

} // namespace

std::string to_canonical(const RSeries& x) {
  std::ostringstream os;
  os << rseries_body(x);
  if (x.floor_num() != RSeries::EXACT) {
    os << " + O(theta^-(";
    put_exp(os, x.floor_num(), x.ctx().R());
    os << "))";
  }
  return os.str();
}

RSeries parse_rseries(const Context& ctx, const std::string& s) {
  Lexer lx(s);
  RSeries r = parse_rseries_body(ctx, lx, "O");
  if (lx.eat("+ O(theta^-(") || lx.eat("O(theta^-(")) {
    std::string e = lx.until(')');
    lx.expect("))", "))");
    r = r.truncated(read_exp(ctx, e));
  }
  require(lx.done(), errc::config, "parse error: trailing input");
  return r;
}

std::string to_canonical(const Tate& x) {
  std::ostringstream os;
  bool any = false;
  for (auto& [m, c] : x.terms()) {
    if (any) os << " ";
    any = true;
    os << "[";
    if (m.v.empty()) os << "1";
    bool firstv = true;
    for (auto& [var, e] : m.v) {
      if (!firstv) os << " ";
      firstv = false;
      if (var == 0) os << "t";
      else os << "t_" << var;
      if (e > 1) os << "^" << e;
    }
    os << " | " << rseries_body(c);
    if (c.floor_num() != RSeries::EXACT) {
      os << " + O(theta^-(";
      put_exp(os, c.floor_num(), x.ctx().R());
      os << "))";
    }
    os << "]";
  }
  if (!any) os << "[0]";
  if (x.floor_num() != RSeries::EXACT) {
    os << " O(theta^-(";
    put_exp(os, x.floor_num(), x.ctx().R());
    os << "))";
  }
  if (x.tcap() != INT_MAX) os << " cap(" << x.tcap() << ")";
  return os.str();
}

Tate parse_tate(const Context& ctx, const std::string& s) {
  Lexer lx(s);
  long long elem_floor = RSeries::EXACT;
  int cap = INT_MAX;
  std::vector<std::pair<Monomial, RSeries>> items;
  for (;;) {
    lx.skip_ws();
    if (lx.done()) break;
    if (lx.eat("O(theta^-(")) {
      std::string e = lx.until(')');
      lx.expect("))", "))");
      elem_floor = read_exp(ctx, e);
      continue;
    }
    if (lx.eat("cap(")) {
      cap = int(lx.number());
      lx.expect(")", ")");
      continue;
    }
    lx.expect("[", "[");
    if (lx.eat("0")) {
      lx.expect("]", "]");
      continue;
    }
    Monomial m;
    for (;;) {
      lx.skip_ws();
      if (lx.eat("|")) break;
      if (lx.eat("1")) continue;
      int var = -1;
      if (lx.eat("t_")) var = int(lx.number());
      else if (lx.eat("t")) var = 0;
      else fail(errc::config, "parse error: monomial expected");
      int e = 1;
      if (lx.eat("^")) e = int(lx.number());
      m.v.emplace_back(var, e);
    }
    std::sort(m.v.begin(), m.v.end());
    RSeries c = parse_rseries_body(ctx, lx, "O]");
    if (lx.eat("+ O(theta^-(") || lx.eat("O(theta^-(")) {
      std::string e = lx.until(')');
      lx.expect("))", "))");
      c = c.truncated(read_exp(ctx, e));
    }
    lx.expect("]", "]");
    items.emplace_back(std::move(m), std::move(c));
  }
  return Tate::assemble(ctx, std::move(items), elem_floor, cap);
}

Tate parse_point(const Context& ctx, const std::string& s) {
  if (s.empty()) fail(errc::config, "empty point");
  if (s[0] == '[') return parse_tate(ctx, s);
  if (s == "0") return Tate::zero(ctx);
  if (s == "1") return Tate::one(ctx);
  if (s.rfind("t_", 0) == 0) return Tate::var(ctx, std::stoi(s.substr(2)));
  if (s == "t") return Tate::var(ctx, 0);
  return Tate::scalar(parse_rseries(ctx, s));
}

} // namespace ffsv
