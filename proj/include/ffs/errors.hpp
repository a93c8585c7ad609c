#pragma once

#include <stdexcept>
#include <string>

namespace ffsv {

// Machine-readable error codes; the CLI maps categories to exit codes.
enum class errc {
  config,               // bad parameters / schema
  precision_exhausted,  // value indistinguishable from 0 at current floor
  precision_unreachable,// tail bound not met before a cap
  ramification_budget,  // negative twist leaves the (1/R)Z exponent lattice
  enumeration_cap,      // monic enumeration beyond configured cap
  not_a_unit,           // inversion of a non-unit at this precision
  domain,               // convergence-domain certificate failed
  interpolation_failed, // no stable Q degree below cap
  unsupported,          // e.g. constructive path with s = 0
};

class error : public std::runtime_error {
public:
  error(errc c, const std::string& msg) : std::runtime_error(msg), code_(c) {}
  errc code() const { return code_; }
  const char* code_name() const {
    switch (code_) {
      case errc::config: return "config";
      case errc::precision_exhausted: return "precision exhausted";
      case errc::precision_unreachable: return "precision unreachable";
      case errc::ramification_budget: return "ramification budget exceeded";
      case errc::enumeration_cap: return "enumeration cap";
      case errc::not_a_unit: return "not a unit at this precision";
      case errc::domain: return "outside convergence domain";
      case errc::interpolation_failed: return "interpolation failed";
      case errc::unsupported: return "unsupported";
    }
    return "unknown";
  }
private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

inline void require(bool ok, errc c, const std::string& msg) {
  if (!ok) fail(c, msg);
}

} // namespace ffsv
