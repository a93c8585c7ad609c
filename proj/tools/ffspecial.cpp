// ffspecial: batch driver for function-field special-value computations.
//
//   ffspecial <task> --config <file> [--out <file>] [--floor N] [--tmax N] [--seed N]
//   ffspecial selftest [--out <file>] [--floor N] [--seed N]
//
// Exit codes: 0 pass, 1 verification failure, 2 configuration error,
// 3 precision unreachable.

#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ffs/acceptance.hpp"
#include "ffs/rng.hpp"
#include "ffs/serialize.hpp"

using nlohmann::json;
using namespace ffsv;

namespace {

constexpr const char* kVersion = "ffspecial 1.0.0";

struct Job {
  FieldParams fp;
  PrecisionParams pp;
  std::string task;
  json payload;
  std::uint64_t seed = 1;
  bool timings = false;
};

CompositionArray parse_array(const json& a) {
  CompositionArray C;
  require(a.contains("U") && a.contains("s"), errc::config, "array needs U and s");
  auto us = a.at("U");
  auto ss = a.at("s");
  require(us.size() == ss.size() && !us.empty(), errc::config, "array rows mismatch");
  for (size_t i = 0; i < us.size(); ++i) {
    CompositionArray::Row row;
    for (auto& v : us[i]) row.U.insert(int(v));
    row.s = (long long)ss[i];
    C.rows.push_back(row);
  }
  return C;
}

VarSet parse_varset(const json& a) {
  VarSet U;
  for (auto& v : a) U.insert(int(v));
  return U;
}

MonicPoly parse_monic(const Context& ctx, const json& a) {
  MonicPoly p;
  for (auto& v : a) {
    long long idx = (long long)v;
    require(idx >= 0 && idx < ctx.q(), errc::config, "minpoly coefficient out of F_q");
    p.low.push_back(ctx.F().subfield_fq()[size_t(idx)]);
  }
  return p;
}

std::vector<Tate> parse_points(const Context& ctx, const json& a) {
  std::vector<Tate> u;
  for (auto& v : a) u.push_back(parse_point(ctx, v.get<std::string>()));
  return u;
}

json check_json(const CheckReport& r) {
  return json{{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}};
}

json resid_json(const Context& ctx, const Tate& x) {
  return json{{"certified_valuation", exp_to_string(x.cert_valuation_num(), ctx.R())}};
}

int run_job(const Job& job, json& report) {
  Context ctx(job.fp, job.pp);
  Constants cc(ctx);
  PowerSumProvider ps(cc);
  MzvEngine mz(ps);
  const json& pl = job.payload;
  bool pass = true;
  json values = json::object();
  json checks = json::array();

  auto floor_of = [&](long long dflt) {
    return pl.contains("floor") ? (long long)pl.at("floor") : dflt;
  };

  if (job.task == "powersum") {
    VarSet U = parse_varset(pl.at("U"));
    long long N = pl.at("N");
    int d = pl.at("d");
    std::string method = pl.value("method", "both");
    if (method == "brute" || method == "both")
      values["S_brute"] = to_canonical(power_sum_bruteforce(ctx, U, N, d));
    if (method == "viaq" || method == "both")
      values["S_viaq"] = to_canonical(power_sum_via_q(cc, ps.q_for(U, N), d));
    if (method == "both") {
      Tate diff = power_sum_via_q(cc, ps.q_for(U, N), d) - power_sum_bruteforce(ctx, U, N, d);
      bool ok = diff.certified_below(job.pp.v_floor);
      pass = pass && ok;
      checks.push_back(check_json({"viaq-vs-brute", ok,
                                   exp_to_string(diff.cert_valuation_num(), ctx.R())}));
    }
  } else if (job.task == "qpoly") {
    VarSet U = parse_varset(pl.at("U"));
    long long N = pl.at("N");
    const QPolynomial& Q = ps.q_for(U, N);
    values["Q"] = to_canonical(Q.as_tate(ctx));
    values["deg_t"] = Q.deg();
    values["built_by"] = Q.built_by;
    bool nc = Q.norm_certificate(ctx);
    pass = pass && nc;
    checks.push_back(check_json({"norm-certificate", nc, ""}));
  } else if (job.task == "zeta") {
    CompositionArray C = parse_array(pl.at("array"));
    long long fl = floor_of(30);
    Tate z = mz.zeta(C, fl);
    values["zeta"] = to_canonical(z);
    if (pl.contains("oracle_dmax")) {
      int dm = pl.at("oracle_dmax");
      Tate diff = mz.zeta_partial(C, dm) - mz.zeta_bruteforce(C, dm);
      bool ok = diff.norm_exp_num() == std::nullopt;
      pass = pass && ok;
      checks.push_back(check_json({"shells-vs-bruteforce", ok,
                                   exp_to_string(diff.cert_valuation_num(), ctx.R())}));
    }
  } else if (job.task == "polylog") {
    CompositionArray C = parse_array(pl.at("array"));
    std::vector<Tate> u = parse_points(ctx, pl.at("point"));
    bool star = pl.value("star", false);
    Tate v = mz.li(C, u, star, floor_of(30));
    values[star ? "li_star" : "li"] = to_canonical(v);
  } else if (job.task == "thm11") {
    CompositionArray C = parse_array(pl.at("array"));
    Residual r = mz.verify_thm11(C, floor_of(30));
    pass = pass && r.pass;
    values["residual"] = resid_json(ctx, r.value);
    checks.push_back(check_json({"thm11", r.pass, r.detail}));
  } else if (job.task == "star") {
    CompositionArray C = parse_array(pl.at("array"));
    Residual r = mz.verify_star_theorem(C, floor_of(25));
    pass = pass && r.pass;
    values["residual"] = resid_json(ctx, r.value);
    checks.push_back(check_json({"star-theorem", r.pass, r.detail}));
  } else if (job.task == "lvalue") {
    CompositionArray C = parse_array(pl.at("array"));
    std::map<int, fq_t> xi;
    for (auto& b : pl.at("xi")) {
      MonicPoly p = parse_monic(ctx, b.at("minpoly"));
      auto roots = [&] {
        std::vector<fq_t> coeffs;
        for (auto c : p.low) coeffs.push_back(c);
        coeffs.push_back(ctx.F().one());
        return ctx.F().poly_roots(coeffs);
      }();
      require(!roots.empty(), errc::config, "minpoly has no root in F_{q^m}");
      size_t k = b.value("root", 0);
      require(k < roots.size(), errc::config, "root index out of range");
      xi[int(b.at("var"))] = roots[k];
    }
    long long fl = floor_of(30);
    Tate spec = mz.lvalue_specialize(C, xi, fl + 8);
    Tate direct = mz.lvalue_direct(C, xi, fl + 8);
    Tate diff = spec - direct;
    bool ok = diff.certified_below(fl);
    pass = pass && ok;
    values["L"] = to_canonical(spec);
    values["residual"] = resid_json(ctx, diff);
    checks.push_back(check_json({"specialization-vs-character-sum", ok, ""}));
  } else if (job.task == "gauss-thakur") {
    MonicPoly p = parse_monic(ctx, pl.at("minpoly"));
    std::vector<fq_t> coeffs(p.low.begin(), p.low.end());
    coeffs.push_back(ctx.F().one());
    auto roots = ctx.F().poly_roots(coeffs);
    require(!roots.empty(), errc::config, "minpoly has no root in F_{q^m}");
    size_t k = pl.value("root", 0);
    require(k < roots.size(), errc::config, "root index out of range");
    RSeries g = mz.gauss_thakur(p, roots[k]);
    values["g"] = to_canonical(g);
    bool nz = g.max_exp_num().has_value();
    pass = pass && nz;
    checks.push_back(check_json({"nonzero", nz, ""}));
  } else if (job.task == "module-g") {
    CompositionArray C = parse_array(pl.at("array"));
    std::vector<Tate> u = parse_points(ctx, pl.at("point"));
    long long fl = floor_of(25);
    for (auto& r : verify_log_special(mz, C, u, fl)) {
      pass = pass && r.pass;
      checks.push_back(check_json(r));
    }
  } else if (job.task == "gc") {
    CompositionArray C = parse_array(pl.at("array"));
    long long fl = floor_of(25);
    GCAssembly A = assemble_GC(mz, C, fl + 8);
    values["k_C"] = A.kC;
    values["w_coordinate"] = to_canonical(A.ZC[A.w - 1]);
    for (auto& r : verify_result2(mz, A, fl, job.seed)) {
      pass = pass && r.pass;
      checks.push_back(check_json(r));
    }
  } else if (job.task == "rigid") {
    CompositionArray C = parse_array(pl.at("array"));
    long long fl = floor_of(25);
    std::vector<std::string> which = pl.value("which", std::vector<std::string>{"column", "matrixU"});
    for (auto& w : which) {
      if (w == "column") {
        for (auto& r : rigid_verify_zeta_column(mz, C, fl)) {
          pass = pass && r.pass;
          checks.push_back(check_json(r));
        }
      } else if (w == "moduleG") {
        std::vector<Tate> u = parse_points(ctx, pl.at("point"));
        ModuleG g = ModuleG::build(cc, C, u);
        auto r = rigid_verify_moduleG(mz, g, fl);
        pass = pass && r.pass;
        checks.push_back(check_json(r));
      } else if (w == "matrixU") {
        auto [U, b0] = matrix_U(mz, C, fl);
        TMat resid = U.twist(-1) * b0 - U;
        bool ok = resid.certified_below(fl);
        pass = pass && ok;
        checks.push_back(check_json({"matrixU-funceq", ok,
                                     exp_to_string(resid.cert_valuation_num(), ctx.R())}));
      } else {
        fail(errc::config, "unknown rigid check: " + w);
      }
    }
  } else if (job.task == "division-tower") {
    long long fl = floor_of(20);
    int n_max = pl.value("n_max", 10);
    std::unique_ptr<AndersonModule> mod;
    if (pl.value("carlitz", false)) {
      TMat N1(ctx, 1, 1), E1(ctx, 1, 1);
      E1.at(0, 0) = Tate::one(ctx);
      mod = std::make_unique<AndersonModule>(ctx, N1, E1);
    } else {
      CompositionArray C = parse_array(pl.at("array"));
      std::vector<Tate> u = parse_points(ctx, pl.at("point"));
      mod = std::make_unique<AndersonModule>(ModuleG::build(cc, C, u).mod);
    }
    Vec z;
    if (pl.contains("zeta")) {
      z = parse_points(ctx, pl.at("zeta"));
      require((int)z.size() == mod->dim(), errc::config, "zeta arity mismatch");
    } else {
      Rng rng(job.seed);
      for (int i = 0; i < mod->dim(); ++i)
        z.push_back(Tate::scalar(rng.series(ctx, -9, -5, 2)));
    }
    for (auto& r : division_tower(*mod, z, n_max, fl)) {
      pass = pass && r.pass;
      checks.push_back(check_json(r));
    }
    auto dr = delta_identity_check(*mod, job.seed + 1, 10);
    pass = pass && dr.pass;
    checks.push_back(check_json(dr));
  } else {
    fail(errc::config, "unknown task: " + job.task);
  }

  report["status"] = pass ? "pass" : "fail";
  report["values"] = values;
  report["checks"] = checks;
  return pass ? 0 : 1;
}

json config_json(const Job& job) {
  return json{
      {"schema", 1},
      {"field", {{"p", job.fp.p}, {"e", job.fp.e}, {"m", job.fp.m}, {"M", job.fp.M}}},
      {"precision",
       {{"v_floor", job.pp.v_floor},
        {"slack", job.pp.slack},
        {"t_cap", job.pp.t_cap},
        {"d_cap", job.pp.d_cap},
        {"enum_cap", job.pp.enum_cap}}},
      {"task", job.task},
      {"payload", job.payload},
      {"seed", job.seed}};
}

int run_selftest(const Job& job, json& report) {
  AcceptanceOptions opts;
  opts.v_floor = job.pp.v_floor;
  opts.seed = job.seed;
  auto results = run_acceptance(opts, &std::cerr);
  json arr = json::array();
  bool pass = true, unreachable = false;
  for (auto& c : results) {
    json parts = json::array();
    for (auto& p : c.parts) parts.push_back(check_json(p));
    arr.push_back(json{{"id", c.id},
                       {"name", c.name},
                       {"status", c.pass ? "pass" : (c.unreachable ? "precision unreachable" : "fail")},
                       {"parts", parts}});
    if (!c.pass) pass = false;
    if (c.unreachable) unreachable = true;
  }
  report["criteria"] = arr;
  report["status"] = pass ? "pass" : "fail";
  return pass ? 0 : (unreachable ? 3 : 1);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{kVersion};
  app.require_subcommand(1);

  std::string config_path, out_path;
  long long floor_override = -1;
  int tmax_override = -1;
  long long seed_override = -1;
  bool timings = false;

  std::vector<CLI::App*> subs;
  for (const char* name :
       {"powersum", "qpoly", "zeta", "polylog", "thm11", "star", "lvalue", "gauss-thakur",
        "module-g", "gc", "rigid", "division-tower", "selftest"}) {
    auto* s = app.add_subcommand(name);
    s->add_option("--config", config_path, "job configuration (json)");
    s->add_option("--out", out_path, "write the report here instead of stdout");
    s->add_option("--floor", floor_override, "override precision.v_floor");
    s->add_option("--tmax", tmax_override, "override precision.t_cap");
    s->add_option("--seed", seed_override, "override the seed");
    s->add_flag("--timings", timings, "append wall-clock timings to stderr");
    subs.push_back(s);
  }

  CLI11_PARSE(app, argc, argv);
  std::string task = app.get_subcommands().front()->get_name();

  Job job;
  job.task = task;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      require(in.good(), errc::config, "cannot open config: " + config_path);
      json cfg = json::parse(in, nullptr, true, true);
      require(cfg.value("schema", 1) == 1, errc::config, "unsupported schema version");
      if (cfg.contains("field")) {
        auto f = cfg["field"];
        job.fp.p = f.value("p", 2);
        job.fp.e = f.value("e", 1);
        job.fp.m = f.value("m", 1);
        job.fp.M = f.value("M", 6);
      }
      if (cfg.contains("precision")) {
        auto p = cfg["precision"];
        job.pp.v_floor = p.value("v_floor", 40);
        job.pp.slack = p.value("slack", 24);
        job.pp.t_cap = p.value("t_cap", 12);
        job.pp.d_cap = p.value("d_cap", 64);
        job.pp.enum_cap = p.value("enum_cap", (long long)(1 << 21));
      }
      if (cfg.contains("payload")) job.payload = cfg["payload"];
      if (cfg.contains("seed")) job.seed = cfg["seed"].get<std::uint64_t>();
      if (cfg.contains("task"))
        require(cfg["task"] == task, errc::config, "config task differs from the subcommand");
    } else {
      require(task == "selftest", errc::config, "--config is required for this task");
    }
    if (floor_override >= 0) job.pp.v_floor = floor_override;
    if (tmax_override >= 0) job.pp.t_cap = tmax_override;
    if (seed_override >= 0) job.seed = std::uint64_t(seed_override);
    job.timings = timings;

    json report;
    report["schema"] = 1;
    report["tool"] = kVersion;
    report["task"] = task;
    report["config"] = config_json(job);
    report["seed"] = job.seed;

    auto t0 = std::chrono::steady_clock::now();
    int rc = task == "selftest" ? run_selftest(job, report) : run_job(job, report);
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    report["exit_code"] = rc;

    std::string bytes = report.dump(2) + "\n";
    if (out_path.empty()) std::cout << bytes;
    else {
      std::ofstream out(out_path);
      out << bytes;
    }
    if (timings) std::cerr << "elapsed_ms " << ms << "\n";
    return rc;
  } catch (const error& e) {
    std::cerr << "error (" << e.code_name() << "): " << e.what() << "\n";
    switch (e.code()) {
      case errc::precision_unreachable: return 3;
      case errc::config: return 2;
      default: return 1;
    }
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}
