#include "engine.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "certify.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "mms.hpp"
#include "verify.hpp"

namespace penmhd {

namespace {

std::string fmt(double v) { return format_double(v); }

std::string join(const std::string& dir, const std::string& name) {
  return (std::filesystem::path(dir) / name).string();
}

struct HealthNumbers {
  double energy = 0.0;
  double mass = 0.0;
  double div = 0.0;
};

HealthNumbers health_of(const std::vector<DiagnosticsRecord>& recs) {
  HealthNumbers h;
  h.energy = energy_budget_residual(recs);
  const double m0 = recs.front().mass;
  for (const auto& r : recs) {
    h.mass = std::max(h.mass, std::fabs(r.mass - m0) / std::max(std::fabs(m0), 1e-300));
    h.div = std::max(h.div, r.div_muH_rel);
  }
  return h;
}

// appends pass/FAIL health lines; returns the first failing invariant ("")
std::string judge_health(std::ostringstream& txt, const HealthNumbers& h) {
  std::string first;
  auto line = [&](const char* name, double value, double gate) {
    const bool ok = value <= gate;
    txt << (ok ? "pass" : "FAIL") << "  " << name << " " << fmt(value) << " (gate " << fmt(gate)
        << ")\n";
    if (!ok && first.empty()) first = name;
  };
  line("energy-budget residual", h.energy, kEnergyBudgetGate);
  line("relative mass drift", h.mass, kMassDriftGate);
  line("divergence monitor", h.div, kDivergenceGate);
  return first;
}

VerbResult verb_run(const Config& cfg, const std::string& outdir) {
  const ConfigEcho echo = effective_entries(cfg);
  Problem pb = problem_from(cfg);
  State s = make_initial_state(pb, cfg.init);
  DiagnosticsCollector coll(pb, s);
  coll.record(s);
  long steps = 0;
  double last_recorded = s.t;
  const StepObserver obs = [&](const State& st, const StepStats& stats) {
    coll.observe(st, stats);
    if (++steps % cfg.output_every == 0) {
      coll.record(st);
      last_recorded = st.t;
    }
  };

  std::ostringstream txt;
  txt << "verb: run\n";
  for (double ts : cfg.snapshot_times) {
    if (ts > s.t) run(pb, s, ts, nullptr, obs);
    const std::string name = "snapshot_" + fmt(ts) + ".bin";
    write_snapshot(join(outdir, name), echo, pb.grid, s);
    txt << "wrote " << name << "\n";
  }
  if (s.t < cfg.T) run(pb, s, cfg.T, nullptr, obs);
  if (last_recorded < s.t) coll.record(s);

  write_diagnostics_csv(join(outdir, "diagnostics.csv"), echo, coll.records());
  txt << "wrote diagnostics.csv (" << coll.records().size() << " rows)\n";
  txt << "steps " << steps << ", final time " << fmt(s.t) << ", final energy "
      << fmt(coll.records().back().energy) << "\n";

  const std::string bad = judge_health(txt, health_of(coll.records()));
  VerbResult res;
  res.status = bad.empty() ? 0 : 2;
  if (!bad.empty()) txt << "numerical failure: " << bad << " out of bounds\n";
  res.report = txt.str();
  write_report(join(outdir, "report.txt"), echo, res.report);
  return res;
}

VerbResult verb_sweep(const Config& cfg, const std::string& outdir) {
  const ConfigEcho echo = effective_entries(cfg);
  const SweepReport rep = run_sweep(sweep_setup_from(cfg));
  write_sweep_csv(join(outdir, "sweep.csv"), echo, rep);
  write_sweep_json(join(outdir, "sweep.json"), echo, rep);

  std::ostringstream txt;
  txt << "verb: sweep (scenario " << scenario_name(rep.scenario) << ", "
      << rep.rows.size() << " rows)\n";
  txt << "epsilon        u_solid_st     H_ext_final    curlH_ext_st   Hn_trace_st    "
         "limit_residual steps\n";
  for (const auto& r : rep.rows) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-14.6g %-14.6g %-14.6g %-14.6g %-14.6g %-14.6g %ld\n",
                  r.epsilon, r.u_solid_st, r.H_ext_final, r.curlH_ext_st, r.Hn_trace_st,
                  r.limit_residual, r.steps);
    txt << buf;
    if (!r.error.empty()) txt << "  row failed: " << r.error << "\n";
  }
  for (const auto& gc : rep.gates)
    txt << (gc.pass ? "pass" : "FAIL") << "  gate " << gc.name << ": value " << fmt(gc.value)
        << ", threshold " << fmt(gc.threshold)
        << (gc.detail.empty() ? "" : " (" + gc.detail + ")") << "\n";
  txt << "wrote sweep.csv, sweep.json\n";
  if (!rep.pass) txt << "numerical failure: sweep gate " << rep.failure << "\n";

  VerbResult res;
  res.status = rep.pass ? 0 : 2;
  res.report = txt.str();
  write_report(join(outdir, "report.txt"), echo, res.report);
  return res;
}

VerbResult verb_verify_operators(const Config& cfg, const std::string& outdir) {
  const ConfigEcho echo = effective_entries(cfg);
  const int n_id = cfg.dim == 2 ? std::min(cfg.cells, 64) : std::min(cfg.cells, 12);
  const OperatorReport rep = verify_operator_suite(cfg.dim, n_id, 100, 64, 200, 12345);

  std::ostringstream txt;
  txt << "verb: verify-operators (dim " << rep.dim << ", identity grid n " << n_id << ", "
      << rep.identity_fields << " random fields per identity)\n";
  txt << "div o curl relative max        " << fmt(rep.div_curl_max) << "\n";
  txt << "curl o grad relative max       " << fmt(rep.curl_grad_max) << "\n";
  txt << "grad/div adjointness max       " << fmt(rep.adj_grad_div_max) << "\n";
  txt << "curl-pair adjointness max      " << fmt(rep.adj_curl_max) << "\n";
  txt << "stress adjointness max         " << fmt(rep.adj_stress_max) << "\n";
  txt << "truncation orders (2-D, n " << rep.trunc_n << " vs " << 2 * rep.trunc_n
      << "): grad " << fmt(rep.trunc_order_grad) << ", div " << fmt(rep.trunc_order_div)
      << ", curl " << fmt(rep.trunc_order_curl) << "\n";
  txt << "Gaffney ratio max " << fmt(rep.gaffney.max_ratio) << " over " << rep.gaffney.evaluated
      << " band-limited fields\n";

  std::string bad;
  if (rep.identity_worst() > 1e-13) bad = "operator identities (>" + fmt(1e-13) + ")";
  auto order_ok = [](double o) { return o >= std::log2(3.5) && o <= std::log2(4.5); };
  if (bad.empty() &&
      !(order_ok(rep.trunc_order_grad) && order_ok(rep.trunc_order_div) &&
        order_ok(rep.trunc_order_curl)))
    bad = "second-order truncation (error shrink factor outside [3.5, 4.5])";
  if (bad.empty() && !std::isfinite(rep.gaffney.max_ratio)) bad = "Gaffney ratio not finite";

  VerbResult res;
  res.status = bad.empty() ? 0 : 2;
  txt << (bad.empty() ? "all operator checks pass\n" : "numerical failure: " + bad + "\n");
  res.report = txt.str();
  write_report(join(outdir, "report.txt"), echo, res.report);
  return res;
}

VerbResult verb_verify_convergence(const Config& cfg, const std::string& outdir) {
  if (cfg.dim != 2)
    throw config_error("verify-convergence supports 2-D runs only");
  const ConfigEcho echo = effective_entries(cfg);
  const MmsOrders mo = mms_convergence(64, cfg.T, eos_params(cfg), cfg.fc);

  std::ostringstream txt;
  txt << "verb: verify-convergence (manufactured solution, 64^2 vs 128^2, T " << fmt(cfg.T)
      << ")\n";
  txt << "L2 errors at n=64 : rho " << fmt(mo.coarse.rho) << ", m " << fmt(mo.coarse.m)
      << ", H " << fmt(mo.coarse.H) << "\n";
  txt << "L2 errors at n=128: rho " << fmt(mo.fine.rho) << ", m " << fmt(mo.fine.m) << ", H "
      << fmt(mo.fine.H) << "\n";
  txt << "observed orders: rho " << fmt(mo.order_rho) << ", m " << fmt(mo.order_m) << ", H "
      << fmt(mo.order_H) << " (gate >= 1.8)\n";

  const bool ok = mo.order_rho >= 1.8 && mo.order_m >= 1.8 && mo.order_H >= 1.8;
  VerbResult res;
  res.status = ok ? 0 : 2;
  txt << (ok ? "convergence orders pass\n"
             : "numerical failure: manufactured-solution order below 1.8\n");
  res.report = txt.str();
  write_report(join(outdir, "report.txt"), echo, res.report);
  return res;
}

VerbResult verb_certify(const Config& cfg, const std::string& outdir) {
  if (cfg.limit_intervals < 2)
    throw config_error("certify needs limit_intervals >= 2 snapshot intervals");
  const ConfigEcho echo = effective_entries(cfg);
  Problem pb = problem_from(cfg);
  State s = make_initial_state(pb, cfg.init);
  SnapshotSeries ss = collect_snapshots(pb, s, cfg.T, cfg.limit_intervals);

  std::ostringstream txt;
  txt << "verb: certify (scenario " << scenario_name(cfg.scenario) << ", epsilon "
      << fmt(cfg.epsilon) << ", " << cfg.limit_intervals << " snapshot intervals, T "
      << fmt(cfg.T) << ")\n";
  auto print = [&](const ResidualReport& rr) {
    txt << rr.identity << ": max residual " << fmt(rr.max_residual) << "\n";
    for (const auto& m : rr.members)
      txt << "  " << m.name << "  " << fmt(m.residual) << "\n";
  };
  for (const auto& rr : certify_primitive(pb, ss, nullptr)) print(rr);
  if (cfg.scenario != Scenario::None)
    print(limit_residual(pb, ss, limit_form_for(cfg.scenario)));

  VerbResult res;
  res.report = txt.str();
  write_report(join(outdir, "report.txt"), echo, res.report);
  return res;
}

} // namespace

VerbResult execute_verb(const std::string& verb, const Config& cfg, const std::string& outdir) {
  try {
    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    if (ec) throw config_error("cannot create output directory '" + outdir + "'");
    if (verb == "run") return verb_run(cfg, outdir);
    if (verb == "sweep") return verb_sweep(cfg, outdir);
    if (verb == "verify-operators") return verb_verify_operators(cfg, outdir);
    if (verb == "verify-convergence") return verb_verify_convergence(cfg, outdir);
    if (verb == "certify") return verb_certify(cfg, outdir);
    return {1, "unknown verb '" + verb +
                   "' (expected run, sweep, verify-operators, verify-convergence, certify)\n"};
  } catch (const config_error& e) {
    return {1, std::string("configuration error: ") + e.what() + "\n"};
  } catch (const numeric_error& e) {
    return {2, std::string("numerical failure: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    return {2, std::string("failure: ") + e.what() + "\n"};
  }
}

} // namespace penmhd
