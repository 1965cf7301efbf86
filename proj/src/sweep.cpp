#include "sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <functional>
#include <limits>
#include <thread>
#include <utility>

#include "errors.hpp"

namespace penmhd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

using Getter = std::function<double(const SweepRow&)>;

SweepRow compute_row(const SweepSetup& cfg, double eps) {
  SweepRow row;
  row.epsilon = eps;
  row.limit_residual = kNaN;
  try {
    const Problem pb =
        build_problem(cfg.dim, cfg.L, cfg.n, cfg.R_inner, cfg.R_outer, cfg.transition_cells,
                      cfg.scenario, eps, cfg.fc, cfg.eos, cfg.sp);
    State s = make_initial_state(pb, cfg.init);
    DiagnosticsCollector coll(pb, s);
    coll.record(s);
    StepObserver obs = [&coll](const State& st, const StepStats& stats) {
      coll.observe(st, stats);
      coll.record(st);
    };
    const bool want_limit = cfg.limit_intervals >= 2 && cfg.scenario != Scenario::None;
    if (want_limit) {
      const SnapshotSeries series =
          collect_snapshots(pb, s, cfg.T, cfg.limit_intervals, nullptr, obs);
      row.limit_residual = limit_residual(pb, series, limit_form_for(cfg.scenario)).max_residual;
    } else {
      run(pb, s, cfg.T, nullptr, obs);
    }

    const TimeIntegrals& ti = coll.integrals();
    row.u_solid_st = std::sqrt(std::max(0.0, ti.u2_solid));
    row.curlH_ext_st = std::sqrt(std::max(0.0, ti.curlH2_ext));
    row.Hn_trace_st = std::sqrt(std::max(0.0, ti.Hn2_trace));

    const auto& recs = coll.records();
    const DiagnosticsRecord& last = recs.back();
    row.H_ext_final = last.region.H_ext;
    row.curlH_ext_final = last.region.curlH_ext;
    row.trace_final = last.trace;
    row.rho_drift_solid = last.region.rho_drift_solid;
    row.steps = last.step;
    row.energy_residual = energy_budget_residual(recs);

    const double mass0 = recs.front().mass;
    const double mscale = std::abs(mass0) > 0.0 ? std::abs(mass0) : 1.0;
    double drift = 0.0;
    double divmax = 0.0;
    for (const DiagnosticsRecord& r : recs) {
      drift = std::max(drift, std::abs(r.mass - mass0) / mscale);
      divmax = std::max(divmax, r.div_muH_rel);
    }
    row.mass_drift = drift;
    row.div_muH_max = divmax;
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

GateCheck rows_complete_gate(const std::vector<SweepRow>& rows) {
  GateCheck g;
  g.name = "rows-complete";
  g.threshold = 0.0;
  int failed = 0;
  std::string first;
  for (const SweepRow& r : rows) {
    if (!r.error.empty()) {
      if (failed == 0) first = "epsilon " + fmt_g(r.epsilon) + ": " + r.error;
      ++failed;
    }
  }
  g.value = failed;
  g.pass = rows.empty() ? false : failed == 0;
  g.detail = rows.empty() ? "no rows"
             : g.pass     ? "all " + std::to_string(rows.size()) + " runs completed"
                          : std::to_string(failed) + " run(s) failed; first: " + first;
  return g;
}

GateCheck max_gate(const std::string& name, double threshold, const std::string& what,
                   const std::vector<SweepRow>& rows, const Getter& get) {
  GateCheck g;
  g.name = name;
  g.threshold = threshold;
  g.value = 0.0;
  for (const SweepRow& r : rows) {
    if (r.error.empty()) g.value = std::max(g.value, get(r));
  }
  g.pass = g.value <= threshold;
  g.detail = "max " + what + " over the sweep is " + fmt_g(g.value) + " (tolerance " +
             fmt_g(threshold) + ")";
  return g;
}

GateCheck slope_gate(const std::string& name, const std::string& what,
                     const std::vector<SweepRow>& rows, const Getter& get) {
  GateCheck g;
  g.name = name;
  g.threshold = kSlopeGate;
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(rows.size());
  for (const SweepRow& r : rows) pairs.emplace_back(r.epsilon, get(r));
  try {
    g.value = estimate_rate(pairs);
    g.pass = g.value >= kSlopeGate;
    g.detail = "log-log slope of " + what + " against epsilon is " + fmt_g(g.value) +
               " (required >= " + fmt_g(kSlopeGate) + ")";
  } catch (const std::exception& e) {
    g.value = kNaN;
    g.pass = false;
    g.detail = "slope of " + what + " unavailable: " + e.what();
  }
  return g;
}

GateCheck monotone_gate(const std::string& name, const std::string& what,
                        const std::vector<SweepRow>& rows, const Getter& get) {
  GateCheck g;
  g.name = name;
  g.threshold = 1.0; // every adjacent ratio must sit strictly below 1
  g.pass = rows.size() >= 2;
  g.value = 0.0;
  for (size_t i = 1; i < rows.size(); ++i) {
    const double prev = get(rows[i - 1]);
    const double next = get(rows[i]);
    if (!(next < prev)) g.pass = false;
    const double ratio = prev > 0.0 ? next / prev : (next < prev ? 0.0 : kInf);
    g.value = std::max(g.value, ratio);
  }
  g.detail = what + (g.pass ? " strictly decreases" : " fails to strictly decrease") +
             " along the sweep (worst adjacent ratio " + fmt_g(g.value) + ")";
  return g;
}

GateCheck factor_gate(const std::string& name, const std::string& what,
                      const std::vector<SweepRow>& rows, const Getter& get) {
  GateCheck g;
  g.name = name;
  g.threshold = kTraceFactorGate;
  const double first = rows.empty() ? 0.0 : get(rows.front());
  const double last = rows.empty() ? 0.0 : get(rows.back());
  g.value = last > 0.0 ? first / last : (first > 0.0 ? kInf : 0.0);
  g.pass = g.value >= kTraceFactorGate;
  g.detail = what + " shrinks by a factor " + fmt_g(g.value) + " end to end (required >= " +
             fmt_g(kTraceFactorGate) + ")";
  return g;
}

GateCheck independence_gate(const std::vector<SweepRow>& rows) {
  GateCheck g;
  g.name = "epsilon-independence";
  g.threshold = kIndependenceGate;
  const std::vector<std::pair<std::string, Getter>> columns = {
      {"u_solid_spacetime", [](const SweepRow& r) { return r.u_solid_st; }},
      {"curlH_ext_spacetime", [](const SweepRow& r) { return r.curlH_ext_st; }},
      {"Hn_trace_spacetime", [](const SweepRow& r) { return r.Hn_trace_st; }},
      {"H_ext_final", [](const SweepRow& r) { return r.H_ext_final; }},
      {"curlH_ext_final", [](const SweepRow& r) { return r.curlH_ext_final; }},
      {"Hxn_final", [](const SweepRow& r) { return r.trace_final.Hxn; }},
      {"Hn_final", [](const SweepRow& r) { return r.trace_final.Hn; }},
      {"curlHxn_final", [](const SweepRow& r) { return r.trace_final.curlHxn; }},
      {"curlHn_final", [](const SweepRow& r) { return r.trace_final.curlHn; }},
      {"rho_drift_solid", [](const SweepRow& r) { return r.rho_drift_solid; }},
      {"energy_residual", [](const SweepRow& r) { return r.energy_residual; }},
      {"mass_drift", [](const SweepRow& r) { return r.mass_drift; }},
      {"div_muH_max", [](const SweepRow& r) { return r.div_muH_max; }},
      {"steps", [](const SweepRow& r) { return static_cast<double>(r.steps); }},
  };
  g.value = 0.0;
  std::string worst = "none";
  for (const auto& [label, get] : columns) {
    double lo = kInf, hi = -kInf;
    for (const SweepRow& r : rows) {
      const double v = get(r);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
    const double spread = (hi - lo) / scale;
    if (spread > g.value) {
      g.value = spread;
      worst = label;
    }
  }
  g.pass = g.value <= kIndependenceGate;
  g.detail = "largest relative column spread is " + fmt_g(g.value) + " (" + worst +
             "); the unpenalized scenario must ignore epsilon";
  return g;
}

} // namespace

std::vector<GateCheck> evaluate_gates(Scenario sc, const std::vector<SweepRow>& rows) {
  std::vector<GateCheck> gates;
  gates.push_back(rows_complete_gate(rows));
  if (rows.empty()) return gates;

  gates.push_back(max_gate("energy-budget", kEnergyBudgetGate, "energy-budget residual", rows,
                           [](const SweepRow& r) { return r.energy_residual; }));
  gates.push_back(max_gate("mass-conservation", kMassDriftGate, "relative mass drift", rows,
                           [](const SweepRow& r) { return r.mass_drift; }));
  gates.push_back(max_gate("divergence-constraint", kDivergenceGate, "divergence monitor", rows,
                           [](const SweepRow& r) { return r.div_muH_max; }));

  const Getter u_st = [](const SweepRow& r) { return r.u_solid_st; };
  const Getter curl_st = [](const SweepRow& r) { return r.curlH_ext_st; };
  const Getter hn_st = [](const SweepRow& r) { return r.Hn_trace_st; };
  const Getter h_final = [](const SweepRow& r) { return r.H_ext_final; };

  switch (sc) {
    case Scenario::None:
      gates.push_back(independence_gate(rows));
      break;
    case Scenario::Isolator:
    case Scenario::IsolatorType:
      gates.push_back(slope_gate("solid-velocity-decay",
                                 "sqrt(int ||u||^2 over the solid plateaus dt)", rows, u_st));
      gates.push_back(slope_gate("exterior-current-decay",
                                 "sqrt(int ||curl H||^2 over the exterior plateau dt)", rows,
                                 curl_st));
      break;
    case Scenario::Pmc:
      gates.push_back(slope_gate("solid-velocity-decay",
                                 "sqrt(int ||u||^2 over the solid plateaus dt)", rows, u_st));
      gates.push_back(slope_gate("exterior-field-decay",
                                 "final ||H|| over the exterior plateau", rows, h_final));
      gates.push_back(monotone_gate("exterior-field-monotone",
                                    "final ||H|| over the exterior plateau", rows, h_final));
      break;
    case Scenario::Pec:
      gates.push_back(slope_gate("solid-velocity-decay",
                                 "sqrt(int ||u||^2 over the solid plateaus dt)", rows, u_st));
      gates.push_back(monotone_gate("normal-trace-monotone",
                                    "sqrt(int ||H.n||^2 on the outer interface dt)", rows, hn_st));
      gates.push_back(factor_gate("normal-trace-factor",
                                  "sqrt(int ||H.n||^2 on the outer interface dt)", rows, hn_st));
      break;
  }
  return gates;
}

SweepReport run_sweep(const SweepSetup& setup) {
  const std::vector<double>& eps = setup.epsilons;
  if (eps.empty()) throw config_error("sweep: epsilon list is empty");
  for (double e : eps) {
    if (!(e > 0.0)) throw config_error("sweep: epsilon values must be positive");
  }
  for (size_t i = 1; i < eps.size(); ++i) {
    if (!(eps[i] < eps[i - 1]))
      throw config_error("sweep: epsilon list must be strictly decreasing");
  }
  const size_t need = setup.scenario == Scenario::None ? 2 : 3;
  if (eps.size() < need) {
    throw config_error("sweep: scenario " + scenario_name(setup.scenario) + " needs at least " +
                       std::to_string(need) + " epsilon values for its gates");
  }

  SweepReport rep;
  rep.scenario = setup.scenario;
  rep.rows.resize(eps.size());

  const unsigned hw = std::thread::hardware_concurrency();
  int nthreads = setup.max_threads > 0 ? setup.max_threads : (hw > 0 ? static_cast<int>(hw) : 1);
  nthreads = std::clamp(nthreads, 1, static_cast<int>(eps.size()));

  if (nthreads == 1) {
    for (size_t i = 0; i < eps.size(); ++i) rep.rows[i] = compute_row(setup, eps[i]);
  } else {
    std::atomic<size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(nthreads));
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&rep, &setup, &next]() {
        for (size_t i = next.fetch_add(1); i < rep.rows.size(); i = next.fetch_add(1)) {
          rep.rows[i] = compute_row(setup, setup.epsilons[i]);
        }
      });
    }
    for (std::thread& th : pool) th.join();
  }

  rep.gates = evaluate_gates(setup.scenario, rep.rows);
  rep.pass = true;
  for (const GateCheck& gc : rep.gates) {
    if (!gc.pass) {
      rep.pass = false;
      rep.failure = gc.name + ": " + gc.detail;
      break;
    }
  }
  return rep;
}

} // namespace penmhd
