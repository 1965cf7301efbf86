#include "io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "config.hpp"
#include "errors.hpp"

namespace penmhd {

namespace {

std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out) throw config_error("cannot open output file '" + path + "'");
  return out;
}

void echo_comments(std::ofstream& out, const ConfigEcho& cfg) {
  for (const auto& [k, v] : cfg) out << "# " << k << " = " << v << "\n";
}

std::string csv(double v) { return format_double(v); }

// raw little-endian float64s regardless of host order
void write_doubles(std::ofstream& out, const std::vector<double>& v) {
  static_assert(sizeof(double) == 8);
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(v.data()),
              static_cast<std::streamsize>(v.size() * sizeof(double)));
  } else {
    for (double d : v) {
      std::uint64_t bits;
      std::memcpy(&bits, &d, 8);
      char buf[8];
      for (int b = 0; b < 8; ++b) buf[b] = static_cast<char>((bits >> (8 * b)) & 0xff);
      out.write(buf, 8);
    }
  }
}

std::vector<double> read_doubles(std::istream& in, std::size_t count) {
  std::vector<double> v(count);
  if constexpr (std::endian::native == std::endian::little) {
    in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(count * 8));
  } else {
    for (auto& d : v) {
      char buf[8];
      in.read(buf, 8);
      std::uint64_t bits = 0;
      for (int b = 0; b < 8; ++b)
        bits |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[b])) << (8 * b);
      std::memcpy(&d, &bits, 8);
    }
  }
  if (!in) throw config_error("snapshot file truncated");
  return v;
}

nlohmann::json row_json(const SweepRow& r) {
  nlohmann::json j;
  j["epsilon"] = r.epsilon;
  j["u_solid_st"] = r.u_solid_st;
  j["curlH_ext_st"] = r.curlH_ext_st;
  j["Hn_trace_st"] = r.Hn_trace_st;
  j["H_ext_final"] = r.H_ext_final;
  j["curlH_ext_final"] = r.curlH_ext_final;
  j["trace_Hxn_final"] = r.trace_final.Hxn;
  j["trace_Hn_final"] = r.trace_final.Hn;
  j["trace_curlHxn_final"] = r.trace_final.curlHxn;
  j["trace_curlHn_final"] = r.trace_final.curlHn;
  j["rho_drift_solid"] = r.rho_drift_solid;
  j["energy_residual"] = r.energy_residual;
  j["mass_drift"] = r.mass_drift;
  j["div_muH_max"] = r.div_muH_max;
  j["limit_residual"] = r.limit_residual; // NaN serializes as null
  j["steps"] = r.steps;
  j["error"] = r.error;
  return j;
}

} // namespace

void write_diagnostics_csv(const std::string& path, const ConfigEcho& cfg,
                           const std::vector<DiagnosticsRecord>& recs) {
  auto out = open_out(path);
  out << "# penmhd-diagnostics-csv v1\n";
  echo_comments(out, cfg);
  out << "time,dt,step,energy,mass,d_visc_acc,d_res_acc,d_fric_acc,"
         "trace_Hxn,trace_Hn,trace_curlHxn,trace_curlHn,"
         "u_solid,divu_solid,H_ext,curlH_ext,rho_drift_solid,div_muH_rel\n";
  for (const auto& r : recs) {
    out << csv(r.time) << ',' << csv(r.dt) << ',' << r.step << ',' << csv(r.energy) << ','
        << csv(r.mass) << ',' << csv(r.d_visc_acc) << ',' << csv(r.d_res_acc) << ','
        << csv(r.d_fric_acc) << ',' << csv(r.trace.Hxn) << ',' << csv(r.trace.Hn) << ','
        << csv(r.trace.curlHxn) << ',' << csv(r.trace.curlHn) << ',' << csv(r.region.u_solid)
        << ',' << csv(r.region.divu_solid) << ',' << csv(r.region.H_ext) << ','
        << csv(r.region.curlH_ext) << ',' << csv(r.region.rho_drift_solid) << ','
        << csv(r.div_muH_rel) << '\n';
  }
}

void write_sweep_csv(const std::string& path, const ConfigEcho& cfg, const SweepReport& rep) {
  auto out = open_out(path);
  out << "# penmhd-sweep-csv v1\n";
  echo_comments(out, cfg);
  out << "epsilon,u_solid_st,curlH_ext_st,Hn_trace_st,H_ext_final,curlH_ext_final,"
         "trace_Hxn_final,trace_Hn_final,trace_curlHxn_final,trace_curlHn_final,"
         "rho_drift_solid,energy_residual,mass_drift,div_muH_max,limit_residual,steps,error\n";
  for (const auto& r : rep.rows) {
    out << csv(r.epsilon) << ',' << csv(r.u_solid_st) << ',' << csv(r.curlH_ext_st) << ','
        << csv(r.Hn_trace_st) << ',' << csv(r.H_ext_final) << ',' << csv(r.curlH_ext_final)
        << ',' << csv(r.trace_final.Hxn) << ',' << csv(r.trace_final.Hn) << ','
        << csv(r.trace_final.curlHxn) << ',' << csv(r.trace_final.curlHn) << ','
        << csv(r.rho_drift_solid) << ',' << csv(r.energy_residual) << ',' << csv(r.mass_drift)
        << ',' << csv(r.div_muH_max) << ',' << csv(r.limit_residual) << ',' << r.steps << ','
        << r.error << '\n';
  }
  for (const auto& gc : rep.gates)
    out << "# gate " << gc.name << ": " << (gc.pass ? "pass" : "FAIL")
        << " (value " << csv(gc.value) << ", threshold " << csv(gc.threshold) << ")"
        << (gc.detail.empty() ? "" : " " + gc.detail) << "\n";
  out << "# sweep " << (rep.pass ? "pass" : "FAIL: " + rep.failure) << "\n";
}

void write_sweep_json(const std::string& path, const ConfigEcho& cfg, const SweepReport& rep) {
  nlohmann::json j;
  j["format"] = "penmhd-sweep-v1";
  nlohmann::json jc = nlohmann::json::object();
  for (const auto& [k, v] : cfg) jc[k] = v;
  j["config"] = jc;
  j["scenario"] = scenario_name(rep.scenario);
  j["rows"] = nlohmann::json::array();
  for (const auto& r : rep.rows) j["rows"].push_back(row_json(r));
  j["gates"] = nlohmann::json::array();
  for (const auto& gc : rep.gates)
    j["gates"].push_back({{"name", gc.name},
                          {"pass", gc.pass},
                          {"value", gc.value},
                          {"threshold", gc.threshold},
                          {"detail", gc.detail}});
  j["pass"] = rep.pass;
  j["failure"] = rep.failure;
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

void write_snapshot(const std::string& path, const ConfigEcho& cfg, const Grid& g,
                    const State& s) {
  auto out = open_out(path, true);
  out << "penmhd-snapshot v1\n";
  for (const auto& [k, v] : cfg) out << "config " << k << " = " << v << "\n";
  out << "dim " << g.dim << "\n";
  out << "n " << g.n << "\n";
  out << "L " << format_double(g.L) << "\n";
  out << "time " << format_double(s.t) << "\n";
  out << "fields rho";
  for (int d = 0; d < g.dim; ++d) out << " m" << d;
  for (int d = 0; d < g.dim; ++d) out << " H" << d;
  out << "\n";
  out << "data float64 little-endian\n";
  write_doubles(out, s.rho);
  for (int d = 0; d < g.dim; ++d) write_doubles(out, s.m[d]);
  for (int d = 0; d < g.dim; ++d) write_doubles(out, s.H[d]);
}

SnapshotFile read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("cannot open snapshot file '" + path + "'");
  SnapshotFile sf;
  std::string line;
  if (!std::getline(in, line) || line != "penmhd-snapshot v1")
    throw config_error("'" + path + "' is not a penmhd snapshot (bad format tag)");
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word == "config") continue;
    if (word == "dim") ls >> sf.dim;
    else if (word == "n") ls >> sf.n;
    else if (word == "L") ls >> sf.L;
    else if (word == "time") ls >> sf.time;
    else if (word == "fields") {
      std::string f;
      while (ls >> f) sf.fields.push_back(f);
    } else if (word == "data") {
      break;
    } else {
      throw config_error("unknown snapshot header line '" + line + "'");
    }
  }
  if (sf.dim < 2 || sf.n <= 0 || sf.fields.empty())
    throw config_error("snapshot header incomplete in '" + path + "'");
  std::size_t count = 1;
  for (int d = 0; d < sf.dim; ++d) count *= static_cast<std::size_t>(sf.n);
  for (std::size_t f = 0; f < sf.fields.size(); ++f)
    sf.data.push_back(read_doubles(in, count));
  return sf;
}

void write_report(const std::string& path, const ConfigEcho& cfg, const std::string& text) {
  auto out = open_out(path);
  out << "# penmhd-report v1\n";
  echo_comments(out, cfg);
  out << text;
  if (!text.empty() && text.back() != '\n') out << "\n";
}

} // namespace penmhd
