#include "triwave/cli/emit.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

#include "triwave/error.hpp"

namespace triwave::cli {

using nlohmann::json;

namespace {

json num(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json nums(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

std::string csv_row(std::initializer_list<double> xs) {
  std::string s;
  for (double x : xs) {
    if (!s.empty()) s += ',';
    s += format_double(x);
  }
  return s + '\n';
}

}  // namespace

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw OutputError("cannot open " + path.string() + " for writing");
  f << text;
  if (!f) throw OutputError("write failed for " + path.string());
}

json to_json(const Params& p) { return {{"p", p.p}, {"alpha", p.alpha}, {"beta", p.beta}}; }

json to_json(const GroundStateResult& r) {
  const Grid& g = r.minimizer.grid();
  const auto& m = r.multipliers;
  return {
      {"energy", num(r.energy)},
      {"multipliers",
       {{"omega1", num(m.omega1)},
        {"omega2", num(m.omega2)},
        {"omega3", num(m.omega3)},
        {"consistency_gap", num(m.consistency_gap())}}},
      {"residual", {{"r1", r.residual.r1}, {"r2", r.residual.r2}, {"r3", r.residual.r3}, {"total", r.residual.total()}}},
      {"masses", {mass(r.minimizer[0], g), mass(r.minimizer[1], g), mass(r.minimizer[2], g)}},
      {"q1", q1(r.minimizer)},
      {"q2", q2(r.minimizer)},
      {"constraint_error", r.constraint_error},
      {"gradient_norm", r.gradient_norm},
      {"iterations", r.iterations},
      {"restart_energies", nums(r.restart_energies)},
      {"grid", {{"n", g.points()}, {"l", g.half_length()}}},
  };
}

json to_json(const JResult& r) {
  json j = to_json(r.inner);
  j["split_a"] = r.split_a;
  j["j_value"] = r.j_value;
  json probes = json::array();
  for (const auto& [a, e] : r.probes) probes.push_back({{"a", a}, {"energy", num(e)}});
  j["probes"] = std::move(probes);
  return j;
}

void emit_results(const GroundStateResult& r, Format fmt, const std::filesystem::path& path) {
  if (fmt == Format::JsonLines) {
    write_text(path, to_json(r).dump() + '\n');
    return;
  }
  const Grid& g = r.minimizer.grid();
  std::string s = "x,re_u1,im_u1,re_u2,im_u2,re_u3,im_u3\n";
  for (std::size_t j = 0; j < g.points(); ++j) {
    const auto& v = r.minimizer;
    s += csv_row({g.node(j), v[0][j].real(), v[0][j].imag(), v[1][j].real(), v[1][j].imag(), v[2][j].real(),
                  v[2][j].imag()});
  }
  write_text(path, s);
}

void emit_results(const JResult& r, Format fmt, const std::filesystem::path& path) {
  if (fmt == Format::JsonLines) {
    write_text(path, to_json(r).dump() + '\n');
  } else {
    emit_results(r.inner, fmt, path);
  }
}

void emit_results(const ConservationTrace& c, Format fmt, const std::filesystem::path& path) {
  std::string s = fmt == Format::Csv ? "t,energy_drift,q1_drift,q2_drift\n" : "";
  for (std::size_t i = 0; i < c.times.size(); ++i) {
    if (fmt == Format::Csv) {
      s += csv_row({c.times[i], c.energy_drift[i], c.q1_drift[i], c.q2_drift[i]});
    } else {
      s += json{{"t", c.times[i]}, {"energy_drift", num(c.energy_drift[i])}, {"q1_drift", num(c.q1_drift[i])},
                {"q2_drift", num(c.q2_drift[i])}}
               .dump() +
           '\n';
    }
  }
  write_text(path, s);
}

void emit_results(const StabilityReport& r, Format fmt, const std::filesystem::path& path) {
  const auto& c = r.conservation;
  std::string s = fmt == Format::Csv ? "t,orbital_distance,energy_drift,q1_drift,q2_drift\n" : "";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    if (fmt == Format::Csv) {
      s += csv_row({r.times[i], r.orbital_distances[i], c.energy_drift[i], c.q1_drift[i], c.q2_drift[i]});
    } else {
      s += json{{"t", r.times[i]},
                {"orbital_distance", num(r.orbital_distances[i])},
                {"energy_drift", num(c.energy_drift[i])},
                {"q1_drift", num(c.q1_drift[i])},
                {"q2_drift", num(c.q2_drift[i])}}
               .dump() +
           '\n';
    }
  }
  write_text(path, s);
}

void emit_results(const std::vector<SubadditivityRow>& rows, Format fmt, const std::filesystem::path& path) {
  std::string s = fmt == Format::Csv
                      ? "gamma1,mu1,s1,gamma2,mu2,s2,i_sum,i_part1,i_part2,margin,strict,error\n"
                      : "";
  for (const auto& r : rows) {
    if (fmt == Format::Csv) {
      std::string line = csv_row({r.part1[0], r.part1[1], r.part1[2], r.part2[0], r.part2[1], r.part2[2], r.i_sum,
                                  r.i_part1, r.i_part2, r.margin});
      line.pop_back();
      std::string err = r.error.value_or("");
      for (auto& ch : err)
        if (ch == ',' || ch == '\n') ch = ' ';
      s += line + ',' + (r.strict ? "1" : "0") + ',' + err + '\n';
    } else {
      s += json{{"part1", r.part1},
                {"part2", r.part2},
                {"i_sum", num(r.i_sum)},
                {"i_part1", num(r.i_part1)},
                {"i_part2", num(r.i_part2)},
                {"margin", num(r.margin)},
                {"strict", r.strict},
                {"error", r.error ? json(*r.error) : json(nullptr)}}
               .dump() +
           '\n';
    }
  }
  write_text(path, s);
}

void emit_results(const ConcentrationProfile& c, Format fmt, const std::filesystem::path& path) {
  std::string s = fmt == Format::Csv ? "r,m\n" : "";
  for (std::size_t i = 0; i < c.radii.size(); ++i) {
    if (fmt == Format::Csv) {
      s += csv_row({c.radii[i], c.values[i]});
    } else {
      s += json{{"r", c.radii[i]}, {"m", c.values[i]}, {"total_mass", c.total_mass}}.dump() + '\n';
    }
  }
  write_text(path, s);
}

void write_profile_csv(const TriField& v, const Params& params, const std::filesystem::path& path) {
  const Grid& g = v.grid();
  std::string s = "# N=" + std::to_string(g.points()) + " L=" + format_double(g.half_length()) +
                  " p=" + format_double(params.p) + " alpha=" + format_double(params.alpha) +
                  " beta=" + format_double(params.beta) + '\n';
  s += "x,re_u1,im_u1,re_u2,im_u2,re_u3,im_u3\n";
  for (std::size_t j = 0; j < g.points(); ++j) {
    s += csv_row({g.node(j), v[0][j].real(), v[0][j].imag(), v[1][j].real(), v[1][j].imag(), v[2][j].real(),
                  v[2][j].imag()});
  }
  write_text(path, s);
}

std::pair<TriField, Params> read_profile_csv(const std::filesystem::path& path) {
  std::ifstream f(path);
  if (!f) throw OutputError("cannot open " + path.string());
  std::string line;
  std::getline(f, line);
  std::size_t n = 0;
  double l = 0.0;
  Params prm;
  {
    std::istringstream hs(line);
    std::string tok;
    bool ok = static_cast<bool>(hs >> tok) && tok == "#";
    int seen = 0;
    while (ok && hs >> tok) {
      const auto eq = tok.find('=');
      if (eq == std::string::npos) {
        ok = false;
        break;
      }
      const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
      try {
        if (key == "N") n = std::stoull(val), ++seen;
        else if (key == "L") l = std::stod(val), ++seen;
        else if (key == "p") prm.p = std::stod(val), ++seen;
        else if (key == "alpha") prm.alpha = std::stod(val), ++seen;
        else if (key == "beta") prm.beta = std::stod(val), ++seen;
      } catch (const std::exception&) {
        ok = false;
      }
    }
    if (!ok || seen != 5) throw ContractViolation("profile CSV: malformed header line in " + path.string());
  }
  std::getline(f, line);
  Grid g(l, n);
  std::array<ComplexField, 3> u;
  for (auto& c : u) c.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::getline(f, line)) throw ContractViolation("profile CSV: expected " + std::to_string(n) + " rows");
    std::array<double, 7> x{};
    std::size_t at = 0;
    for (std::size_t k = 0; k < 7; ++k) {
      const std::size_t end = line.find(',', at);
      x[k] = std::strtod(line.substr(at, end - at).c_str(), nullptr);
      at = end == std::string::npos ? line.size() : end + 1;
    }
    for (std::size_t i = 0; i < 3; ++i) u[i][j] = cplx(x[1 + 2 * i], x[2 + 2 * i]);
  }
  return {TriField(g, std::move(u[0]), std::move(u[1]), std::move(u[2])), prm};
}

void write_energy_trace_csv(const std::vector<double>& trace, const std::filesystem::path& path) {
  std::string s = "iteration,energy\n";
  for (std::size_t i = 0; i < trace.size(); ++i) s += std::to_string(i) + ',' + format_double(trace[i]) + '\n';
  write_text(path, s);
}

void write_meta(const std::filesystem::path& dir, const std::string& command, const std::vector<std::string>& argv) {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  write_text(dir / "meta.json", json{{"command", command}, {"argv", argv}, {"timestamp", buf}}.dump(2) + '\n');
}

}  // namespace triwave::cli
