// One line per criterion; exit status is nonzero if any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "triwave/cli/checkpoint.hpp"
#include "triwave/cli/emit.hpp"
#include "triwave/diagnostics.hpp"
#include "triwave/exact.hpp"
#include "triwave/stability.hpp"

using namespace triwave;

namespace {

int failures = 0;

void report(int id, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("[%s] %2d  %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... xs) {
  char buf[1024];
  std::snprintf(buf, sizeof buf, f, xs...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double h1(const TriField& v) { return std::sqrt(h1_norm_sq(v)); }

const Grid kGrid(40.0, 1024);
const Params kParams{};

TriField psi_triple(double omega) {
  const ComplexField psi = psi_omega({omega, 2.0, 1.0, 1.0}, kGrid);
  return TriField(kGrid, psi, psi, psi);
}

// 3 (1/2 int psi'^2 - 1/3 int psi^3) - int psi^3 by Simpson on the line.
double psi_triple_energy(double omega) {
  const oracle::Sech2 f = oracle::psi(omega, 1.0, 1.0);
  const auto d = [&](double x) {
    const double s = oracle::sech(f.k * x);
    return -2.0 * f.a * f.k * s * s * std::tanh(f.k * x);
  };
  const double grad = oracle::simpson([&](double x) { return d(x) * d(x); }, -60.0, 60.0);
  const double cube = oracle::simpson([&](double x) { return f(x) * f(x) * f(x); }, -60.0, 60.0);
  return 3.0 * (0.5 * grad - cube / 3.0) - cube;
}

struct Shared {
  GroundStateResult sym;
  GroundStateResult generic;
  JResult j;
};

void criterion1(const Shared& s, double runtime) {
  const double d = orbital_distance(s.sym.minimizer, psi_triple(0.5)).distance_h1;
  const double e_ref = psi_triple_energy(0.5);
  const double rel = std::abs(s.sym.energy - e_ref) / std::abs(e_ref);
  const auto& m = s.sym.multipliers;
  const double merr = std::max({std::abs(m.omega1 - 0.5), std::abs(m.omega2 - 0.5), std::abs(m.omega3 - 1.0)});
  report(1, d < 1e-6 && rel < 1e-7 && merr < 1e-6 && runtime < 60.0,
         fmt("I(1.5,1.5,1.5): distance %.2e (<1e-6), energy %.9f vs %.9f rel %.2e (<1e-7), "
             "omega (%.8f, %.8f, %.8f) vs (0.5, 0.5, 1.0) err %.2e (<1e-6), %.2f s (<60)",
             d, s.sym.energy, e_ref, rel, m.omega1, m.omega2, m.omega3, merr, runtime));
}

void criterion2(const Shared& s) {
  bool ok = true;
  std::string detail;
  const std::vector<std::pair<const char*, const GroundStateResult*>> all{
      {"I(1.5,1.5,1.5)", &s.sym}, {"I(1,2,0.5)", &s.generic}, {"J(3,3)", &s.j.inner}};
  for (const auto& [name, r] : all) {
    const double res = r->residual.total() / h1(r->minimizer);
    const double gap = r->multipliers.consistency_gap();
    ok = ok && res < 1e-6 && gap < 1e-6;
    detail += fmt("%s residual/H1 %.2e gap %.2e; ", name, res, gap);
  }
  report(2, ok, detail + "(both < 1e-6)");
}

void criterion3() {
  const double levels[] = {0.5, 1.75, 3.0};
  double worst = -INFINITY;
  int count = 0;
  for (double p : {2.0, 3.0}) {
    const Params prm{p, 1.0, 1.0};
    for (double a : levels)
      for (double b : levels)
        for (double c : levels) {
          const double e = minimize_i(PerComponent{a, b, c}, prm, kGrid, FlowConfig{}).energy;
          worst = std::max(worst, e);
          ++count;
        }
  }
  report(3, worst < 0.0 && count == 54, fmt("%d targets at p=2,3: largest I = %.6f (< 0)", count, worst));
}

void criterion4(const Shared& s) {
  double worst_std = 0.0, worst_defect = 0.0;
  for (const GroundStateResult* r : {&s.sym, &s.generic, &s.j.inner}) {
    const PhaseReport ph = phase_structure(r->minimizer);
    for (double x : ph.phase_std) worst_std = std::max(worst_std, x);
    worst_defect = std::max(worst_defect, std::abs(ph.group_defect));
  }
  report(4, worst_std < 1e-6 && worst_defect < 1e-6,
         fmt("3 minimizers: max phase std %.2e rad (<1e-6), max |theta3-theta1-theta2| %.2e (<1e-6)", worst_std,
             worst_defect));
}

void criterion5(const Shared& s) {
  const double i_sym = s.sym.energy;
  double scan_min = INFINITY, scan_arg = 0.0;
  for (int k = 1; k <= 50; ++k) {
    const double a = 3.0 * k / 51.0;
    const double e = minimize_i(PerComponent{3.0 - a, 3.0 - a, a}, kParams, kGrid, FlowConfig{}).energy;
    if (e < scan_min) scan_min = e, scan_arg = a;
  }
  const bool split_ok = std::abs(s.j.split_a - 1.5) < 1e-3;
  const bool value_ok = std::abs(s.j.j_value - i_sym) < 1e-6;
  const bool global_ok = s.j.j_value <= scan_min + 1e-6;
  report(5, split_ok && value_ok && global_ok,
         fmt("J(3,3): a* = %.6f (1.5 +- 1e-3), j = %.9f vs I(1.5,1.5,1.5) = %.9f diff %.2e (<1e-6); "
             "50-point scan min %.9f at a = %.4f, outer search %s",
             s.j.split_a, s.j.j_value, i_sym, std::abs(s.j.j_value - i_sym), scan_min, scan_arg,
             global_ok ? "global" : "NOT global"));
}

void criterion6(const Shared& s) {
  const TriField& g = s.j.inner.minimizer;
  const TriField v0 = g + smooth_noise(kGrid, 1e-2 * h1(g), 11);
  auto run = [&](double dt) {
    EvolveConfig cfg;
    cfg.dt = dt;
    cfg.t_end = 10.0;
    cfg.sample_every = 1000;
    return evolve(v0, cfg, kParams).conservation;
  };
  const ConservationTrace a = run(1e-3), b = run(5e-4);
  const double de = a.max_energy_drift(), dq1 = a.max_q1_drift(), dq2 = a.max_q2_drift();
  const double ratio = de / b.max_energy_drift();
  report(6, de < 1e-6 && dq1 < 1e-6 && dq2 < 1e-6 && ratio >= 3.5,
         fmt("perturbed J(3,3) minimizer to t=10, dt=1e-3: drift E %.2e Q1 %.2e Q2 %.2e (<1e-6), "
             "halving dt divides the energy drift by %.2f (>=3.5)",
             de, dq1, dq2, ratio));
}

double rotation_error(const TriField& init, double w1, double w2) {
  EvolveConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 5.0;
  cfg.sample_every = 5000;
  const TriField end = evolve(init, cfg, kParams).state;
  return oracle::max_abs_diff(end, rotate(init, 2 * w1 * 5.0, 2 * w2 * 5.0));
}

void criterion7(const Shared& s) {
  const double err = rotation_error(psi_triple(0.5), 0.5, 0.5);
  report(7, err < 1e-5, fmt("psi triple (omega=0.5) at t=5 vs R(2wt, 2wt) psi: max pointwise error %.2e (<1e-5)", err));
  const auto& m = s.j.inner.multipliers;
  const double ej = rotation_error(s.j.inner.minimizer, m.omega1, m.omega2);
  std::printf("[INFO]     J(3,3) minimizer at t=5 vs R(2 omega1 t, 2 omega2 t): max pointwise error %.2e\n", ej);
}

void criterion8(const Shared& s) {
  EvolveConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 20.0;
  cfg.sample_every = 100;
  const StabilityReport small = stability_experiment(s.j.inner, 1e-3, 5, cfg, kParams);
  const StabilityReport large = stability_experiment(s.j.inner, 1e-2, 5, cfg, kParams);
  const double rs = small.max_distance / small.initial_distance;
  const double rl = large.max_distance / large.initial_distance;
  report(8, rs <= 5.0 && rl <= 5.0 && small.max_distance < large.max_distance,
         fmt("J(3,3) minimizer, t in [0,20]: scale 1e-3 max/initial %.3f, scale 1e-2 max/initial %.3f (<=5); "
             "max distances %.3e < %.3e",
             rs, rl, small.max_distance, large.max_distance));
}

void criterion9() {
  const std::vector<std::pair<MassTriple, MassTriple>> splits{
      {{0.75, 0.75, 0.75}, {0.75, 0.75, 0.75}}, {{0.5, 1.0, 0.5}, {1.0, 0.5, 1.0}},
      {{1.0, 1.0, 0.25}, {0.5, 0.5, 0.25}},     {{0.25, 0.5, 0.75}, {0.75, 0.5, 0.25}},
      {{1.5, 0.5, 1.0}, {0.5, 1.5, 1.0}},       {{0.2, 0.2, 0.2}, {1.0, 1.0, 1.0}}};
  const auto rows = subadditivity_scan(splits, kParams, kGrid, FlowConfig{});
  double min_margin = INFINITY;
  int bad = 0;
  for (const auto& r : rows) {
    if (r.error || !r.strict) ++bad;
    min_margin = std::min(min_margin, r.margin);
  }
  report(9, bad == 0 && min_margin > 1e-4,
         fmt("%zu splits: %d violations, smallest margin %.4e (>1e-4)", rows.size(), bad, min_margin));
}

void criterion10() {
  int violations = 0;
  double worst_norm = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const TriField v = random_test_field(kGrid, seed);
    const EnergyTriple e = rearrangement_energy_check(v, kParams);
    if (e.rearranged > e.modulus + 1e-10 || e.modulus > e.original + 1e-10) ++violations;
    const TriField r = rearranged_modulus(v);
    for (std::size_t i = 0; i < 3; ++i)
      for (double q : {1.0, 2.0, 3.0, 4.0, 6.0}) {
        const double a = lq_norm_pow(v[i], q, kGrid);
        worst_norm = std::max(worst_norm, std::abs(lq_norm_pow(r[i], q, kGrid) - a) / a);
      }
  }
  report(10, violations == 0 && worst_norm < 1e-12,
         fmt("100 fields: %d violations of E(|v|*) <= E(|v|) <= E(v); worst relative L^q change %.2e (<1e-12)",
             violations, worst_norm));
}

void criterion11() {
  double worst = 0.0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const TriField v = oracle::random_smooth(kGrid, 1000 + s);
    const TriField w = oracle::random_smooth(kGrid, 2000 + s);
    const double eps = 1e-5;
    const double fd = (energy(v + eps * w, kParams) - energy(v - eps * w, kParams)) / (2 * eps);
    const TriField g = energy_gradient(v, kParams);
    double pairing = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < v.size(); ++j) pairing += (std::conj(g[i][j]) * w[i][j]).real();
    pairing *= kGrid.spacing();
    worst = std::max(worst, std::abs(fd - pairing) / std::abs(pairing));
  }
  report(11, worst < 1e-6, fmt("20 pairs: worst relative gap to central differences %.2e (<1e-6)", worst));
}

void criterion12(const Shared& s) {
  const std::string bytes = cli::encode_checkpoint(s.generic.minimizer, kParams);
  const cli::Checkpoint back = cli::decode_checkpoint(bytes);
  const bool trip = back.field == s.generic.minimizer && cli::encode_checkpoint(back.field, back.params) == bytes;
  const GroundStateResult again = minimize_i(PerComponent{1.0, 2.0, 0.5}, kParams, kGrid, FlowConfig{});
  const bool rerun = cli::encode_checkpoint(again.minimizer, kParams) == bytes &&
                     cli::to_json(again).dump() == cli::to_json(s.generic).dump();
  report(12, trip && rerun,
         fmt("checkpoint round trip %s; rerun of I(1,2,0.5) %s", trip ? "bit-identical" : "DIFFERS",
             rerun ? "byte-identical" : "DIFFERS"));
}

}  // namespace

int main() {
  try {
    const auto t0 = std::chrono::steady_clock::now();
    GroundStateResult sym = minimize_i(PerComponent{1.5, 1.5, 1.5}, kParams, kGrid, FlowConfig{});
    const double runtime = seconds_since(t0);
    Shared s{std::move(sym), minimize_i(PerComponent{1.0, 2.0, 0.5}, kParams, kGrid, FlowConfig{}),
             minimize_j(Combined{3.0, 3.0}, kParams, kGrid, FlowConfig{})};
    criterion1(s, runtime);
    criterion2(s);
    criterion3();
    criterion4(s);
    criterion5(s);
    criterion6(s);
    criterion7(s);
    criterion8(s);
    criterion9();
    criterion10();
    criterion11();
    criterion12(s);
  } catch (const std::exception& e) {
    std::printf("[FAIL]     aborted: %s\n", e.what());
    return 2;
  }
  std::printf("%d of 12 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
