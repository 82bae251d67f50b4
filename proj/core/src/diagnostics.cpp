#include "triwave/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "triwave/error.hpp"
#include "triwave/parallel.hpp"

namespace triwave {

namespace {

double wrap_pi(double t) {
  t = std::remainder(t, 2.0 * std::numbers::pi);
  return t <= -std::numbers::pi ? t + 2.0 * std::numbers::pi : t;
}

}  // namespace

ConcentrationProfile concentration_function(const TriField& v, const std::vector<double>& radii) {
  const Grid& g = v.grid();
  const std::size_t n = g.points();
  for (std::size_t r = 0; r < radii.size(); ++r) {
    if (!(radii[r] > 0.0)) throw ContractViolation("concentration_function: radii must be positive");
    if (r > 0 && radii[r] < radii[r - 1]) throw ContractViolation("concentration_function: radii must be sorted");
  }
  ComplexField rho(n);
  for (std::size_t j = 0; j < n; ++j) rho[j] = std::norm(v[0][j]) + std::norm(v[1][j]) + std::norm(v[2][j]);
  ConcentrationProfile out;
  out.radii = radii;
  {
    double s = 0.0;
    for (const auto& z : rho) s += z.real();
    out.total_mass = s * g.spacing();
  }
  const ComplexField rho_hat = g.forward(rho);

  for (double r : radii) {
    const double h = r / g.spacing();
    if (2.0 * h >= static_cast<double>(n)) {
      out.values.push_back(out.total_mass);
      continue;
    }
    // Even window kernel over node offsets, periodic.
    ComplexField kernel(n, 0.0);
    if (h < 0.5) {
      kernel[0] = 2.0 * h;
    } else {
      const auto full = static_cast<std::size_t>(std::floor(h - 0.5));
      const double part = h - 0.5 - static_cast<double>(full);
      kernel[0] = 1.0;
      for (std::size_t m = 1; m <= full; ++m) {
        kernel[m] += 1.0;
        kernel[n - m] += 1.0;
      }
      kernel[(full + 1) % n] += part;
      kernel[(n - full - 1) % n] += part;
    }
    ComplexField kh = g.forward(kernel);
    for (std::size_t j = 0; j < n; ++j) kh[j] *= rho_hat[j];
    const ComplexField window = g.inverse(kh);
    double best = 0.0;
    for (const auto& z : window) best = std::max(best, z.real());
    out.values.push_back(std::min(best * g.spacing(), out.total_mass));
  }
  for (std::size_t r = 1; r < out.values.size(); ++r) out.values[r] = std::max(out.values[r], out.values[r - 1]);
  return out;
}

RealField symmetric_rearrangement(std::span<const double> f, const Grid& g) {
  g.require_size(f.size(), "symmetric_rearrangement");
  for (double x : f) {
    if (!(x >= 0.0)) throw DomainError("symmetric_rearrangement: input must be nonnegative");
  }
  RealField sorted(f.begin(), f.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  const std::size_t n = g.points();
  const std::size_t c = n / 2;
  RealField out(n);
  std::size_t next = 0;
  out[c] = sorted[next++];
  for (std::size_t m = 1; m < c; ++m) {
    out[c - m] = sorted[next++];
    out[c + m] = sorted[next++];
  }
  out[0] = sorted[next];
  return out;
}

TriField rearranged_modulus(const TriField& v) {
  const Grid& g = v.grid();
  std::array<ComplexField, 3> u;
  for (std::size_t i = 0; i < 3; ++i) {
    RealField a(v.size());
    for (std::size_t j = 0; j < a.size(); ++j) a[j] = std::abs(v[i][j]);
    const RealField s = symmetric_rearrangement(a, g);
    u[i].assign(s.begin(), s.end());
  }
  return TriField(g, std::move(u[0]), std::move(u[1]), std::move(u[2]));
}

EnergyTriple rearrangement_energy_check(const TriField& v, const Params& params) {
  return {energy(rearranged_modulus(v), params), energy(modulus(v), params), energy(v, params)};
}

double constrained_infimum(const std::array<double, 3>& targets, const Params& params, const Grid& grid,
                           const FlowConfig& cfg) {
  return minimize_masses(targets, params, grid, cfg).energy;
}

std::vector<SubadditivityRow> subadditivity_scan(const std::vector<std::pair<MassTriple, MassTriple>>& splits,
                                                 const Params& params, const Grid& grid, const FlowConfig& cfg,
                                                 double margin_tol) {
  for (const auto& [a, b] : splits) {
    for (std::size_t i = 0; i < 3; ++i) {
      if (!(a[i] >= 0.0 && b[i] >= 0.0)) throw ContractViolation("subadditivity_scan: masses must be >= 0");
    }
    if (!(a[0] + b[0] > 0.0 && a[1] + b[1] > 0.0)) {
      throw ContractViolation("subadditivity_scan: each split needs gamma1+gamma2 > 0 and mu1+mu2 > 0");
    }
    if (a[0] + a[1] + a[2] == 0.0 || b[0] + b[1] + b[2] == 0.0) {
      throw ContractViolation("subadditivity_scan: each part needs a nonzero mass");
    }
  }
  return parallel_map(splits.size(), [&](std::size_t r) {
    const auto& [a, b] = splits[r];
    SubadditivityRow row;
    row.part1 = a;
    row.part2 = b;
    try {
      const MassTriple sum{a[0] + b[0], a[1] + b[1], a[2] + b[2]};
      row.i_sum = constrained_infimum(sum, params, grid, cfg);
      row.i_part1 = constrained_infimum(a, params, grid, cfg);
      row.i_part2 = constrained_infimum(b, params, grid, cfg);
      row.margin = row.i_part1 + row.i_part2 - row.i_sum;
      row.strict = row.margin > margin_tol;
    } catch (const NumericalFailure& e) {
      const double nan = std::numeric_limits<double>::quiet_NaN();
      row.i_sum = row.i_part1 = row.i_part2 = row.margin = nan;
      row.error = e.what();
    }
    return row;
  });
}

PhaseReport phase_structure(const TriField& v) {
  PhaseReport rep;
  for (std::size_t i = 0; i < 3; ++i) {
    cplx acc(0.0, 0.0);
    double w = 0.0;
    for (const auto& z : v[i]) {
      acc += std::abs(z) * z;
      w += std::norm(z);
    }
    if (!(w > 0.0)) throw DomainError("phase_structure: component u" + std::to_string(i + 1) + " is zero");
    const double mean = std::arg(acc);
    double var = 0.0;
    for (const auto& z : v[i]) {
      if (z == cplx(0.0, 0.0)) continue;
      const double d = wrap_pi(std::arg(z) - mean);
      var += std::norm(z) * d * d;
    }
    rep.mean_phase[i] = mean;
    rep.phase_std[i] = std::sqrt(var / w);
  }
  rep.group_defect = wrap_pi(rep.mean_phase[2] - rep.mean_phase[0] - rep.mean_phase[1]);
  return rep;
}

TriField random_test_field(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double quarter = 0.25 * g.half_length();
  std::array<ComplexField, 3> u;
  for (auto& c : u) {
    c.assign(g.points(), cplx(0.0, 0.0));
    const int bumps = 1 + static_cast<int>(unif(rng) * 3.0) % 3;
    for (int b = 0; b < bumps; ++b) {
      const double x0 = quarter * (2.0 * unif(rng) - 1.0);
      const double w = 1.0 + 2.0 * unif(rng);
      const double amp = 0.3 + 1.2 * unif(rng);
      for (std::size_t j = 0; j < c.size(); ++j) {
        const double d = (g.node(j) - x0) / w;
        c[j] += amp * std::exp(-0.5 * d * d);
      }
    }
    const double a = 2.0 * unif(rng), kk = 0.1 + 0.4 * unif(rng), ph = 2.0 * std::numbers::pi * unif(rng);
    for (std::size_t j = 0; j < c.size(); ++j) c[j] *= std::polar(1.0, a * std::sin(kk * g.node(j) + ph));
  }
  return TriField(g, std::move(u[0]), std::move(u[1]), std::move(u[2]));
}

}  // namespace triwave
