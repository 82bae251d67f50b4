#include "triwave/stability.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "triwave/defaults.hpp"

namespace triwave {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

// Spectral coefficients c_i(k) with a_i(y) = <v_i, tau_y ref_i>_{H1}
// = (dx/N) sum_k c_i(k) e^{iky}.
struct Correlation {
  std::array<ComplexField, 3> c;
  std::vector<double> k;
  double scale = 0.0;

  struct Eval {
    std::array<cplx, 3> a, da, d2a;
  };

  Eval at(double y) const {
    Eval e{};
    for (std::size_t j = 0; j < k.size(); ++j) {
      const cplx ph = std::polar(scale, k[j] * y);
      for (std::size_t i = 0; i < 3; ++i) {
        const cplx t = c[i][j] * ph;
        e.a[i] += t;
        e.da[i] += cplx(0.0, k[j]) * t;
        e.d2a[i] -= k[j] * k[j] * t;
      }
    }
    return e;
  }
};

struct PhaseOpt {
  double t1 = 0.0, t2 = 0.0, f = 0.0;
};

double phase_objective(const std::array<cplx, 3>& a, double t1, double t2) {
  return (std::polar(1.0, -t1) * a[0] + std::polar(1.0, -t2) * a[1] + std::polar(1.0, -t1 - t2) * a[2]).real();
}

// Maximizes Re(e^{-i t1} a1 + e^{-i t2} a2 + e^{-i(t1+t2)} a3).
PhaseOpt best_phases(const std::array<cplx, 3>& a) {
  constexpr int kGrid = 64;
  std::array<cplx, kGrid> e{};
  for (int m = 0; m < kGrid; ++m) e[m] = std::polar(1.0, -kTwoPi * m / kGrid);
  PhaseOpt best{0.0, 0.0, -1e300};
  for (int m1 = 0; m1 < kGrid; ++m1) {
    const cplx z1 = e[m1] * a[0];
    for (int m2 = 0; m2 < kGrid; ++m2) {
      const double f = (z1 + e[m2] * a[1] + e[(m1 + m2) % kGrid] * a[2]).real();
      if (f > best.f) best = {kTwoPi * m1 / kGrid, kTwoPi * m2 / kGrid, f};
    }
  }
  for (int it = 0; it < 50; ++it) {
    const cplx z1 = std::polar(1.0, -best.t1) * a[0];
    const cplx z2 = std::polar(1.0, -best.t2) * a[1];
    const cplx z3 = std::polar(1.0, -best.t1 - best.t2) * a[2];
    const double g1 = (z1 + z3).imag(), g2 = (z2 + z3).imag();
    const double h11 = -(z1 + z3).real(), h12 = -z3.real(), h22 = -(z2 + z3).real();
    const double det = h11 * h22 - h12 * h12;
    if (!(h11 < 0.0 && det > 0.0)) break;
    const double d1 = -(h22 * g1 - h12 * g2) / det;
    const double d2 = -(h11 * g2 - h12 * g1) / det;
    const double f = phase_objective(a, best.t1 + d1, best.t2 + d2);
    if (f < best.f) break;
    best = {best.t1 + d1, best.t2 + d2, f};
    if (std::abs(d1) + std::abs(d2) < 1e-15) break;
  }
  return best;
}

struct Candidate {
  double t1, t2, y, f;
};

// Joint Newton ascent in (t1, t2, y) from a good starting point.
Candidate polish(const Correlation& corr, Candidate x) {
  for (int it = 0; it < 40; ++it) {
    const auto ev = corr.at(x.y);
    const std::array<cplx, 3> rot{std::polar(1.0, -x.t1), std::polar(1.0, -x.t2), std::polar(1.0, -x.t1 - x.t2)};
    std::array<cplx, 3> z, b, c;
    for (std::size_t i = 0; i < 3; ++i) {
      z[i] = rot[i] * ev.a[i];
      b[i] = rot[i] * ev.da[i];
      c[i] = rot[i] * ev.d2a[i];
    }
    x.f = (z[0] + z[1] + z[2]).real();
    const double g[3] = {(z[0] + z[2]).imag(), (z[1] + z[2]).imag(), (b[0] + b[1] + b[2]).real()};
    double h[3][3] = {{-(z[0] + z[2]).real(), -z[2].real(), (b[0] + b[2]).imag()},
                      {0.0, -(z[1] + z[2]).real(), (b[1] + b[2]).imag()},
                      {0.0, 0.0, (c[0] + c[1] + c[2]).real()}};
    h[1][0] = h[0][1];
    h[2][0] = h[0][2];
    h[2][1] = h[1][2];
    // Solve h d = -g by Cramer's rule; require negative definiteness.
    const double m1 = h[0][0];
    const double m2 = h[0][0] * h[1][1] - h[0][1] * h[1][0];
    const double det = h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) -
                       h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
                       h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
    if (!(m1 < 0.0 && m2 > 0.0 && det < 0.0)) break;
    auto solve_col = [&](int col) {
      double m[3][3];
      for (int r = 0; r < 3; ++r)
        for (int q = 0; q < 3; ++q) m[r][q] = q == col ? -g[r] : h[r][q];
      return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
              m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])) /
             det;
    };
    const double d[3] = {solve_col(0), solve_col(1), solve_col(2)};
    Candidate next{x.t1 + d[0], x.t2 + d[1], x.y + d[2], 0.0};
    const auto en = corr.at(next.y);
    next.f = phase_objective(en.a, next.t1, next.t2);
    if (next.f < x.f - 1e-14 * (1.0 + std::abs(x.f))) break;
    const bool done = std::abs(d[0]) + std::abs(d[1]) + std::abs(d[2]) < 1e-14;
    x = next;
    if (done) break;
  }
  return x;
}

double h1_distance(const TriField& v, const TriField& ref, double t1, double t2, double y) {
  const TriField diff = v - rotate(translate(ref, y), t1, t2);
  return std::sqrt(h1_norm_sq(diff));
}

}  // namespace

Alignment orbital_distance(const TriField& v, const TriField& reference) {
  const Grid& g = v.grid();
  if (!(reference.grid() == g)) throw ContractViolation("orbital_distance: fields live on different grids");
  const std::size_t n = g.points();
  const std::size_t nyq = g.nyquist_index();
  Correlation corr;
  corr.k.assign(g.wavenumbers().begin(), g.wavenumbers().end());
  corr.scale = g.spacing() / static_cast<double>(n);
  for (std::size_t i = 0; i < 3; ++i) {
    const ComplexField vh = g.forward(v[i]);
    const ComplexField rh = g.forward(reference[i]);
    corr.c[i].resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double kd = j == nyq ? 0.0 : corr.k[j];
      corr.c[i][j] = (1.0 + kd * kd) * vh[j] * std::conj(rh[j]);
    }
  }

  // a_i at every grid shift y_j = j dx by one inverse transform each.
  std::array<ComplexField, 3> on_grid;
  for (std::size_t i = 0; i < 3; ++i) {
    on_grid[i] = g.inverse(corr.c[i]);
    for (auto& z : on_grid[i]) z *= g.spacing();
  }
  std::vector<std::pair<double, std::size_t>> bound(n);
  for (std::size_t j = 0; j < n; ++j) {
    bound[j] = {std::abs(on_grid[0][j]) + std::abs(on_grid[1][j]) + std::abs(on_grid[2][j]), j};
  }
  const std::size_t n_cand = std::min<std::size_t>(8, n);
  std::partial_sort(bound.begin(), bound.begin() + static_cast<std::ptrdiff_t>(n_cand), bound.end(),
                    [](const auto& a, const auto& b) { return a.first > b.first; });

  const double dx = g.spacing();
  auto shift_of = [&](std::size_t j) {
    double y = static_cast<double>(j) * dx;
    if (y >= g.half_length()) y -= g.length();
    return y;
  };
  auto profile = [&](double y) { return best_phases(corr.at(y).a); };

  Candidate best{0.0, 0.0, 0.0, -1e300};
  for (std::size_t c = 0; c < n_cand; ++c) {
    const double yc = shift_of(bound[c].second);
    double lo = yc - dx, hi = yc + dx;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double y1 = hi - phi * (hi - lo), y2 = lo + phi * (hi - lo);
    PhaseOpt p1 = profile(y1), p2 = profile(y2);
    for (int it = 0; it < 40 && hi - lo > 1e-9 * dx; ++it) {
      if (p1.f >= p2.f) {
        hi = y2;
        y2 = y1;
        p2 = p1;
        y1 = hi - phi * (hi - lo);
        p1 = profile(y1);
      } else {
        lo = y1;
        y1 = y2;
        p1 = p2;
        y2 = lo + phi * (hi - lo);
        p2 = profile(y2);
      }
    }
    Candidate x = p1.f >= p2.f ? Candidate{p1.t1, p1.t2, y1, p1.f} : Candidate{p2.t1, p2.t2, y2, p2.f};
    x = polish(corr, x);
    if (x.f > best.f) best = x;
  }

  const double y = std::remainder(best.y, g.length());
  Alignment out{wrap_angle(best.t1), wrap_angle(best.t2), y >= g.half_length() ? y - g.length() : y, 0.0};
  out.distance_h1 = h1_distance(v, reference, out.theta1, out.theta2, out.shift_y);
  const double trivial = h1_distance(v, reference, 0.0, 0.0, 0.0);
  if (trivial <= out.distance_h1) out = {0.0, 0.0, 0.0, trivial};
  return out;
}

TriField smooth_noise(const Grid& g, double norm, std::uint64_t seed) {
  if (!(norm >= 0.0) || !std::isfinite(norm)) throw ContractViolation("noise norm must be finite and >= 0");
  TriField z = TriField::zeros(g);
  if (norm == 0.0) return z;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (std::size_t i = 0; i < 3; ++i) {
    ComplexField w(g.points());
    for (auto& c : w) c = cplx(gauss(rng), gauss(rng));
    z.mutable_component(i) = heat_smooth(w, defaults::kNoiseSmoothing, g);
  }
  const double h = std::sqrt(h1_norm_sq(z));
  z *= norm / h;
  return z;
}

StabilityReport stability_experiment(const GroundStateResult& ground, double perturbation_scale,
                                     std::uint64_t seed, const EvolveConfig& cfg, const Params& params) {
  if (!(perturbation_scale >= 0.0)) throw ContractViolation("perturbation_scale must be >= 0");
  const TriField& ref = ground.minimizer;
  const double size = perturbation_scale * std::sqrt(h1_norm_sq(ref));
  const TriField v0 = ref + smooth_noise(ref.grid(), size, seed);

  StabilityReport rep;
  const auto observe = [&](double t, const TriField& v) {
    rep.times.push_back(t);
    rep.orbital_distances.push_back(orbital_distance(v, ref).distance_h1);
  };
  EvolveResult run = evolve(v0, cfg, params, observe);
  rep.conservation = std::move(run.conservation);
  rep.initial_distance = rep.orbital_distances.front();
  rep.max_distance = *std::max_element(rep.orbital_distances.begin(), rep.orbital_distances.end());
  return rep;
}

}  // namespace triwave
