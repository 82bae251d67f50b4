#include "triwave/groundstate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <string>

#include "triwave/error.hpp"
#include "triwave/parallel.hpp"

namespace triwave {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

using Triple = std::array<ComplexField, 3>;

void require_exponent(const Params& params, const char* who) {
  if (!(params.p > 1.0 && params.p < 5.0)) {
    throw ContractViolation(std::string(who) + ": exponent p must lie in (1, 5), got " +
                            std::to_string(params.p));
  }
}

double positive_or_throw(double x, const char* field) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw ContractViolation(std::string(field) + " must be a positive finite number");
  }
  return x;
}

ComplexField bump(const Grid& g, double width) {
  ComplexField f(g.points());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double x = g.node(j);
    f[j] = std::exp(-0.5 * x * x / (width * width));
  }
  return f;
}

void rescale_to(ComplexField& f, double target, const Grid& g) {
  const double m = mass(f, g);
  if (target == 0.0) {
    std::fill(f.begin(), f.end(), cplx(0.0, 0.0));
    return;
  }
  if (!(m > 0.0)) {
    f = bump(g, 2.0);
    rescale_to(f, target, g);
    return;
  }
  const double s = std::sqrt(target / m);
  for (auto& z : f) z *= s;
}

struct FlowOutcome {
  Triple u;
  std::size_t iterations = 0;
  std::vector<double> trace;
  double gradient_norm = 0.0;
};

// Normalized gradient flow with the Lagrange term made explicit:
//   (1 + dt(k^2 + s)) u_new^ = u^ + dt (N(u)^ - 2 w(u) u^ + s u^),
// then each active component is rescaled to its target mass.
FlowOutcome run_flow(const Grid& g, const Params& prm, const std::array<double, 3>& target,
                     const FlowConfig& cfg, Triple u) {
  const std::size_t n = g.points();
  const double dx = g.spacing();
  const double inv_n = 1.0 / static_cast<double>(n);
  const auto k = g.wavenumbers();
  std::array<bool, 3> active{};
  for (std::size_t i = 0; i < 3; ++i) {
    active[i] = target[i] > 0.0;
    rescale_to(u[i], target[i], g);
  }

  FlowOutcome out;
  Triple uhat, nhat, nl;
  for (std::size_t i = 0; i < 3; ++i) {
    uhat[i].resize(n);
    nhat[i].resize(n);
    nl[i].resize(n);
  }
  Triple prev = u;
  double e_prev = 0.0;
  double tau = cfg.time_step;
  bool have_prev = false;

  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    std::array<double, 3> kin{}, pot{}, m{};
    for (std::size_t i = 0; i < 3; ++i) {
      if (!active[i]) continue;
      g.forward(u[i], uhat[i]);
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += k[j] * k[j] * std::norm(uhat[i][j]);
      kin[i] = s * dx * inv_n;
      pot[i] = lq_norm_pow(u[i], prm.p + 1.0, g);
      m[i] = mass(u[i], g);
    }
    double t = 0.0;
    for (std::size_t j = 0; j < n; ++j) t += (u[0][j] * u[1][j] * std::conj(u[2][j])).real();
    t *= dx;
    double e = -prm.alpha * t;
    for (std::size_t i = 0; i < 3; ++i) e += 0.5 * kin[i] - prm.beta / (prm.p + 1.0) * pot[i];
    if (!std::isfinite(e)) throw NonConvergence("ground-state flow produced a non-finite energy", out.trace);

    if (have_prev && e > e_prev + 1e-13 * (1.0 + std::abs(e_prev))) {
      u = prev;
      tau *= 0.5;
      if (tau < 1e-12 * cfg.time_step) {
        throw NonConvergence("ground-state flow: step size collapsed after repeated energy increases",
                             out.trace);
      }
      continue;
    }
    const double de = have_prev ? std::abs(e - e_prev) : std::numeric_limits<double>::infinity();
    out.trace.push_back(e);
    out.iterations = out.trace.size();

    std::array<double, 3> w{};
    for (std::size_t i = 0; i < 3; ++i) {
      if (active[i]) w[i] = (prm.beta * pot[i] + prm.alpha * t - kin[i]) / (2.0 * m[i]);
    }
    for (std::size_t j = 0; j < n; ++j) {
      const cplx a = u[0][j], b = u[1][j], c = u[2][j];
      nl[0][j] = prm.beta * power_nonlinearity(a, prm.p) + prm.alpha * c * std::conj(b);
      nl[1][j] = prm.beta * power_nonlinearity(b, prm.p) + prm.alpha * c * std::conj(a);
      nl[2][j] = prm.beta * power_nonlinearity(c, prm.p) + prm.alpha * a * b;
    }
    double r2 = 0.0;
    for (std::size_t i = 0; i < 3; ++i) {
      if (!active[i]) continue;
      g.forward(nl[i], nhat[i]);
      for (std::size_t j = 0; j < n; ++j) {
        r2 += std::norm((k[j] * k[j] + 2.0 * w[i]) * uhat[i][j] - nhat[i][j]);
      }
    }
    out.gradient_norm = std::sqrt(r2 * dx * inv_n);
    if (out.gradient_norm < cfg.grad_tol && de < cfg.energy_tol) {
      out.u = std::move(u);
      return out;
    }

    prev = u;
    e_prev = e;
    have_prev = true;
    const double sg = cfg.shift;
    for (std::size_t i = 0; i < 3; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        const cplx rhs = uhat[i][j] + tau * (nhat[i][j] - 2.0 * w[i] * uhat[i][j] + sg * uhat[i][j]);
        uhat[i][j] = rhs / (1.0 + tau * (k[j] * k[j] + sg));
      }
      g.inverse(uhat[i], u[i]);
      rescale_to(u[i], target[i], g);
    }
    tau = std::min(cfg.time_step, tau * 1.25);
  }
  throw NonConvergence("ground-state flow did not converge within " + std::to_string(cfg.max_iters) +
                           " iterations (gradient norm " + std::to_string(out.gradient_norm) + ")",
                       out.trace);
}

GroundStateResult finalize(TriField v, const Params& prm, const std::array<double, 3>& target) {
  const Grid& g = v.grid();
  GroundStateResult r{v, energy(v, prm), {}, {}, 0.0, 0.0, 0, {}, {}};
  const double t = trilinear(v);
  std::array<double, 3> w{};
  std::array<double, 3> w_res{};
  double cerr = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const double m = mass(v[i], g);
    if (target[i] > 0.0) {
      cerr = std::max(cerr, std::abs(m - target[i]) / target[i]);
    } else {
      cerr = std::max(cerr, m);
    }
    if (m > 0.0) {
      w[i] = (prm.beta * lq_norm_pow(v[i], prm.p + 1.0, g) + prm.alpha * t - gradient_norm_sq(v[i], g)) /
             (2.0 * m);
      w_res[i] = w[i];
    } else {
      w[i] = kNaN;
    }
  }
  r.multipliers = {w[0], w[1], w[2]};
  r.residual = stationary_residual(v, {w_res[0], w_res[1], w_res[2]}, prm);
  r.constraint_error = cerr;
  r.gradient_norm = r.residual.total();
  return r;
}

GroundStateResult solve_once(const std::array<double, 3>& target, const Params& prm, const Grid& g,
                             const FlowConfig& cfg, Triple start) {
  FlowOutcome f = run_flow(g, prm, target, cfg, std::move(start));
  TriField v(g, std::move(f.u[0]), std::move(f.u[1]), std::move(f.u[2]));
  GroundStateResult r = finalize(std::move(v), prm, target);
  r.iterations = f.iterations;
  r.gradient_norm = f.gradient_norm;
  r.energy_trace = std::move(f.trace);
  r.restart_energies = {r.energy};
  return r;
}

Triple components_of(const TriField& v) { return v.components(); }

GroundStateResult solve(const std::array<double, 3>& target, const Params& prm, const Grid& g,
                        const FlowConfig& cfg, const std::optional<TriField>& init) {
  if (init) {
    if (!(init->grid() == g)) throw ContractViolation("initial field lives on a different grid");
    return solve_once(target, prm, g, cfg, components_of(*init));
  }
  const PerComponent spec{target[0], target[1], target[2]};
  struct Attempt {
    std::optional<GroundStateResult> result;
    std::exception_ptr error;
  };
  const auto attempts = parallel_map(cfg.restarts, [&](std::size_t r) {
    Attempt a;
    try {
      const TriField start = initializer(spec, g, cfg.seed + r);
      a.result = solve_once(target, prm, g, cfg, components_of(start));
    } catch (const NumericalFailure&) {
      a.error = std::current_exception();
    }
    return a;
  });
  std::vector<double> energies;
  std::size_t best = attempts.size();
  for (std::size_t r = 0; r < attempts.size(); ++r) {
    const auto& a = attempts[r];
    energies.push_back(a.result ? a.result->energy : kNaN);
    if (a.result && (best == attempts.size() || a.result->energy < attempts[best].result->energy)) best = r;
  }
  if (best == attempts.size()) std::rethrow_exception(attempts.front().error);
  GroundStateResult out = *attempts[best].result;
  out.restart_energies = std::move(energies);
  return out;
}

}  // namespace

void validate(const ConstraintSpec& spec) {
  if (const auto* pc = std::get_if<PerComponent>(&spec)) {
    positive_or_throw(pc->gamma, "gamma");
    positive_or_throw(pc->mu, "mu");
    positive_or_throw(pc->s, "s");
  } else {
    const auto& c = std::get<Combined>(spec);
    positive_or_throw(c.gamma, "gamma");
    positive_or_throw(c.mu, "mu");
  }
}

void FlowConfig::validate() const {
  positive_or_throw(time_step, "time_step");
  if (!(shift >= 0.0) || !std::isfinite(shift)) throw ContractViolation("shift must be a finite number >= 0");
  if (max_iters == 0) throw ContractViolation("max_iters must be positive");
  positive_or_throw(grad_tol, "grad_tol");
  positive_or_throw(energy_tol, "energy_tol");
  if (restarts == 0) throw ContractViolation("restarts must be positive");
}

TriField initializer(const ConstraintSpec& spec, const Grid& g, std::uint64_t seed) {
  std::array<double, 3> target{};
  if (const auto* pc = std::get_if<PerComponent>(&spec)) {
    target = {pc->gamma, pc->mu, pc->s};
  } else {
    const auto& c = std::get<Combined>(spec);
    const double a = 0.5 * std::min(c.gamma, c.mu);
    target = {c.gamma - a, c.mu - a, a};
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Triple u;
  for (std::size_t i = 0; i < 3; ++i) {
    ComplexField noise(g.points());
    for (auto& z : noise) z = unif(rng);
    noise = heat_smooth(noise, 1.0, g);
    double peak = 0.0;
    for (const auto& z : noise) peak = std::max(peak, std::abs(z.real()));
    u[i] = bump(g, 2.0);
    for (std::size_t j = 0; j < g.points(); ++j) {
      const double eta = peak > 0.0 ? noise[j].real() / peak : 0.0;
      u[i][j] *= 1.0 + 0.05 * eta;
    }
    if (target[i] < 0.0) throw ContractViolation("initializer: negative mass target");
    rescale_to(u[i], target[i], g);
  }
  return TriField(g, std::move(u[0]), std::move(u[1]), std::move(u[2]));
}

GroundStateResult minimize_i(const PerComponent& spec, const Params& params, const Grid& grid,
                             const FlowConfig& cfg, std::optional<TriField> init) {
  params.validate();
  require_exponent(params, "minimize_i");
  validate(ConstraintSpec{spec});
  cfg.validate();
  return solve({spec.gamma, spec.mu, spec.s}, params, grid, cfg, init);
}

GroundStateResult minimize_masses(const std::array<double, 3>& targets, const Params& params,
                                  const Grid& grid, const FlowConfig& cfg, std::optional<TriField> init) {
  params.validate();
  require_exponent(params, "minimize_masses");
  cfg.validate();
  for (double t : targets) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ContractViolation("mass targets must be finite and >= 0");
  }
  if (targets[0] + targets[1] + targets[2] == 0.0) throw ContractViolation("all mass targets are zero");
  return solve(targets, params, grid, cfg, init);
}

ScalarResult minimize_scalar(double m, const Params& params, const Grid& grid, const FlowConfig& cfg) {
  positive_or_throw(m, "mass");
  const GroundStateResult r = minimize_masses({m, 0.0, 0.0}, params, grid, cfg);
  ScalarResult s;
  s.profile = r.minimizer[0];
  s.energy = r.energy;
  s.omega = r.multipliers.omega1;
  s.residual = r.residual.r1;
  s.iterations = r.iterations;
  s.energy_trace = r.energy_trace;
  return s;
}

GroundStateResult assess(const TriField& v, const Params& params) {
  params.validate();
  std::array<double, 3> target{};
  for (std::size_t i = 0; i < 3; ++i) target[i] = mass(v[i], v.grid());
  GroundStateResult r = finalize(v, params, target);
  r.energy_trace = {r.energy};
  r.restart_energies = {r.energy};
  return r;
}

JResult minimize_j(const Combined& spec, const Params& params, const Grid& grid, const FlowConfig& cfg) {
  params.validate();
  require_exponent(params, "minimize_j");
  validate(ConstraintSpec{spec});
  cfg.validate();

  const double hi = std::min(spec.gamma, spec.mu);
  const double lo = defaults::kSplitLowerFraction * hi;
  std::map<double, GroundStateResult> seen;
  std::vector<std::pair<double, double>> probes;

  auto targets_at = [&](double a) {
    std::array<double, 3> t{spec.gamma - a, spec.mu - a, a};
    for (double& x : t) x = std::max(x, 0.0);
    return t;
  };
  auto eval = [&](double a) -> const GroundStateResult& {
    if (auto it = seen.find(a); it != seen.end()) return it->second;
    std::optional<TriField> warm;
    if (!seen.empty()) {
      auto it = seen.lower_bound(a);
      if (it == seen.end() || (it != seen.begin() && a - std::prev(it)->first < it->first - a)) --it;
      warm = it->second.minimizer;
    }
    GroundStateResult r = solve(targets_at(a), params, grid, cfg, warm);
    probes.emplace_back(a, r.energy);
    return seen.emplace(a, std::move(r)).first->second;
  };
  auto slope = [&](double a) {
    const auto& m = eval(a).multipliers;
    return m.omega1 + m.omega2 - m.omega3;
  };

  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x0 = lo, x3 = hi;
  double x1 = x3 - phi * (x3 - x0), x2 = x0 + phi * (x3 - x0);
  double f1 = eval(x1).energy, f2 = eval(x2).energy;
  const double tol = defaults::kSplitTolerance * hi;
  while (x3 - x0 > tol) {
    if (f1 <= f2) {
      x3 = x2;
      x2 = x1;
      f2 = f1;
      x1 = x3 - phi * (x3 - x0);
      f1 = eval(x1).energy;
    } else {
      x0 = x1;
      x1 = x2;
      f1 = f2;
      x2 = x0 + phi * (x3 - x0);
      f2 = eval(x2).energy;
    }
  }
  eval(hi);

  auto argmin = [&] {
    auto best = seen.begin();
    for (auto it = seen.begin(); it != seen.end(); ++it)
      if (it->second.energy < best->second.energy) best = it;
    return best->first;
  };
  double a_best = argmin();

  // The minimum is interior: refine the root of dI/da = w1 + w2 - w3 inside
  // the final bracket so the returned state satisfies the group law.
  if (a_best < hi && x0 < a_best && a_best < x3) {
    double a = x0, b = x3;
    double ga = slope(a), gb = slope(b);
    if (std::isfinite(ga) && std::isfinite(gb) && ga < 0.0 && gb > 0.0) {
      int side = 0;
      double c = a_best;
      for (int it = 0; it < 40; ++it) {
        c = b - gb * (b - a) / (gb - ga);
        if (!(c > a && c < b)) c = 0.5 * (a + b);
        const double gc = slope(c);
        if (std::abs(gc) < 1e-11 || b - a < 1e-13 * hi) break;
        if (gc < 0.0) {
          a = c;
          ga = gc;
          if (side == -1) gb *= 0.5;
          side = -1;
        } else {
          b = c;
          gb = gc;
          if (side == 1) ga *= 0.5;
          side = 1;
        }
      }
      const double e_c = seen.at(c).energy;
      const double e_min = seen.at(argmin()).energy;
      a_best = e_c <= e_min + 1e-12 * (1.0 + std::abs(e_min)) ? c : argmin();
    }
  }

  GroundStateResult inner = seen.at(a_best);
  const double j = inner.energy;
  return {std::move(inner), a_best, j, std::move(probes)};
}

}  // namespace triwave
