#include "triwave/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "triwave/functionals.hpp"

namespace triwave {

namespace {

using Triple = std::array<ComplexField, 3>;

struct Point {
  cplx a, b, c;
};

inline Point rhs(const Point& u, const Params& prm) {
  const cplx i(0.0, 1.0);
  return {i * (prm.beta * power_nonlinearity(u.a, prm.p) + prm.alpha * u.c * std::conj(u.b)),
          i * (prm.beta * power_nonlinearity(u.b, prm.p) + prm.alpha * u.c * std::conj(u.a)),
          i * (prm.beta * power_nonlinearity(u.c, prm.p) + prm.alpha * u.a * u.b)};
}

inline Point axpy(const Point& u, double h, const Point& k) {
  return {u.a + h * k.a, u.b + h * k.b, u.c + h * k.c};
}

void nonlinear_rk4(Triple& u, double h, const Params& prm) {
  for (std::size_t j = 0; j < u[0].size(); ++j) {
    const Point y{u[0][j], u[1][j], u[2][j]};
    const Point k1 = rhs(y, prm);
    const Point k2 = rhs(axpy(y, 0.5 * h, k1), prm);
    const Point k3 = rhs(axpy(y, 0.5 * h, k2), prm);
    const Point k4 = rhs(axpy(y, h, k3), prm);
    u[0][j] = y.a + h / 6.0 * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a);
    u[1][j] = y.b + h / 6.0 * (k1.b + 2.0 * k2.b + 2.0 * k3.b + k4.b);
    u[2][j] = y.c + h / 6.0 * (k1.c + 2.0 * k2.c + 2.0 * k3.c + k4.c);
  }
}

class Stepper {
 public:
  Stepper(const Grid& g, double dt, const Params& prm) : g_(g), dt_(dt), prm_(prm), prop_(g.points()), buf_(g.points()) {
    const auto k = g.wavenumbers();
    for (std::size_t j = 0; j < prop_.size(); ++j) prop_[j] = std::polar(1.0, -k[j] * k[j] * dt);
  }

  void advance(Triple& u) {
    nonlinear_rk4(u, 0.5 * dt_, prm_);
    for (auto& c : u) {
      g_.forward(c, buf_);
      for (std::size_t j = 0; j < buf_.size(); ++j) buf_[j] *= prop_[j];
      g_.inverse(buf_, c);
    }
    nonlinear_rk4(u, 0.5 * dt_, prm_);
  }

 private:
  const Grid& g_;
  double dt_;
  Params prm_;
  ComplexField prop_;
  ComplexField buf_;
};

bool all_finite(const Triple& u) {
  for (const auto& c : u)
    for (const auto& z : c)
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

double drift(double x, double x0) { return x0 != 0.0 ? (x - x0) / std::abs(x0) : x - x0; }

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double total_gradient_norm(const TriField& v) {
  double s = 0.0;
  for (const auto& c : v.components()) s += gradient_norm_sq(c, v.grid());
  return std::sqrt(s);
}

}  // namespace

void detail::nonlinear_substep(std::array<ComplexField, 3>& u, double h, const Params& params) {
  nonlinear_rk4(u, h, params);
}

void EvolveConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ContractViolation("dt must be a positive finite number");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ContractViolation("t_end must be a positive finite number");
  if (sample_every == 0) throw ContractViolation("sample_every must be positive");
  if (blowup_gradient_threshold && !(*blowup_gradient_threshold > 0.0)) {
    throw ContractViolation("blowup_gradient_threshold must be positive");
  }
}

double ConservationTrace::max_energy_drift() const { return max_abs(energy_drift); }
double ConservationTrace::max_q1_drift() const { return max_abs(q1_drift); }
double ConservationTrace::max_q2_drift() const { return max_abs(q2_drift); }

TriField step(const TriField& v, double dt, const Params& params) {
  params.validate(true);
  Triple u = v.components();
  Stepper(v.grid(), dt, params).advance(u);
  if (!all_finite(u)) throw IntegrationFailure("step produced a non-finite value", v, dt, {});
  return TriField(v.grid(), std::move(u[0]), std::move(u[1]), std::move(u[2]));
}

EvolveResult evolve(const TriField& v0, const EvolveConfig& cfg, const Params& params,
                    const EvolveObserver& observer) {
  params.validate(true);
  cfg.validate();
  const Grid& g = v0.grid();
  const double h = cfg.backward ? -cfg.dt : cfg.dt;
  const auto n_steps = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.dt));
  const double e0 = energy(v0, params), m10 = q1(v0), m20 = q2(v0);
  const double g0 = total_gradient_norm(v0);
  const double threshold = cfg.blowup_gradient_threshold.value_or(
      defaults::kBlowupFactor * (g0 > 0.0 ? g0 : 1.0));

  EvolveResult out{v0, {}, {}, 0};
  auto sample = [&](double t, const TriField& v) {
    out.conservation.times.push_back(t);
    out.conservation.energy_drift.push_back(drift(energy(v, params), e0));
    out.conservation.q1_drift.push_back(drift(q1(v), m10));
    out.conservation.q2_drift.push_back(drift(q2(v), m20));
    if (observer) observer(t, v);
  };
  sample(0.0, v0);

  Stepper stepper(g, h, params);
  Triple u = v0.components();
  Triple last = u;
  for (std::size_t s = 1; s <= n_steps; ++s) {
    last = u;
    stepper.advance(u);
    const double t = static_cast<double>(s) * h;
    if (!all_finite(u)) {
      throw IntegrationFailure("non-finite value at t = " + std::to_string(t),
                               TriField(g, last[0], last[1], last[2]), t - h, out.conservation);
    }
    out.steps = s;
    if (s % cfg.sample_every == 0 || s == n_steps) {
      TriField v(g, u[0], u[1], u[2]);
      const double gn = total_gradient_norm(v);
      sample(t, v);
      if (gn >= threshold) {
        out.blowup = {true, t, gn};
        out.state = std::move(v);
        return out;
      }
    }
  }
  out.state = TriField(g, std::move(u[0]), std::move(u[1]), std::move(u[2]));
  return out;
}

}  // namespace triwave
