#include "triwave/functionals.hpp"

#include <cmath>

#include "triwave/error.hpp"

namespace triwave {

double MultiplierEstimate::consistency_gap() const noexcept {
  return std::abs(omega3 - (omega1 + omega2));
}

double ResidualReport::total() const noexcept { return std::sqrt(r1 * r1 + r2 * r2 + r3 * r3); }

cplx power_nonlinearity(cplx u, double p) noexcept {
  if (p == 2.0) return std::abs(u) * u;
  if (p == 3.0) return std::norm(u) * u;
  const double a = std::abs(u);
  if (a == 0.0) return cplx(0.0, 0.0);
  return std::pow(a, p - 1.0) * u;
}

double lq_norm_pow(std::span<const cplx> f, double q, const Grid& g) {
  g.require_size(f.size(), "lq_norm_pow");
  double s = 0.0;
  if (q == 2.0) {
    for (const auto& z : f) s += std::norm(z);
  } else if (q == 3.0) {
    for (const auto& z : f) s += std::norm(z) * std::abs(z);
  } else if (q == 4.0) {
    for (const auto& z : f) s += std::norm(z) * std::norm(z);
  } else {
    for (const auto& z : f) s += std::pow(std::abs(z), q);
  }
  return s * g.spacing();
}

double gradient_norm_sq(std::span<const cplx> f, const Grid& g) {
  g.require_size(f.size(), "gradient_norm_sq");
  const ComplexField spec = g.forward(f);
  const auto k = g.wavenumbers();
  double s = 0.0;
  for (std::size_t j = 0; j < spec.size(); ++j) s += k[j] * k[j] * std::norm(spec[j]);
  const double n = static_cast<double>(g.points());
  return s * g.spacing() / n;
}

double trilinear(const TriField& v) {
  double s = 0.0;
  for (std::size_t j = 0; j < v.size(); ++j) s += (v[0][j] * v[1][j] * std::conj(v[2][j])).real();
  return s * v.grid().spacing();
}

double energy(const TriField& v, const Params& params) {
  const Grid& g = v.grid();
  double e = 0.0;
  for (const auto& c : v.components()) {
    e += 0.5 * gradient_norm_sq(c, g) - params.beta / (params.p + 1.0) * lq_norm_pow(c, params.p + 1.0, g);
  }
  return e - params.alpha * trilinear(v);
}

double q1(const TriField& v) { return mass(v[0], v.grid()) + mass(v[2], v.grid()); }
double q2(const TriField& v) { return mass(v[1], v.grid()) + mass(v[2], v.grid()); }

double action(const TriField& v, double omega1, double omega2, const Params& params) {
  return energy(v, params) + omega1 * q1(v) + omega2 * q2(v);
}

TriField energy_gradient(const TriField& v, const Params& params) {
  const Grid& g = v.grid();
  std::array<ComplexField, 3> out;
  for (std::size_t i = 0; i < 3; ++i) out[i] = second_derivative(v[i], g);
  const auto& u = v.components();
  for (std::size_t j = 0; j < v.size(); ++j) {
    const cplx c1 = params.alpha * u[2][j] * std::conj(u[1][j]);
    const cplx c2 = params.alpha * u[2][j] * std::conj(u[0][j]);
    const cplx c3 = params.alpha * u[0][j] * u[1][j];
    out[0][j] = -out[0][j] - params.beta * power_nonlinearity(u[0][j], params.p) - c1;
    out[1][j] = -out[1][j] - params.beta * power_nonlinearity(u[1][j], params.p) - c2;
    out[2][j] = -out[2][j] - params.beta * power_nonlinearity(u[2][j], params.p) - c3;
  }
  return TriField(g, std::move(out[0]), std::move(out[1]), std::move(out[2]));
}

namespace {

TriField shifted_gradient(const TriField& v, const std::array<double, 3>& omega,
                          const Params& params) {
  TriField grad = energy_gradient(v, params);
  for (std::size_t i = 0; i < 3; ++i) {
    auto& c = grad.mutable_component(i);
    for (std::size_t j = 0; j < c.size(); ++j) c[j] += 2.0 * omega[i] * v[i][j];
  }
  return grad;
}

}  // namespace

TriField action_gradient(const TriField& v, double omega1, double omega2, const Params& params) {
  return shifted_gradient(v, {omega1, omega2, omega1 + omega2}, params);
}

ResidualReport stationary_residual(const TriField& v, const MultiplierEstimate& m,
                                   const Params& params) {
  const TriField r = shifted_gradient(v, {m.omega1, m.omega2, m.omega3}, params);
  const Grid& g = v.grid();
  return {std::sqrt(mass(r[0], g)), std::sqrt(mass(r[1], g)), std::sqrt(mass(r[2], g))};
}

MultiplierEstimate estimate_multipliers(const TriField& v, const Params& params) {
  const Grid& g = v.grid();
  const double t = trilinear(v);
  std::array<double, 3> omega{};
  for (std::size_t i = 0; i < 3; ++i) {
    const double m = mass(v[i], g);
    if (!(m > 0.0)) throw UndefinedMultiplier(static_cast<int>(i + 1));
    const double pot = params.beta * lq_norm_pow(v[i], params.p + 1.0, g);
    const double kin = gradient_norm_sq(v[i], g);
    omega[i] = (pot + params.alpha * t - kin) / (2.0 * m);
  }
  return {omega[0], omega[1], omega[2]};
}

double scalar_energy_e1(std::span<const cplx> f, const Params& params, const Grid& g) {
  return 0.5 * gradient_norm_sq(f, g) - params.beta / (params.p + 1.0) * lq_norm_pow(f, params.p + 1.0, g);
}

double scalar_energy_e2(std::span<const cplx> f, const Params& params, const Grid& g) {
  return 0.5 * gradient_norm_sq(f, g) - (params.alpha + params.beta) / 3.0 * lq_norm_pow(f, 3.0, g);
}

double gn_quotient(std::span<const cplx> f, const Params& params, const Grid& g) {
  const double l2 = std::sqrt(mass(f, g));
  const double d = std::sqrt(mass(first_derivative(f, g), g));
  if (!(l2 > 0.0) || !(d > 0.0)) {
    throw UndefinedQuotient("gn_quotient: input or its derivative vanishes");
  }
  const double p = params.p;
  const double a = 0.5 * (p - 1.0);
  return lq_norm_pow(f, p + 1.0, g) / (std::pow(d, a) * std::pow(l2, p + 1.0 - a));
}

}  // namespace triwave
