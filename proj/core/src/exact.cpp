#include "triwave/exact.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "triwave/error.hpp"

namespace triwave {

namespace {

constexpr double kTailTolerance = 1e-14;

void require_omega(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw ContractViolation("SolitonSpec.omega must be > 0");
}

double sech(double t) {
  // 1/cosh overflows gracefully to 0 for large |t|.
  return 1.0 / std::cosh(t);
}

}  // namespace

ComplexField phi_omega(const SolitonSpec& spec, const Grid& g) {
  require_omega(spec.omega);
  if (!(spec.p > 1.0)) throw ContractViolation("SolitonSpec.p must be > 1");
  if (!(spec.beta > 0.0)) throw ContractViolation("SolitonSpec.beta must be > 0");
  const double expo = 1.0 / (spec.p - 1.0);
  const double amp = std::pow(spec.omega * (spec.p + 1.0) / spec.beta, expo);
  const double width = 0.5 * (spec.p - 1.0) * std::sqrt(2.0 * spec.omega);
  const double edge = std::pow(sech(width * g.half_length()), 2.0 * expo);
  if (edge > kTailTolerance) {
    throw TruncationError("phi_omega: box half-length " + std::to_string(g.half_length()) +
                          " too short, edge/peak = " + std::to_string(edge));
  }
  ComplexField f(g.points());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double s = sech(width * g.node(j));
    f[j] = amp * std::pow(s * s, expo);
  }
  return f;
}

ComplexField psi_omega(const SolitonSpec& spec, const Grid& g) {
  require_omega(spec.omega);
  if (spec.p != 2.0) {
    throw UnsupportedExponent("psi_omega: closed form exists only for p = 2, got p = " +
                              std::to_string(spec.p));
  }
  const double c = spec.alpha + spec.beta;
  if (!(c > 0.0) || spec.alpha < 0.0) throw ContractViolation("psi_omega: need alpha >= 0, alpha+beta > 0");
  const double amp = 3.0 * spec.omega / c;
  const double width = 0.5 * std::sqrt(2.0 * spec.omega);
  ComplexField f(g.points());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double s = sech(width * g.node(j));
    f[j] = amp * s * s;
  }
  return f;
}

double gamma_of_omega(double omega, double alpha, double beta) {
  require_omega(omega);
  const double c = alpha + beta;
  if (!(c > 0.0)) throw ContractViolation("gamma_of_omega: alpha+beta must be > 0");
  return 12.0 * std::numbers::sqrt2 * std::pow(omega, 1.5) / (c * c);
}

double omega_of_gamma(double gamma, double alpha, double beta) {
  if (!(gamma > 0.0)) throw DomainError("omega_of_gamma: gamma must be > 0");
  const double c = alpha + beta;
  if (!(c > 0.0)) throw ContractViolation("omega_of_gamma: alpha+beta must be > 0");
  return std::pow(gamma * c * c / (12.0 * std::numbers::sqrt2), 2.0 / 3.0);
}

double phi_mass(const SolitonSpec& spec) {
  require_omega(spec.omega);
  const double p = spec.p;
  const double q = 4.0 / (p - 1.0);
  const double amp = std::pow(spec.omega * (p + 1.0) / spec.beta, 1.0 / (p - 1.0));
  const double width = 0.5 * (p - 1.0) * std::sqrt(2.0 * spec.omega);
  // int sech^q = sqrt(pi) Gamma(q/2) / Gamma((q+1)/2)
  const double sech_q = std::sqrt(std::numbers::pi) * std::exp(std::lgamma(0.5 * q) - std::lgamma(0.5 * (q + 1.0)));
  return amp * amp * sech_q / width;
}

double phi_omega_of_mass(double mass, double p, double beta) {
  if (!(mass > 0.0)) throw DomainError("phi_omega_of_mass: mass must be > 0");
  if (!(p > 1.0 && p < 5.0)) throw ContractViolation("phi_omega_of_mass: need 1 < p < 5");
  // mass scales as omega^{(5-p)/(2(p-1))}
  const double unit = phi_mass({1.0, p, beta, 0.0});
  return std::pow(mass / unit, 2.0 * (p - 1.0) / (5.0 - p));
}

}  // namespace triwave
