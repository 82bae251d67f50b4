#pragma once

#include "triwave/grid.hpp"

namespace triwave {

/// Parameters of the closed-form sech^2 profiles. alpha only enters the
/// psi family and may be zero there.
struct SolitonSpec {
  double omega = 1.0;
  double p = 2.0;
  double beta = 1.0;
  double alpha = 1.0;
};

/// Scalar soliton {omega(p+1) sech^2(((p-1)/2) sqrt(2 omega) x)}^{1/(p-1)},
/// amplitude rescaled by beta^{-1/(p-1)}. Solves -phi'' + 2 omega phi = beta phi^p.
/// Throws TruncationError if the box edge value exceeds 1e-14 of the peak.
ComplexField phi_omega(const SolitonSpec& spec, const Grid& g);

/// Symmetric three-wave profile 3 omega/(alpha+beta) sech^2(sqrt(2 omega) x / 2).
/// Requires p == 2 (UnsupportedExponent otherwise).
ComplexField psi_omega(const SolitonSpec& spec, const Grid& g);

/// Mass of psi_omega: 12 sqrt(2) omega^{3/2} / (alpha+beta)^2.
double gamma_of_omega(double omega, double alpha, double beta);
/// Inverse of gamma_of_omega. Throws DomainError for gamma <= 0.
double omega_of_gamma(double gamma, double alpha, double beta);

/// Closed-form mass of phi_omega for general p and beta.
double phi_mass(const SolitonSpec& spec);
/// Frequency of the scalar soliton with the given mass (numerical inverse of phi_mass).
double phi_omega_of_mass(double mass, double p, double beta);

}  // namespace triwave
