#pragma once

#include <array>

#include "triwave/field.hpp"

namespace triwave {

/// Lagrange multipliers of the stationary system. The gap to the group law
/// omega3 = omega1 + omega2 is derived on every call, never cached.
struct MultiplierEstimate {
  double omega1 = 0.0;
  double omega2 = 0.0;
  double omega3 = 0.0;

  double consistency_gap() const noexcept;
  double operator[](std::size_t i) const { return i == 0 ? omega1 : i == 1 ? omega2 : omega3; }
};

/// L2 norms of the left-minus-right sides of the three stationary equations.
struct ResidualReport {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
  double total() const noexcept;
};

/// int |f|^q dx.
double lq_norm_pow(std::span<const cplx> f, double q, const Grid& g);
/// ||d_x f||^2 as sum k^2 |f_hat_k|^2 (the quadratic form of -d_x^2).
double gradient_norm_sq(std::span<const cplx> f, const Grid& g);

/// |u|^{p-1} u with 0^{p-1} * 0 := 0.
cplx power_nonlinearity(cplx u, double p) noexcept;

/// Re int u1 u2 conj(u3) dx.
double trilinear(const TriField& v);

double energy(const TriField& v, const Params& params);
double q1(const TriField& v);
double q2(const TriField& v);

/// K = E + omega1 Q1 + omega2 Q2.
double action(const TriField& v, double omega1, double omega2, const Params& params);

/// Frechet derivative of E w.r.t. the real pairing Re int conj(g) w:
///   E'_1 = -u1'' - beta|u1|^{p-1}u1 - alpha u3 conj(u2)   (and cyclic).
TriField energy_gradient(const TriField& v, const Params& params);
/// K' = E' + 2 (omega1 u1, omega2 u2, (omega1+omega2) u3).
TriField action_gradient(const TriField& v, double omega1, double omega2, const Params& params);

ResidualReport stationary_residual(const TriField& v, const MultiplierEstimate& m,
                                   const Params& params);

/// Pairs each stationary equation with its own component:
///   2 omega_i = (beta ||u_i||_{p+1}^{p+1} + alpha T - ||u_i'||^2) / ||u_i||^2.
/// Throws UndefinedMultiplier for a zero-mass component.
MultiplierEstimate estimate_multipliers(const TriField& v, const Params& params);

/// Scalar energy 1/2 ||u'||^2 - beta/(p+1) ||u||_{p+1}^{p+1}.
double scalar_energy_e1(std::span<const cplx> f, const Params& params, const Grid& g);
/// Symmetric-case scalar energy 1/2 ||u'||^2 - (alpha+beta)/3 ||u||_3^3 (p = 2).
double scalar_energy_e2(std::span<const cplx> f, const Params& params, const Grid& g);

/// ||f||_{p+1}^{p+1} / (||f'||^{(p-1)/2} ||f||^{p+1-(p-1)/2}).
double gn_quotient(std::span<const cplx> f, const Params& params, const Grid& g);

}  // namespace triwave
