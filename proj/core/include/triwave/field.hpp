#pragma once

#include <array>
#include <span>

#include "triwave/grid.hpp"

namespace triwave {

/// Exponent and couplings of the three-wave system.
struct Params {
  double p = 2.0;
  double alpha = 1.0;
  double beta = 1.0;

  /// Throws ContractViolation naming the first offending field.
  /// allow_uncoupled admits alpha = 0 (decoupled equations; time stepping only).
  void validate(bool allow_uncoupled = false) const;
};

/// The state (u1, u2, u3) on a shared grid. Every stored value is finite.
class TriField {
 public:
  TriField(Grid grid, ComplexField u1, ComplexField u2, ComplexField u3);

  static TriField zeros(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  std::size_t size() const noexcept { return grid_.points(); }

  const ComplexField& operator[](std::size_t i) const { return u_[i]; }
  /// Mutable access; callers that write must call check_finite() before
  /// handing the field on.
  ComplexField& mutable_component(std::size_t i) { return u_[i]; }
  const std::array<ComplexField, 3>& components() const noexcept { return u_; }

  /// Throws NumericalFailure if any entry is NaN or infinite.
  void check_finite(const char* where) const;

  TriField& operator+=(const TriField& o);
  TriField& operator-=(const TriField& o);
  TriField& operator*=(double s);

  friend TriField operator+(TriField a, const TriField& b) { return a += b; }
  friend TriField operator-(TriField a, const TriField& b) { return a -= b; }
  friend TriField operator*(double s, TriField a) { return a *= s; }

  /// Exact elementwise equality (used for bit-identity checks).
  friend bool operator==(const TriField& a, const TriField& b);

 private:
  void require_same_grid(const TriField& o, const char* what) const;

  Grid grid_;
  std::array<ComplexField, 3> u_;
};

/// Squared L2 norm by grid quadrature.
double mass(std::span<const cplx> f, const Grid& g);

/// H1 inner product, linear in the first slot: int f conj(g) + f' conj(g').
cplx h1_inner(std::span<const cplx> f, std::span<const cplx> h, const Grid& g);

/// sum_i mass(u_i) + mass(d_x u_i).
double h1_norm_sq(const TriField& v);

/// Symmetry action R(theta1, theta2): phases (theta1, theta2, theta1+theta2).
TriField rotate(const TriField& v, double theta1, double theta2);
/// tau_y applied componentwise: u(x - y).
TriField translate(const TriField& v, double y);
/// Componentwise modulus (|u1|, |u2|, |u3|).
TriField modulus(const TriField& v);

}  // namespace triwave
