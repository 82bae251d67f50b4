#include "triwave/field.hpp"

#include <cmath>
#include <string>

#include "triwave/error.hpp"

namespace triwave {

void Params::validate(bool allow_uncoupled) const {
  if (!(p > 1.0) || !std::isfinite(p)) throw ContractViolation("Params.p must be > 1");
  if (allow_uncoupled ? !(alpha >= 0.0) : !(alpha > 0.0)) {
    throw ContractViolation(allow_uncoupled ? "Params.alpha must be >= 0" : "Params.alpha must be > 0");
  }
  if (!std::isfinite(alpha)) throw ContractViolation("Params.alpha must be finite");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ContractViolation("Params.beta must be > 0");
}

TriField::TriField(Grid grid, ComplexField u1, ComplexField u2, ComplexField u3)
    : grid_(std::move(grid)), u_{std::move(u1), std::move(u2), std::move(u3)} {
  for (std::size_t i = 0; i < 3; ++i) grid_.require_size(u_[i].size(), "TriField component");
  check_finite("TriField construction");
}

TriField TriField::zeros(const Grid& grid) {
  const ComplexField z(grid.points(), cplx(0.0, 0.0));
  return TriField(grid, z, z, z);
}

void TriField::check_finite(const char* where) const {
  for (std::size_t i = 0; i < 3; ++i) {
    for (const auto& z : u_[i]) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
        throw NumericalFailure(std::string(where) + ": non-finite value in u" +
                               std::to_string(i + 1));
      }
    }
  }
}

void TriField::require_same_grid(const TriField& o, const char* what) const {
  if (!(grid_ == o.grid_)) throw ContractViolation(std::string(what) + ": grid mismatch");
}

TriField& TriField::operator+=(const TriField& o) {
  require_same_grid(o, "TriField +=");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < u_[i].size(); ++j) u_[i][j] += o.u_[i][j];
  return *this;
}

TriField& TriField::operator-=(const TriField& o) {
  require_same_grid(o, "TriField -=");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < u_[i].size(); ++j) u_[i][j] -= o.u_[i][j];
  return *this;
}

TriField& TriField::operator*=(double s) {
  for (auto& c : u_)
    for (auto& z : c) z *= s;
  return *this;
}

bool operator==(const TriField& a, const TriField& b) {
  return a.grid_ == b.grid_ && a.u_ == b.u_;
}

double mass(std::span<const cplx> f, const Grid& g) {
  g.require_size(f.size(), "mass");
  double s = 0.0;
  for (const auto& z : f) s += std::norm(z);
  return s * g.spacing();
}

cplx h1_inner(std::span<const cplx> f, std::span<const cplx> h, const Grid& g) {
  g.require_size(f.size(), "h1_inner first argument");
  g.require_size(h.size(), "h1_inner second argument");
  const ComplexField df = first_derivative(f, g);
  const ComplexField dh = first_derivative(h, g);
  cplx s(0.0, 0.0);
  for (std::size_t j = 0; j < f.size(); ++j) s += f[j] * std::conj(h[j]) + df[j] * std::conj(dh[j]);
  return s * g.spacing();
}

double h1_norm_sq(const TriField& v) {
  double s = 0.0;
  for (const auto& c : v.components()) {
    s += mass(c, v.grid());
    s += mass(first_derivative(c, v.grid()), v.grid());
  }
  return s;
}

TriField rotate(const TriField& v, double theta1, double theta2) {
  const std::array<cplx, 3> ph{std::polar(1.0, theta1), std::polar(1.0, theta2),
                               std::polar(1.0, theta1 + theta2)};
  std::array<ComplexField, 3> out = v.components();
  for (std::size_t i = 0; i < 3; ++i)
    for (auto& z : out[i]) z *= ph[i];
  return TriField(v.grid(), std::move(out[0]), std::move(out[1]), std::move(out[2]));
}

TriField translate(const TriField& v, double y) {
  const Grid& g = v.grid();
  return TriField(g, translate(v[0], y, g), translate(v[1], y, g), translate(v[2], y, g));
}

TriField modulus(const TriField& v) {
  std::array<ComplexField, 3> out = v.components();
  for (auto& c : out)
    for (auto& z : c) z = cplx(std::abs(z), 0.0);
  return TriField(v.grid(), std::move(out[0]), std::move(out[1]), std::move(out[2]));
}

}  // namespace triwave
