#include "triwave/grid.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <string>

#include "triwave/error.hpp"

namespace triwave {

namespace detail {

// The FFTW planner is not re-entrant; execution of an existing plan on new
// arrays is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftPlans {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;

  explicit FftPlans(std::size_t n) {
    const int len = static_cast<int>(n);
    std::vector<cplx> a(n), b(n);
    auto* pa = reinterpret_cast<fftw_complex*>(a.data());
    auto* pb = reinterpret_cast<fftw_complex*>(b.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    std::lock_guard lock(planner_mutex());
    forward = fftw_plan_dft_1d(len, pa, pb, FFTW_FORWARD, flags);
    backward = fftw_plan_dft_1d(len, pa, pb, FFTW_BACKWARD, flags);
  }
  ~FftPlans() {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }
  FftPlans(const FftPlans&) = delete;
  FftPlans& operator=(const FftPlans&) = delete;
};

}  // namespace detail

namespace {

void execute(fftw_plan plan, std::span<const cplx> in, std::span<cplx> out) {
  auto* pin = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
  auto* pout = reinterpret_cast<fftw_complex*>(out.data());
  if (pin == pout) {
    std::vector<cplx> tmp(in.begin(), in.end());
    fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(tmp.data()), pout);
  } else {
    fftw_execute_dft(plan, pin, pout);
  }
}

template <class Multiplier>
ComplexField apply_multiplier(std::span<const cplx> f, const Grid& g, Multiplier&& m) {
  ComplexField spec = g.forward(f);
  const auto k = g.wavenumbers();
  for (std::size_t j = 0; j < spec.size(); ++j) spec[j] *= m(j, k[j]);
  g.inverse(spec, spec);
  return spec;
}

}  // namespace

Grid::Grid(double half_length, std::size_t points)
    : half_length_(half_length), points_(points) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw ContractViolation("Grid: half_length must be positive and finite");
  }
  if (points < 2 || !std::has_single_bit(points)) {
    throw ContractViolation("Grid: points must be a power of two >= 2, got " +
                            std::to_string(points));
  }
  spacing_ = 2.0 * half_length_ / static_cast<double>(points_);
  wavenumbers_.resize(points_);
  const auto n = static_cast<long long>(points_);
  for (long long j = 0; j < n; ++j) {
    const long long m = j < n / 2 ? j : j - n;
    wavenumbers_[static_cast<std::size_t>(j)] =
        std::numbers::pi * static_cast<double>(m) / half_length_;
  }
  plans_ = std::make_shared<const detail::FftPlans>(points_);
}

RealField Grid::nodes() const {
  RealField x(points_);
  for (std::size_t j = 0; j < points_; ++j) x[j] = node(j);
  return x;
}

void Grid::require_size(std::size_t n, const char* what) const {
  if (n != points_) {
    throw ContractViolation(std::string(what) + ": length " + std::to_string(n) +
                            " does not match grid size " + std::to_string(points_));
  }
}

void Grid::forward(std::span<const cplx> in, std::span<cplx> out) const {
  require_size(in.size(), "Grid::forward input");
  require_size(out.size(), "Grid::forward output");
  execute(plans_->forward, in, out);
}

void Grid::inverse(std::span<const cplx> in, std::span<cplx> out) const {
  require_size(in.size(), "Grid::inverse input");
  require_size(out.size(), "Grid::inverse output");
  execute(plans_->backward, in, out);
  const double scale = 1.0 / static_cast<double>(points_);
  for (auto& z : out) z *= scale;
}

ComplexField Grid::forward(std::span<const cplx> in) const {
  ComplexField out(points_);
  forward(in, out);
  return out;
}

ComplexField Grid::inverse(std::span<const cplx> in) const {
  ComplexField out(points_);
  inverse(in, out);
  return out;
}

ComplexField second_derivative(std::span<const cplx> f, const Grid& g) {
  g.require_size(f.size(), "second_derivative");
  return apply_multiplier(f, g, [](std::size_t, double k) { return cplx(-k * k, 0.0); });
}

ComplexField first_derivative(std::span<const cplx> f, const Grid& g) {
  g.require_size(f.size(), "first_derivative");
  const std::size_t nyq = g.nyquist_index();
  return apply_multiplier(f, g, [nyq](std::size_t j, double k) {
    return j == nyq ? cplx(0.0, 0.0) : cplx(0.0, k);
  });
}

ComplexField translate(std::span<const cplx> f, double y, const Grid& g) {
  g.require_size(f.size(), "translate");
  if (y == 0.0) return ComplexField(f.begin(), f.end());
  return apply_multiplier(f, g, [y](std::size_t, double k) { return std::polar(1.0, -k * y); });
}

ComplexField heat_smooth(std::span<const cplx> f, double tau, const Grid& g) {
  g.require_size(f.size(), "heat_smooth");
  return apply_multiplier(f, g, [tau](std::size_t, double k) { return cplx(std::exp(-tau * k * k), 0.0); });
}

double quadrature(std::span<const double> density, const Grid& g) {
  g.require_size(density.size(), "quadrature");
  double s = 0.0;
  for (double v : density) s += v;
  return s * g.spacing();
}

double boundary_tail_ratio(std::span<const cplx> f, const Grid& g) {
  g.require_size(f.size(), "boundary_tail_ratio");
  double peak = 0.0;
  for (const auto& z : f) peak = std::max(peak, std::abs(z));
  if (peak == 0.0) return 0.0;
  return std::max(std::abs(f.front()), std::abs(f.back())) / peak;
}

}  // namespace triwave
