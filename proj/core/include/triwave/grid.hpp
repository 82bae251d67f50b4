#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace triwave {

using cplx = std::complex<double>;
using ComplexField = std::vector<cplx>;
using RealField = std::vector<double>;

namespace detail {
struct FftPlans;
}

/// Uniform periodic grid on [-L, L) with N = 2^m nodes x_j = -L + j*dx.
///
/// Immutable after construction. Copies share the FFTW plans, which are
/// created unaligned so they may be executed on any caller-owned buffer from
/// any thread.
class Grid {
 public:
  Grid(double half_length, std::size_t points);

  double half_length() const noexcept { return half_length_; }
  std::size_t points() const noexcept { return points_; }
  double spacing() const noexcept { return spacing_; }
  double length() const noexcept { return 2.0 * half_length_; }

  /// k_j in FFT ordering: pi*m/L with m = 0..N/2-1, -N/2..-1.
  std::span<const double> wavenumbers() const noexcept { return wavenumbers_; }
  std::size_t nyquist_index() const noexcept { return points_ / 2; }

  double node(std::size_t j) const noexcept {
    return -half_length_ + static_cast<double>(j) * spacing_;
  }
  RealField nodes() const;

  /// Unnormalized forward DFT, out_k = sum_j in_j e^{-2 pi i jk/N}.
  void forward(std::span<const cplx> in, std::span<cplx> out) const;
  /// Inverse DFT including the 1/N factor.
  void inverse(std::span<const cplx> in, std::span<cplx> out) const;

  ComplexField forward(std::span<const cplx> in) const;
  ComplexField inverse(std::span<const cplx> in) const;

  /// Throws ContractViolation unless f has exactly N entries.
  void require_size(std::size_t n, const char* what) const;

  friend bool operator==(const Grid& a, const Grid& b) noexcept {
    return a.points_ == b.points_ && a.half_length_ == b.half_length_;
  }

 private:
  double half_length_;
  std::size_t points_;
  double spacing_;
  std::vector<double> wavenumbers_;
  std::shared_ptr<const detail::FftPlans> plans_;
};

// Spectral primitives. All are pure; buffers are per call.

ComplexField second_derivative(std::span<const cplx> f, const Grid& g);
/// Multiplier i*k_j, with the Nyquist entry forced to zero.
ComplexField first_derivative(std::span<const cplx> f, const Grid& g);
/// Spectral shift, returns f(x - y).
ComplexField translate(std::span<const cplx> f, double y, const Grid& g);
/// Multiplies the spectrum by exp(-tau k^2), i.e. heat flow for time tau.
ComplexField heat_smooth(std::span<const cplx> f, double tau, const Grid& g);

/// Rectangle rule on the periodic grid: dx * sum f_j.
double quadrature(std::span<const double> density, const Grid& g);
/// Largest of |f| at the two nodes nearest the box edge, divided by max |f|.
double boundary_tail_ratio(std::span<const cplx> f, const Grid& g);

}  // namespace triwave
