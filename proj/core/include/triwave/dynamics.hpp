#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "triwave/defaults.hpp"
#include "triwave/error.hpp"
#include "triwave/field.hpp"

namespace triwave {

struct EvolveConfig {
  double dt = defaults::kEvolveDt;
  double t_end = defaults::kEvolveTEnd;
  std::size_t sample_every = defaults::kSampleEvery;
  /// Absolute threshold on ||d_x u||; default is kBlowupFactor times the
  /// initial value (or kBlowupFactor itself for data with zero gradient).
  std::optional<double> blowup_gradient_threshold;
  /// Integrate with -dt (the scheme is symmetric, so this undoes a forward run).
  bool backward = false;

  void validate() const;
};

/// Relative deviations (X(t) - X(0)) / |X(0)|, or absolute ones if X(0) = 0.
struct ConservationTrace {
  std::vector<double> times;
  std::vector<double> energy_drift;
  std::vector<double> q1_drift;
  std::vector<double> q2_drift;

  double max_energy_drift() const;
  double max_q1_drift() const;
  double max_q2_drift() const;
};

struct BlowupReport {
  bool detected = false;
  std::optional<double> t_detect;
  double gradient_norm_at_detect = 0.0;
};

struct EvolveResult {
  TriField state;
  ConservationTrace conservation;
  BlowupReport blowup;
  std::size_t steps = 0;
};

/// A non-finite value appeared. Carries the last finite state and the trace
/// recorded so far.
class IntegrationFailure : public NumericalFailure {
 public:
  IntegrationFailure(const std::string& what, TriField last_valid, double t, ConservationTrace partial)
      : NumericalFailure(what), last_(std::move(last_valid)), t_(t), trace_(std::move(partial)) {}
  const TriField& last_valid_state() const noexcept { return last_; }
  double time() const noexcept { return t_; }
  const ConservationTrace& partial_trace() const noexcept { return trace_; }

 private:
  TriField last_;
  double t_;
  ConservationTrace trace_;
};

/// One Strang step: RK4 half-step of the pointwise coupled ODE, exact
/// linear propagator exp(-i k^2 dt), RK4 half-step. Keep dt * max|u|^{p-1}
/// around 0.1 or below.
TriField step(const TriField& v, double dt, const Params& params);

/// Called at t = 0, every sample_every steps and at the final time.
using EvolveObserver = std::function<void(double t, const TriField& v)>;

/// round(t_end / dt) fixed steps. Stops early (blowup.detected) when the
/// gradient norm at a sample exceeds the threshold.
EvolveResult evolve(const TriField& v0, const EvolveConfig& cfg, const Params& params,
                    const EvolveObserver& observer = {});

namespace detail {
/// The pointwise nonlinear flow advanced by one RK4 step of size h.
void nonlinear_substep(std::array<ComplexField, 3>& u, double h, const Params& params);
}  // namespace detail

}  // namespace triwave
