#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "triwave/defaults.hpp"
#include "triwave/field.hpp"
#include "triwave/functionals.hpp"

namespace triwave {

/// Targets ||u1||^2 = gamma, ||u2||^2 = mu, ||u3||^2 = s.
struct PerComponent {
  double gamma = 0.0;
  double mu = 0.0;
  double s = 0.0;
};

/// Targets Q1 = gamma, Q2 = mu.
struct Combined {
  double gamma = 0.0;
  double mu = 0.0;
};

using ConstraintSpec = std::variant<PerComponent, Combined>;

/// Throws ContractViolation unless every target is positive.
void validate(const ConstraintSpec& spec);

struct FlowConfig {
  double time_step = defaults::kFlowTimeStep;  ///< fictitious time step dtau
  double shift = defaults::kFlowShift;         ///< stabilizing shift sigma >= 0
  std::size_t max_iters = defaults::kFlowMaxIters;
  double grad_tol = defaults::kFlowGradTol;
  double energy_tol = defaults::kFlowEnergyTol;
  std::uint64_t seed = defaults::kSeed;
  std::size_t restarts = defaults::kFlowRestarts;

  void validate() const;
};

struct GroundStateResult {
  TriField minimizer;
  double energy = 0.0;
  /// NaN in the slot of a component pinned to zero mass.
  MultiplierEstimate multipliers;
  ResidualReport residual;
  double constraint_error = 0.0;
  /// L2 norm of the constrained gradient at return.
  double gradient_norm = 0.0;
  std::size_t iterations = 0;
  std::vector<double> energy_trace;
  /// Final energy of each restart, in seed order (one entry for warm starts).
  std::vector<double> restart_energies;
};

struct JResult {
  GroundStateResult inner;
  double split_a = 0.0;
  double j_value = 0.0;
  /// Every (a, I(gamma-a, mu-a, a)) evaluated by the outer search.
  std::vector<std::pair<double, double>> probes;
};

struct ScalarResult {
  ComplexField profile;
  double energy = 0.0;
  double omega = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
  std::vector<double> energy_trace;
};

/// Problem I(gamma, mu, s) by normalized gradient flow with three
/// componentwise mass constraints. Requires 1 < p < 5 and positive targets.
/// With `init` a single run starts from it; otherwise cfg.restarts seeded
/// runs are made and the lowest energy is kept.
GroundStateResult minimize_i(const PerComponent& spec, const Params& params, const Grid& grid,
                             const FlowConfig& cfg, std::optional<TriField> init = std::nullopt);

/// Problem J(gamma, mu) = min_a I(gamma - a, mu - a, a), searched over
/// a in [1e-3 min(gamma,mu), min(gamma,mu)] with warm-started inner solves.
JResult minimize_j(const Combined& spec, const Params& params, const Grid& grid, const FlowConfig& cfg);

/// Same flow with zero targets allowed: zero-target components stay
/// identically zero and the rest decouple into scalar problems.
GroundStateResult minimize_masses(const std::array<double, 3>& targets, const Params& params,
                                  const Grid& grid, const FlowConfig& cfg,
                                  std::optional<TriField> init = std::nullopt);

/// Scalar problem S(mass) for E1 (single-component restriction of the flow).
ScalarResult minimize_scalar(double mass, const Params& params, const Grid& grid, const FlowConfig& cfg);

/// Positive Gaussian bumps at the target masses with seeded smooth noise.
/// Combined targets are split with a = min(gamma, mu) / 2.
TriField initializer(const ConstraintSpec& spec, const Grid& grid, std::uint64_t seed);

/// Energy, multipliers and residual of an arbitrary field, as if it were a
/// converged minimizer (used when a minimizer is reloaded from disk).
GroundStateResult assess(const TriField& v, const Params& params);

}  // namespace triwave
