#pragma once

#include <cstdint>
#include <vector>

#include "triwave/dynamics.hpp"
#include "triwave/groundstate.hpp"

namespace triwave {

/// Best symmetry parameters found for v against R(theta1, theta2) tau_y ref.
struct Alignment {
  double theta1 = 0.0;  ///< in [0, 2 pi)
  double theta2 = 0.0;  ///< in [0, 2 pi)
  double shift_y = 0.0; ///< in [-L, L)
  double distance_h1 = 0.0;
};

struct StabilityReport {
  std::vector<double> times;
  std::vector<double> orbital_distances;
  double initial_distance = 0.0;
  double max_distance = 0.0;
  ConservationTrace conservation;
};

/// min over (theta1, theta2, y) of ||v - R(theta1, theta2) tau_y reference||_{H1}.
/// Never exceeds the unaligned distance ||v - reference||_{H1}.
Alignment orbital_distance(const TriField& v, const TriField& reference);

/// Seeded complex white noise smoothed by exp(0.01 d_x^2), scaled to total
/// H1 norm `norm`. Zero norm gives the zero field.
TriField smooth_noise(const Grid& g, double norm, std::uint64_t seed);

/// Evolves ground.minimizer + noise of H1 size scale * ||minimizer||_{H1}
/// and tracks the orbital distance to the minimizer at every sample.
StabilityReport stability_experiment(const GroundStateResult& ground, double perturbation_scale,
                                     std::uint64_t seed, const EvolveConfig& cfg, const Params& params);

}  // namespace triwave
