#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "castline/actions.hpp"
#include "castline/types.hpp"

namespace castline {

/// Physics step; gripper trajectories are sampled on the same grid so
/// held-end poses and solver steps line up exactly.
inline constexpr Scalar kSimDt = 1.0 / 240.0;
inline constexpr int kStepsPerSecond = 240;

/// Tunable physics of the segmented cable model.
struct SimParams {
  Scalar bend_stiffness = 0.35;  // dimensionless in [0,1]
  Scalar joint_damping = 4.0;    // 1/s, transverse relative-velocity damping
  Scalar cable_mass = 0.05;      // kg, total excluding the endpoint weight
  Scalar endpoint_mass = 0.02;   // kg, lumped into the last particle
  Scalar mu_d = 0.30;            // dynamic Coulomb friction
  Scalar mu_s = 0.40;            // static Coulomb friction
  int n_links = 18;
  Scalar cable_length = 0.65;  // m

  /// Throws std::invalid_argument on violated invariants; clamps n_links to
  /// 30 with a warning (more links destabilize the chain).
  SimParams normalized() const;
  void validate() const;
  std::uint64_t hash() const;
};

/// Particle-chain state: n_links+1 particles, index 0 is the held end.
struct CableState {
  Mat2X positions;   // 2 x (n_links+1)
  Mat2X velocities;  // 2 x (n_links+1)
  Scalar time = 0;

  int particles() const { return static_cast<int>(positions.cols()); }
  Vec2 free_end() const { return positions.col(positions.cols() - 1); }
  Scalar kinetic_energy(const SimParams& p) const;
};

struct RecordMeta {
  std::string params_hash;
  std::uint64_t seed = 0;
  std::string source = "simulated";  // "reference" or "simulated"
};

/// One dataset row: the action, free-end waypoints every 100 ms of the driven
/// phase, and the settled final endpoint.
struct TrajectoryRecord {
  Action action;
  std::vector<Vec2> waypoints;
  Vec2 final_endpoint = Vec2::Zero();
  std::int64_t duration_ms = 0;
  RecordMeta meta;
};

/// Straight cable at rest along the theta=0 ray, held end at (r0, 0).
CableState reset_state(const SimParams& params, Scalar r0);

/// One deterministic position-based-dynamics step. The held particle is
/// pinned to the gripper pose when one is given; pass nullopt for a fully
/// free chain. Throws SimulationDivergedError on non-finite state.
CableState step(const CableState& state, const std::optional<TrajectorySample>& gripper,
                const SimParams& params, Scalar dt);

/// Steps with the gripper held fixed until every particle speed stays below
/// rest_speed for rest_window seconds, or max_time elapses.
CableState settle(CableState state, const TrajectorySample& hold, const SimParams& params,
                  Scalar max_time = 10.0, Scalar rest_speed = 1e-3, Scalar rest_window = 0.5);

/// Plays an action through the simulator: builds the gripper trajectory,
/// drives the cable, then settles. Waypoints are recorded every 100 ms during
/// the driven phase. Throws FeasibilityError for infeasible actions.
TrajectoryRecord rollout(const Action& a, const SimParams& params, Scalar r0, const Workspace& ws,
                         const std::optional<CableState>& start = std::nullopt,
                         const std::string& source = "simulated", std::uint64_t seed = 0);

/// Quasistatic radial pull: the gripper moves toward the base at 0.05 m/s by
/// pull_distance, then the state is settled. Throws WorkspaceError (carrying
/// the maximum admissible pull) if the gripper would cross r_min.
CableState pull_rollout(const CableState& start, Scalar pull_distance, const SimParams& params,
                        Scalar r_min = 0.55);

/// Reflection across the theta=0 axis.
CableState reflect(const CableState& s);
TrajectoryRecord reflect(const TrajectoryRecord& r);

}  // namespace castline
