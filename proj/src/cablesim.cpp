#include "castline/cablesim.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "castline/errors.hpp"
#include "castline/util.hpp"

namespace castline {

namespace {

constexpr int kSolverIterations = 20;
constexpr Scalar kGravity = 9.81;     // m/s^2, only inside the friction normal force
constexpr Scalar kStickSpeed = 1e-3;  // m/s
constexpr Scalar kBendRefStiffness = 15.0;  // N/m at bend_stiffness -> 1 mapping scale
constexpr Scalar kPullSpeed = 0.05;         // m/s
constexpr Scalar kTinyLength = 1e-12;

VecX particle_masses(const SimParams& p) {
  const int m = p.n_links + 1;
  const Scalar link_mass = p.cable_mass / p.n_links;
  VecX masses = VecX::Constant(m, link_mass);
  masses[0] = link_mass / 2;
  masses[m - 1] = link_mass / 2 + p.endpoint_mass;
  return masses;
}

}  // namespace

void SimParams::validate() const {
  if (!(cable_mass > 0) || !(endpoint_mass > 0))
    throw std::invalid_argument("masses must be positive");
  if (!(mu_d >= 0) || !(mu_s >= mu_d)) throw std::invalid_argument("need 0 <= mu_d <= mu_s");
  if (!(bend_stiffness >= 0) || !(bend_stiffness <= 1))
    throw std::invalid_argument("bend_stiffness must lie in [0,1]");
  if (n_links < 2) throw std::invalid_argument("n_links must be >= 2");
  if (!(cable_length > 0)) throw std::invalid_argument("cable_length must be positive");
  if (!(joint_damping >= 0)) throw std::invalid_argument("joint_damping must be >= 0");
}

SimParams SimParams::normalized() const {
  SimParams p = *this;
  if (p.n_links > 30) {
    log_warn("n_links capped at 30 (longer chains destabilize the solver)");
    p.n_links = 30;
  }
  p.validate();
  return p;
}

std::uint64_t SimParams::hash() const {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%.17g|%.17g|%.17g|%.17g|%.17g|%.17g|%d|%.17g",
                bend_stiffness, joint_damping, cable_mass, endpoint_mass, mu_d, mu_s, n_links,
                cable_length);
  return fnv1a64(buf);
}

Scalar CableState::kinetic_energy(const SimParams& p) const {
  const VecX masses = particle_masses(p);
  Scalar ke = 0;
  for (int i = 0; i < particles(); ++i) ke += 0.5 * masses[i] * velocities.col(i).squaredNorm();
  return ke;
}

CableState reset_state(const SimParams& params, Scalar r0) {
  const SimParams p = params.normalized();
  if (!(r0 > 0)) throw std::invalid_argument("r0 must be positive");
  const int m = p.n_links + 1;
  const Scalar link_len = p.cable_length / p.n_links;
  CableState s;
  s.positions.resize(2, m);
  s.velocities = Mat2X::Zero(2, m);
  for (int i = 0; i < m; ++i) s.positions.col(i) = Vec2(r0 + link_len * i, 0.0);
  s.time = 0;
  return s;
}

CableState step(const CableState& state, const std::optional<TrajectorySample>& gripper,
                const SimParams& params, Scalar dt) {
  if (!(dt > 0)) throw std::invalid_argument("dt must be positive");
  const int m = state.particles();
  const int n = m - 1;  // links
  const Scalar link_len = params.cable_length / params.n_links;
  const bool pinned = gripper.has_value();

  const VecX masses = particle_masses(params);
  VecX w(m);
  for (int i = 0; i < m; ++i) w[i] = 1.0 / masses[i];
  if (pinned) {
    // The gripper holds the cable rigidly: particle 0 sits at the gripper and
    // particle 1 is held along the wrist heading.
    w[0] = 0;
    w[1] = 0;
  }

  CableState next = state;
  Mat2X& V = next.velocities;
  const Mat2X& P = state.positions;

  // Transverse relative-velocity damping per link (joint friction stand-in).
  const Scalar damp = std::min(1.0, params.joint_damping * dt);
  if (damp > 0) {
    for (int i = 0; i < n; ++i) {
      const Vec2 d = P.col(i + 1) - P.col(i);
      const Scalar len = d.norm();
      if (len < kTinyLength) continue;
      const Vec2 tangent = d / len;
      const Vec2 rel = V.col(i + 1) - V.col(i);
      const Vec2 trans = rel - rel.dot(tangent) * tangent;
      const Scalar wsum = w[i] + w[i + 1];
      if (wsum <= 0) continue;
      V.col(i) += (w[i] / wsum) * damp * trans;
      V.col(i + 1) -= (w[i + 1] / wsum) * damp * trans;
    }
  }

  // Coulomb planar friction: stick below the stick speed if the stopping
  // force fits inside the static cone, otherwise decelerate at mu_d * g.
  for (int i = pinned ? 1 : 0; i < m; ++i) {
    const Scalar speed = V.col(i).norm();
    if (speed <= 0) continue;
    if (speed < kStickSpeed && speed <= params.mu_s * kGravity * dt) {
      V.col(i).setZero();
    } else {
      const Scalar drop = params.mu_d * kGravity * dt;
      if (speed <= drop) {
        V.col(i).setZero();
      } else {
        V.col(i) *= (1.0 - drop / speed);
      }
    }
  }

  // Predicted positions; the held particle and the wrist-aligned first link
  // follow the gripper exactly.
  Mat2X X = P + dt * V;
  if (pinned) {
    const TrajectorySample& g = *gripper;
    X.col(0) = Vec2(g.r * std::cos(g.theta), g.r * std::sin(g.theta));
    X.col(1) = X.col(0) + link_len * Vec2(std::cos(g.heading), std::sin(g.heading));
  }

  const Scalar b = params.bend_stiffness;
  const Scalar bend_alpha =
      b <= 1e-9 ? -1.0 : (1.0 - b) / (std::max(b, 1e-9) * kBendRefStiffness) / (dt * dt);

  VecX lambda_bend = VecX::Zero(std::max(0, n - 1));

  for (int iter = 0; iter < kSolverIterations; ++iter) {
    if (bend_alpha >= 0) {
      for (int i = 1; i < n; ++i) {
        const Vec2 d = X.col(i + 1) - X.col(i - 1);
        const Scalar len = d.norm();
        const Scalar c = len - 2 * link_len;
        if (len < kTinyLength || c >= 0) continue;
        const Vec2 grad = d / len;
        const Scalar wsum = w[i - 1] + w[i + 1];
        if (wsum + bend_alpha <= 0) continue;
        const Scalar dl = (-c - bend_alpha * lambda_bend[i - 1]) / (wsum + bend_alpha);
        lambda_bend[i - 1] += dl;
        X.col(i - 1) -= w[i - 1] * dl * grad;
        X.col(i + 1) += w[i + 1] * dl * grad;
      }
    }
    for (int i = 0; i < n; ++i) {
      const Vec2 d = X.col(i + 1) - X.col(i);
      const Scalar len = d.norm();
      if (len < kTinyLength) continue;
      const Scalar c = len - link_len;
      const Vec2 grad = d / len;
      const Scalar wsum = w[i] + w[i + 1];
      if (wsum <= 0) continue;
      X.col(i) += (w[i] / wsum) * c * grad;
      X.col(i + 1) -= (w[i + 1] / wsum) * c * grad;
    }
  }

  next.velocities = (X - P) / dt;
  next.positions = X;
  next.time = state.time + dt;

  if (!next.positions.allFinite() || !next.velocities.allFinite()) {
    throw SimulationDivergedError("cable state diverged",
                                  static_cast<long>(std::llround(next.time / dt)));
  }
  return next;
}

CableState settle(CableState state, const TrajectorySample& hold, const SimParams& params,
                  Scalar max_time, Scalar rest_speed, Scalar rest_window) {
  const long max_steps = static_cast<long>(std::ceil(max_time / kSimDt));
  const long rest_steps = static_cast<long>(std::ceil(rest_window / kSimDt));
  long at_rest = 0;
  const std::optional<TrajectorySample> pose(hold);
  for (long k = 0; k < max_steps && at_rest < rest_steps; ++k) {
    state = step(state, pose, params, kSimDt);
    Scalar max_speed = 0;
    for (int i = 0; i < state.particles(); ++i)
      max_speed = std::max(max_speed, state.velocities.col(i).norm());
    at_rest = max_speed < rest_speed ? at_rest + 1 : 0;
  }
  return state;
}

TrajectoryRecord rollout(const Action& a, const SimParams& params, Scalar r0, const Workspace& ws,
                         const std::optional<CableState>& start, const std::string& source,
                         std::uint64_t seed) {
  const SimParams p = params.normalized();
  const GripperTrajectory traj = build_trajectory(a, r0, kSimDt, ws);
  const Feasibility feas = check_feasible(traj, ws);
  if (!feas.ok) {
    throw FeasibilityError("action infeasible: " + feas.violations.front().rule + " at sample " +
                           std::to_string(feas.violations.front().sample));
  }

  CableState state = start ? *start : reset_state(p, r0);

  TrajectoryRecord rec;
  rec.action = a;
  const long n_steps = static_cast<long>(traj.samples.size()) - 1;
  const long wp_stride = kStepsPerSecond / 10;  // 100 ms
  rec.waypoints.reserve(n_steps / wp_stride + 1);
  for (long k = 1; k <= n_steps; ++k) {
    state = step(state, traj.samples[static_cast<std::size_t>(k)], p, kSimDt);
    if (k % wp_stride == 0) rec.waypoints.push_back(state.free_end());
  }
  rec.duration_ms = n_steps * 1000 / kStepsPerSecond;

  state = settle(std::move(state), traj.samples.back(), p);
  rec.final_endpoint = state.free_end();
  rec.meta.params_hash = to_hex(p.hash());
  rec.meta.seed = seed;
  rec.meta.source = source;
  return rec;
}

CableState pull_rollout(const CableState& start, Scalar pull_distance, const SimParams& params,
                        Scalar r_min) {
  if (!(pull_distance >= 0)) throw std::invalid_argument("pull_distance must be >= 0");
  const SimParams p = params.normalized();
  const Vec2 grip = start.positions.col(0);
  const Scalar r_start = grip.norm();
  const Scalar theta = std::atan2(grip.y(), grip.x());
  if (r_start - pull_distance < r_min) {
    throw WorkspaceError("pull would cross r_min; maximum admissible pull is " +
                             std::to_string(std::max(0.0, r_start - r_min)),
                         std::max(0.0, r_start - r_min));
  }

  CableState state = start;
  const Scalar r_end = r_start - pull_distance;
  const long n_steps = static_cast<long>(std::ceil(pull_distance / kPullSpeed / kSimDt));
  for (long k = 1; k <= n_steps; ++k) {
    const Scalar r = std::max(r_end, r_start - kPullSpeed * kSimDt * static_cast<Scalar>(k));
    state = step(state, TrajectorySample{r, theta, theta}, p, kSimDt);
  }
  return settle(std::move(state), TrajectorySample{r_end, theta, theta}, p);
}

CableState reflect(const CableState& s) {
  CableState out = s;
  out.positions.row(1) = -out.positions.row(1);
  out.velocities.row(1) = -out.velocities.row(1);
  return out;
}

TrajectoryRecord reflect(const TrajectoryRecord& r) {
  TrajectoryRecord out = r;
  out.action = mirror_action(r.action);
  for (auto& wp : out.waypoints) wp.y() = -wp.y();
  out.final_endpoint.y() = -out.final_endpoint.y();
  return out;
}

}  // namespace castline
