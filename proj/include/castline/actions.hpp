#pragma once

#include <array>
#include <string>
#include <vector>

#include "castline/types.hpp"

namespace castline {

/// Casting command: two sweeping arcs (r0,0) -> (r1,theta1) -> (r2,theta2),
/// wrist offset alpha ramped in over the second arc, peak angular speed v_max.
struct Action {
  Scalar theta1 = 0;  // rad
  Scalar r1 = 0;      // m
  Scalar theta2 = 0;  // rad
  Scalar r2 = 0;      // m
  Scalar alpha = 0;   // rad
  Scalar v_max = 0;   // rad/s

  Eigen::Matrix<Scalar, 6, 1> to_vector() const {
    Eigen::Matrix<Scalar, 6, 1> v;
    v << theta1, r1, theta2, r2, alpha, v_max;
    return v;
  }

  static Action from_vector(const Eigen::Matrix<Scalar, 6, 1>& v) {
    return {v[0], v[1], v[2], v[3], v[4], v[5]};
  }

  bool finite() const;
  /// Throws std::invalid_argument unless finite, r1 > 0, r2 > 0, v_max > 0.
  void validate() const;
  /// Left-target convention: theta1 > 0, theta2 < 0, alpha >= 0.
  bool canonical() const { return theta1 > 0 && theta2 < 0 && alpha >= 0; }
};

/// Reflects an action across the workspace symmetry axis. Involution.
Action mirror_action(const Action& a);

/// Polar workspace box plus angular speed/accel/jerk caps; stand-in for the
/// arm's joint limits and table clearance.
struct Workspace {
  Scalar r_min = 0.55;       // m
  Scalar r_max = 0.90;       // m
  Scalar v_joint_max = 3.0;  // rad/s
  Scalar a_max = 8.0;        // rad/s^2
  Scalar j_max = 80.0;       // rad/s^3

  void validate() const;  // 0 < r_min < r_max, caps > 0
};

/// Jerk-limited seven-segment S-curve from rest to rest over a signed
/// displacement. Degenerates to fewer segments for short moves; delta = 0
/// yields a zero-duration profile. Odd in delta bit-exactly.
class ScurveProfile {
 public:
  ScurveProfile() = default;
  ScurveProfile(Scalar delta, Scalar v_max, Scalar a_max, Scalar j_max);

  Scalar duration() const { return duration_; }
  Scalar position(Scalar t) const;
  Scalar velocity(Scalar t) const;
  Scalar acceleration(Scalar t) const;

  /// Segment boundary times and jerks, for inspection/tests.
  const std::array<Scalar, 8>& knot_times() const { return t_; }
  const std::array<Scalar, 7>& jerks() const { return jerk_; }

 private:
  int segment(Scalar t) const;

  Scalar sign_ = 1;
  Scalar duration_ = 0;
  std::array<Scalar, 8> t_{};   // cumulative boundary times
  std::array<Scalar, 7> jerk_{};
  std::array<Scalar, 8> pos_{};  // unsigned state at boundaries
  std::array<Scalar, 8> vel_{};
  std::array<Scalar, 8> acc_{};
};

/// Clamped natural cubic spline through (t_i, y_i) with zero end slopes,
/// C2 at interior knots. Two knots give a single clamped Hermite segment.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(const VecX& knots_t, const VecX& knots_y);

  Scalar value(Scalar t) const;
  Scalar derivative(Scalar t) const;

  int segments() const { return static_cast<int>(t_.size()) - 1; }
  /// Coefficients of segment s as a + b*u + c*u^2 + d*u^3 with u = t - t_s.
  Eigen::Matrix<Scalar, 4, 1> segment_coeffs(int s) const;
  Scalar knot_time(int i) const { return t_[i]; }

 private:
  int segment_index(Scalar t) const;

  VecX t_, y_, m_;  // knot times, values, second derivatives
};

/// Piecewise-cubic radial profile with r(0)=r0, r(t_switch)=r1,
/// r(duration)=r2 and zero radial velocity at both ends.
/// Throws std::invalid_argument unless duration > t_switch > 0.
CubicSpline radial_spline(Scalar r0, Scalar r1, Scalar r2, Scalar t_switch, Scalar duration);

struct TrajectorySample {
  Scalar r = 0;        // m
  Scalar theta = 0;    // rad
  Scalar heading = 0;  // rad, wrist direction in the plane
};

/// Time-sampled held-end poses. duration == (samples.size()-1) * dt.
struct GripperTrajectory {
  Scalar dt = 0;
  std::vector<TrajectorySample> samples;
  Scalar t_switch = 0;  // arrival time at (r1, theta1)
  Scalar duration = 0;
};

/// Converts an action into a sampled trajectory: angular coordinate runs an
/// S-curve 0->theta1 then theta1->theta2 (capped at min(a.v_max, ws caps)),
/// radial coordinate follows the clamped spline with t_switch at the end of
/// the first arc, heading is the path-tangent direction plus alpha ramped
/// linearly over the second arc.
GripperTrajectory build_trajectory(const Action& a, Scalar r0, Scalar dt, const Workspace& ws);

struct Violation {
  long sample = 0;
  std::string rule;
};

struct Feasibility {
  bool ok = true;
  std::vector<Violation> violations;  // first offending sample per rule
};

/// Checks radial bounds and finite-difference angular speed/accel against the
/// workspace caps.
Feasibility check_feasible(const GripperTrajectory& traj, const Workspace& ws);

/// Per-parameter (low, high) over (theta1, theta2, r2, alpha, v_max);
/// angles in radians, theta2 bounds given as magnitudes (positive).
struct GridBounds {
  Eigen::Matrix<Scalar, 5, 1> low;
  Eigen::Matrix<Scalar, 5, 1> high;
};

/// Cartesian product of linearly spaced values, row-major over
/// (theta1, theta2, r2, alpha, v_max); theta2 negated into the canonical
/// convention, r1 held at r1_fixed. freq 1 picks the lower bound.
std::vector<Action> grid_sample_actions(const GridBounds& bounds,
                                        const std::array<int, 5>& freqs, Scalar r1_fixed);

}  // namespace castline
