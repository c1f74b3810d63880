#include "castline/actions.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace castline {

namespace {
// Cap on radial speed used to floor arc durations when the angular
// displacement alone would make an arc instantaneous.
constexpr Scalar kRadialSpeedCap = 0.5;  // m/s
}  // namespace

bool Action::finite() const {
  return std::isfinite(theta1) && std::isfinite(r1) && std::isfinite(theta2) &&
         std::isfinite(r2) && std::isfinite(alpha) && std::isfinite(v_max);
}

void Action::validate() const {
  if (!finite()) throw std::invalid_argument("action has non-finite fields");
  if (r1 <= 0 || r2 <= 0) throw std::invalid_argument("action radii must be positive");
  if (v_max <= 0) throw std::invalid_argument("action v_max must be positive");
}

Action mirror_action(const Action& a) {
  return {-a.theta1, a.r1, -a.theta2, a.r2, -a.alpha, a.v_max};
}

void Workspace::validate() const {
  if (!(r_min > 0) || !(r_max > r_min))
    throw std::invalid_argument("workspace requires 0 < r_min < r_max");
  if (!(v_joint_max > 0) || !(a_max > 0) || !(j_max > 0))
    throw std::invalid_argument("workspace caps must be positive");
}

ScurveProfile::ScurveProfile(Scalar delta, Scalar v_max, Scalar a_max, Scalar j_max) {
  if (!(v_max > 0) || !(a_max > 0) || !(j_max > 0))
    throw std::invalid_argument("scurve caps must be positive");
  if (!std::isfinite(delta)) throw std::invalid_argument("scurve displacement must be finite");

  sign_ = delta < 0 ? -1.0 : 1.0;
  const Scalar L = std::abs(delta);
  if (L == 0) return;  // zero-duration profile

  // Ramp shape when the full v_max is reachable.
  Scalar t_j, t_a, v_peak, t_v;
  if (v_max * j_max <= a_max * a_max) {
    t_j = std::sqrt(v_max / j_max);
    t_a = 0;
  } else {
    t_j = a_max / j_max;
    t_a = v_max / a_max - t_j;
  }
  const Scalar d_ramp = v_max * (2 * t_j + t_a) / 2;

  if (2 * d_ramp <= L) {
    v_peak = v_max;
    t_v = (L - 2 * d_ramp) / v_max;
  } else {
    t_v = 0;
    // Peak velocity for a ramp-up/ramp-down move covering exactly L.
    Scalar v_p = std::cbrt(L * L * j_max / 4);
    if (v_p * j_max <= a_max * a_max) {
      t_j = std::sqrt(v_p / j_max);
      t_a = 0;
    } else {
      const Scalar aj = a_max / j_max;
      v_p = (-a_max * aj + std::sqrt(a_max * aj * a_max * aj + 4 * L * a_max)) / 2;
      t_j = aj;
      t_a = v_p / a_max - aj;
    }
    v_peak = v_p;
  }
  (void)v_peak;

  const std::array<Scalar, 7> durations = {t_j, t_a, t_j, t_v, t_j, t_a, t_j};
  jerk_ = {j_max, 0, -j_max, 0, -j_max, 0, j_max};

  t_[0] = 0;
  pos_[0] = vel_[0] = acc_[0] = 0;
  for (int k = 0; k < 7; ++k) {
    const Scalar d = durations[k];
    const Scalar J = jerk_[k];
    t_[k + 1] = t_[k] + d;
    pos_[k + 1] = pos_[k] + vel_[k] * d + acc_[k] * d * d / 2 + J * d * d * d / 6;
    vel_[k + 1] = vel_[k] + acc_[k] * d + J * d * d / 2;
    acc_[k + 1] = acc_[k] + J * d;
  }
  duration_ = t_[7];
}

int ScurveProfile::segment(Scalar t) const {
  int k = 0;
  while (k < 6 && t > t_[k + 1]) ++k;
  return k;
}

Scalar ScurveProfile::position(Scalar t) const {
  if (duration_ == 0 || t <= 0) return t <= 0 ? 0.0 : sign_ * pos_[7];
  if (t >= duration_) return sign_ * pos_[7];
  const int k = segment(t);
  const Scalar u = t - t_[k];
  return sign_ * (pos_[k] + vel_[k] * u + acc_[k] * u * u / 2 + jerk_[k] * u * u * u / 6);
}

Scalar ScurveProfile::velocity(Scalar t) const {
  if (duration_ == 0 || t <= 0 || t >= duration_) return 0;
  const int k = segment(t);
  const Scalar u = t - t_[k];
  return sign_ * (vel_[k] + acc_[k] * u + jerk_[k] * u * u / 2);
}

Scalar ScurveProfile::acceleration(Scalar t) const {
  if (duration_ == 0 || t <= 0 || t >= duration_) return 0;
  const int k = segment(t);
  const Scalar u = t - t_[k];
  return sign_ * (acc_[k] + jerk_[k] * u);
}

CubicSpline::CubicSpline(const VecX& knots_t, const VecX& knots_y) : t_(knots_t), y_(knots_y) {
  const auto n = t_.size();
  if (n < 2 || y_.size() != n) throw std::invalid_argument("spline needs >= 2 matching knots");
  for (Eigen::Index i = 0; i + 1 < n; ++i)
    if (!(t_[i + 1] > t_[i])) throw std::invalid_argument("spline knots must be increasing");

  // Clamped-end system for the second derivatives.
  MatX A = MatX::Zero(n, n);
  VecX rhs = VecX::Zero(n);
  const auto h = [&](Eigen::Index i) { return t_[i + 1] - t_[i]; };
  const auto slope = [&](Eigen::Index i) { return (y_[i + 1] - y_[i]) / h(i); };

  A(0, 0) = 2 * h(0);
  A(0, 1) = h(0);
  rhs[0] = 6 * slope(0);
  for (Eigen::Index i = 1; i + 1 < n; ++i) {
    A(i, i - 1) = h(i - 1);
    A(i, i) = 2 * (h(i - 1) + h(i));
    A(i, i + 1) = h(i);
    rhs[i] = 6 * (slope(i) - slope(i - 1));
  }
  A(n - 1, n - 2) = h(n - 2);
  A(n - 1, n - 1) = 2 * h(n - 2);
  rhs[n - 1] = -6 * slope(n - 2);

  m_ = A.partialPivLu().solve(rhs);
}

int CubicSpline::segment_index(Scalar t) const {
  int s = 0;
  const int last = segments() - 1;
  while (s < last && t > t_[s + 1]) ++s;
  return s;
}

Scalar CubicSpline::value(Scalar t) const {
  t = std::clamp(t, t_[0], t_[t_.size() - 1]);
  const int s = segment_index(t);
  const Scalar h = t_[s + 1] - t_[s];
  const Scalar du = t - t_[s];
  const Scalar dd = t_[s + 1] - t;
  return m_[s] * dd * dd * dd / (6 * h) + m_[s + 1] * du * du * du / (6 * h) +
         (y_[s] / h - m_[s] * h / 6) * dd + (y_[s + 1] / h - m_[s + 1] * h / 6) * du;
}

Scalar CubicSpline::derivative(Scalar t) const {
  t = std::clamp(t, t_[0], t_[t_.size() - 1]);
  const int s = segment_index(t);
  const Scalar h = t_[s + 1] - t_[s];
  const Scalar du = t - t_[s];
  const Scalar dd = t_[s + 1] - t;
  return -m_[s] * dd * dd / (2 * h) + m_[s + 1] * du * du / (2 * h) -
         (y_[s] / h - m_[s] * h / 6) + (y_[s + 1] / h - m_[s + 1] * h / 6);
}

Eigen::Matrix<Scalar, 4, 1> CubicSpline::segment_coeffs(int s) const {
  const Scalar h = t_[s + 1] - t_[s];
  Eigen::Matrix<Scalar, 4, 1> c;
  c[0] = y_[s];
  c[1] = (y_[s + 1] - y_[s]) / h - h * (2 * m_[s] + m_[s + 1]) / 6;
  c[2] = m_[s] / 2;
  c[3] = (m_[s + 1] - m_[s]) / (6 * h);
  return c;
}

CubicSpline radial_spline(Scalar r0, Scalar r1, Scalar r2, Scalar t_switch, Scalar duration) {
  if (!(t_switch > 0) || !(duration > t_switch))
    throw std::invalid_argument("radial spline needs duration > t_switch > 0");
  VecX t(3), y(3);
  t << 0, t_switch, duration;
  y << r0, r1, r2;
  return CubicSpline(t, y);
}

GripperTrajectory build_trajectory(const Action& a, Scalar r0, Scalar dt, const Workspace& ws) {
  a.validate();
  ws.validate();
  if (!(dt > 0)) throw std::invalid_argument("trajectory dt must be positive");
  if (!(r0 > 0)) throw std::invalid_argument("r0 must be positive");

  const Scalar v_cap = std::min(a.v_max, ws.v_joint_max);
  const ScurveProfile arc1(a.theta1, v_cap, ws.a_max, ws.j_max);
  const ScurveProfile arc2(a.theta2 - a.theta1, v_cap, ws.a_max, ws.j_max);

  const Scalar T1 = std::max(arc1.duration(), std::abs(a.r1 - r0) / kRadialSpeedCap);
  const Scalar T2 = std::max(arc2.duration(), std::abs(a.r2 - a.r1) / kRadialSpeedCap);
  const Scalar T = T1 + T2;

  GripperTrajectory traj;
  traj.dt = dt;
  traj.t_switch = T1;
  if (T == 0) {
    traj.samples.push_back({r0, 0, 0});
    traj.duration = 0;
    return traj;
  }

  std::vector<Scalar> kt{0}, ky{static_cast<Scalar>(r0)};
  if (T1 > 0) {
    kt.push_back(T1);
    ky.push_back(a.r1);
  }
  if (T2 > 0) {
    kt.push_back(T);
    ky.push_back(a.r2);
  }
  const CubicSpline radial(Eigen::Map<const VecX>(kt.data(), kt.size()),
                           Eigen::Map<const VecX>(ky.data(), ky.size()));

  const long n = static_cast<long>(std::ceil(T / dt - 1e-9));
  traj.samples.reserve(n + 1);
  for (long k = 0; k <= n; ++k) {
    const Scalar t = std::min(static_cast<Scalar>(k) * dt, T);
    Scalar theta, omega;
    if (t <= T1) {
      theta = arc1.position(t);
      omega = arc1.velocity(t);
    } else {
      theta = a.theta1 + arc2.position(t - T1);
      omega = arc2.velocity(t - T1);
    }
    const Scalar r = radial.value(t);
    const Scalar rdot = radial.derivative(t);
    Scalar heading = theta + std::atan2(r * omega, rdot);
    if (t > T1 && T2 > 0) heading += a.alpha * std::min(1.0, (t - T1) / T2);
    traj.samples.push_back({r, theta, heading});
  }
  traj.duration = static_cast<Scalar>(n) * dt;

  // The tangent heading flips by ~pi wherever the velocity reverses; the
  // wrist joint cannot jump, so rate-limit it at the joint speed cap.
  const Scalar max_dh = ws.v_joint_max * dt;
  for (std::size_t k = 1; k < traj.samples.size(); ++k) {
    const Scalar want = traj.samples[k].heading - traj.samples[k - 1].heading;
    const Scalar wrapped = std::atan2(std::sin(want), std::cos(want));
    traj.samples[k].heading =
        traj.samples[k - 1].heading + std::clamp(wrapped, -max_dh, max_dh);
  }
  return traj;
}

Feasibility check_feasible(const GripperTrajectory& traj, const Workspace& ws) {
  Feasibility out;
  const auto& s = traj.samples;
  const long n = static_cast<long>(s.size());
  const Scalar tol = 1 + 1e-6;
  long first_rlow = -1, first_rhigh = -1, first_speed = -1, first_accel = -1;

  for (long k = 0; k < n; ++k) {
    if (first_rlow < 0 && s[k].r < ws.r_min) first_rlow = k;
    if (first_rhigh < 0 && s[k].r > ws.r_max) first_rhigh = k;
    if (traj.dt > 0 && k >= 1) {
      const Scalar w = std::abs(s[k].theta - s[k - 1].theta) / traj.dt;
      if (first_speed < 0 && w > ws.v_joint_max * tol) first_speed = k;
    }
    if (traj.dt > 0 && k >= 1 && k + 1 < n) {
      const Scalar acc =
          std::abs(s[k + 1].theta - 2 * s[k].theta + s[k - 1].theta) / (traj.dt * traj.dt);
      if (first_accel < 0 && acc > ws.a_max * tol) first_accel = k;
    }
  }
  if (first_rlow >= 0) out.violations.push_back({first_rlow, "r < r_min"});
  if (first_rhigh >= 0) out.violations.push_back({first_rhigh, "r > r_max"});
  if (first_speed >= 0) out.violations.push_back({first_speed, "angular speed > v_joint_max"});
  if (first_accel >= 0) out.violations.push_back({first_accel, "angular accel > a_max"});
  out.ok = out.violations.empty();
  return out;
}

std::vector<Action> grid_sample_actions(const GridBounds& bounds,
                                        const std::array<int, 5>& freqs, Scalar r1_fixed) {
  for (int d = 0; d < 5; ++d) {
    if (freqs[d] < 1) throw std::invalid_argument("grid frequencies must be >= 1");
    if (bounds.low[d] > bounds.high[d])
      throw std::invalid_argument("grid bounds must satisfy low <= high");
    if (!std::isfinite(bounds.low[d]) || !std::isfinite(bounds.high[d]))
      throw std::invalid_argument("grid bounds must be finite");
  }
  std::array<std::vector<Scalar>, 5> axes;
  for (int d = 0; d < 5; ++d) {
    axes[d].resize(freqs[d]);
    for (int i = 0; i < freqs[d]; ++i) {
      axes[d][i] = freqs[d] == 1 ? bounds.low[d]
                                 : bounds.low[d] + (bounds.high[d] - bounds.low[d]) *
                                                       static_cast<Scalar>(i) /
                                                       static_cast<Scalar>(freqs[d] - 1);
    }
  }
  std::vector<Action> out;
  out.reserve(static_cast<std::size_t>(freqs[0]) * freqs[1] * freqs[2] * freqs[3] * freqs[4]);
  for (Scalar th1 : axes[0])
    for (Scalar th2 : axes[1])
      for (Scalar r2 : axes[2])
        for (Scalar alpha : axes[3])
          for (Scalar v : axes[4]) out.push_back({th1, r1_fixed, -th2, r2, alpha, v});
  return out;
}

}  // namespace castline
