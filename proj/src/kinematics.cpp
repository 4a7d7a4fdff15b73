#include "vbaisac/kinematics.hpp"

#include <cmath>
#include <stdexcept>

namespace vbaisac {

namespace {

constexpr double kPi = 3.14159265358979323846;

// tan(steer) below this is treated as straight-line motion (infinite radius).
constexpr double kStraightTan = 1e-12;

void check_input(const VehicleState& state, const ControlInput& input,
                 const VehicleGeometry& geometry) {
  if (!(std::abs(input.steer) < kPi / 2.0))
    throw std::invalid_argument("invalid steer: |steering angle| must be < pi/2");
  if (!(geometry.wheelbase > 0.0))
    throw std::invalid_argument("wheelbase must be positive");
  if (!(state.v >= 0.0))
    throw std::invalid_argument("speed must be non-negative");
}

// Composite Simpson integral of f over [0, t] with panel width <= max_step.
template <typename F>
double simpson(F f, double t, double max_step) {
  if (t == 0.0) return 0.0;
  int n = static_cast<int>(std::ceil(t / max_step));
  if (n < 2) n = 2;
  if (n % 2 == 1) ++n;
  const double h = t / n;
  double acc = f(0.0) + f(t);
  for (int i = 1; i < n; ++i) acc += f(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

}  // namespace

double normalize_angle(double angle) {
  double a = std::remainder(angle, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  return a;
}

double heading_rate(const VehicleState& state, const ControlInput& input,
                    const VehicleGeometry& geometry) {
  check_input(state, input, geometry);
  const double t = std::tan(input.steer);
  if (std::abs(t) < kStraightTan) return 0.0;
  return state.v * t / geometry.wheelbase;
}

namespace {

// Displacement over [0, dt] with heading theta0 + rate*s and speed v0 + a*s.
void displacement(const VehicleState& state, const ControlInput& input, double rate,
                  double dt, double quad_step, double& dx, double& dy) {
  const auto speed = [&](double s) { return state.v + input.accel * s; };
  dx = simpson([&](double s) { return std::sin(state.heading + rate * s) * speed(s); },
               dt, quad_step);
  dy = simpson([&](double s) { return std::cos(state.heading + rate * s) * speed(s); },
               dt, quad_step);
}

VehicleState step_with_rate(const VehicleState& state, const ControlInput& input,
                            double rate, double dt, double quad_step) {
  double dx = 0.0, dy = 0.0;
  displacement(state, input, rate, dt, quad_step, dx, dy);
  VehicleState out;
  out.x = state.x + dx;
  out.y = state.y + dy;
  out.v = state.v + input.accel * dt;
  out.heading = normalize_angle(state.heading + rate * dt);
  if (out.v < 0.0)
    throw std::invalid_argument("deceleration drives speed negative within dt");
  return out;
}

}  // namespace

VehicleState propagate(const VehicleState& state, const ControlInput& input,
                       const VehicleGeometry& geometry, double dt, double quad_step) {
  check_input(state, input, geometry);
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(quad_step > 0.0)) throw std::invalid_argument("quad_step must be positive");
  return step_with_rate(state, input, heading_rate(state, input, geometry), dt, quad_step);
}

Trajectory predict_trajectory(const VehicleState& state, const ControlInput& input,
                              const VehicleGeometry& geometry, double horizon,
                              int stages, double quad_step) {
  check_input(state, input, geometry);
  if (!(horizon > 0.0)) throw std::invalid_argument("horizon must be positive");
  if (stages < 1) throw std::invalid_argument("zero stages: stage count must be >= 1");
  if (!(quad_step > 0.0)) throw std::invalid_argument("quad_step must be positive");

  // The rate is frozen at the initial instant for every stage, so each stage
  // continues the same flow and the concatenation equals one long integral.
  const double rate = heading_rate(state, input, geometry);
  Trajectory traj;
  traj.samples.reserve(stages + 1);
  traj.samples.push_back({0.0, state});
  const double dt = horizon / stages;
  VehicleState cur = state;
  for (int k = 1; k <= stages; ++k) {
    // Integrand parameters stay anchored at t=0: shift the integration window.
    const double t0 = (k - 1) * dt;
    const auto speed = [&](double s) { return state.v + input.accel * (t0 + s); };
    cur.x += simpson(
        [&](double s) { return std::sin(state.heading + rate * (t0 + s)) * speed(s); },
        dt, quad_step);
    cur.y += simpson(
        [&](double s) { return std::cos(state.heading + rate * (t0 + s)) * speed(s); },
        dt, quad_step);
    cur.v = state.v + input.accel * k * dt;
    cur.heading = normalize_angle(state.heading + rate * k * dt);
    if (cur.v < 0.0)
      throw std::invalid_argument("deceleration drives speed negative within horizon");
    traj.samples.push_back({k * dt, cur});
  }
  return traj;
}

Aoi predict_aoi(const Trajectory& trajectory, const VehicleGeometry& geometry) {
  if (trajectory.samples.size() < 2)
    throw std::invalid_argument("empty trajectory: need at least two samples");
  if (!(geometry.safety_radius > 0.0))
    throw std::invalid_argument("safety radius must be positive");
  const VehicleState& origin = trajectory.samples.front().state;
  Aoi aoi;
  aoi.waypoints.reserve(trajectory.samples.size() - 1);
  for (std::size_t i = 1; i < trajectory.samples.size(); ++i) {
    const VehicleState& s = trajectory.samples[i].state;
    aoi.waypoints.push_back({s.x - origin.x, s.y - origin.y, geometry.safety_radius});
  }
  return aoi;
}

}  // namespace vbaisac
