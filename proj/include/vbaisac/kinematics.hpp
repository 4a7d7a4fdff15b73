#pragma once

#include <vector>

namespace vbaisac {

/// Planar bicycle-model state. Heading is measured from the +y driving axis
/// (heading 0 moves along +y, positive heading turns toward +x) and is kept
/// normalized to (-pi, pi].
struct VehicleState {
  double x = 0.0;        // meters
  double y = 0.0;        // meters
  double v = 0.0;        // meters/second, >= 0
  double heading = 0.0;  // radians
};

struct ControlInput {
  double accel = 0.0;  // meters/second^2
  double steer = 0.0;  // radians, |steer| < pi/2
};

struct VehicleGeometry {
  double wheelbase = 2.0;      // meters, > 0
  double safety_radius = 1.0;  // meters, > 0
};

struct TrajectorySample {
  double t;  // seconds since the initial instant
  VehicleState state;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;  // strictly increasing times, samples[0] at t=0
};

/// One sensing waypoint: displacement of the disk center relative to the
/// initial vehicle position, paired with the disk radius.
struct AoiWaypoint {
  double dx;      // meters
  double dy;      // meters
  double radius;  // meters
};

struct Aoi {
  std::vector<AoiWaypoint> waypoints;
};

/// Wraps an angle to (-pi, pi].
double normalize_angle(double angle);

/// Rate of change of the driving direction, v * tan(steer) / wheelbase.
/// Throws std::invalid_argument when |steer| >= pi/2.
double heading_rate(const VehicleState& state, const ControlInput& input,
                    const VehicleGeometry& geometry);

/// Advances the state by dt. Within the step the heading rate is frozen at
/// its initial value and speed varies linearly, so the displacement integrals
/// are evaluated by composite Simpson quadrature with panel width <= quad_step.
VehicleState propagate(const VehicleState& state, const ControlInput& input,
                       const VehicleGeometry& geometry, double dt,
                       double quad_step = 1e-3);

/// Predicts stages+1 samples at t = k * horizon / stages for k = 0..stages.
/// The heading rate is frozen at its value at the initial instant for the
/// whole horizon.
Trajectory predict_trajectory(const VehicleState& state, const ControlInput& input,
                              const VehicleGeometry& geometry, double horizon,
                              int stages, double quad_step = 1e-3);

/// Pairs the non-initial trajectory samples with the safety radius. Waypoint
/// positions are displacements from the initial sample's position.
Aoi predict_aoi(const Trajectory& trajectory, const VehicleGeometry& geometry);

}  // namespace vbaisac
