#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace dtn::ode {

/// One accepted step of a 2-state integration.
struct Sample2 {
  double t;
  double y0;
  double y1;
};

/// Adaptive Dormand-Prince 5(4) for a 2-state system y' = f(t, y).
/// Returns the accepted-step trajectory including both endpoints.
/// Throws std::runtime_error if the step size underflows.
std::vector<Sample2> integrate_dopri5(
    const std::function<void(double, const double*, double*)>& f, double t0, double t1,
    double y0, double y1, double rtol, double atol);

}  // namespace dtn::ode
