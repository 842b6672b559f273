#include "dtn/ode.hpp"

#include <algorithm>

namespace dtn::ode {

namespace {

// Dormand-Prince RK5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

}  // namespace

std::vector<Sample2> integrate_dopri5(
    const std::function<void(double, const double*, double*)>& f, double t0, double t1,
    double y0, double y1, double rtol, double atol) {
  if (!(t1 > t0)) throw std::invalid_argument("integrate_dopri5: need t1 > t0");

  std::vector<Sample2> out;
  double t = t0;
  double y[2] = {y0, y1};
  out.push_back({t, y[0], y[1]});

  double k1[2];
  f(t, y, k1);
  double h = std::min(1e-3, (t1 - t0) / 10.0);

  int rejected_in_a_row = 0;
  while (t < t1) {
    h = std::min(h, t1 - t);
    if (h < 1e-14 * std::max(1.0, std::abs(t)))
      throw std::runtime_error("integrate_dopri5: step size underflow");

    double k2[2], k3[2], k4[2], k5[2], k6[2], k7[2], yt[2];

    for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * a21 * k1[i];
    f(t + c2 * h, yt, k2);
    for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(t + c3 * h, yt, k3);
    for (int i = 0; i < 2; ++i) yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(t + c4 * h, yt, k4);
    for (int i = 0; i < 2; ++i)
      yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(t + c5 * h, yt, k5);
    for (int i = 0; i < 2; ++i)
      yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    f(t + h, yt, k6);
    double y5[2];
    for (int i = 0; i < 2; ++i)
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    f(t + h, y5, k7);

    double err = 0.0;
    for (int i = 0; i < 2; ++i) {
      const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                             e6 * k6[i] + e7 * k7[i]);
      const double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(ei) / scale);
    }

    if (err <= 1.0) {
      t += h;
      y[0] = y5[0];
      y[1] = y5[1];
      k1[0] = k7[0];  // FSAL
      k1[1] = k7[1];
      out.push_back({t, y[0], y[1]});
      rejected_in_a_row = 0;
    } else {
      ++rejected_in_a_row;
      if (rejected_in_a_row > 200)
        throw std::runtime_error("integrate_dopri5: repeated step rejection");
    }
    const double factor =
        std::clamp(0.9 * std::pow(std::max(err, 1e-16), -0.2), 0.2, 5.0);
    h *= factor;
  }
  return out;
}

}  // namespace dtn::ode
