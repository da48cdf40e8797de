#include "mst/minimize.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mst {

ScalarMinimum golden_section(const std::function<double(double)>& f, double a, double b, double tol) {
  if (!(a < b)) {
    throw std::invalid_argument(fmt::format("golden_section: empty bracket [{}, {}]", a, b));
  }
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int evaluations = 2;
  while (b - a > tol && evaluations < 500) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++evaluations;
  }
  const double x = fc <= fd ? c : d;
  return ScalarMinimum{x, std::min(fc, fd), evaluations, false, false};
}

ScalarMinimum scan_then_golden(const std::function<double(double)>& f, double a, double b, int scan_points,
                               double tol) {
  if (scan_points < 3) {
    throw std::invalid_argument("scan_then_golden: need at least 3 scan points");
  }
  const double h = (b - a) / (scan_points - 1);
  std::vector<double> values(scan_points);
  for (int i = 0; i < scan_points; ++i) {
    values[i] = f(i == scan_points - 1 ? b : a + i * h);
  }
  const auto best = static_cast<int>(std::distance(values.begin(), std::min_element(values.begin(), values.end())));

  int local_minima = 0;
  for (int i = 0; i < scan_points; ++i) {
    const bool left = i == 0 || values[i] < values[i - 1];
    const bool right = i == scan_points - 1 || values[i] <= values[i + 1];
    if (left && right) {
      ++local_minima;
    }
  }

  const double lo = a + std::max(best - 1, 0) * h;
  const double hi = best + 1 >= scan_points ? b : a + (best + 1) * h;
  ScalarMinimum refined = golden_section(f, lo, hi, tol);
  // Keep the scan value if refinement somehow did worse (flat plateaus).
  if (values[best] < refined.value) {
    refined.argmin = best == scan_points - 1 ? b : a + best * h;
    refined.value = values[best];
  }
  refined.evaluations += scan_points;
  refined.multimodal = local_minima > 1;
  refined.at_edge = refined.argmin - a < 2.0 * tol || b - refined.argmin < 2.0 * tol;
  return refined;
}

}  // namespace mst
