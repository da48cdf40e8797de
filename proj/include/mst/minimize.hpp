#pragma once

#include <functional>

namespace mst {

struct ScalarMinimum {
  double argmin;
  double value;
  int evaluations;
  bool multimodal;  // pre-scan saw more than one local minimum
  bool at_edge;     // minimum sits on a bracket endpoint
};

/// Golden-section search on [a, b] until the bracket is narrower than tol.
ScalarMinimum golden_section(const std::function<double(double)>& f, double a, double b, double tol);

/// Uniform pre-scan with `scan_points` samples, then golden-section on the
/// two cells around the best sample. Deterministic.
ScalarMinimum scan_then_golden(const std::function<double(double)>& f, double a, double b, int scan_points,
                               double tol);

}  // namespace mst
