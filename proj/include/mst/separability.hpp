#pragma once

#include "mst/gaussian.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace mst {

enum class Classification { FullySeparable, Biseparable, FullyInseparable };

std::string_view to_string(Classification c);

struct PartialTransposeSpec {
  int mode;
};

/// Flips the sign of the chosen mode's p quadrature (row and column).
CovarianceMatrix partial_transpose(const CovarianceMatrix& cm, PartialTransposeSpec spec);

/// J with J = [[0, -I], [I, 0]] in BlockXP ordering; equal to -Omega.
RealMatrix j_form(int m, Ordering ordering);

/// Smallest eigenvalue of the Hermitian matrix gamma~ - iJ for the partial
/// transpose on `spec.mode`. Negative means the bipartition is NPT.
double ppt_min_eigenvalue(const CovarianceMatrix& cm, PartialTransposeSpec spec);

/// Whether gamma~_x >= iJ holds within tol.
bool ppt_test(const CovarianceMatrix& cm, PartialTransposeSpec spec, double tol = kDefaultPsdTol);

/// Squeezing at which the symmetric 3-mode state turns NPT for a given v:
/// cosh^2(2r) = (9/32)(t + 1/t)^2 - 1/8. Returns the corresponding lambda.
double npt_threshold_lambda(double v);

/// True iff the 3-mode state is NPT on every single-mode cut, i.e.
/// cosh^2(2r) > (9/32)(t + 1/t)^2 - 1/8.
bool npt_threshold_closed(const MstState& state);

/// Closed-form full separability of the 3-mode state: v >= lambda (t >= s).
bool fully_separable_closed(const MstState& state);

struct FeasibilityProblem {
  Eigen::Matrix2cd K;
  Eigen::Matrix2cd Ktilde;
  Eigen::Vector2d L;
  Eigen::Vector2d Ltilde;
};

struct Witness {
  double y;
  double z;
};

struct FeasibilityResult {
  bool feasible = false;
  std::optional<Witness> witness;
  double margin = 0.0;
};

/// K = A - C (B - iJ)^-1 C^T and K~ = A - C (B - iJ~)^-1 C^T for the split of
/// a 3-mode Gamma CM into the first mode (A) and the remaining two (B).
/// Throws std::domain_error when B - iJ is singular and C is nonzero.
FeasibilityProblem giedke_K(const CovarianceMatrix& cm);

/// The three slacks at (y, z) with x = sqrt(1 + y^2 + z^2):
///   min(tr K, tr K~) - 2x
///   det K + 1 + L.(y,z) - x tr K
///   det K~ + 1 + L~.(y,z) - x tr K~
std::array<double, 3> feasibility_slacks(const FeasibilityProblem& fp, double y, double z);

struct FeasibilityOptions {
  int grid_points = 201;
  int max_refine_iterations = 600;
};

/// Looks for (y, z) with all three slacks >= -tol. All slacks are concave,
/// so their minimum is maximized: a grid over the trace disk, then
/// central-cut ellipsoid refinement from the best grid point.
FeasibilityResult full_sep_feasibility(const FeasibilityProblem& fp, double tol = kDefaultPsdTol,
                                       const FeasibilityOptions& options = {});

/// Classification from the closed forms (NPT threshold and v >= lambda).
Classification classify(const MstState& state);

/// Classification from the matrix tests (PPT on mode A, then the feasibility
/// search for full separability).
Classification classify_generic(const MstState& state, double tol = kDefaultPsdTol);

/// Residuals of the closed-form ellipse boundaries at (x, y):
///   (t + 1/t) - (s + 1/s) x - (1/3)(s - 1/s) y
/// and the second ellipse with coefficient Delta and with Delta/3, since the
/// two printed forms disagree. Diagnostic only.
struct EllipseResiduals {
  double first;
  double second_delta;
  double second_delta_third;
  double delta;
};

EllipseResiduals closed_ellipse_residuals(const MstState& state, double x, double y);

/// Distance proxy to the nearest class boundary in (lambda, v) coordinates:
/// min(|lambda - v| / sqrt(2), |lambda - npt_threshold_lambda(v)|).
double boundary_distance(double lambda, double v);

}  // namespace mst

namespace mst {

/// Lambda at which the single-mode cut on mode 0 of the m-mode state turns
/// NPT for fixed v, by bisection on the smallest eigenvalue of gamma~ - iJ.
double ppt_boundary_lambda(int m, double v, double tol = 1e-13);

}  // namespace mst
