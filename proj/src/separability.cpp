#include "mst/separability.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace mst {

namespace {

using cd = std::complex<double>;

// Absolute slack applied to the v >= lambda comparison so that states built
// from equal (lambda, v) stay on the separable side after the atanh / tanh
// round trip.
constexpr double kBoundaryEps = 1e-12;

double t_plus_inverse(double v) {
  const double t = (1.0 + v) / (1.0 - v);
  return t + 1.0 / t;
}

double npt_rhs(double v) {
  const double w = t_plus_inverse(v);
  return 9.0 / 32.0 * w * w - 1.0 / 8.0;
}

Eigen::Vector2d l_vector(const Eigen::Matrix2cd& k) {
  return Eigen::Vector2d(k(0, 0).real() - k(1, 1).real(), 2.0 * k(0, 1).real());
}

double min_slack(const FeasibilityProblem& fp, double y, double z) {
  const auto s = feasibility_slacks(fp, y, z);
  return std::min({s[0], s[1], s[2]});
}

// Supergradient of min_slack at (y, z): gradient of the active slack.
Eigen::Vector2d min_slack_supergradient(const FeasibilityProblem& fp, double y, double z) {
  const auto s = feasibility_slacks(fp, y, z);
  const double x = std::sqrt(1.0 + y * y + z * z);
  const Eigen::Vector2d dx(y / x, z / x);
  const auto active = std::distance(s.begin(), std::min_element(s.begin(), s.end()));
  switch (active) {
    case 0:
      return -2.0 * dx;
    case 1:
      return fp.L - fp.K.trace().real() * dx;
    default:
      return fp.Ltilde - fp.Ktilde.trace().real() * dx;
  }
}

}  // namespace

std::string_view to_string(Classification c) {
  switch (c) {
    case Classification::FullySeparable:
      return "FullySeparable";
    case Classification::Biseparable:
      return "Biseparable";
    case Classification::FullyInseparable:
      return "FullyInseparable";
  }
  return "Unknown";
}

CovarianceMatrix partial_transpose(const CovarianceMatrix& cm, PartialTransposeSpec spec) {
  if (spec.mode < 0 || spec.mode >= cm.m) {
    throw std::out_of_range(fmt::format("partial_transpose: mode {} out of range for m = {}", spec.mode, cm.m));
  }
  CovarianceMatrix out = cm;
  const int p = cm.p_index(spec.mode);
  out.entries.row(p) *= -1.0;
  out.entries.col(p) *= -1.0;
  return out;
}

RealMatrix j_form(int m, Ordering ordering) { return -symplectic_form(m, ordering); }

double ppt_min_eigenvalue(const CovarianceMatrix& cm, PartialTransposeSpec spec) {
  const CovarianceMatrix gamma = partial_transpose(cm.normalized(Normalization::Gamma), spec);
  const RealMatrix j = j_form(cm.m, cm.ordering);
  if (j.rows() != gamma.entries.rows()) {
    throw std::invalid_argument("ppt_min_eigenvalue: dimension mismatch between CM and J");
  }
  const ComplexMatrix h = gamma.entries.cast<cd>() - cd(0.0, 1.0) * j.cast<cd>();
  return DenseHerm(h).min_eigenvalue();
}

bool ppt_test(const CovarianceMatrix& cm, PartialTransposeSpec spec, double tol) {
  return ppt_min_eigenvalue(cm, spec) >= -tol;
}

double npt_threshold_lambda(double v) {
  if (!(v >= 0.0 && v < 1.0)) {
    throw std::invalid_argument(fmt::format("npt_threshold_lambda: v must lie in [0, 1), got {}", v));
  }
  const double cosh2r = std::sqrt(npt_rhs(v));
  return std::sqrt((cosh2r - 1.0) / (cosh2r + 1.0));
}

bool npt_threshold_closed(const MstState& state) {
  if (state.m() != 3) {
    throw std::invalid_argument(fmt::format("npt_threshold_closed: requires m = 3, got {}", state.m()));
  }
  const double c = std::cosh(2.0 * state.r());
  return c * c > npt_rhs(state.v());
}

bool fully_separable_closed(const MstState& state) { return state.v() >= state.lambda() - kBoundaryEps; }

FeasibilityProblem giedke_K(const CovarianceMatrix& cm) {
  if (cm.m != 3) {
    throw std::invalid_argument(fmt::format("giedke_K: requires a 3-mode CM, got m = {}", cm.m));
  }
  const RealMatrix g = cm.normalized(Normalization::Gamma).reordered(Ordering::Interleaved).entries;
  const Eigen::Matrix2d a = g.topLeftCorner<2, 2>();
  const Eigen::Matrix4d b = g.bottomRightCorner<4, 4>();
  const Eigen::Matrix<double, 2, 4> c = g.topRightCorner<2, 4>();

  FeasibilityProblem fp;
  if (c.cwiseAbs().maxCoeff() == 0.0) {
    // Product across the cut: K = K~ = A whatever B is.
    fp.K = a.cast<cd>();
    fp.Ktilde = fp.K;
  } else {
    const Eigen::Matrix2d j1{{0.0, -1.0}, {1.0, 0.0}};
    Eigen::Matrix4d jj = Eigen::Matrix4d::Zero();
    jj.topLeftCorner<2, 2>() = j1;
    jj.bottomRightCorner<2, 2>() = j1;
    Eigen::Matrix4d jt = jj;
    jt.bottomRightCorner<2, 2>() = -j1;

    const auto schur = [&](const Eigen::Matrix4d& j) -> Eigen::Matrix2cd {
      const Eigen::Matrix4cd shifted = b.cast<cd>() - cd(0.0, 1.0) * j.cast<cd>();
      Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(shifted, Eigen::EigenvaluesOnly);
      if (std::abs(solver.eigenvalues()(0)) < 1e-12 * std::max(1.0, b.cwiseAbs().maxCoeff())) {
        throw std::domain_error("giedke_K: B - iJ is singular");
      }
      const Eigen::Matrix<cd, 2, 4> cc = c.cast<cd>();
      Eigen::Matrix2cd k = a.cast<cd>() - cc * shifted.inverse() * cc.transpose();
      return 0.5 * (k + k.adjoint());
    };
    fp.K = schur(jj);
    fp.Ktilde = schur(jt);
  }
  fp.L = l_vector(fp.K);
  fp.Ltilde = l_vector(fp.Ktilde);
  return fp;
}

std::array<double, 3> feasibility_slacks(const FeasibilityProblem& fp, double y, double z) {
  const double x = std::sqrt(1.0 + y * y + z * z);
  const double tr = fp.K.trace().real();
  const double trt = fp.Ktilde.trace().real();
  const double det = fp.K.determinant().real();
  const double dett = fp.Ktilde.determinant().real();
  return {std::min(tr, trt) - 2.0 * x,
          det + 1.0 + fp.L.x() * y + fp.L.y() * z - x * tr,
          dett + 1.0 + fp.Ltilde.x() * y + fp.Ltilde.y() * z - x * trt};
}

FeasibilityResult full_sep_feasibility(const FeasibilityProblem& fp, double tol, const FeasibilityOptions& options) {
  if (hermiticity_defect(fp.K) > 1e-10 || hermiticity_defect(fp.Ktilde) > 1e-10) {
    throw std::invalid_argument("full_sep_feasibility: K and K~ must be Hermitian");
  }
  const double tr_min = std::min(fp.K.trace().real(), fp.Ktilde.trace().real());
  if (!(tr_min > 0.0)) {
    throw std::invalid_argument("full_sep_feasibility: traces of K and K~ must be positive");
  }

  // Trace condition: x <= tr_min / 2, a disk of radius sqrt(x_max^2 - 1).
  const double x_max = 0.5 * tr_min;
  const double radius = std::sqrt(std::max(0.0, x_max * x_max - 1.0));
  const int n = std::max(options.grid_points, 2) | 1;  // odd, so (0, 0) is on the grid
  const double half_width = std::max(radius, 1e-6);
  const double cell = 2.0 * half_width / (n - 1);

  // Grid evaluation inlined for speed: the determinants and traces are fixed.
  const double tr = fp.K.trace().real();
  const double trt = fp.Ktilde.trace().real();
  const double c2 = fp.K.determinant().real() + 1.0;
  const double c3 = fp.Ktilde.determinant().real() + 1.0;
  double best_y = 0.0;
  double best_z = 0.0;
  double best = -std::numeric_limits<double>::infinity();
  const double r2 = half_width * half_width * (1.0 + 1e-12);
  for (int i = 0; i < n; ++i) {
    const double y = -half_width + i * cell;
    for (int k = 0; k < n; ++k) {
      const double z = -half_width + k * cell;
      if (y * y + z * z > r2) {
        continue;
      }
      const double x = std::sqrt(1.0 + y * y + z * z);
      const double h = std::min({tr_min - 2.0 * x, c2 + fp.L.x() * y + fp.L.y() * z - x * tr,
                                 c3 + fp.Ltilde.x() * y + fp.Ltilde.y() * z - x * trt});
      if (h > best) {
        best = h;
        best_y = y;
        best_z = z;
      }
    }
  }

  // Central-cut ellipsoid method on the concave min-slack, seeded with a ball
  // that covers the whole disk.
  Eigen::Vector2d centre(best_y, best_z);
  const double r0 = 2.0 * half_width + 2.0 * cell;
  Eigen::Matrix2d shape = Eigen::Matrix2d::Identity() * (r0 * r0);
  for (int it = 0; it < options.max_refine_iterations; ++it) {
    const double h = min_slack(fp, centre.x(), centre.y());
    if (h > best) {
      best = h;
      best_y = centre.x();
      best_z = centre.y();
    }
    const Eigen::Vector2d g = min_slack_supergradient(fp, centre.x(), centre.y());
    const double gpg = g.dot(shape * g);
    if (!(gpg > 0.0) || shape.trace() < 1e-28) {
      break;
    }
    const Eigen::Vector2d pg = shape * g / std::sqrt(gpg);
    centre += pg / 3.0;
    shape = 4.0 / 3.0 * (shape - 2.0 / 3.0 * pg * pg.transpose());
  }

  FeasibilityResult result;
  result.margin = best;
  result.feasible = best >= -tol;
  if (result.feasible) {
    result.witness = Witness{best_y, best_z};
  }
  return result;
}

Classification classify(const MstState& state) {
  if (npt_threshold_closed(state)) {
    return Classification::FullyInseparable;
  }
  return fully_separable_closed(state) ? Classification::FullySeparable : Classification::Biseparable;
}

Classification classify_generic(const MstState& state, double tol) {
  if (state.m() != 3) {
    throw std::invalid_argument(fmt::format("classify_generic: requires m = 3, got {}", state.m()));
  }
  const CovarianceMatrix gamma = mst_covariance(state).normalized(Normalization::Gamma);
  // Permutation symmetry: one single-mode cut stands for all three.
  if (!ppt_test(gamma, PartialTransposeSpec{0}, tol)) {
    return Classification::FullyInseparable;
  }
  const FeasibilityResult fr = full_sep_feasibility(giedke_K(gamma), tol);
  return fr.feasible ? Classification::FullySeparable : Classification::Biseparable;
}

EllipseResiduals closed_ellipse_residuals(const MstState& state, double x, double y) {
  const double t = state.t();
  const double s = state.s();
  const double tt = t + 1.0 / t;
  const double sp = s + 1.0 / s;
  const double sm = s - 1.0 / s;
  const double denom = tt * tt - 4.0 / 9.0 * (sp * sp + 5.0);
  const double delta =
      denom == 0.0 ? std::numeric_limits<double>::quiet_NaN() : (tt * tt - 4.0 / 3.0 * (sp * sp - 1.0)) / denom;
  const double base = tt - sp * x;
  return EllipseResiduals{base - sm * y / 3.0, base - delta * sm * y, base - delta / 3.0 * sm * y, delta};
}

double boundary_distance(double lambda, double v) {
  return std::min(std::abs(lambda - v) / std::sqrt(2.0), std::abs(lambda - npt_threshold_lambda(v)));
}

}  // namespace mst

namespace mst {

double ppt_boundary_lambda(int m, double v, double tol) {
  const auto eig = [&](double lambda) {
    return ppt_min_eigenvalue(mst_covariance(MstState::from_lambda_v(m, lambda, v)), PartialTransposeSpec{0});
  };
  double lo = 0.0;
  double hi = 1.0 - 1e-9;
  if (eig(lo) < 0.0) {
    return lo;
  }
  if (eig(hi) >= 0.0) {
    return hi;
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (eig(mid) >= 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace mst
