#include "mst/gaussian.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace mst {

MstState::MstState(int m, double r, double N) : m_(m), r_(r), N_(N) {
  if (m < 2) {
    throw std::invalid_argument(fmt::format("MstState: mode count must be at least 2, got {}", m));
  }
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument(fmt::format("MstState: squeezing r must be finite and >= 0, got {}", r));
  }
  if (!(N >= 0.0) || !std::isfinite(N)) {
    throw std::invalid_argument(fmt::format("MstState: photon number N must be finite and >= 0, got {}", N));
  }
}

MstState MstState::from_lambda_v(int m, double lambda, double v) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw std::invalid_argument(fmt::format("lambda must lie in [0, 1), got {}", lambda));
  }
  if (!(v >= 0.0 && v < 1.0)) {
    throw std::invalid_argument(fmt::format("v must lie in [0, 1), got {}", v));
  }
  return MstState(m, std::atanh(lambda), v / (1.0 - v));
}

RealMatrix interleave_permutation(int m) {
  RealMatrix p = RealMatrix::Zero(2 * m, 2 * m);
  for (int k = 0; k < m; ++k) {
    p(2 * k, k) = 1.0;
    p(2 * k + 1, m + k) = 1.0;
  }
  return p;
}

CovarianceMatrix CovarianceMatrix::reordered(Ordering target) const {
  if (target == ordering) {
    return *this;
  }
  const RealMatrix p = interleave_permutation(m);
  CovarianceMatrix out = *this;
  out.ordering = target;
  if (target == Ordering::Interleaved) {
    out.entries = p * entries * p.transpose();
  } else {
    out.entries = p.transpose() * entries * p;
  }
  return out;
}

CovarianceMatrix CovarianceMatrix::normalized(Normalization target) const {
  if (target == normalization) {
    return *this;
  }
  CovarianceMatrix out = *this;
  out.normalization = target;
  out.entries = target == Normalization::Gamma ? RealMatrix(2.0 * entries) : RealMatrix(0.5 * entries);
  return out;
}

RealMatrix symplectic_form(int m, Ordering ordering) {
  RealMatrix omega = RealMatrix::Zero(2 * m, 2 * m);
  if (ordering == Ordering::BlockXP) {
    omega.topRightCorner(m, m) = RealMatrix::Identity(m, m);
    omega.bottomLeftCorner(m, m) = -RealMatrix::Identity(m, m);
  } else {
    for (int k = 0; k < m; ++k) {
      omega(2 * k, 2 * k + 1) = 1.0;
      omega(2 * k + 1, 2 * k) = -1.0;
    }
  }
  return omega;
}

CovarianceMatrix mst_covariance(const MstState& state) {
  const int m = state.m();
  const double s = state.s();
  const double scale = state.N() + 0.5;
  const AMatrix ax(m, scale * s, scale / s);
  const AMatrix ap(m, scale / s, scale * s);
  return CovarianceMatrix{m, Ordering::BlockXP, Normalization::Alpha, direct_sum(ax.dense(), ap.dense())};
}

GibbsMatrix mst_gibbs_matrix(const MstState& state) {
  if (state.is_pure()) {
    throw PureStateError("mst_gibbs_matrix: no Gibbs form for a pure state (N = 0)");
  }
  const int m = state.m();
  const double er = std::exp(state.r());
  const double beta = -std::log(state.v());
  // A(e^-r, e^r) beta I A(e^-r, e^r), and the mirrored block for p.
  const AMatrix sx_inv(m, 1.0 / er, er);
  const AMatrix sp_inv(m, er, 1.0 / er);
  const AMatrix mx = amat_scale(sx_inv * sx_inv, beta);
  const AMatrix mp = amat_scale(sp_inv * sp_inv, beta);
  return GibbsMatrix{m, direct_sum(mx.dense(), mp.dense())};
}

RealMatrix mst_symplectic(const MstState& state) {
  const int m = state.m();
  const double er = std::exp(state.r());
  return direct_sum(AMatrix(m, er, 1.0 / er).dense(), AMatrix(m, 1.0 / er, er).dense());
}

std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& cm) {
  const CovarianceMatrix alpha = cm.normalized(Normalization::Alpha);
  const DenseSym sym(alpha.entries, 1e-10);
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(sym.matrix());
  if (solver.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("symplectic_eigenvalues: covariance matrix is not positive definite");
  }
  const RealMatrix root = solver.operatorSqrt();
  const ComplexMatrix omega = symplectic_form(cm.m, cm.ordering).cast<std::complex<double>>();
  const ComplexMatrix rootc = root.cast<std::complex<double>>();
  ComplexMatrix h = std::complex<double>(0.0, 1.0) * (rootc * omega * rootc);
  h = 0.5 * (h + h.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> hsolver(h, Eigen::EigenvaluesOnly);
  // Spectrum is +-nu; the top half is the symplectic spectrum.
  const Eigen::VectorXd ev = hsolver.eigenvalues();
  std::vector<double> out(ev.data() + cm.m, ev.data() + 2 * cm.m);
  std::sort(out.begin(), out.end());
  return out;
}

double bosonic_g(double x) {
  if (!(x >= 0.0)) {
    throw std::domain_error(fmt::format("bosonic_g: argument must be >= 0, got {}", x));
  }
  if (x == 0.0) {
    return 0.0;
  }
  return (x + 1.0) * std::log1p(x) - x * std::log(x);
}

double von_neumann_entropy(const MstState& state) { return state.m() * bosonic_g(state.N()); }

double von_neumann_entropy(const CovarianceMatrix& cm) {
  double total = 0.0;
  for (double nu : symplectic_eigenvalues(cm)) {
    // Round-off can push a pure-mode eigenvalue a hair below 1/2.
    total += bosonic_g(std::max(0.0, nu - 0.5));
  }
  return total;
}

SingleModeCM reduced_state(const MstState& state, int mode) {
  const int m = state.m();
  if (mode < 0 || mode >= m) {
    throw std::out_of_range(fmt::format("reduced_state: mode {} out of range for m = {}", mode, m));
  }
  const double s = state.s();
  const double scale = state.N() + 0.5;
  return SingleModeCM{scale * (s + (m - 1) / s) / m, scale * (1.0 / s + (m - 1) * s) / m};
}

SingleModeCM reduced_state_from_cm(const CovarianceMatrix& cm, int mode) {
  if (mode < 0 || mode >= cm.m) {
    throw std::out_of_range(fmt::format("reduced_state_from_cm: mode {} out of range for m = {}", mode, cm.m));
  }
  const CovarianceMatrix alpha = cm.normalized(Normalization::Alpha);
  const int ix = alpha.x_index(mode);
  const int ip = alpha.p_index(mode);
  return SingleModeCM{alpha.entries(ix, ix), alpha.entries(ip, ip)};
}

double reduced_entropy(const SingleModeCM& cm) {
  return bosonic_g(std::max(0.0, cm.symplectic_eigenvalue() - 0.5));
}

}  // namespace mst
