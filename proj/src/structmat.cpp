#include "mst/structmat.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace mst {

AMatrix::AMatrix(int m, double x, double y) : m_(m), x_(x), y_(y) {
  if (m < 2) {
    throw std::invalid_argument(fmt::format("AMatrix: mode count must be at least 2, got {}", m));
  }
}

RealMatrix AMatrix::dense() const {
  RealMatrix out = RealMatrix::Constant(m_, m_, off_diagonal());
  out.diagonal().setConstant(diagonal());
  return out;
}

AMatrix amat_mul(const AMatrix& a, const AMatrix& b) {
  if (a.m() != b.m()) {
    throw std::invalid_argument(fmt::format("amat_mul: dimension mismatch ({} vs {})", a.m(), b.m()));
  }
  return AMatrix(a.m(), a.x() * b.x(), a.y() * b.y());
}

AMatrix amat_inverse(const AMatrix& a) {
  if (a.x() == 0.0 || a.y() == 0.0) {
    throw std::domain_error(fmt::format("amat_inverse: singular A({}, {})", a.x(), a.y()));
  }
  return AMatrix(a.m(), 1.0 / a.x(), 1.0 / a.y());
}

double amat_trace(const AMatrix& a) { return a.x() + (a.m() - 1) * a.y(); }

AMatrix amat_scale(const AMatrix& a, double c) { return AMatrix(a.m(), c * a.x(), c * a.y()); }

double symmetry_defect(const RealMatrix& a) {
  if (a.rows() != a.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.transpose()).cwiseAbs().maxCoeff() / scale;
}

double hermiticity_defect(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) {
    return std::numeric_limits<double>::infinity();
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  return (a - a.adjoint()).cwiseAbs().maxCoeff() / scale;
}

DenseSym::DenseSym(RealMatrix entries, double rel_tol) : entries_(std::move(entries)) {
  if (symmetry_defect(entries_) > rel_tol) {
    throw std::invalid_argument("DenseSym: matrix is not symmetric");
  }
}

Eigen::VectorXd DenseSym::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

DenseHerm::DenseHerm(ComplexMatrix entries, double rel_tol) : entries_(std::move(entries)) {
  if (hermiticity_defect(entries_) > rel_tol) {
    throw std::invalid_argument("DenseHerm: matrix is not Hermitian");
  }
}

Eigen::VectorXd DenseHerm::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(entries_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

double DenseHerm::min_eigenvalue() const { return eigenvalues()(0); }

bool herm_psd_check(const DenseHerm& h, double tol) { return h.min_eigenvalue() >= -tol; }

RealMatrix direct_sum(const RealMatrix& a, const RealMatrix& b) {
  RealMatrix out = RealMatrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

}  // namespace mst
