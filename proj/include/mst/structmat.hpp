#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>

namespace mst {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

/// m x m matrix with eigenvalue x on the uniform vector (1,...,1)/sqrt(m) and
/// eigenvalue y on its orthogonal complement.
///
/// Diagonal entries are (x + (m-1) y)/m, off-diagonal entries (x - y)/m. The
/// family is closed under multiplication, A(x,y) A(u,v) = A(xu, yv), so all
/// products and inverses are kept in parametric form and only densified on
/// request.
class AMatrix {
public:
  AMatrix(int m, double x, double y);

  int m() const { return m_; }
  double x() const { return x_; }
  double y() const { return y_; }

  double diagonal() const { return (x_ + (m_ - 1) * y_) / m_; }
  double off_diagonal() const { return (x_ - y_) / m_; }

  RealMatrix dense() const;

  static AMatrix identity(int m) { return AMatrix(m, 1.0, 1.0); }

  friend bool operator==(const AMatrix&, const AMatrix&) = default;

private:
  int m_;
  double x_;
  double y_;
};

AMatrix amat_mul(const AMatrix& a, const AMatrix& b);
AMatrix amat_inverse(const AMatrix& a);
double amat_trace(const AMatrix& a);
AMatrix amat_scale(const AMatrix& a, double c);

inline AMatrix operator*(const AMatrix& a, const AMatrix& b) { return amat_mul(a, b); }

/// Real symmetric matrix, checked on construction.
class DenseSym {
public:
  explicit DenseSym(RealMatrix entries, double rel_tol = 1e-12);

  Eigen::Index n() const { return entries_.rows(); }
  const RealMatrix& matrix() const { return entries_; }

  /// Ascending eigenvalues.
  Eigen::VectorXd eigenvalues() const;

private:
  RealMatrix entries_;
};

/// Complex Hermitian matrix, checked on construction.
class DenseHerm {
public:
  explicit DenseHerm(ComplexMatrix entries, double rel_tol = 1e-12);

  Eigen::Index n() const { return entries_.rows(); }
  const ComplexMatrix& matrix() const { return entries_; }

  /// Ascending (real) eigenvalues.
  Eigen::VectorXd eigenvalues() const;
  double min_eigenvalue() const;

private:
  ComplexMatrix entries_;
};

inline constexpr double kDefaultPsdTol = 1e-9;

/// True iff the smallest eigenvalue of h is >= -tol.
bool herm_psd_check(const DenseHerm& h, double tol = kDefaultPsdTol);

/// Largest entrywise deviation from symmetry (or Hermiticity) relative to the
/// largest entry magnitude.
double symmetry_defect(const RealMatrix& a);
double hermiticity_defect(const ComplexMatrix& a);

/// Block-diagonal direct sum.
RealMatrix direct_sum(const RealMatrix& a, const RealMatrix& b);

}  // namespace mst
