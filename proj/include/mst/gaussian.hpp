#pragma once

#include "mst/structmat.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mst {

/// Raised when an operation needs the Gibbs (M) matrix of a pure state.
class PureStateError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// Raised when an operation is only defined for pure states.
class NotPureError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// m-mode squeezed thermal state: the symmetric m-mode entangled pure state
/// with squeezing r, degraded by N thermal photons per mode.
///
/// The two coordinate systems in use are (r, N) and (lambda, v) with
/// lambda = tanh r and v = N/(N+1). Both lie in [0, 1).
class MstState {
public:
  MstState(int m, double r, double N);

  static MstState from_lambda_v(int m, double lambda, double v);

  int m() const { return m_; }
  double r() const { return r_; }
  double N() const { return N_; }

  double v() const { return N_ / (N_ + 1.0); }
  double lambda() const { return std::tanh(r_); }
  double t() const { return 2.0 * N_ + 1.0; }
  double s() const { return std::exp(2.0 * r_); }
  bool is_pure() const { return N_ == 0.0; }

private:
  int m_;
  double r_;
  double N_;
};

enum class Ordering { BlockXP, Interleaved };
enum class Normalization { Alpha, Gamma };

/// Second-moment matrix of an m-mode zero-mean Gaussian state.
///
/// BlockXP stores (x1..xm, p1..pm); Interleaved stores (x1,p1,x2,p2,...).
/// Alpha has vacuum I/2, Gamma = 2 Alpha has vacuum I.
struct CovarianceMatrix {
  int m;
  Ordering ordering;
  Normalization normalization;
  RealMatrix entries;

  CovarianceMatrix reordered(Ordering target) const;
  CovarianceMatrix normalized(Normalization target) const;

  /// Index of the x (or p) quadrature of a mode under this ordering.
  int x_index(int mode) const { return ordering == Ordering::BlockXP ? mode : 2 * mode; }
  int p_index(int mode) const { return ordering == Ordering::BlockXP ? m + mode : 2 * mode + 1; }
};

/// Symplectic form Omega with [R_j, R_k] = i Omega_jk, so that a valid Alpha CM
/// satisfies alpha + (i/2) Omega >= 0.
RealMatrix symplectic_form(int m, Ordering ordering);

/// Permutation that takes BlockXP coordinates to Interleaved ones:
/// interleaved = P * blockxp.
RealMatrix interleave_permutation(int m);

struct GibbsMatrix {
  int m;
  RealMatrix entries;  // BlockXP
};

struct SingleModeCM {
  double a_x;
  double a_p;

  double symplectic_eigenvalue() const { return std::sqrt(a_x * a_p); }
};

CovarianceMatrix mst_covariance(const MstState& state);

/// M with rho = exp(-R^T M R / 2) / Z. Throws PureStateError for N = 0.
GibbsMatrix mst_gibbs_matrix(const MstState& state);

/// S = A(e^r, e^-r) (+) A(e^-r, e^r); alpha = (N + 1/2) S S^T.
RealMatrix mst_symplectic(const MstState& state);

/// Symplectic spectrum (m values, ascending) of an Alpha-normalized CM.
std::vector<double> symplectic_eigenvalues(const CovarianceMatrix& cm);

/// Bosonic entropy g(x) = (x+1) log(x+1) - x log x in nats, g(0) = 0.
double bosonic_g(double x);

/// m g(N), in nats.
double von_neumann_entropy(const MstState& state);

/// Entropy of an Alpha CM from its symplectic spectrum, in nats.
double von_neumann_entropy(const CovarianceMatrix& cm);

/// Single-mode marginal; identical for every mode by permutation symmetry.
SingleModeCM reduced_state(const MstState& state, int mode);

/// Same marginal read off the dense covariance matrix.
SingleModeCM reduced_state_from_cm(const CovarianceMatrix& cm, int mode);

double reduced_entropy(const SingleModeCM& cm);

}  // namespace mst
