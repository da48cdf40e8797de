#pragma once

#include "mst/gaussian.hpp"

#include <optional>

namespace mst {

struct RelEntropyResult {
  double value;     // nats
  double argmin_r;  // optimal r of the separable reference state
  int evaluations;
  bool at_edge;
  bool multimodal;
};

struct BoundReport {
  double e_rel;
  std::optional<double> e_teleport;
  std::optional<double> e_combined;
};

/// S(sigma || rho) in nats from the closed form
///   -m g(N_s) - m log(1 - v_r) - (m/2) [(2 N_s + 1) cosh 2(r_s - r_r) - 1] log v_r.
double rel_entropy_closed(const MstState& sigma, const MstState& rho);

/// The same quantity assembled from the dense covariance matrix of sigma and
/// the Gibbs matrix of rho:
///   -S(sigma) + log Z_rho + (1/2) Tr(alpha_sigma M_rho),
/// with log Z_rho = sum over normal modes of (1/2) log v - log(1 - v).
double rel_entropy_gibbs(const MstState& sigma, const MstState& rho);

/// The separable reference state on the boundary v = lambda with squeezing r.
MstState boundary_state(int m, double r);

/// Minimum of S(sigma || rho) over boundary states rho (v_rho = tanh r_rho)
/// for any mode count.
RelEntropyResult eur_bound(const MstState& sigma);

/// eur_bound restricted to m = 3.
RelEntropyResult e3ur_bound(const MstState& sigma);

/// Minimum of S(sigma || rho) over a (r_rho, v_rho) grid of the whole
/// separable region v_rho >= tanh r_rho. Diagnostic for the claim that the
/// minimum lies on the boundary.
double widened_separable_minimum(const MstState& sigma, int grid_n);

/// 2 S(sigma_A) for pure states. Throws NotPureError for N > 0.
double teleport_bound(const MstState& sigma);

/// E_3ur, plus the teleportation bound and their minimum when sigma is pure.
BoundReport e3u_bound(const MstState& sigma);

/// E_mur(v, lambda) / E_2ur(v, lambda), each minimized independently.
double conjecture_ratio(double v, double lambda, int m);

/// Lambda where E_3ur and 2 S(sigma_A) cross for pure states, by bisection on
/// [lo, hi]. Requires a sign change on the bracket.
double pure_crossover_lambda(double lo, double hi, double tol = 1e-12);

}  // namespace mst
