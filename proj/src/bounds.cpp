#include "mst/bounds.hpp"

#include "mst/minimize.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>

namespace mst {

namespace {

constexpr double kBracketLow = 1e-6;
constexpr double kBracketWidth = 5.0;
constexpr int kPreScanPoints = 512;
constexpr double kGoldenTol = 1e-10;
// Below this E_2ur is rounding noise (sigma sits on the boundary).
constexpr double kDegenerateBound = 1e-12;

void check_pair(const MstState& sigma, const MstState& rho) {
  if (sigma.m() != rho.m()) {
    throw std::invalid_argument(
        fmt::format("relative entropy: mode-count mismatch ({} vs {})", sigma.m(), rho.m()));
  }
  if (rho.is_pure()) {
    throw PureStateError("relative entropy: reference state is pure, relative entropy is infinite");
  }
}

}  // namespace

double rel_entropy_closed(const MstState& sigma, const MstState& rho) {
  check_pair(sigma, rho);
  const double m = sigma.m();
  const double v_rho = rho.v();
  const double ch = std::cosh(2.0 * (sigma.r() - rho.r()));
  return -m * bosonic_g(sigma.N()) - m * std::log1p(-v_rho) -
         0.5 * m * (sigma.t() * ch - 1.0) * std::log(v_rho);
}

double rel_entropy_gibbs(const MstState& sigma, const MstState& rho) {
  check_pair(sigma, rho);
  const double m = sigma.m();
  const RealMatrix alpha = mst_covariance(sigma).entries;
  const RealMatrix gibbs = mst_gibbs_matrix(rho).entries;
  const double half_trace = 0.5 * alpha.cwiseProduct(gibbs).sum();
  const double v_rho = rho.v();
  const double log_z = m * (0.5 * std::log(v_rho) - std::log1p(-v_rho));
  return -von_neumann_entropy(sigma) + log_z + half_trace;
}

MstState boundary_state(int m, double r) {
  const double v = std::tanh(r);
  return MstState(m, r, v / (1.0 - v));
}

RelEntropyResult eur_bound(const MstState& sigma) {
  const int m = sigma.m();
  const auto objective = [&](double r) { return rel_entropy_closed(sigma, boundary_state(m, r)); };
  const ScalarMinimum best =
      scan_then_golden(objective, kBracketLow, sigma.r() + kBracketWidth, kPreScanPoints, kGoldenTol);
  return RelEntropyResult{std::max(0.0, best.value), best.argmin, best.evaluations, best.at_edge, best.multimodal};
}

RelEntropyResult e3ur_bound(const MstState& sigma) {
  if (sigma.m() != 3) {
    throw std::invalid_argument(fmt::format("e3ur_bound: requires m = 3, got {}", sigma.m()));
  }
  return eur_bound(sigma);
}

double widened_separable_minimum(const MstState& sigma, int grid_n) {
  const int m = sigma.m();
  const double r_hi = sigma.r() + kBracketWidth;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid_n; ++i) {
    const double r = kBracketLow + (r_hi - kBracketLow) * i / (grid_n - 1);
    const double v_lo = std::tanh(r);
    for (int k = 0; k < grid_n; ++k) {
      const double v = v_lo + (1.0 - v_lo) * 0.999 * k / (grid_n - 1);
      best = std::min(best, rel_entropy_closed(sigma, MstState(m, r, v / (1.0 - v))));
    }
  }
  return best;
}

double teleport_bound(const MstState& sigma) {
  if (!sigma.is_pure()) {
    throw NotPureError("teleport_bound: only defined for pure states (N = 0)");
  }
  return 2.0 * reduced_entropy(reduced_state(sigma, 0));
}

BoundReport e3u_bound(const MstState& sigma) {
  BoundReport report{e3ur_bound(sigma).value, std::nullopt, std::nullopt};
  if (sigma.is_pure()) {
    report.e_teleport = teleport_bound(sigma);
    report.e_combined = std::min(report.e_rel, *report.e_teleport);
  }
  return report;
}

double conjecture_ratio(double v, double lambda, int m) {
  if (m < 2) {
    throw std::invalid_argument(fmt::format("conjecture_ratio: m must be >= 2, got {}", m));
  }
  const double e2 = eur_bound(MstState::from_lambda_v(2, lambda, v)).value;
  if (!(e2 > kDegenerateBound)) {
    throw std::domain_error(fmt::format("conjecture_ratio: E_2ur vanishes at lambda = {}, v = {}", lambda, v));
  }
  const double em = eur_bound(MstState::from_lambda_v(m, lambda, v)).value;
  return em / e2;
}

double pure_crossover_lambda(double lo, double hi, double tol) {
  const auto gap = [](double lambda) {
    const MstState sigma = MstState::from_lambda_v(3, lambda, 0.0);
    return e3ur_bound(sigma).value - teleport_bound(sigma);
  };
  double g_lo = gap(lo);
  const double g_hi = gap(hi);
  if ((g_lo > 0.0) == (g_hi > 0.0)) {
    throw std::domain_error(fmt::format("pure_crossover_lambda: no sign change on [{}, {}]", lo, hi));
  }
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double g_mid = gap(mid);
    if ((g_mid > 0.0) == (g_lo > 0.0)) {
      lo = mid;
      g_lo = g_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace mst
