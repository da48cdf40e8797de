#include "mst/structmat.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace mst;

namespace {

double max_abs_diff(const RealMatrix& a, const RealMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("amat_mul follows the parametric product rule") {
  SUBCASE("identity on the left") {
    const AMatrix a(4, 1.7, -0.3);
    CHECK(amat_mul(AMatrix::identity(4), a) == a);
  }
  SUBCASE("square root of the squeezing matrix") {
    const double r = 0.37;
    const AMatrix half(3, std::exp(r), std::exp(-r));
    const AMatrix sq = half * half;
    CHECK(sq.x() == doctest::Approx(std::exp(2 * r)).epsilon(1e-15));
    CHECK(sq.y() == doctest::Approx(std::exp(-2 * r)).epsilon(1e-15));
  }
  SUBCASE("dense product oracle") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(-3.0, 3.0);
    for (int m : {2, 3, 5}) {
      for (int trial = 0; trial < 20; ++trial) {
        const AMatrix a(m, dist(rng), dist(rng));
        const AMatrix b(m, dist(rng), dist(rng));
        CHECK(max_abs_diff(amat_mul(a, b).dense(), a.dense() * b.dense()) < 1e-12);
      }
    }
  }
  SUBCASE("dimension mismatch") { CHECK_THROWS_AS(amat_mul(AMatrix(2, 1, 1), AMatrix(3, 1, 1)), std::invalid_argument); }
}

TEST_CASE("amat_inverse") {
  CHECK(amat_inverse(AMatrix(3, 2.0, 0.5)) == AMatrix(3, 0.5, 2.0));
  CHECK(amat_inverse(AMatrix::identity(5)) == AMatrix::identity(5));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> dist(0.2, 4.0);
  for (int trial = 0; trial < 10; ++trial) {
    const AMatrix a(3, dist(rng), -dist(rng));
    CHECK(max_abs_diff(amat_inverse(a).dense(), a.dense().inverse()) < 1e-12);
    CHECK(max_abs_diff((a * amat_inverse(a)).dense(), RealMatrix::Identity(3, 3)) < 1e-15);
    // 1/(1/x) can land one ulp away from x.
    const AMatrix back = amat_inverse(amat_inverse(a));
    CHECK(std::abs(back.x() - a.x()) <= 2 * std::numeric_limits<double>::epsilon() * std::abs(a.x()));
    CHECK(std::abs(back.y() - a.y()) <= 2 * std::numeric_limits<double>::epsilon() * std::abs(a.y()));
  }
  CHECK(amat_inverse(amat_inverse(AMatrix(4, 0.25, 8.0))) == AMatrix(4, 0.25, 8.0));

  CHECK_THROWS_AS(amat_inverse(AMatrix(3, 0.0, 1.0)), std::domain_error);
  CHECK_THROWS_AS(amat_inverse(AMatrix(3, 1.0, 0.0)), std::domain_error);
}

TEST_CASE("amat_trace") {
  CHECK(amat_trace(AMatrix::identity(3)) == 3.0);
  const double r = 0.5;
  const AMatrix a(3, std::exp(2 * r), std::exp(-2 * r));
  CHECK(amat_trace(a) == doctest::Approx(a.dense().trace()).epsilon(1e-15));
  CHECK(amat_trace(a) == doctest::Approx(std::exp(1.0) + 2 * std::exp(-1.0)).epsilon(1e-15));
  CHECK(amat_trace(AMatrix(2, 1.25, -4.5)) == 1.25 - 4.5);
}

TEST_CASE("AMatrix dense form and spectrum") {
  const AMatrix a(4, 3.0, 1.0);
  const RealMatrix d = a.dense();
  CHECK(d(0, 0) == doctest::Approx(1.5));
  CHECK(d(0, 1) == doctest::Approx(0.5));
  CHECK(symmetry_defect(d) == 0.0);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  for (int m : {2, 3, 5, 8}) {
    for (int trial = 0; trial < 5; ++trial) {
      const AMatrix b(m, dist(rng), dist(rng));
      const Eigen::VectorXd ev = DenseSym(b.dense()).eigenvalues();
      std::vector<double> expected(m - 1, b.y());
      expected.push_back(b.x());
      std::sort(expected.begin(), expected.end());
      for (int k = 0; k < m; ++k) {
        CHECK(ev(k) == doctest::Approx(expected[k]).epsilon(1e-10).scale(1.0));
      }
    }
  }
  CHECK_THROWS_AS(AMatrix(1, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("herm_psd_check") {
  CHECK(herm_psd_check(DenseHerm(ComplexMatrix::Identity(4, 4))));
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  d(1, 1) = -0.1;
  CHECK_FALSE(herm_psd_check(DenseHerm(d), 1e-9));
  CHECK(herm_psd_check(DenseHerm(d), 0.2));

  ComplexMatrix bad = ComplexMatrix::Identity(2, 2);
  bad(0, 1) = std::complex<double>(0.0, 1.0);
  bad(1, 0) = std::complex<double>(0.0, 1.0);
  CHECK_THROWS_AS(DenseHerm{bad}, std::invalid_argument);
}

TEST_CASE("herm_psd_check rejects the partially transposed pure 3-mode state") {
  // gamma = 2 alpha = A(s, 1/s) (+) A(1/s, s), s = e^{2r}, r = 0.5; flip p_A.
  const double s = std::exp(1.0);
  RealMatrix gamma = RealMatrix::Zero(6, 6);
  gamma.topLeftCorner(3, 3) = AMatrix(3, s, 1 / s).dense();
  gamma.bottomRightCorner(3, 3) = AMatrix(3, 1 / s, s).dense();
  gamma.row(3) *= -1.0;
  gamma.col(3) *= -1.0;
  ComplexMatrix h = gamma.cast<std::complex<double>>();
  for (int k = 0; k < 3; ++k) {
    h(k, 3 + k) += std::complex<double>(0.0, -1.0);  // + iJ, J = [[0, -I], [I, 0]]
    h(3 + k, k) += std::complex<double>(0.0, 1.0);
  }
  // Oracle: general (non-Hermitian) eigen solver.
  Eigen::ComplexEigenSolver<ComplexMatrix> ces(h);
  double min_re = 1e300;
  for (int k = 0; k < 6; ++k) {
    min_re = std::min(min_re, ces.eigenvalues()(k).real());
  }
  CHECK(min_re < -1e-3);
  CHECK_FALSE(herm_psd_check(DenseHerm(h)));
  CHECK(DenseHerm(h).min_eigenvalue() == doctest::Approx(min_re).epsilon(1e-10));
}
