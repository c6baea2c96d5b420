#include <doctest.h>

#include <cmath>

#include "dfrc/prox.hpp"
#include "dfrc/rng.hpp"

using namespace dfrc;

namespace {

// brute-force minimizer of kappa*|x| + |x - w|^2/2 over a polar grid;
// the minimizer is colinear with w, so a radial search suffices but we
// keep the full polar grid as an independent check
Complex brute_force_prox(Complex w, double kappa, int n_radial = 10000) {
  const double mag = std::abs(w);
  double best_val = kappa * 0.0 + std::norm(w) / 2.0;  // x = 0
  Complex best = {0.0, 0.0};
  for (int i = 1; i <= n_radial; ++i) {
    double r = mag * static_cast<double>(i) / n_radial;
    Complex x = mag > 0 ? w * (r / mag) : Complex{0, 0};
    double val = kappa * r + std::norm(x - w) / 2.0;
    if (val < best_val) {
      best_val = val;
      best = x;
    }
  }
  return best;
}

}  // namespace

TEST_CASE("soft threshold closed forms") {
  CHECK(std::abs(soft_threshold_entry({1.2, 0.0}, 0.5) - Complex(0.7, 0)) <
        1e-12);
  CHECK(soft_threshold_entry({0.3, 0.0}, 0.5) == Complex(0.0, 0.0));

  Complex z = soft_threshold_entry({0.5, 0.5}, 0.20711);
  CHECK(std::abs(z.real() - 0.35355) < 1e-4);
  CHECK(std::abs(z.imag() - 0.35355) < 1e-4);

  CHECK(soft_threshold_entry({0.0, 0.0}, 0.5) == Complex(0.0, 0.0));
  CHECK(soft_threshold_entry({-1.0, 0.0}, 0.25) == Complex(-0.75, 0.0));
}

TEST_CASE("soft threshold matches brute-force prox objective") {
  Rng rng(101);
  for (int t = 0; t < 200; ++t) {
    Complex w = 2.0 * rng.cgaussian();
    double kappa = rng.uniform();
    Complex got = soft_threshold_entry(w, kappa);
    Complex ref = brute_force_prox(w, kappa);
    CHECK(std::abs(got - ref) < 2.0 * std::abs(w) / 10000.0 + 1e-9);
  }
}

TEST_CASE("elementwise prox") {
  Rng rng(5);
  CMatrix w(3, 2);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 3; ++i) w(i, j) = rng.cgaussian();

  CHECK((prox_elementwise(w, RMatrix::Zero(3, 2)) - w).norm() == 0.0);

  double big = 10.0 * w.cwiseAbs().maxCoeff();
  CHECK(prox_elementwise(w, RMatrix::Constant(3, 2, big)).norm() == 0.0);

  RMatrix kappa(3, 2);
  kappa << 0.1, 0.7, 0.0, 0.3, 1.2, 0.05;
  CMatrix z = prox_elementwise(w, kappa);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 3; ++i)
      CHECK(z(i, j) == soft_threshold_entry(w(i, j), kappa(i, j)));

  CHECK_THROWS_AS(prox_elementwise(w, RMatrix::Zero(2, 2)),
                  std::invalid_argument);
}

TEST_CASE("group row prox") {
  CMatrix w(2, 2);
  w << Complex(3, 0), Complex(4, 0), Complex(0.3, 0), Complex(0.4, 0);
  RVector tau(2);
  tau << 1.0, 1.0;
  CMatrix z = prox_group_rows(w, tau);
  CHECK(std::abs(z(0, 0) - Complex(2.4, 0)) < 1e-12);
  CHECK(std::abs(z(0, 1) - Complex(3.2, 0)) < 1e-12);
  CHECK(z.row(1).norm() == 0.0);  // norm 0.5 < tau

  CHECK((prox_group_rows(w, RVector::Zero(2)) - w).norm() == 0.0);
}

TEST_CASE("group prox matches colinear brute force") {
  Rng rng(55);
  for (int t = 0; t < 200; ++t) {
    CVector row(4);
    for (int i = 0; i < 4; ++i) row[i] = rng.cgaussian();
    double tau = 2.0 * rng.uniform();
    CMatrix w(1, 4);
    w.row(0) = row.transpose();
    CMatrix z = prox_group_rows(w, RVector::Constant(1, tau));

    // minimizer is s*row for s in [0,1]
    double best_val = 1e300, best_s = 0.0;
    const double norm = row.norm();
    for (int i = 0; i <= 100000; ++i) {
      double s = static_cast<double>(i) / 100000.0;
      double val = tau * s * norm + (1.0 - s) * (1.0 - s) * norm * norm / 2.0;
      if (val < best_val) {
        best_val = val;
        best_s = s;
      }
    }
    CHECK((z.row(0).transpose() - best_s * row).norm() < 1e-4 * (1.0 + norm));
  }
}

TEST_CASE("prox operators are nonexpansive") {
  Rng rng(202);
  for (int t = 0; t < 100; ++t) {
    CMatrix a(4, 3), b(4, 3);
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 4; ++i) {
        a(i, j) = 2.0 * rng.cgaussian();
        b(i, j) = 2.0 * rng.cgaussian();
      }
    RMatrix kappa(4, 3);
    for (int j = 0; j < 3; ++j)
      for (int i = 0; i < 4; ++i) kappa(i, j) = rng.uniform();
    CHECK((prox_elementwise(a, kappa) - prox_elementwise(b, kappa)).norm() <=
          (a - b).norm() + 1e-12);

    RVector tau(4);
    for (int i = 0; i < 4; ++i) tau[i] = 2.0 * rng.uniform();
    CHECK((prox_group_rows(a, tau) - prox_group_rows(b, tau)).norm() <=
          (a - b).norm() + 1e-12);
  }
}

TEST_CASE("support shrinks monotonically in the threshold") {
  Rng rng(303);
  CMatrix w(5, 3);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 5; ++i) w(i, j) = rng.cgaussian();

  RMatrix kappa = RMatrix::Constant(5, 3, 0.2);
  CMatrix z1 = prox_elementwise(w, kappa);
  kappa(2, 1) = 0.8;
  CMatrix z2 = prox_elementwise(w, kappa);
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 5; ++i)
      CHECK(std::abs(z2(i, j)) <= std::abs(z1(i, j)) + 1e-12);

  RVector tau = RVector::Constant(5, 0.3);
  CMatrix g1 = prox_group_rows(w, tau);
  tau[4] = 1.5;
  CMatrix g2 = prox_group_rows(w, tau);
  for (int i = 0; i < 5; ++i)
    CHECK(g2.row(i).norm() <= g1.row(i).norm() + 1e-12);
}

TEST_CASE("threshold plans") {
  auto beta = ReliabilityMask::per_entry(RMatrix::Constant(2, 2, 0.75));
  RMatrix kappa = elementwise_thresholds(0.1, 2.0, beta);
  CHECK(kappa(0, 0) == doctest::Approx(0.05));

  auto ones = ReliabilityMask::per_entry(RMatrix::Ones(2, 2));
  CHECK(elementwise_thresholds(0.1, 2.0, ones).norm() == 0.0);

  RVector bv(2);
  bv << 1.0, 0.5;
  auto vec = ReliabilityMask::per_antenna(bv);
  RVector tau = row_thresholds(0.1, 2.0, vec, 0.3, 5.0);
  CHECK(tau[0] == doctest::Approx(0.1 * (0.0 + 1.5)));
  CHECK(tau[1] == doctest::Approx(0.1 * (1.0 + 1.5)));
  CHECK(row_thresholds(0.1, 2.0, vec, 0.0, 5.0)[0] == 0.0);

  CHECK_THROWS_AS(elementwise_thresholds(0.1, 1.0, vec), std::invalid_argument);
  CHECK_THROWS_AS(row_thresholds(0.1, 1.0, ones, 0.0, 0.0),
                  std::invalid_argument);
}
