#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dfrc/scenario.hpp"

using namespace dfrc;

namespace {
RadarScene single_target(double theta, double strength, Complex alpha) {
  RadarScene s;
  s.angles = RVector::Constant(1, theta);
  s.strengths = RVector::Constant(1, strength);
  s.amplitudes = CVector::Constant(1, alpha);
  return s;
}
constexpr double kPi = std::numbers::pi;
}  // namespace

TEST_CASE("steering vector known angles") {
  // theta=0: all ones
  CVector a = steering_vector(0.0, 4, 0.5, 1.0);
  for (int m = 0; m < 4; ++m) CHECK(std::abs(a[m] - Complex(1, 0)) < 1e-12);

  // theta=pi/2, d=lambda/2: [1, -1]
  a = steering_vector(kPi / 2, 2, 0.5, 1.0);
  CHECK(std::abs(a[0] - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(a[1] - Complex(-1, 0)) < 1e-12);

  // theta=pi/6: phases 0, pi/2, pi
  a = steering_vector(kPi / 6, 3, 0.5, 1.0);
  CHECK(std::abs(a[0] - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(a[1] - Complex(0, 1)) < 1e-12);
  CHECK(std::abs(a[2] - Complex(-1, 0)) < 1e-12);
}

TEST_CASE("steering vector properties") {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    double theta = (rng.uniform() - 0.5) * kPi * 0.98;
    CVector a = steering_vector(theta, 8, 0.0055, 0.0107);
    for (int m = 0; m < 8; ++m) CHECK(std::abs(std::abs(a[m]) - 1.0) < 1e-12);
    CVector am = steering_vector(-theta, 8, 0.0055, 0.0107);
    CHECK((am - a.conjugate()).norm() < 1e-10);
  }
  CHECK_THROWS_AS(steering_vector(0.0, 0, 0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(steering_vector(0.0, 4, 0.5, 0.0), std::invalid_argument);
}

TEST_CASE("target response closed forms and linearity") {
  auto s1 = single_target(0.0, 1.0, {1, 0});
  CMatrix g = target_response(s1, 2, 2, 0.5, 1.0);
  CHECK((g - CMatrix::Constant(2, 2, Complex(1, 0))).norm() < 1e-12);

  auto s2 = single_target(0.0, 1.0, {2, 0});
  g = target_response(s2, 3, 2, 0.5, 1.0);
  CHECK(g.rows() == 2);
  CHECK(g.cols() == 3);
  CHECK((g - CMatrix::Constant(2, 3, Complex(2, 0))).norm() < 1e-12);

  RadarScene s3;
  s3.angles = RVector::Zero(2);
  s3.strengths = RVector::Ones(2);
  s3.amplitudes = CVector::Constant(2, Complex(1, 0));
  CMatrix g2 = target_response(s3, 2, 2, 0.5, 1.0);
  CHECK((g2 - 2.0 * target_response(s1, 2, 2, 0.5, 1.0)).norm() < 1e-12);

  // K-target response equals the sum of single-target responses
  Rng rng(3);
  RadarScene multi;
  multi.angles.resize(3);
  multi.strengths = RVector::Ones(3);
  multi.amplitudes.resize(3);
  CMatrix expected = CMatrix::Zero(4, 5);
  for (int k = 0; k < 3; ++k) {
    multi.angles[k] = (rng.uniform() - 0.5) * 2.0;
    multi.amplitudes[k] = rng.cgaussian();
    expected += target_response(
        single_target(multi.angles[k], 1.0, multi.amplitudes[k]), 5, 4, 0.5,
        1.0);
  }
  CHECK((target_response(multi, 5, 4, 0.5, 1.0) - expected).norm() < 1e-12);
}

TEST_CASE("radar covariance closed forms") {
  auto s = single_target(0.0, 1.0, {1, 0});
  CMatrix r = radar_covariance(s, 3, 0.5, 1.0);
  CHECK((r - CMatrix::Constant(3, 3, Complex(1, 0))).norm() < 1e-12);

  s.strengths[0] = 0.0;
  CHECK(radar_covariance(s, 3, 0.5, 1.0).norm() == 0.0);

  RadarScene two;
  two.angles.resize(2);
  two.angles << 0.0, kPi / 2;
  two.strengths = RVector::Ones(2);
  two.amplitudes = CVector::Constant(2, Complex(1, 0));
  CMatrix r2 = radar_covariance(two, 2, 0.5, 1.0);
  // hand sum: a(0)a(0)^H + a(pi/2)a(pi/2)^H = [[2,0],[0,2]]
  CHECK((r2 - 2.0 * CMatrix::Identity(2, 2)).norm() < 1e-10);

  s.strengths[0] = -1.0;
  CHECK_THROWS_AS(radar_covariance(s, 3, 0.5, 1.0), std::invalid_argument);
}

TEST_CASE("radar covariance Hermitian PSD over random scenes") {
  Rng rng(11);
  for (int t = 0; t < 100; ++t) {
    int k = 1 + static_cast<int>(rng.uniform() * 4);
    RadarScene s;
    s.angles.resize(k);
    s.strengths.resize(k);
    s.amplitudes.resize(k);
    for (int i = 0; i < k; ++i) {
      s.angles[i] = (rng.uniform() - 0.5) * 3.0;
      s.strengths[i] = 2.0 * rng.uniform();
      s.amplitudes[i] = rng.cgaussian();
    }
    CMatrix r = radar_covariance(s, 6, 0.0055, 0.0107);
    CHECK((r - CMatrix(r.adjoint())).norm() < 1e-12);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(r, Eigen::EigenvaluesOnly);
    CHECK(es.eigenvalues().minCoeff() >= -1e-10);
  }
}

TEST_CASE("channel sampling determinism and scaling") {
  Rng a(42), b(42), c(43);
  CMatrix h1 = sample_channel(a, 10, 4).h;
  CMatrix h2 = sample_channel(b, 10, 4).h;
  CHECK(h1 == h2);  // byte-identical under equal seeds
  CMatrix h3 = sample_channel(c, 10, 4).h;
  CHECK((h1 - h3).norm() > 0.0);

  // empirical per-entry variance 1/N_t within 5%
  Rng rng(5);
  double acc = 0.0;
  const int n_samples = 10000;
  for (int t = 0; t < n_samples; ++t) {
    CMatrix h = sample_channel(rng, 10, 1).h;
    acc += h.squaredNorm() / 10.0;
  }
  CHECK(acc / n_samples == doctest::Approx(0.1).epsilon(0.05));
}

TEST_CASE("symbol stream concentration") {
  Rng a(9), b(9);
  CMatrix s1 = sample_symbols(a, 4, 100);
  CHECK(s1 == sample_symbols(b, 4, 100));

  Rng rng(17);
  CMatrix s = sample_symbols(rng, 4, 10000);
  CMatrix gram = (s * s.adjoint()) / 10000.0;
  CHECK((gram - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 0.05);

  CMatrix one = sample_symbols(rng, 1, 1000);
  CHECK(one.squaredNorm() / 1000.0 == doctest::Approx(1.0).epsilon(0.1));

  CHECK_THROWS_AS(sample_symbols(rng, 4, 3), std::invalid_argument);
}

TEST_CASE("received signal synthesis") {
  Rng rng(23);
  CMatrix g = CMatrix::Random(2, 3);
  CMatrix w = CMatrix::Zero(3, 2);
  CMatrix s = CMatrix::Random(2, 5);
  CHECK(synthesize_rx_radar(g, w, s, 0.0, rng).norm() == 0.0);

  // noiseless single user: output row is (h^H w) * s
  CommChannel ch{CMatrix::Random(3, 1)};
  CMatrix ws = CMatrix::Random(3, 1);
  CMatrix sym = CMatrix::Random(1, 6);
  CMatrix y = synthesize_rx_comm(ch, ws, sym, 0.0, rng);
  Complex gain = ch.h.col(0).dot(ws.col(0));
  CHECK((y - gain * sym).norm() < 1e-12);

  // zero signal: empirical noise variance matches sigma2
  CMatrix w0 = CMatrix::Zero(3, 2);
  CMatrix s0 = CMatrix::Zero(2, 10000);
  CMatrix noise = synthesize_rx_comm(CommChannel{CMatrix::Zero(3, 2)}, w0, s0,
                                     0.1, rng);
  double var = noise.squaredNorm() / static_cast<double>(noise.size());
  CHECK(var == doctest::Approx(0.1).epsilon(0.05));

  CHECK_THROWS_AS(synthesize_rx_radar(g, CMatrix::Zero(4, 2), s, 0.0, rng),
                  std::invalid_argument);
}

TEST_CASE("config validation") {
  SystemConfig c;
  c.bw_fractions_users = {0.2032, 0.2744, 0.2719, 0.2357};
  c.rate_min = {0.0176, 0.0130, 0.0131, 0.0152};
  c.rate_max = {3.5, 2.6, 2.6, 3.0};
  CHECK_NOTHROW(c.validate());

  SystemConfig bad = c;
  bad.bw_fraction_radar = 0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = c;
  bad.frame_len = 5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = c;
  bad.rate_min[0] = 10.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  CHECK_THROWS_AS(ReliabilityMask::per_entry(RMatrix::Constant(2, 2, 1.5)),
                  std::invalid_argument);
}
