#include <doctest.h>

#include "dfrc/metrics.hpp"
#include "dfrc/power.hpp"
#include "dfrc/rng.hpp"

using namespace dfrc;

TEST_CASE("PA power") {
  CHECK(pa_power(2.0, 0.4) == doctest::Approx(5.0));
  CHECK(pa_power(0.0, 0.4) == 0.0);
  CHECK(pa_power(3.0, 1.0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(pa_power(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("DAC power") {
  PowerModelParams p;
  p.c1 = 2.0;
  p.sampling_rate = 3.0;
  p.dac_resolution = 4;
  p.c2 = 1.0;
  CHECK(dac_power(p) == doctest::Approx(40.0));

  p.c1 = 0.0;
  p.c2 = 0.0;
  CHECK(dac_power(p) == 0.0);

  p.c2 = 1.0;
  double q4 = dac_power(p);
  p.dac_resolution = 5;
  CHECK(dac_power(p) == doctest::Approx(2.0 * q4));
}

TEST_CASE("total power composition") {
  PowerModelParams p;
  p.eta_pa = 0.4;
  p.c1 = 2.0;
  p.sampling_rate = 3.0;
  p.dac_resolution = 4;
  p.c2 = 1.0;  // P_DAC = 40
  p.p_mixer = 1.0;
  p.p_lpf = 2.0;
  p.p_hybrid_buffer = 3.0;
  CMatrix w(2, 1);
  w << Complex(1, 0), Complex(1, 0);  // tx power 2
  CHECK(total_power(w, p, 2) == doctest::Approx(5.0 + 2.0 * (80.0 + 9.0)));

  PowerModelParams zero;
  zero.eta_pa = 1.0;
  CHECK(total_power(CMatrix::Zero(2, 2), zero, 4) == 0.0);
  CHECK(total_power(w, p, 0) == doctest::Approx(5.0));
}

TEST_CASE("total power monotonicity") {
  Rng rng(12);
  CMatrix w(3, 2);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 3; ++i) w(i, j) = rng.cgaussian();
  PowerModelParams p;
  p.eta_pa = 0.5;
  p.c1 = 0.1;
  p.sampling_rate = 1.0;
  p.dac_resolution = 2;
  p.c2 = 0.2;
  p.p_mixer = 0.3;
  p.p_lpf = 0.1;
  p.p_hybrid_buffer = 0.05;
  double base = total_power(w, p, 3);

  PowerModelParams q = p;
  q.c1 += 0.1;
  CHECK(total_power(w, q, 3) >= base);
  q = p;
  q.p_mixer += 1.0;
  CHECK(total_power(w, q, 3) >= base);
  q = p;
  q.dac_resolution += 1;
  CHECK(total_power(w, q, 3) >= base);
  CHECK(total_power(1.5 * w, p, 3) >= base);
}

TEST_CASE("hybrid power surrogate") {
  CHECK(hybrid_power_surrogate(CMatrix::Zero(3, 2), 0.4, 5.0) == 0.0);
  CHECK(hybrid_power_surrogate(CMatrix::Identity(2, 2), 0.5, 1.0) ==
        doctest::Approx(6.0));

  Rng rng(8);
  CMatrix w(4, 2);
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 4; ++i) w(i, j) = rng.cgaussian();
  CHECK(hybrid_power_surrogate(w, 0.4, 0.0) ==
        doctest::Approx(tx_power(w) / 0.4));
  CHECK(hybrid_power_surrogate(w, 0.4, 2.0) > tx_power(w) / 0.4);
  CHECK_THROWS_AS(hybrid_power_surrogate(w, 0.0, 1.0), std::invalid_argument);
}
