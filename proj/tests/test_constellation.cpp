#include <doctest.h>

#include <cmath>
#include <random>

#include "gbc/constellation.hpp"

using namespace gbc;

TEST_CASE("make_pam small orders") {
  const auto p2 = make_pam(2);
  CHECK(p2.points.size() == 2);
  CHECK(p2.points[0] == doctest::Approx(-1.0));
  CHECK(p2.points[1] == doctest::Approx(1.0));
  CHECK(p2.dmin == doctest::Approx(2.0));

  const auto p4 = make_pam(4);
  const double s5 = std::sqrt(5.0);
  CHECK(p4.dmin == doctest::Approx(2.0 / s5));
  CHECK(p4.points[0] == doctest::Approx(-3.0 / s5));
  CHECK(p4.points[1] == doctest::Approx(-1.0 / s5));
  CHECK(p4.points[2] == doctest::Approx(1.0 / s5));
  CHECK(p4.points[3] == doctest::Approx(3.0 / s5));

  const auto p1 = make_pam(1);
  CHECK(p1.points == std::vector<double>{0.0});
  CHECK(std::isinf(p1.dmin));

  CHECK_THROWS_AS(make_pam(0), std::invalid_argument);
}

TEST_CASE("make_pam is zero mean, unit power, evenly spaced") {
  for (int m = 1; m <= 32; ++m) {
    const auto p = make_pam(m);
    double mean = 0.0;
    double power = 0.0;
    for (double x : p.points) {
      mean += x;
      power += x * x;
    }
    CHECK(std::abs(mean / m) < 1e-12);
    CHECK(power / m == doctest::Approx(m == 1 ? 0.0 : 1.0));
    for (std::size_t i = 1; i < p.points.size(); ++i) {
      CHECK(p.points[i] - p.points[i - 1] == doctest::Approx(p.dmin));
    }
  }
}

TEST_CASE("alpha_star values") {
  CHECK(alpha_star(2, 2) == doctest::Approx(0.2));
  CHECK(alpha_star(6, 2) == doctest::Approx(35.0 / 143.0));
  CHECK(alpha_star(7, 1) == doctest::Approx(1.0));
  CHECK_THROWS(alpha_star(1, 1));
}

TEST_CASE("superimpose atom structure") {
  const auto c22 = superimpose(make_pam(2), make_pam(2), 0.2, 1.0);
  REQUIRE(c22.atoms.size() == 4);
  for (const auto& a : c22.atoms) CHECK(c22.probability(a) == doctest::Approx(0.25));

  const auto c62 = superimpose(make_pam(6), make_pam(2), 35.0 / 143.0, 1.0);
  CHECK(c62.atoms.size() == 12);

  const double power = 3.0;
  const auto c0 = superimpose(make_pam(5), make_pam(3), 0.0, power);
  REQUIRE(c0.atoms.size() == 3);
  const auto p3 = make_pam(3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(c0.atoms[i].amplitude == doctest::Approx(std::sqrt(power) * p3.points[i]));
    CHECK(c0.atoms[i].multiplicity == 5);
  }
}

TEST_CASE("superimpose preserves total mass and power") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int m1 = std::uniform_int_distribution<int>(1, 9)(rng);
    const int m2 = std::uniform_int_distribution<int>(1, 9)(rng);
    const double alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    const double power = std::uniform_real_distribution<double>(0.1, 50.0)(rng);
    const auto c = superimpose(make_pam(m1), make_pam(m2), alpha, power);
    double mass = 0.0;
    for (const auto& a : c.atoms) mass += c.probability(a);
    CHECK(mass == doctest::Approx(1.0));
    const double expected = power * (alpha * (m1 > 1 ? 1.0 : 0.0) + (1.0 - alpha) * (m2 > 1 ? 1.0 : 0.0));
    CHECK(c.average_power() == doctest::Approx(expected).epsilon(1e-9));
    for (std::size_t i = 1; i < c.atoms.size(); ++i) CHECK(c.atoms[i].amplitude > c.atoms[i - 1].amplitude);
  }
}

TEST_CASE("dmin_formula values") {
  CHECK(dmin_formula(2, 2, 0.2, 1.0) == doctest::Approx(std::sqrt(0.8)));
  CHECK(dmin_formula(6, 2, 35.0 / 143.0, 1.0) == doctest::Approx(std::sqrt(12.0 / 143.0)));
  CHECK(dmin_formula(2, 2, 0.1, 4.0) == doctest::Approx(std::sqrt(1.6)));
  CHECK_THROWS_AS(dmin_formula(2, 2, 0.25, 1.0), OutOfRegimeError);
  CHECK_THROWS_AS(dmin_formula(1, 2, 0.1, 1.0), std::invalid_argument);
}

TEST_CASE("dmin_bruteforce basics") {
  const std::vector<double> pair{-1.0, 1.0};
  CHECK(dmin_bruteforce(pair) == doctest::Approx(2.0));
  const std::vector<double> one{0.5};
  CHECK(std::isinf(dmin_bruteforce(one)));
  const std::vector<double> unsorted{3.0, -1.0, 2.5, 10.0};
  CHECK(dmin_bruteforce(unsorted) == doctest::Approx(0.5));
}

TEST_CASE("minimum distance formula matches exhaustive search below the threshold") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 2000; ++trial) {
    const int m1 = std::uniform_int_distribution<int>(2, 16)(rng);
    const int m2 = std::uniform_int_distribution<int>(2, 8)(rng);
    const double top = alpha_star(m1, m2);
    const double alpha = top * (1.0 - std::uniform_real_distribution<double>(0.0, 1.0)(rng));
    if (alpha <= 0.0) continue;
    const double power = std::uniform_real_distribution<double>(0.1, 100.0)(rng);
    const auto c = superimpose(make_pam(m1), make_pam(m2), alpha, power);
    const double f = dmin_formula(m1, m2, alpha, power);
    const double b = dmin_bruteforce(c);
    CHECK(std::abs(f - b) <= 1e-9 * f);
  }
}

TEST_CASE("above the threshold the inter-cluster gap becomes the minimum") {
  for (int m1 = 2; m1 <= 8; ++m1) {
    for (int m2 = 2; m2 <= 6; ++m2) {
      const double alpha = alpha_star(m1, m2) * 1.01;
      const double power = 2.0;
      const double intra = std::sqrt(12.0 * alpha * power / (m1 * m1 - 1));
      const double inter =
          std::sqrt(12.0 * (1.0 - alpha) * power / (m2 * m2 - 1)) - (m1 - 1) * intra;
      CHECK(inter < intra);
      const auto c = superimpose(make_pam(m1), make_pam(m2), alpha, power);
      CHECK(dmin_bruteforce(c) < intra);
      CHECK(dmin_bruteforce(c) == doctest::Approx(inter).epsilon(1e-9));
    }
  }
}

TEST_CASE("overlapping sums merge") {
  // (2,2) at alpha = 0.5: points sqrt(.5)(+-1 +-1) -> {-2,0,0,2}/sqrt(2)
  const auto c = superimpose(make_pam(2), make_pam(2), 0.5, 1.0);
  REQUIRE(c.atoms.size() == 3);
  CHECK(c.atoms[1].multiplicity == 2);
  CHECK(c.probability(c.atoms[1]) == doctest::Approx(0.5));
}

TEST_CASE("channel parameters") {
  const auto ch = ChannelParams::from_db(22.0, 12.0);
  CHECK(ch.snr1 == doctest::Approx(std::pow(10.0, 2.2)));
  CHECK(ch.n1 == 13);
  CHECK(ch.n2 == 4);
  CHECK(ch.snr1_db == 22.0);

  const auto lin = ChannelParams::from_linear(16.0, 4.0);
  CHECK(lin.n1 == 4);
  CHECK(lin.n2 == 2);

  CHECK_THROWS_AS(ChannelParams::from_linear(4.0, 4.0), std::invalid_argument);
  CHECK_THROWS_AS(ChannelParams::from_linear(4.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ChannelParams::from_db(10.0, 10.0), std::invalid_argument);
}
