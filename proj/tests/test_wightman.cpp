#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "udw/errors.hpp"
#include "udw/wightman.hpp"

namespace wm = udw::wightman;
using Complex = std::complex<double>;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("vacuum Wightman reference values") {
  // dt=0, r=1: -> 1/(4 pi^2)
  const Complex w1 = wm::vacuum_wightman(0.0, 1.0, 1e-10);
  CHECK(w1.real() == doctest::Approx(1.0 / (4.0 * kPi * kPi)).epsilon(1e-9));

  // spacelike point: imaginary part vanishes as eps -> 0
  const Complex w2 = wm::vacuum_wightman(0.3, 1.0, 1e-8);
  CHECK(std::abs(w2.imag()) < 1e-6);

  // dt=2, r=0: -> -1/(16 pi^2)
  const Complex w3 = wm::vacuum_wightman(2.0, 0.0, 1e-10);
  CHECK(w3.real() == doctest::Approx(-1.0 / (16.0 * kPi * kPi)).epsilon(1e-9));
}

TEST_CASE("vacuum Wightman is conjugate-symmetric under dt -> -dt") {
  for (double dt : {0.0, 0.4, 1.3, 3.0}) {
    for (double r : {0.0, 0.5, 2.0}) {
      const Complex plus = wm::vacuum_wightman(dt, r, 1e-4);
      const Complex minus = wm::vacuum_wightman(-dt, r, 1e-4);
      CHECK(std::abs(minus - std::conj(plus)) < 1e-14);
    }
  }
}

TEST_CASE("image term m = 0 equals the vacuum Wightman") {
  for (double dt : {0.0, 0.7, 2.0}) {
    const Complex sum0 = wm::thermal_wightman_sum(dt, 1.0, 0.3, 0, 1e-6);
    const Complex vac = wm::vacuum_wightman(dt, 1.0, 1e-6);
    CHECK(std::abs(sum0 - vac) < 1e-16);
  }
}

TEST_CASE("adaptive image sum matches the closed form to 1e-10") {
  struct Pt {
    double dt, L, T;
  };
  for (const Pt& p : {Pt{0.4, 1.0, 0.2}, Pt{0.0, 2.0, 0.5}, Pt{3.0, 0.5, 0.1}}) {
    const Complex s = wm::thermal_wightman_adaptive(p.dt, p.L, p.T, 1e-6);
    const Complex c = wm::thermal_wightman_closed(p.dt, p.L, p.T, 1e-6);
    CHECK(std::abs(s - c) < 1e-10);
  }
}

TEST_CASE("KMS imaginary-period shift reindexes the image sum") {
  // term(dt - i/T; m) = term(dt; m+1): verified through the real-dt API by
  // folding the shift into the image index.
  const double T = 0.25, r = 1.0, eps = 1e-5;
  for (long m = -3; m <= 3; ++m) {
    const Complex lhs = wm::thermal_image_term(0.6, r, T, m + 1, eps);
    // dt - i(m+1)/T - i eps == (dt - i/T) - i m/T - i eps: the imaginary-time
    // shift folds into the regulator argument
    const Complex rhs = wm::thermal_image_term(0.6, r, T, m, eps + 1.0 / T);
    CHECK(std::abs(lhs - rhs) <= 1e-15 * std::abs(lhs));
  }
}

TEST_CASE("partial-sum error decreases monotonically in the cutoff") {
  const double dt = 0.4, L = 1.0, T = 0.2, eps = 1e-8;
  const Complex closed = wm::thermal_wightman_closed(dt, L, T, eps);
  double prev = 1e300;
  for (long k : {8L, 16L, 32L, 64L, 128L}) {
    const double err = std::abs(wm::thermal_wightman_sum(dt, L, T, k, eps) - closed);
    CHECK(err <= prev + 1e-18);
    prev = err;
  }
}

TEST_CASE("thermal closed form: reference values and limits") {
  const double T = 0.3, L = 1.2;
  const Complex at0 = wm::thermal_wightman_closed(0.0, L, T, 1e-10);
  const double expected = T / (8.0 * kPi * L) * 2.0 / std::tanh(kPi * T * L);
  CHECK(at0.real() == doctest::Approx(expected).epsilon(1e-10));

  // T -> 0 recovers the vacuum value at a spacelike point
  const Complex cold = wm::thermal_wightman_closed(0.3, 1.0, 1e-4, 1e-9);
  const double vac = 1.0 / (4.0 * kPi * kPi * (1.0 - 0.09));
  CHECK(std::abs(cold.real() - vac) / vac < 1e-6);

  CHECK_THROWS_AS(wm::thermal_wightman_closed(0.1, 0.0, 0.3, 1e-6), udw::DomainError);
}

TEST_CASE("vacuum recovery of the closed form on a spacelike grid") {
  for (double dt : {0.0, 0.2, 0.5}) {
    for (double L : {1.0, 1.5, 2.5}) {
      const Complex th = wm::thermal_wightman_closed(dt, L, 1e-5, 1e-9);
      const Complex vac = wm::vacuum_wightman(dt, L, 1e-9);
      CHECK(std::abs(th - vac) / std::abs(vac) < 1e-6);
    }
  }
}

TEST_CASE("Hermiticity of vacuum and thermal evaluators") {
  for (double dt : {0.1, 0.9, 2.3}) {
    for (double r : {0.4, 1.0, 3.0}) {
      const Complex v = wm::vacuum_wightman(dt, r, 1e-5);
      CHECK(std::abs(wm::vacuum_wightman(-dt, r, 1e-5) - std::conj(v)) < 1e-15);
      const Complex t = wm::thermal_wightman_closed(dt, r, 0.25, 1e-5);
      CHECK(std::abs(wm::thermal_wightman_closed(-dt, r, 0.25, 1e-5) - std::conj(t)) < 1e-15);
      const Complex s = wm::thermal_wightman_adaptive(dt, r, 0.25, 1e-5);
      CHECK(std::abs(wm::thermal_wightman_adaptive(-dt, r, 0.25, 1e-5) - std::conj(s)) < 1e-14);
    }
  }
}

TEST_CASE("trajectory reference points") {
  const wm::Trajectory pa = wm::Trajectory::parallel_a(1.0);
  const wm::SpacetimePoint p0 = pa.point(0.0);
  CHECK(p0.t == doctest::Approx(0.0));
  CHECK(p0.x == doctest::Approx(1.0));
  CHECK(p0.y == 0.0);
  CHECK(p0.z == 0.0);

  const wm::Trajectory pb = wm::Trajectory::parallel_b(1.0, 2.0);
  const wm::SpacetimePoint q0 = pb.point(0.0);
  CHECK(q0.t == doctest::Approx(0.0));
  CHECK(q0.x == doctest::Approx(3.0));

  // tau = 0 lab separation equals L for every B placement
  for (double a : {0.5, 1.0, 2.0}) {
    for (double L : {0.5, 1.0, 3.0}) {
      const auto a0 = wm::Trajectory::parallel_a(a).point(0.0);
      CHECK(wm::spatial_distance(a0, wm::Trajectory::parallel_b(a, L).point(0.0)) ==
            doctest::Approx(L).epsilon(1e-12));
      const auto aa0 = wm::Trajectory::antiparallel_a(a).point(0.0);
      CHECK(wm::spatial_distance(aa0, wm::Trajectory::antiparallel_b(a, L).point(0.0)) ==
            doctest::Approx(L).epsilon(1e-12));
      const auto pp0 = wm::Trajectory::perpendicular_a(a).point(0.0);
      CHECK(wm::spatial_distance(pp0, wm::Trajectory::perpendicular_b(a, L).point(0.0)) ==
            doctest::Approx(L).epsilon(1e-12));
    }
  }
}

TEST_CASE("four-velocity normalisation by finite differences") {
  const double h = 1e-6;
  for (const wm::Trajectory& tr :
       {wm::Trajectory::parallel_a(1.3), wm::Trajectory::parallel_b(1.3, 1.0),
        wm::Trajectory::antiparallel_b(1.3, 1.0), wm::Trajectory::perpendicular_b(1.3, 1.0),
        wm::Trajectory::static_at_l(2.0)}) {
    const double tau = 0.7;
    const wm::SpacetimePoint p = tr.point(tau + h);
    const wm::SpacetimePoint m = tr.point(tau - h);
    const double td = (p.t - m.t) / (2.0 * h);
    const double xd = (p.x - m.x) / (2.0 * h);
    const double yd = (p.y - m.y) / (2.0 * h);
    const double zd = (p.z - m.z) / (2.0 * h);
    CHECK(std::abs(td * td - xd * xd - yd * yd - zd * zd - 1.0) <= 1e-6);
  }
}

TEST_CASE("coordinate time inversion round-trips") {
  for (const wm::Trajectory& tr :
       {wm::Trajectory::parallel_a(0.7), wm::Trajectory::antiparallel_b(2.0, 1.0),
        wm::Trajectory::static_at_origin()}) {
    for (double tau : {-2.0, 0.0, 1.7}) {
      const double t = tr.coordinate_time(tau);
      CHECK(tr.proper_time_at(t) == doctest::Approx(tau).epsilon(1e-12));
    }
  }
}

TEST_CASE("accelerated trajectories reject a = 0") {
  wm::Trajectory bad{wm::TrajectoryKind::parallel_a, 0.0, 0.0};
  CHECK_THROWS_AS(bad.point(0.5), udw::DomainError);
}

TEST_CASE("evaluator construction guards") {
  CHECK_THROWS_AS(wm::WightmanEvaluator::thermal_sum(0.0), udw::DomainError);
  CHECK_THROWS_AS(wm::thermal_wightman_sum(0.1, 1.0, 0.2, -1, 1e-6), udw::ContractError);
}

TEST_CASE("randomised Hermiticity of the evaluators") {
  std::mt19937 rng(555123u);
  std::uniform_real_distribution<double> dts(-5.0, 5.0);
  std::uniform_real_distribution<double> rs(0.2, 4.0);
  std::uniform_real_distribution<double> ts(0.05, 0.6);
  for (int i = 0; i < 60; ++i) {
    const double dt = dts(rng), r = rs(rng), T = ts(rng);
    const Complex v = wm::vacuum_wightman(dt, r, 1e-5);
    CHECK(std::abs(wm::vacuum_wightman(-dt, r, 1e-5) - std::conj(v)) <= 1e-15 * std::abs(v));
    const Complex c = wm::thermal_wightman_closed(dt, r, T, 1e-5);
    CHECK(std::abs(wm::thermal_wightman_closed(-dt, r, T, 1e-5) - std::conj(c)) <=
          1e-13 * std::abs(c));
  }
}
