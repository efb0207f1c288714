#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "htprox/diagnostics.hpp"
#include "htprox/targets.hpp"

using namespace htprox;
using doctest::Approx;

TEST_CASE("potential and gradient") {
  const GeneralizedCauchy gc{1, 2.0};
  CHECK(gc.V(Vec{0.0}) == 0.0);
  CHECK(gc.V(Vec{1.0}) == Approx(1.5 * std::log(2.0)).epsilon(1e-14));

  const GeneralizedCauchy gc2{2, 1.3};
  RngStream rng(3, 0);
  const double h = 1e-6;
  for (int t = 0; t < 10; ++t) {
    Vec x{2.0 * rng.normal(), 2.0 * rng.normal()};
    const Vec g = gc2.grad(x);
    for (int i = 0; i < 2; ++i) {
      Vec xp = x, xm = x;
      xp[static_cast<std::size_t>(i)] += h;
      xm[static_cast<std::size_t>(i)] -= h;
      const double fd = (gc2.V(xp) - gc2.V(xm)) / (2.0 * h);
      CHECK(fd == Approx(g[static_cast<std::size_t>(i)]).epsilon(1e-5).scale(1.0));
    }
  }
}

TEST_CASE("radial cdf reference points") {
  // d = 1, nu = 1 is the standard Cauchy: P(|X| <= 1) = 1/2
  const GeneralizedCauchy cauchy{1, 1.0};
  CHECK(cauchy.radial_cdf(1.0) == Approx(0.5).epsilon(1e-12));
  CHECK(cauchy.radial_cdf(0.0) == 0.0);
  CHECK(cauchy.radial_cdf(1e14) == Approx(1.0).epsilon(1e-6));

  const GeneralizedCauchy gc{3, 2.5};
  double prev = 0.0;
  for (const double r : {0.1, 0.5, 1.0, 2.0, 5.0, 20.0}) {
    const double f = gc.radial_cdf(r);
    CHECK(f > prev);
    prev = f;
  }
}

TEST_CASE("radial cdf against independent quadrature") {
  const GeneralizedCauchy gc{3, 2.5};
  auto dens = [&](double r) {
    return std::exp((gc.dim - 1) * std::log(r) -
                    0.5 * (gc.dim + gc.nu) * std::log1p(r * r));
  };
  const int n = 200000;
  auto simpson_lin = [&](double lo, double hi) {
    const double h = (hi - lo) / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double r = lo + h * i;
      const double f = r > 0.0 ? dens(r) : 0.0;
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      s += w * f;
    }
    return s * h / 3.0;
  };
  auto simpson_log = [&](double lo, double hi) {
    const double llo = std::log(lo), lhi = std::log(hi);
    const double h = (lhi - llo) / n;
    double s = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double r = std::exp(llo + h * i);
      const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
      s += w * dens(r) * r;
    }
    return s * h / 3.0;
  };
  for (const double R : {0.7, 2.0}) {
    const double num = simpson_lin(0.0, R);
    const double den = simpson_lin(0.0, R) + simpson_log(R, 1e7);
    CHECK(gc.radial_cdf(R) == Approx(num / den).epsilon(1e-8));
  }
}

TEST_CASE("radial quantile inverts the cdf") {
  const GeneralizedCauchy gc{2, 0.8};
  for (const double p : {1e-4, 0.1, 0.5, 0.9, 0.999}) {
    const double r = gc.radial_quantile(p);
    CHECK(gc.radial_cdf(r) == Approx(p).epsilon(1e-9).scale(1.0));
  }
  CHECK(gc.radial_quantile(0.0) == 0.0);
  CHECK_THROWS_AS(gc.radial_quantile(1.0), std::invalid_argument);
  CHECK_THROWS_AS(gc.radial_quantile(-0.1), std::invalid_argument);
}

TEST_CASE("log partition closed forms") {
  // d = 1, nu = 1: the density (1+x^2)^{-1} integrates to pi
  const GeneralizedCauchy cauchy{1, 1.0};
  CHECK(cauchy.log_partition() == Approx(std::log(kPi)).epsilon(1e-13));
  // d = 2, nu = 2: pi^{1} Gamma(1)/Gamma(2) = pi
  const GeneralizedCauchy gc{2, 2.0};
  CHECK(gc.log_partition() == Approx(std::log(kPi)).epsilon(1e-13));
}

TEST_CASE("tail lower bound closed form and validity") {
  // C_2 = 2^0 e^{-2} / (3 Gamma(1)) = e^{-2}/3
  const double c2 = std::exp(-2.0) / 3.0;
  const double want =
      c2 * std::pow(1.25, -1.5) * std::pow(2.0, -2.0);
  CHECK(cauchy_tail_lower_bound(2.0, 2.0, 1, 2.0) == Approx(want).epsilon(1e-12));
  CHECK(want == Approx(0.00806985).epsilon(1e-5));

  for (const int d : {1, 2}) {
    const GeneralizedCauchy gc{d, 2.0};
    for (const double R : {0.5, 1.0, 2.0, 5.0, 10.0, 50.0}) {
      const double bound = cauchy_tail_lower_bound(2.0, 2.0, d, R);
      const double tail = 1.0 - gc.radial_cdf(R * std::sqrt(double(d)));
      CHECK(bound <= tail);
      CHECK(bound > 0.0);
    }
  }

  // nu1 < nu2 weakens the bound; still valid
  const GeneralizedCauchy gc{1, 2.0};
  for (const double R : {1.0, 4.0}) {
    CHECK(cauchy_tail_lower_bound(1.0, 2.0, 1, R) <= 1.0 - gc.radial_cdf(R));
  }

  CHECK(cauchy_tail_lower_bound(0.0, 2.0, 1, 3.0) == 0.0);
  CHECK_THROWS_AS(cauchy_tail_lower_bound(2.0, 1.0, 1, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(cauchy_tail_lower_bound(1.0, 2.0, 1, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(cauchy_tail_lower_bound(1.0, 2.0, 0, 1.0),
                  std::invalid_argument);
}

TEST_CASE("holder presets cover both regimes") {
  const TargetSpec heavy = GeneralizedCauchy{1, 2.0}.as_target_spec();
  REQUIRE(heavy.holder.has_value());
  CHECK(heavy.holder->L == Approx(4.0 * 3.0).epsilon(1e-14));
  CHECK(heavy.holder->beta == Approx(0.25).epsilon(1e-14));

  const TargetSpec light = GeneralizedCauchy{2, 0.8}.as_target_spec();
  REQUIRE(light.holder.has_value());
  CHECK(light.holder->L == Approx(2.0 * 2.8 / 0.8).epsilon(1e-14));
  CHECK(light.holder->beta == Approx(0.2).epsilon(1e-14));

  // envelope inequality V - V* <= L r^beta on a wide log grid
  for (const auto& spec : {heavy, light}) {
    const GeneralizedCauchy gc{spec.dim, *spec.nu1};
    for (int i = 0; i <= 400; ++i) {
      const double r = std::exp(-6.0 + 20.0 * i / 400.0);
      Vec x(static_cast<std::size_t>(spec.dim), 0.0);
      x[0] = r;
      CHECK(gc.V(x) <= spec.holder->L * std::pow(r, spec.holder->beta) + 1e-12);
    }
  }
}

TEST_CASE("target spec carries the exact model") {
  const GeneralizedCauchy gc{1, 2.0};
  const TargetSpec spec = gc.as_target_spec();
  CHECK(spec.dim == 1);
  CHECK(spec.min_value == 0.0);
  CHECK(spec.V(spec.minimizer) == 0.0);
  CHECK(*spec.nu1 == 2.0);
  CHECK(*spec.nu2 == 2.0);
  REQUIRE(spec.exact_model.has_value());
  CHECK(spec.exact_model->radial_monotone);
  CHECK(spec.exact_model->log_Z == Approx(gc.log_partition()).epsilon(1e-14));

  RngStream rng(21, 0);
  std::vector<double> radii;
  for (int i = 0; i < 20000; ++i)
    radii.push_back(std::fabs(spec.exact_model->sample(rng)[0]));
  const double d = ks_statistic(radii, [&](double r) { return gc.radial_cdf(r); });
  CHECK(d < ks_one_sample_critical(20000, 0.01));
}

TEST_CASE("multivariate exact sampling") {
  const GeneralizedCauchy gc{3, 2.0};
  RngStream rng(22, 0);
  const auto xs = sample_exact(gc, 20000, rng);
  REQUIRE(xs.size() == 20000);
  const double d = ks_statistic(radii_of(xs), [&](double r) { return gc.radial_cdf(r); });
  CHECK(d < ks_one_sample_critical(20000, 0.01));
  // directional symmetry, coordinate means of the unit vectors
  double m0 = 0.0, m1 = 0.0, m2 = 0.0;
  for (const auto& x : xs) {
    const double r = norm(x);
    m0 += x[0] / r;
    m1 += x[1] / r;
    m2 += x[2] / r;
  }
  const double tol = 4.0 / std::sqrt(3.0 * 20000.0 / 3.0);
  CHECK(std::fabs(m0 / 20000.0) < tol);
  CHECK(std::fabs(m1 / 20000.0) < tol);
  CHECK(std::fabs(m2 / 20000.0) < tol);
}

TEST_CASE("random directions are unit length") {
  RngStream rng(23, 0);
  for (int i = 0; i < 100; ++i) {
    const Vec u = random_direction(4, rng);
    CHECK(norm(u) == Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("flat potential") {
  const TargetSpec flat = flat_potential(2);
  CHECK(flat.V(Vec{3.0, -4.0}) == 0.0);
  const Vec g = flat.gradV(Vec{3.0, -4.0});
  CHECK(g[0] == 0.0);
  CHECK(g[1] == 0.0);
  CHECK(flat.min_value == 0.0);
  CHECK_FALSE(flat.exact_model.has_value());
  CHECK_FALSE(flat.nu1.has_value());
}

TEST_CASE("family parameter validation") {
  CHECK_THROWS_AS((GeneralizedCauchy{0, 1.0}.as_target_spec()),
                  std::invalid_argument);
  CHECK_THROWS_AS((GeneralizedCauchy{1, 0.0}.as_target_spec()),
                  std::invalid_argument);
}
