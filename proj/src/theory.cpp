#include "htprox/theory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace htprox {
namespace {

constexpr double kGridLo = 1.0;
constexpr double kGridHi = 1e12;
constexpr int kGridPoints = 400;

void check_family(const BoundQuery& q) {
  if (q.d < 1) throw std::invalid_argument("BoundQuery: d must be >= 1");
  if (!(q.nu1 > 0.0) || !(q.nu2 >= q.nu1))
    throw std::invalid_argument("BoundQuery: need 0 < nu1 <= nu2");
  if (!(q.E_G0 >= 1.0))
    throw std::invalid_argument("BoundQuery: E_G0 must be >= 1");
}

// ln f(y) for decay base `lam` (kappa * (d+nu1) or kappa * (d+nu2)): the
// profile C_{nu1} d^{nu1/2} (1 + y^{-2/lam})^{-(d+nu2)/2} y^{-nu2/lam}
double ln_profile(const BoundQuery& q, double lam, double ln_y) {
  const double lc = std::log(cauchy_tail_constant(q.nu1)) +
                    0.5 * q.nu1 * std::log(static_cast<double>(q.d));
  return lc - 0.5 * (q.d + q.nu2) * std::log1p(std::exp(-2.0 / lam * ln_y)) -
         q.nu2 / lam * ln_y;
}

// sup over the grid of (f(y) - g/y), clamped into [0,1]; everything stays in
// log space until the final subtraction so huge g cannot overflow
double sup_gap(const BoundQuery& q, double lam, double ln_g) {
  std::vector<double> grid = q.y_grid;
  if (grid.empty()) {
    // put the analytic maximizer inside the window: for f ~ A y^{-s} the sup
    // of f - g/y sits at ln y* = (ln g - ln(s A)) / (1 - s) when s < 1
    double hi = kGridHi;
    const double s = q.nu2 / lam;
    if (s < 1.0) {
      const double lnA = std::log(cauchy_tail_constant(q.nu1)) +
                         0.5 * q.nu1 * std::log(static_cast<double>(q.d));
      const double ln_ystar = (ln_g - std::log(s) - lnA) / (1.0 - s);
      hi = std::max(hi, std::exp(std::min(ln_ystar + 5.0, 600.0)));
    }
    const int points = std::max(
        kGridPoints,
        static_cast<int>(kGridPoints * std::log(hi) / std::log(kGridHi)));
    grid = log_spaced_grid(kGridLo, hi, points);
  }
  double best = 0.0;
  for (const double y : grid) {
    if (!(y > 0.0)) throw std::invalid_argument("y_grid must be positive");
    const double ln_y = std::log(y);
    const double h = std::exp(ln_profile(q, lam, ln_y)) - std::exp(ln_g - ln_y);
    best = std::max(best, h);
  }
  return std::min(1.0, best);
}

}  // namespace

std::vector<double> log_spaced_grid(double lo, double hi, int points) {
  if (!(lo > 0.0) || !(hi > lo))
    throw std::invalid_argument("log_spaced_grid: need 0 < lo < hi");
  if (points < 2) throw std::invalid_argument("log_spaced_grid: points >= 2");
  std::vector<double> g(static_cast<std::size_t>(points));
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (int i = 0; i < points; ++i)
    g[static_cast<std::size_t>(i)] =
        std::exp(llo + (lhi - llo) * i / (points - 1));
  return g;
}

std::vector<double> default_y_grid() {
  return log_spaced_grid(kGridLo, kGridHi, kGridPoints);
}

double kappa_delta(int d, double nu2, double delta) {
  if (d < 1) throw std::invalid_argument("kappa_delta: d must be >= 1");
  if (!(nu2 > 0.0)) throw std::invalid_argument("kappa_delta: nu2 must be positive");
  if (!(delta > 0.0))
    throw std::invalid_argument("kappa_delta: delta must be positive");
  const double s = static_cast<double>(d) + nu2;
  return std::max({1.0, 2.0 / s, nu2 * (1.0 + delta) / (s * delta)});
}

double cauchy_tail_constant(double nu1) {
  if (!(nu1 > 0.0))
    throw std::invalid_argument("cauchy_tail_constant: nu1 must be positive");
  return std::exp((1.0 - 0.5 * nu1) * std::log(2.0) - nu1 - std::log1p(nu1) -
                  std::lgamma(0.5 * nu1));
}

double chi2_upper_bound(double C_fpi, double eta, long k, double chi2_0) {
  if (!(C_fpi >= 0.0)) throw std::invalid_argument("chi2_upper_bound: C_fpi >= 0");
  if (!(eta > 0.0)) throw std::invalid_argument("chi2_upper_bound: eta > 0");
  if (k < 0) throw std::invalid_argument("chi2_upper_bound: k >= 0");
  if (!(chi2_0 >= 0.0)) throw std::invalid_argument("chi2_upper_bound: chi2_0 >= 0");
  return std::exp(-static_cast<double>(k) * eta / (C_fpi + eta)) * chi2_0;
}

double inexact_tv_bound(double tv_0, long k, double eps_tv) {
  if (!(tv_0 >= 0.0)) throw std::invalid_argument("inexact_tv_bound: tv_0 >= 0");
  if (k < 0) throw std::invalid_argument("inexact_tv_bound: k >= 0");
  if (!(eps_tv >= 0.0)) throw std::invalid_argument("inexact_tv_bound: eps_tv >= 0");
  return tv_0 + static_cast<double>(k) * eps_tv;
}

long iterations_to_eps(double C_fpi, double eta, double chi2_0, double eps) {
  if (!(C_fpi >= 0.0) || !(eta > 0.0) || !(chi2_0 > 0.0) || !(eps > 0.0))
    throw std::invalid_argument("iterations_to_eps: bad inputs");
  const double val =
      (1.0 + C_fpi / eta) * std::log(chi2_0 / (eps * eps));
  return static_cast<long>(std::ceil(std::max(0.0, val)));
}

double ld_g(const BoundQuery& q, double t) {
  check_family(q);
  if (!(q.kappa > 0.0)) throw std::invalid_argument("ld_g: kappa must be positive");
  if (!(t >= 0.0)) throw std::invalid_argument("ld_g: t must be >= 0");
  const double ks = q.kappa * (q.d + q.nu2);
  const double base = std::exp(2.0 / ks * std::log(q.E_G0)) + 2.0 * ks * t;
  return std::exp(0.5 * ks * std::log(base));
}

double gaussian_prox_g(const BoundQuery& q, long k, double eta) {
  if (k < 0) throw std::invalid_argument("gaussian_prox_g: k >= 0");
  if (!(eta > 0.0)) throw std::invalid_argument("gaussian_prox_g: eta > 0");
  // one sampler iteration advances the heat flow by time 2 eta, so the
  // discrete evaluator is the continuous one at t = 2 eta k, exactly
  return ld_g(q, 2.0 * eta * static_cast<double>(k));
}

double ld_tv_lower_bound(const BoundQuery& q, double t) {
  check_family(q);
  const double ks = q.kappa * (q.d + q.nu2);
  const double g = ld_g(q, t);
  return sup_gap(q, ks, std::log(g));
}

double gaussian_prox_tv_lower_bound(const BoundQuery& q, long k, double eta) {
  check_family(q);
  const double ks = q.kappa * (q.d + q.nu2);
  const double g = gaussian_prox_g(q, k, eta);
  return sup_gap(q, ks, std::log(g));
}

double stable_moment_recursion(const BoundQuery& q, long k, double eta,
                               double m_tau) {
  check_family(q);
  if (!(q.alpha > 0.0 && q.alpha <= 2.0))
    throw std::invalid_argument("stable_moment_recursion: alpha in (0,2]");
  const double lo = q.nu2 * (q.d + q.nu2) / (q.d + q.nu1);
  if (!(q.tau > lo && q.tau < q.alpha))
    throw std::invalid_argument("stable_moment_recursion: tau out of range");
  if (!std::isfinite(m_tau) || !(m_tau > 0.0))
    throw std::invalid_argument(
        "stable_moment_recursion: m_tau must be finite and positive");
  if (!(eta > 0.0)) throw std::invalid_argument("stable_moment_recursion: eta > 0");
  if (k < 0) throw std::invalid_argument("stable_moment_recursion: k >= 0");
  if (k == 0) return q.E_G0;
  const double r = 2.0 / (q.tau * static_cast<double>(k));
  const double a = std::exp(0.5 * q.tau * std::log1p(r));
  const double b = std::exp(0.5 * q.tau * std::log1p(1.0 / r) +
                            q.tau / q.alpha * std::log(2.0 * eta)) *
                   m_tau;
  double e = q.E_G0;
  for (long j = 0; j < k; ++j) e = a * e + b;
  return e;
}

double stable_prox_tv_lower_bound(const BoundQuery& q, long k, double eta,
                                  double m_tau) {
  const double ek = stable_moment_recursion(q, k, eta, m_tau);
  // the decay base for the profile uses d + nu1, the moment cap d + nu2
  const double lam = q.tau / (q.d + q.nu2) * (q.d + q.nu1);
  return sup_gap(q, lam, std::log(ek));
}

double wfpi_chi2_bound(double c, double nu, double eta, long k, double r,
                       double chi2_0, double rinf_0) {
  if (!(c > 0.0)) throw std::invalid_argument("wfpi_chi2_bound: c > 0");
  if (!(nu > 0.0 && nu < 1.0))
    throw std::invalid_argument("wfpi_chi2_bound: nu in (0,1)");
  if (!(eta > 0.0)) throw std::invalid_argument("wfpi_chi2_bound: eta > 0");
  if (k < 0) throw std::invalid_argument("wfpi_chi2_bound: k >= 0");
  if (!(r > 0.0)) throw std::invalid_argument("wfpi_chi2_bound: r > 0");
  if (!(chi2_0 >= 0.0)) throw std::invalid_argument("wfpi_chi2_bound: chi2_0 >= 0");
  const double beta = c * (1.0 + std::pow(r, -(1.0 - nu) / nu));
  const double rate = eta / (beta + eta);
  return std::exp(-static_cast<double>(k) * rate) * chi2_0 +
         4.0 * r *
             (1.0 - std::exp(-static_cast<double>(k + 1) * rate)) *
             std::exp(2.0 * rinf_0);
}

double wfpi_iteration_threshold(double c, double nu, double eta, double eps,
                                double chi2_0, double rinf_0) {
  if (!(c > 0.0)) throw std::invalid_argument("wfpi_iteration_threshold: c > 0");
  if (!(nu > 0.0 && nu < 1.0))
    throw std::invalid_argument("wfpi_iteration_threshold: nu in (0,1)");
  if (!(eta > 0.0)) throw std::invalid_argument("wfpi_iteration_threshold: eta > 0");
  if (!(eps > 0.0)) throw std::invalid_argument("wfpi_iteration_threshold: eps > 0");
  if (!(2.0 * chi2_0 > eps))
    throw std::invalid_argument("wfpi_iteration_threshold: need 2 chi2_0 > eps");
  const double lead =
      1.0 + std::pow(c, 1.0 / nu) * std::pow(eta, -1.0 / nu) +
      std::pow(2.0, 1.0 / nu) * c / eta *
          std::pow(eps, -(1.0 - nu) / nu) *
          std::exp(2.0 * (1.0 - nu) * rinf_0 / nu);
  return lead * std::pow(std::log(2.0 * chi2_0 / eps), 1.0 / nu);
}

double gaussian_init_rinf_bound(double nu, int d) {
  if (!(nu > 0.0))
    throw std::invalid_argument("gaussian_init_rinf_bound: nu > 0");
  if (d < 1) throw std::invalid_argument("gaussian_init_rinf_bound: d >= 1");
  return 0.5 * nu * std::log(2.0) + std::lgamma(0.5 * nu) +
         std::log((static_cast<double>(d) + nu) / (2.0 * std::exp(1.0)));
}

ComplexityRecord complexity_table(ComplexityScenario s,
                                  const ComplexityInputs& in) {
  if (in.d < 1) throw std::invalid_argument("complexity_table: d >= 1");
  if (!(in.nu > 0.0)) throw std::invalid_argument("complexity_table: nu > 0");
  if (!(in.eps > 0.0)) throw std::invalid_argument("complexity_table: eps > 0");
  const double d = static_cast<double>(in.d);
  ComplexityRecord rec;
  switch (s) {
    case ComplexityScenario::ideal_fpi: {
      if (in.C_fpi < 0.0 || in.chi2_0 <= 0.0 || !(in.eta > 0.0))
        throw std::invalid_argument(
            "complexity_table: ideal_fpi needs C_fpi, chi2_0, eta");
      rec.formula = "(1 + C_fpi/eta) * ln(chi2_0/eps)";
      rec.d_exponent = 0.0;
      rec.eps_exponent = 0.0;
      rec.iterations =
          (1.0 + in.C_fpi / in.eta) * std::log(in.chi2_0 / in.eps);
      return rec;
    }
    case ComplexityScenario::implementable_nu_ge1: {
      if (!(in.nu >= 1.0))
        throw std::invalid_argument(
            "complexity_table: implementable_nu_ge1 needs nu >= 1");
      if (in.C_fpi < 0.0 || in.chi2_0 <= 0.0)
        throw std::invalid_argument(
            "complexity_table: implementable_nu_ge1 needs C_fpi and chi2_0");
      const double eta =
          in.c0 * std::pow(d, -0.5) * std::pow(d + in.nu, -4.0);
      rec.formula =
          "(1 + C_fpi/(c0 d^{-1/2} (d+nu)^{-4})) * ln(chi2_0/eps)";
      rec.d_exponent = 4.5;
      rec.eps_exponent = 0.0;
      rec.iterations = (1.0 + in.C_fpi / eta) * std::log(in.chi2_0 / in.eps);
      return rec;
    }
    case ComplexityScenario::implementable_nu_lt1: {
      if (!(in.nu < 1.0))
        throw std::invalid_argument(
            "complexity_table: implementable_nu_lt1 needs nu < 1");
      if (in.c_wfpi <= 0.0 || in.chi2_0 <= 0.0)
        throw std::invalid_argument(
            "complexity_table: implementable_nu_lt1 needs c_wfpi and chi2_0");
      const double eta =
          in.c0 * std::pow(d, -0.5) * std::pow(d + in.nu, -4.0 / in.nu);
      const double rinf = gaussian_init_rinf_bound(in.nu, in.d);
      rec.formula =
          "weak-FPI threshold at eta = c0 d^{-1/2} (d+nu)^{-4/nu}";
      rec.d_exponent = 0.5 + 4.0 / in.nu;
      rec.eps_exponent = -(1.0 - in.nu) / in.nu;
      rec.iterations = wfpi_iteration_threshold(in.c_wfpi, in.nu, eta, in.eps,
                                                in.chi2_0, rinf);
      return rec;
    }
    case ComplexityScenario::gaussian_lower: {
      rec.formula = "multiplier * d^{3/2} * eps^{-2/nu}";
      rec.d_exponent = 1.5;
      rec.eps_exponent = -2.0 / in.nu;
      rec.iterations =
          in.multiplier * std::pow(d, 1.5) * std::pow(in.eps, -2.0 / in.nu);
      return rec;
    }
  }
  throw std::invalid_argument("complexity_table: bad scenario");
}

}  // namespace htprox
