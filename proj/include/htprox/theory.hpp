#pragma once

#include <string>
#include <vector>

namespace htprox {

struct BoundQuery {
  double nu1 = 1.0;
  double nu2 = 1.0;
  int d = 1;
  double alpha = 1.0;  // stable evaluators
  double tau = 0.0;    // stable moment order, tau = kappa (d + nu2)
  double kappa = 1.0;  // Gaussian / Langevin evaluators
  double E_G0 = 1.0;   // initial surrogate moment, at least 1
  std::vector<double> y_grid;  // empty selects the default grid
};

std::vector<double> default_y_grid();
std::vector<double> log_spaced_grid(double lo, double hi, int points);

// max(1, 2/(d+nu2), nu2 (1+delta) / ((d+nu2) delta)); delta > 0
double kappa_delta(int d, double nu2, double delta);

// 2^{1-nu1/2} e^{-nu1} / ((1+nu1) Gamma(nu1/2))
double cauchy_tail_constant(double nu1);

double chi2_upper_bound(double C_fpi, double eta, long k, double chi2_0);
double inexact_tv_bound(double tv_0, long k, double eps_tv);
long iterations_to_eps(double C_fpi, double eta, double chi2_0, double eps);

// surrogate-moment growth (E_G0^{2/(kappa S)} + 2 kappa S t)^{kappa S / 2}
// with S = d + nu2; the discrete sampler evaluator delegates with t = 2 eta k
double ld_g(const BoundQuery& q, double t);
double gaussian_prox_g(const BoundQuery& q, long k, double eta);

double ld_tv_lower_bound(const BoundQuery& q, double t);
double gaussian_prox_tv_lower_bound(const BoundQuery& q, long k, double eta);

// E_{k+1} <= (1+r)^{tau/2} E_k + (1+1/r)^{tau/2} (2 eta)^{tau/alpha} m_tau
// iterated from E_G0 with r = 2/(tau k) at step k
double stable_moment_recursion(const BoundQuery& q, long k, double eta,
                               double m_tau);
double stable_prox_tv_lower_bound(const BoundQuery& q, long k, double eta,
                                  double m_tau);

double wfpi_chi2_bound(double c, double nu, double eta, long k, double r,
                       double chi2_0, double rinf_0);
double wfpi_iteration_threshold(double c, double nu, double eta, double eps,
                                double chi2_0, double rinf_0);
// ln R_infty for a standard Gaussian start against the nu-family
double gaussian_init_rinf_bound(double nu, int d);

enum class ComplexityScenario {
  ideal_fpi,
  implementable_nu_ge1,
  implementable_nu_lt1,
  gaussian_lower
};

struct ComplexityRecord {
  std::string formula;
  double d_exponent = 0.0;
  double eps_exponent = 0.0;
  double iterations = 0.0;
};

struct ComplexityInputs {
  int d = 1;
  double nu = 1.0;
  double eps = 0.1;
  double eta = 0.0;     // ideal_fpi only; <= 0 elsewhere means "use the preset"
  double C_fpi = -1.0;  // negative means not supplied
  double c_wfpi = -1.0;
  double chi2_0 = -1.0;
  double c0 = 1.0;
  double multiplier = 1.0;  // gaussian_lower scale constant
};

ComplexityRecord complexity_table(ComplexityScenario s,
                                  const ComplexityInputs& in);

}  // namespace htprox
