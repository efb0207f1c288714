#pragma once

namespace htprox {

double lbeta(double a, double b);

// regularized incomplete beta I_x(a,b); a,b > 0, x in [0,1]
double reg_inc_beta(double a, double b, double x);

// inverse of x -> reg_inc_beta(a,b,x); bisection bracket plus Newton polish
double reg_inc_beta_inv(double a, double b, double p);

// Acklam's rational approximation, absolute error < 1.2e-9
double normal_quantile(double p);

// Wilson-Hilferty cube approximation; adequate for goodness-of-fit gates
double chi2_quantile(double df, double p);

}  // namespace htprox
