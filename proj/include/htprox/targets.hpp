#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "htprox/rng.hpp"
#include "htprox/vec.hpp"

namespace htprox {

// envelope data V - V* <= L |x - x*|^beta, used by the rejection step policy
struct HolderParams {
  double L = 0.0;
  double beta = 0.0;
};

struct FpiParams {
  double alpha = 1.0;
  double C = 0.0;  // user-supplied constant, no default exists
};

// normalized model available only for families with a closed-form partition
// function and an exact sampler; enables the far-tail oracle envelope stage
struct ExactTargetModel {
  double log_Z = 0.0;  // ln of the integral of exp(-V)
  std::function<Vec(RngStream&)> sample;
  bool radial_monotone = false;  // V is a nondecreasing function of |x|
};

struct TargetSpec {
  int dim = 1;
  std::function<double(const Vec&)> V;
  std::function<Vec(const Vec&)> gradV;
  Vec minimizer;
  double min_value = 0.0;
  std::optional<double> nu1;
  std::optional<double> nu2;
  std::optional<HolderParams> holder;
  std::optional<FpiParams> fpi;
  std::optional<double> wfpi_c;
  std::optional<ExactTargetModel> exact_model;
};

// density proportional to (1 + |x|^2)^{-(d+nu)/2}; V(0) = 0 at the minimizer
struct GeneralizedCauchy {
  int dim = 1;
  double nu = 1.0;

  double V(const Vec& x) const;
  Vec grad(const Vec& x) const;
  double radial_cdf(double R) const;  // P(|X| <= R)
  double radial_quantile(double p) const;
  double log_partition() const;  // ln of the integral of exp(-V)
  TargetSpec as_target_spec() const;
};

double cauchy_radial_cdf(const GeneralizedCauchy& target, double R);

// closed-form lower bound on P(|X| > R * sqrt(d)) shapes; C_{nu1} d^{nu1/2}
// (1 + R^{-2})^{-(d+nu2)/2} R^{-nu2} with C_{nu1} = 2^{1-nu1/2} e^{-nu1} /
// ((1+nu1) Gamma(nu1/2))
double cauchy_tail_lower_bound(double nu1, double nu2, int d, double R);

std::vector<Vec> sample_exact(const GeneralizedCauchy& target, std::size_t n,
                              RngStream& rng);

// uniform unit vector
Vec random_direction(int dim, RngStream& rng);

// V identically zero; composite-law and oracle tests only, not normalizable
TargetSpec flat_potential(int dim);

}  // namespace htprox
