#pragma once

#include <cstddef>
#include <cstdint>

#include "htprox/rng.hpp"
#include "htprox/vec.hpp"

namespace htprox {

// isotropic alpha-stable law with characteristic function exp(-t |xi|^alpha)
struct StableSpec {
  double alpha = 1.0;  // in (0,2]
  double t = 1.0;      // > 0
  int dim = 1;
  void validate() const;
};

// positive S with E[exp(-lambda S)] = exp(-lambda^beta_prime), beta_prime in (0,1);
// Kanter's representation, evaluated in log space
double sample_one_sided_stable(double beta_prime, RngStream& rng);

// subordinated Gaussian draw; alpha=2 is the plain N(0, 2tI) case
Vec sample_isotropic_stable(const StableSpec& spec, RngStream& rng);

// t * Z1 / |z2| with Z1 a standard d-vector and z2 scalar; density proportional
// to (|y|^2 + t^2)^{-(d+1)/2}, the alpha=1 case of the family above
Vec sample_cauchy_vector(double t, int dim, RngStream& rng);

enum class MomentMode { analytic, monte_carlo };

// E|X|^p at unit time; `infinite` is an explicit tag, value/se are then unset
struct MomentValue {
  bool infinite = false;
  double value = 0.0;
  double se = 0.0;  // monte_carlo only
};

MomentValue stable_abs_moment(double alpha, double p, int dim, MomentMode mode,
                              std::size_t n = 1000000,
                              std::uint64_t seed = 7777);

}  // namespace htprox
