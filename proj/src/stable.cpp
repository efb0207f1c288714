#include "htprox/stable.hpp"

#include <cmath>
#include <stdexcept>

namespace htprox {

void StableSpec::validate() const {
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw std::invalid_argument("StableSpec: alpha must be in (0,2]");
  if (!(t > 0.0)) throw std::invalid_argument("StableSpec: t must be positive");
  if (dim < 1) throw std::invalid_argument("StableSpec: dim must be >= 1");
}

double sample_one_sided_stable(double beta_prime, RngStream& rng) {
  if (!(beta_prime > 0.0 && beta_prime < 1.0))
    throw std::invalid_argument(
        "sample_one_sided_stable: beta_prime must be in (0,1)");
  const double b = beta_prime;
  const double u = kPi * rng.uniform01();
  const double e = -std::log(rng.uniform01());
  // ln A(u); the 1/(1-b) root and the final power both stay in log space so the
  // endpoints u -> 0, pi cannot overflow
  const double la = (b * std::log(std::sin(b * u)) +
                     (1.0 - b) * std::log(std::sin((1.0 - b) * u)) -
                     std::log(std::sin(u))) /
                    (1.0 - b);
  return std::exp(((1.0 - b) / b) * (la - std::log(e)));
}

Vec sample_isotropic_stable(const StableSpec& spec, RngStream& rng) {
  spec.validate();
  Vec x(static_cast<std::size_t>(spec.dim));
  if (spec.alpha == 2.0) {
    const double s = std::sqrt(2.0 * spec.t);
    for (auto& xi : x) xi = s * rng.normal();
    return x;
  }
  // mixing variable S makes the squared scale 2 t^{2/alpha} S, matching the
  // exp(-t|xi|^alpha) characteristic function
  const double S = sample_one_sided_stable(0.5 * spec.alpha, rng);
  const double s = std::pow(spec.t, 1.0 / spec.alpha) * std::sqrt(2.0 * S);
  for (auto& xi : x) xi = s * rng.normal();
  return x;
}

Vec sample_cauchy_vector(double t, int dim, RngStream& rng) {
  if (!(t > 0.0))
    throw std::invalid_argument("sample_cauchy_vector: t must be positive");
  if (dim < 1)
    throw std::invalid_argument("sample_cauchy_vector: dim must be >= 1");
  double z2 = rng.normal();
  while (z2 == 0.0) z2 = rng.normal();  // zero-measure event, redrawn
  const double s = t / std::fabs(z2);
  Vec x(static_cast<std::size_t>(dim));
  for (auto& xi : x) xi = s * rng.normal();
  return x;
}

MomentValue stable_abs_moment(double alpha, double p, int dim, MomentMode mode,
                              std::size_t n, std::uint64_t seed) {
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw std::invalid_argument("stable_abs_moment: alpha must be in (0,2]");
  if (!(p > 0.0))
    throw std::invalid_argument("stable_abs_moment: p must be positive");
  if (dim < 1) throw std::invalid_argument("stable_abs_moment: dim must be >= 1");
  if (alpha < 2.0 && p >= alpha) return MomentValue{true, 0.0, 0.0};

  const double d = static_cast<double>(dim);
  if (mode == MomentMode::analytic) {
    if (alpha == 2.0) {
      const double v = std::exp(p * std::log(2.0) + std::lgamma(0.5 * (d + p)) -
                                std::lgamma(0.5 * d));
      return MomentValue{false, v, 0.0};
    }
    if (alpha == 1.0) {
      const double v =
          std::exp(std::lgamma(0.5 * (d + p)) + std::lgamma(0.5 * (1.0 - p)) -
                   std::lgamma(0.5 * d) - std::lgamma(0.5));
      return MomentValue{false, v, 0.0};
    }
    throw std::domain_error("no closed form; use monte_carlo");
  }

  if (n < 2) throw std::invalid_argument("stable_abs_moment: n must be >= 2");
  RngStream rng(seed, kMomentStreamBase);
  const StableSpec spec{alpha, 1.0, dim};
  double s1 = 0.0;
  double s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec x = sample_isotropic_stable(spec, rng);
    const double v = std::pow(norm(x), p);
    s1 += v;
    s2 += v * v;
  }
  const double mean = s1 / static_cast<double>(n);
  const double var =
      std::max(0.0, s2 / static_cast<double>(n) - mean * mean);
  return MomentValue{false, mean, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace htprox
