#include "htprox/targets.hpp"

#include <cmath>
#include <stdexcept>

#include "htprox/special.hpp"

namespace htprox {
namespace {

void check_params(int dim, double nu) {
  if (dim < 1) throw std::invalid_argument("GeneralizedCauchy: dim must be >= 1");
  if (!(nu > 0.0))
    throw std::invalid_argument("GeneralizedCauchy: nu must be positive");
}

}  // namespace

double GeneralizedCauchy::V(const Vec& x) const {
  return 0.5 * (dim + nu) * std::log1p(norm2(x));
}

Vec GeneralizedCauchy::grad(const Vec& x) const {
  const double c = (dim + nu) / (1.0 + norm2(x));
  Vec g(x);
  for (auto& gi : g) gi *= c;
  return g;
}

double GeneralizedCauchy::radial_cdf(double R) const {
  check_params(dim, nu);
  if (R <= 0.0) return 0.0;
  if (!std::isfinite(R)) return 1.0;
  // substituting u = 1/(1+r^2) turns the radial integral into a Beta(nu/2, d/2)
  // tail, so the CDF is one minus a regularized incomplete beta
  const double u = 1.0 / (1.0 + R * R);
  return 1.0 - reg_inc_beta(0.5 * nu, 0.5 * dim, u);
}

double GeneralizedCauchy::radial_quantile(double p) const {
  check_params(dim, nu);
  if (!(p >= 0.0 && p < 1.0))
    throw std::invalid_argument("radial_quantile: p must be in [0,1)");
  if (p == 0.0) return 0.0;
  const double u = reg_inc_beta_inv(0.5 * nu, 0.5 * dim, 1.0 - p);
  if (!(u > 0.0)) throw std::runtime_error("radial_quantile: inversion failed");
  return std::sqrt(std::max(0.0, 1.0 / u - 1.0));
}

double GeneralizedCauchy::log_partition() const {
  check_params(dim, nu);
  return 0.5 * dim * std::log(kPi) + std::lgamma(0.5 * nu) -
         std::lgamma(0.5 * (dim + nu));
}

TargetSpec GeneralizedCauchy::as_target_spec() const {
  check_params(dim, nu);
  const GeneralizedCauchy self = *this;
  TargetSpec t;
  t.dim = dim;
  t.V = [self](const Vec& x) { return self.V(x); };
  t.gradV = [self](const Vec& x) { return self.grad(x); };
  t.minimizer = Vec(static_cast<std::size_t>(dim), 0.0);
  t.min_value = 0.0;
  t.nu1 = nu;
  t.nu2 = nu;
  if (nu >= 1.0) {
    t.holder = HolderParams{4.0 * (dim + nu), 0.25};
  } else {
    // 2 (d+nu)/nu dominates the sharp envelope constant (4/e)(d+nu)/nu, so
    // the inequality holds at every radius, not just away from e^{4/nu}
    t.holder = HolderParams{2.0 * (dim + nu) / nu, 0.25 * nu};
  }
  ExactTargetModel model;
  model.log_Z = log_partition();
  model.radial_monotone = true;
  model.sample = [self](RngStream& rng) {
    const double r = self.radial_quantile(rng.uniform01());
    Vec x = random_direction(self.dim, rng);
    for (auto& xi : x) xi *= r;
    return x;
  };
  t.exact_model = std::move(model);
  return t;
}

double cauchy_radial_cdf(const GeneralizedCauchy& target, double R) {
  return target.radial_cdf(R);
}

double cauchy_tail_lower_bound(double nu1, double nu2, int d, double R) {
  if (!(R > 0.0))
    throw std::invalid_argument("cauchy_tail_lower_bound: R must be positive");
  if (!(nu1 >= 0.0) || !(nu2 >= nu1))
    throw std::invalid_argument(
        "cauchy_tail_lower_bound: need 0 <= nu1 <= nu2");
  if (d < 1)
    throw std::invalid_argument("cauchy_tail_lower_bound: d must be >= 1");
  if (nu1 == 0.0) return 0.0;  // Gamma(0) limit: the constant degenerates
  const double lc = (1.0 - 0.5 * nu1) * std::log(2.0) - nu1 -
                    std::log1p(nu1) - std::lgamma(0.5 * nu1);
  const double lv = lc + 0.5 * nu1 * std::log(static_cast<double>(d)) -
                    0.5 * (d + nu2) * std::log1p(1.0 / (R * R)) -
                    nu2 * std::log(R);
  return std::exp(lv);
}

Vec random_direction(int dim, RngStream& rng) {
  if (dim < 1) throw std::invalid_argument("random_direction: dim must be >= 1");
  Vec u(static_cast<std::size_t>(dim));
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (auto& ui : u) {
      ui = rng.normal();
      n2 += ui * ui;
    }
  } while (n2 == 0.0);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& ui : u) ui *= inv;
  return u;
}

std::vector<Vec> sample_exact(const GeneralizedCauchy& target, std::size_t n,
                              RngStream& rng) {
  check_params(target.dim, target.nu);
  if (n < 1) throw std::invalid_argument("sample_exact: n must be >= 1");
  std::vector<Vec> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = target.radial_quantile(rng.uniform01());
    Vec x = random_direction(target.dim, rng);
    for (auto& xi : x) xi *= r;
    out.push_back(std::move(x));
  }
  return out;
}

TargetSpec flat_potential(int dim) {
  if (dim < 1) throw std::invalid_argument("flat_potential: dim must be >= 1");
  TargetSpec t;
  t.dim = dim;
  t.V = [](const Vec&) { return 0.0; };
  t.gradV = [dim](const Vec&) {
    return Vec(static_cast<std::size_t>(dim), 0.0);
  };
  t.minimizer = Vec(static_cast<std::size_t>(dim), 0.0);
  t.min_value = 0.0;
  return t;
}

}  // namespace htprox
