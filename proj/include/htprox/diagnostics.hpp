#pragma once

#include <functional>
#include <string>
#include <vector>

#include "htprox/rng.hpp"
#include "htprox/samplers.hpp"
#include "htprox/targets.hpp"

namespace htprox {

enum class DivergenceKind { radial_tv, hist_chi2, ks };

std::string to_string(DivergenceKind k);

struct DivergenceEstimate {
  DivergenceKind kind = DivergenceKind::radial_tv;
  double value = 0.0;
  std::size_t n = 0;
  int bins = 0;
  double se_proxy = 0.0;
};

std::vector<double> radii_of(const std::vector<Vec>& samples);

// half the L1 gap between empirical and analytic masses over an
// equal-probability radial grid: `bins` interior cells up to the 0.999
// quantile plus one tail cell; se_proxy is a 200-resample bootstrap over the
// binned categorical counts; requires n >= 100 * bins
DivergenceEstimate radial_tv_estimate(const std::vector<Vec>& samples,
                                      const GeneralizedCauchy& target,
                                      int bins, RngStream& bootstrap_rng);

// chi-square surrogate over equal-probability cells of the signed line;
// d = 1 only; upward-biased by roughly bins/n
DivergenceEstimate hist_chi2_estimate(const std::vector<Vec>& samples,
                                      const GeneralizedCauchy& target,
                                      int bins, RngStream& bootstrap_rng);

double ks_statistic(std::vector<double> values,
                    const std::function<double(double)>& cdf);
double ks_two_sample(std::vector<double> a, std::vector<double> b);
double ks_one_sample_critical(std::size_t n, double level);
double ks_two_sample_critical(std::size_t n, std::size_t m, double level);

// empirical E[(1 + |x|^2)^{kappa (d + nu2)/2}] at each recorded iteration;
// `unreliable` flags batches whose empirical kurtosis indicates the estimator
// has effectively infinite variance
struct MomentTrack {
  std::vector<long> iterations;
  std::vector<double> mean;
  std::vector<double> se;
  std::vector<bool> unreliable;
};

MomentTrack surrogate_moment_track(const ChainRun& run, double kappa,
                                   double nu2);

}  // namespace htprox
