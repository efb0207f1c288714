#include "htprox/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace htprox {
namespace {

constexpr int kBootstrapReps = 200;

// shared categorical bootstrap over binned counts: resample n draws from the
// empirical cell distribution and recompute the statistic
double bootstrap_se(const std::vector<double>& phat, std::size_t n,
                    RngStream& rng,
                    const std::function<double(const std::vector<double>&)>&
                        statistic) {
  std::vector<double> cum(phat.size());
  std::partial_sum(phat.begin(), phat.end(), cum.begin());
  cum.back() = 1.0;
  std::vector<double> rep(phat.size());
  double s1 = 0.0;
  double s2 = 0.0;
  for (int b = 0; b < kBootstrapReps; ++b) {
    std::fill(rep.begin(), rep.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double u = rng.uniform01();
      const auto it = std::lower_bound(cum.begin(), cum.end(), u);
      rep[static_cast<std::size_t>(it - cum.begin())] += 1.0;
    }
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& c : rep) c *= inv;
    const double v = statistic(rep);
    s1 += v;
    s2 += v * v;
  }
  const double mean = s1 / kBootstrapReps;
  const double var = std::max(0.0, s2 / kBootstrapReps - mean * mean);
  // resample variance, scaled back up to an SE of the point estimate
  return std::sqrt(var * kBootstrapReps / (kBootstrapReps - 1.0));
}

}  // namespace

std::string to_string(DivergenceKind k) {
  switch (k) {
    case DivergenceKind::radial_tv: return "radial_tv";
    case DivergenceKind::hist_chi2: return "hist_chi2";
    case DivergenceKind::ks: return "ks";
  }
  return "?";
}

std::vector<double> radii_of(const std::vector<Vec>& samples) {
  std::vector<double> r;
  r.reserve(samples.size());
  for (const auto& x : samples) r.push_back(norm(x));
  return r;
}

DivergenceEstimate radial_tv_estimate(const std::vector<Vec>& samples,
                                      const GeneralizedCauchy& target,
                                      int bins, RngStream& bootstrap_rng) {
  const std::size_t n = samples.size();
  if (bins < 1) throw std::invalid_argument("radial_tv_estimate: bins >= 1");
  if (n < static_cast<std::size_t>(100 * bins))
    throw std::invalid_argument("radial_tv_estimate: need n >= 100 * bins");

  const double covered = 0.999;
  std::vector<double> edges(static_cast<std::size_t>(bins));
  for (int b = 1; b <= bins; ++b)
    edges[static_cast<std::size_t>(b - 1)] =
        target.radial_quantile(covered * b / bins);

  // cells: `bins` equal-probability interior cells plus the 0.001 tail
  std::vector<double> q(static_cast<std::size_t>(bins) + 1,
                        covered / bins);
  q.back() = 1.0 - covered;

  std::vector<double> phat(q.size(), 0.0);
  for (const auto& x : samples) {
    const double r = norm(x);
    const auto it = std::upper_bound(edges.begin(), edges.end(), r);
    phat[static_cast<std::size_t>(it - edges.begin())] += 1.0;
  }
  for (auto& p : phat) p /= static_cast<double>(n);

  auto tv_stat = [&q](const std::vector<double>& p) {
    double s = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) s += std::fabs(p[i] - q[i]);
    return 0.5 * s;
  };

  DivergenceEstimate est;
  est.kind = DivergenceKind::radial_tv;
  est.value = tv_stat(phat);
  est.n = n;
  est.bins = bins;
  est.se_proxy = bootstrap_se(phat, n, bootstrap_rng, tv_stat);
  return est;
}

DivergenceEstimate hist_chi2_estimate(const std::vector<Vec>& samples,
                                      const GeneralizedCauchy& target,
                                      int bins, RngStream& bootstrap_rng) {
  if (target.dim != 1)
    throw std::invalid_argument("chi-square proxy supported in d=1 only");
  const std::size_t n = samples.size();
  if (bins < 2) throw std::invalid_argument("hist_chi2_estimate: bins >= 2");
  if (n < static_cast<std::size_t>(100 * bins))
    throw std::invalid_argument("hist_chi2_estimate: need n >= 100 * bins");

  // signed quantile edges: F(x) = (1 + sgn(x) F_r(|x|)) / 2
  std::vector<double> edges(static_cast<std::size_t>(bins - 1));
  for (int b = 1; b < bins; ++b) {
    const double p = static_cast<double>(b) / bins;
    double e;
    if (p < 0.5) {
      e = -target.radial_quantile(1.0 - 2.0 * p);
    } else if (p > 0.5) {
      e = target.radial_quantile(2.0 * p - 1.0);
    } else {
      e = 0.0;
    }
    edges[static_cast<std::size_t>(b - 1)] = e;
  }

  const double qcell = 1.0 / bins;
  std::vector<double> phat(static_cast<std::size_t>(bins), 0.0);
  for (const auto& x : samples) {
    const auto it = std::upper_bound(edges.begin(), edges.end(), x[0]);
    phat[static_cast<std::size_t>(it - edges.begin())] += 1.0;
  }
  for (auto& p : phat) p /= static_cast<double>(n);

  auto chi2_stat = [qcell](const std::vector<double>& p) {
    double s = 0.0;
    for (const double pi : p) {
      const double dlt = pi - qcell;
      s += dlt * dlt / qcell;
    }
    return s;
  };

  DivergenceEstimate est;
  est.kind = DivergenceKind::hist_chi2;
  est.value = chi2_stat(phat);
  est.n = n;
  est.bins = bins;
  est.se_proxy = bootstrap_se(phat, n, bootstrap_rng, chi2_stat);
  return est;
}

double ks_statistic(std::vector<double> values,
                    const std::function<double(double)>& cdf) {
  if (values.empty()) throw std::invalid_argument("ks_statistic: empty sample");
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = cdf(values[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(f - static_cast<double>(i + 1) / n));
  }
  return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    if (a[i] <= b[j]) {
      ++i;
    } else {
      ++j;
    }
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }
  return d;
}

namespace {

// Kolmogorov critical coefficient c(level) = sqrt(-ln(level/2)/2)
double ks_coeff(double level) {
  if (!(level > 0.0 && level < 1.0))
    throw std::invalid_argument("ks critical: level must be in (0,1)");
  return std::sqrt(-0.5 * std::log(0.5 * level));
}

}  // namespace

double ks_one_sample_critical(std::size_t n, double level) {
  if (n == 0) throw std::invalid_argument("ks critical: n must be positive");
  return ks_coeff(level) / std::sqrt(static_cast<double>(n));
}

double ks_two_sample_critical(std::size_t n, std::size_t m, double level) {
  if (n == 0 || m == 0)
    throw std::invalid_argument("ks critical: n, m must be positive");
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return ks_coeff(level) * std::sqrt((nn + mm) / (nn * mm));
}

MomentTrack surrogate_moment_track(const ChainRun& run, double kappa,
                                   double nu2) {
  if (!(kappa > 0.0))
    throw std::invalid_argument("surrogate_moment_track: kappa must be positive");
  if (!(nu2 > 0.0))
    throw std::invalid_argument("surrogate_moment_track: nu2 must be positive");
  MomentTrack track;
  const int dim =
      run.batches.empty() || run.batches[0].empty()
          ? 1
          : static_cast<int>(run.batches[0][0].size());
  const double expo = 0.5 * kappa * (dim + nu2);
  for (std::size_t r = 0; r < run.record_at.size(); ++r) {
    const auto& batch = run.batches[r];
    const double n = static_cast<double>(batch.size());
    double m1 = 0.0, m2 = 0.0, m4 = 0.0;
    std::vector<double> g;
    g.reserve(batch.size());
    for (const auto& x : batch) {
      const double v = std::exp(expo * std::log1p(norm2(x)));
      g.push_back(v);
      m1 += v;
    }
    m1 /= n;
    for (const double v : g) {
      const double c = v - m1;
      m2 += c * c;
      m4 += c * c * c * c;
    }
    m2 /= n;
    m4 /= n;
    track.iterations.push_back(run.record_at[r]);
    track.mean.push_back(m1);
    track.se.push_back(std::sqrt(std::max(0.0, m2) / n));
    // in an infinite-variance regime the empirical kurtosis grows with n
    // instead of stabilizing; n/10 is the heuristic alarm line
    const double kurt = m2 > 0.0 ? m4 / (m2 * m2) : 0.0;
    track.unreliable.push_back(kurt > n / 10.0);
  }
  return track;
}

}  // namespace htprox
