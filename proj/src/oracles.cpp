#include "htprox/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "htprox/stable.hpp"

namespace htprox {
namespace {

struct KernelModel {
  // draws x = y + noise
  std::function<void(const Vec& y, Vec& x, RngStream& rng)> draw;
  // log of the normalized forward density as a function of |x - y|;
  // absent for stable kernels without a closed form
  std::function<double(double)> logdens_r;
};

KernelModel gaussian_kernel(double var, int dim) {
  KernelModel k;
  const double s = std::sqrt(var);
  k.draw = [s](const Vec& y, Vec& x, RngStream& rng) {
    x.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i] + s * rng.normal();
  };
  const double lnorm = -0.5 * dim * std::log(2.0 * kPi * var);
  k.logdens_r = [var, lnorm](double dist) {
    return lnorm - 0.5 * dist * dist / var;
  };
  return k;
}

KernelModel cauchy_kernel(double t, int dim) {
  KernelModel k;
  k.draw = [t](const Vec& y, Vec& x, RngStream& rng) {
    double z2 = rng.normal();
    while (z2 == 0.0) z2 = rng.normal();
    const double s = t / std::fabs(z2);
    x.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i] + s * rng.normal();
  };
  const double lc = std::lgamma(0.5 * (dim + 1)) -
                    0.5 * (dim + 1) * std::log(kPi) + std::log(t);
  k.logdens_r = [t, dim, lc](double dist) {
    return lc - 0.5 * (dim + 1) * std::log(dist * dist + t * t);
  };
  return k;
}

KernelModel stable_kernel(double alpha, double t, int dim) {
  KernelModel k;
  const StableSpec spec{alpha, t, dim};
  k.draw = [spec](const Vec& y, Vec& x, RngStream& rng) {
    const Vec z = sample_isotropic_stable(spec, rng);
    x.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) x[i] = y[i] + z[i];
  };
  return k;
}

double logsumexp2(double a, double b) {
  const double m = std::max(a, b);
  if (!std::isfinite(m)) return m;
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

// certified upper bound on sup_x f/q for the mixture stage, where
// f = exp(-(V - offset)) kern(x-y), q = (kern(.-y) + pi_tilde)/2,
// via the two pointwise bounds A = 2 exp(-(V - offset)) (radially
// nonincreasing) and B = 2 exp(offset) Z kern(x-y) (nondecreasing toward y
// on the axis); the sup of min(A,B) is certified from the bisection bracket
double ln_envelope_bound(const TargetSpec& target, double offset,
                         const KernelModel& kernel, const Vec& y) {
  const double y_norm = norm(y);
  Vec dir(y.size(), 0.0);
  if (y_norm > 0.0) {
    for (std::size_t i = 0; i < y.size(); ++i) dir[i] = y[i] / y_norm;
  } else {
    dir[0] = 1.0;
  }
  Vec probe(y.size());
  const double ln2 = std::log(2.0);
  auto lnA = [&](double r) {
    for (std::size_t i = 0; i < y.size(); ++i) probe[i] = dir[i] * r;
    return ln2 - (target.V(probe) - offset);
  };
  auto lnB = [&](double r) {
    return ln2 + offset + target.exact_model->log_Z +
           kernel.logdens_r(y_norm - r);
  };
  double lo = 0.0;
  double hi = y_norm;
  if (lnA(lo) <= lnB(lo)) return lnA(lo);
  if (lnA(hi) >= lnB(hi)) return lnB(hi);
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (lnA(mid) > lnB(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::min(lnA(lo), lnB(hi));
}

// Stage one is the plain loop: propose from the forward kernel, accept with
// exp(-(V(x) - offset)). If it is still rejecting after switch_after
// proposals, and the target carries an exact normalized model plus the kernel
// has a closed-form density, later rounds use mixture-envelope rejection.
// Every accepted round from either stage has exactly the conditional law, so
// switching strategies across rounds cannot bias the draw.
OracleOutcome oracle_rejection(const TargetSpec& target, double offset,
                               const KernelModel& kernel, const Vec& y,
                               RngStream& rng, std::uint64_t budget,
                               std::uint64_t switch_after) {
  OracleOutcome out;
  Vec x;
  std::uint64_t trial = 0;
  const std::uint64_t plain_until = std::min(budget, switch_after);
  for (; trial < plain_until; ++trial) {
    kernel.draw(y, x, rng);
    if (std::log(rng.uniform01()) <= -(target.V(x) - offset)) {
      out.sample = std::move(x);
      out.rejections = trial;
      return out;
    }
  }
  const bool envelope_ok = kernel.logdens_r && target.exact_model &&
                           target.exact_model->radial_monotone &&
                           target.exact_model->sample;
  if (!envelope_ok) {
    for (; trial < budget; ++trial) {
      kernel.draw(y, x, rng);
      if (std::log(rng.uniform01()) <= -(target.V(x) - offset)) {
        out.sample = std::move(x);
        out.rejections = trial;
        return out;
      }
    }
    throw OracleBudgetError(
        "oracle nonterminating; reduce eta (see step_size_policy)");
  }
  const double lnM = ln_envelope_bound(target, offset, kernel, y);
  const double log_Z = target.exact_model->log_Z;
  Vec diff(y.size());
  for (; trial < budget; ++trial) {
    if (rng.uniform01() < 0.5) {
      kernel.draw(y, x, rng);
    } else {
      x = target.exact_model->sample(rng);
    }
    for (std::size_t i = 0; i < y.size(); ++i) diff[i] = x[i] - y[i];
    const double lkern = kernel.logdens_r(norm(diff));
    const double v = target.V(x);
    const double lnf = -(v - offset) + lkern;
    const double lnq = logsumexp2(lkern, -v - log_Z) - std::log(2.0);
    const double ln_acc = std::min(0.0, lnf - lnM - lnq);
    if (std::log(rng.uniform01()) <= ln_acc) {
      out.sample = std::move(x);
      out.rejections = trial;
      return out;
    }
  }
  throw OracleBudgetError(
      "oracle nonterminating; reduce eta (see step_size_policy)");
}

void check_call(const TargetSpec& target, const Vec& y, double eta,
                const char* who) {
  if (!(eta > 0.0))
    throw std::invalid_argument(std::string(who) + ": eta must be positive");
  if (static_cast<int>(y.size()) != target.dim)
    throw std::invalid_argument(std::string(who) + ": y has wrong dimension");
  if (!target.V)
    throw std::invalid_argument(std::string(who) + ": target has no potential");
}

KernelModel raso_kernel(double eta, double alpha, int dim) {
  if (!(alpha > 0.0 && alpha <= 2.0))
    throw std::invalid_argument("raso: alpha must be in (0,2]");
  if (alpha == 1.0) return cauchy_kernel(eta, dim);
  if (alpha == 2.0) return gaussian_kernel(2.0 * eta, dim);
  return stable_kernel(alpha, eta, dim);
}

}  // namespace

OracleOutcome rgo_sample(const TargetSpec& target, const Vec& y, double eta,
                         RngStream& rng, std::uint64_t budget,
                         std::uint64_t switch_after) {
  check_call(target, y, eta, "rgo_sample");
  return oracle_rejection(target, target.min_value,
                          gaussian_kernel(eta, target.dim), y, rng, budget,
                          switch_after);
}

OracleOutcome raso_sample(const TargetSpec& target, const Vec& y, double eta,
                          double alpha, RngStream& rng, std::uint64_t budget,
                          std::uint64_t switch_after) {
  check_call(target, y, eta, "raso_sample");
  return oracle_rejection(target, target.min_value,
                          raso_kernel(eta, alpha, target.dim), y, rng, budget,
                          switch_after);
}

OracleOutcome raso_sample_lower_bounded(const TargetSpec& target, double C_low,
                                        const Vec& y, double eta, double alpha,
                                        RngStream& rng, std::uint64_t budget,
                                        std::uint64_t switch_after) {
  check_call(target, y, eta, "raso_sample_lower_bounded");
  if (C_low > target.min_value)
    throw std::invalid_argument(
        "raso_sample_lower_bounded: C_low must not exceed min V");
  return oracle_rejection(target, C_low, raso_kernel(eta, alpha, target.dim),
                          y, rng, budget, switch_after);
}

Oracle inexact_oracle_wrapper(Oracle inner, double eps_tv, Oracle corruptor) {
  if (!(eps_tv >= 0.0 && eps_tv <= 1.0))
    throw std::invalid_argument(
        "inexact_oracle_wrapper: eps_tv must be in [0,1]");
  if (!inner) throw std::invalid_argument("inexact_oracle_wrapper: no inner");
  if (eps_tv > 0.0 && !corruptor)
    throw std::invalid_argument("inexact_oracle_wrapper: no corruptor");
  return [inner = std::move(inner), corruptor = std::move(corruptor),
          eps_tv](const Vec& y, RngStream& rng) {
    if (eps_tv > 0.0 && rng.uniform01() < eps_tv) {
      OracleOutcome out = corruptor(y, rng);
      out.corrupted = true;
      return out;
    }
    return inner(y, rng);
  };
}

Oracle gaussian_proposal_corruptor(double eta) {
  if (!(eta > 0.0))
    throw std::invalid_argument(
        "gaussian_proposal_corruptor: eta must be positive");
  const double s = std::sqrt(eta);
  return [s](const Vec& y, RngStream& rng) {
    OracleOutcome out;
    out.sample.resize(y.size());
    for (std::size_t i = 0; i < y.size(); ++i)
      out.sample[i] = y[i] + s * rng.normal();
    return out;
  };
}

Oracle stable_proposal_corruptor(double eta, double alpha) {
  if (!(eta > 0.0))
    throw std::invalid_argument(
        "stable_proposal_corruptor: eta must be positive");
  return [eta, alpha](const Vec& y, RngStream& rng) {
    const KernelModel k = raso_kernel(eta, alpha, static_cast<int>(y.size()));
    OracleOutcome out;
    k.draw(y, out.sample, rng);
    return out;
  };
}

}  // namespace htprox
