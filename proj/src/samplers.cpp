#include "htprox/samplers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "htprox/stable.hpp"

namespace htprox {

SamplerKind sampler_kind_from_string(const std::string& s) {
  if (s == "ula") return SamplerKind::ula;
  if (s == "gaussian_proximal") return SamplerKind::gaussian_proximal;
  if (s == "stable_proximal") return SamplerKind::stable_proximal;
  throw std::invalid_argument("unknown sampler kind: " + s);
}

std::string to_string(SamplerKind k) {
  switch (k) {
    case SamplerKind::ula: return "ula";
    case SamplerKind::gaussian_proximal: return "gaussian_proximal";
    case SamplerKind::stable_proximal: return "stable_proximal";
  }
  return "?";
}

InitKind init_kind_from_string(const std::string& s) {
  if (s == "point_mass") return InitKind::point_mass;
  if (s == "standard_gaussian") return InitKind::standard_gaussian;
  if (s == "exact_target") return InitKind::exact_target;
  throw std::invalid_argument("unknown init kind: " + s);
}

std::string to_string(InitKind k) {
  switch (k) {
    case InitKind::point_mass: return "point_mass";
    case InitKind::standard_gaussian: return "standard_gaussian";
    case InitKind::exact_target: return "exact_target";
  }
  return "?";
}

void SamplerConfig::validate() const {
  if (!(eta > 0.0))
    throw std::invalid_argument("SamplerConfig: eta must be positive");
  if (kind == SamplerKind::stable_proximal && !(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument(
        "SamplerConfig: stable_proximal needs alpha in (0,2)");
  if (iterations < 0)
    throw std::invalid_argument("SamplerConfig: iterations must be >= 0");
  if (chains < 1)
    throw std::invalid_argument("SamplerConfig: chains must be >= 1");
  if (!(eps_tv >= 0.0 && eps_tv <= 1.0))
    throw std::invalid_argument("SamplerConfig: eps_tv must be in [0,1]");
  if (threads < 0)
    throw std::invalid_argument("SamplerConfig: threads must be >= 0");
}

StepResult step_gaussian_proximal(const TargetSpec& target, const Vec& x_k,
                                  double eta, RngStream& rng,
                                  std::uint64_t budget,
                                  std::uint64_t switch_after) {
  StepResult r;
  const double s = std::sqrt(eta);
  r.y.resize(x_k.size());
  for (std::size_t i = 0; i < x_k.size(); ++i) r.y[i] = x_k[i] + s * rng.normal();
  OracleOutcome o = rgo_sample(target, r.y, eta, rng, budget, switch_after);
  r.x = std::move(o.sample);
  r.rejections = o.rejections;
  return r;
}

StepResult step_stable_proximal(const TargetSpec& target, const Vec& x_k,
                                double eta, double alpha, RngStream& rng,
                                std::uint64_t budget,
                                std::uint64_t switch_after) {
  StepResult r;
  if (alpha == 1.0) {
    double z2 = rng.normal();
    while (z2 == 0.0) z2 = rng.normal();
    const double s = eta / std::fabs(z2);
    r.y.resize(x_k.size());
    for (std::size_t i = 0; i < x_k.size(); ++i)
      r.y[i] = x_k[i] + s * rng.normal();
  } else {
    const StableSpec spec{alpha, eta, static_cast<int>(x_k.size())};
    const Vec z = sample_isotropic_stable(spec, rng);
    r.y.resize(x_k.size());
    for (std::size_t i = 0; i < x_k.size(); ++i) r.y[i] = x_k[i] + z[i];
  }
  OracleOutcome o = raso_sample(target, r.y, eta, alpha, rng, budget,
                                switch_after);
  r.x = std::move(o.sample);
  r.rejections = o.rejections;
  return r;
}

Vec step_ula(const TargetSpec& target, const Vec& x_k, double eta,
             RngStream& rng) {
  const Vec g = target.gradV(x_k);
  const double s = std::sqrt(2.0 * eta);
  Vec x(x_k.size());
  for (std::size_t i = 0; i < x_k.size(); ++i)
    x[i] = x_k[i] - eta * g[i] + s * rng.normal();
  return x;
}

double step_size_policy(const TargetSpec& target, SamplerKind kind, double c0) {
  if (!(c0 > 0.0))
    throw std::invalid_argument("step_size_policy: c0 must be positive");
  const double d = static_cast<double>(target.dim);
  switch (kind) {
    case SamplerKind::gaussian_proximal: {
      if (!target.nu1)
        throw std::invalid_argument("supply (L, beta) or eta explicitly");
      const double L = d + *target.nu1;  // gradient Lipschitz bound for the family
      return c0 / (L * std::sqrt(d));
    }
    case SamplerKind::stable_proximal: {
      if (!target.nu1)
        throw std::invalid_argument("supply (L, beta) or eta explicitly");
      const double nu = *target.nu1;
      const double expo = (nu >= 1.0) ? 4.0 : 4.0 / nu;
      return c0 * std::pow(d, -0.5) * std::pow(d + nu, -expo);
    }
    case SamplerKind::ula:
      throw std::invalid_argument("no step preset for ula; set eta explicitly");
  }
  throw std::invalid_argument("step_size_policy: bad kind");
}

double holder_step_size(const TargetSpec& target, double c0) {
  if (!(c0 > 0.0))
    throw std::invalid_argument("holder_step_size: c0 must be positive");
  if (!target.holder)
    throw std::invalid_argument("supply (L, beta) or eta explicitly");
  const double d = static_cast<double>(target.dim);
  return c0 * std::pow(d, -0.5) *
         std::pow(target.holder->L, -1.0 / target.holder->beta);
}

double ChainRun::mean_rejections_at(long k) const {
  if (k <= 0 || config.chains < 1) return 0.0;
  const std::size_t idx = static_cast<std::size_t>(k - 1);
  if (idx >= rejections.size()) return 0.0;
  return static_cast<double>(rejections[idx]) /
         static_cast<double>(config.chains);
}

namespace {

Vec draw_init(const SamplerConfig& config, const TargetSpec& target,
              RngStream& rng) {
  switch (config.init) {
    case InitKind::point_mass: {
      if (config.x0.empty()) return Vec(static_cast<std::size_t>(target.dim), 0.0);
      if (static_cast<int>(config.x0.size()) != target.dim)
        throw std::invalid_argument("run_chains: x0 has wrong dimension");
      return config.x0;
    }
    case InitKind::standard_gaussian: {
      Vec x(static_cast<std::size_t>(target.dim));
      for (auto& xi : x) xi = rng.normal();
      return x;
    }
    case InitKind::exact_target: {
      if (!target.exact_model || !target.exact_model->sample)
        throw std::invalid_argument(
            "run_chains: exact_target init needs an exact target model");
      return target.exact_model->sample(rng);
    }
  }
  throw std::invalid_argument("run_chains: bad init kind");
}

}  // namespace

ChainRun run_chains(const SamplerConfig& config, const TargetSpec& target,
                    std::vector<long> record_at) {
  config.validate();
  std::sort(record_at.begin(), record_at.end());
  record_at.erase(std::unique(record_at.begin(), record_at.end()),
                  record_at.end());
  if (!record_at.empty() &&
      (record_at.front() < 0 || record_at.back() > config.iterations))
    throw std::invalid_argument(
        "run_chains: record_at entries must lie in [0, iterations]");

  ChainRun run;
  run.config = config;
  run.record_at = record_at;
  run.batches.assign(record_at.size(),
                     std::vector<Vec>(static_cast<std::size_t>(config.chains)));
  run.rejections.assign(static_cast<std::size_t>(config.iterations), 0);

  Oracle wrapped;  // built per-kind once; thread-safe because it only closes
                   // over immutable state and uses the caller's stream
  if (config.eps_tv > 0.0) {
    if (config.kind == SamplerKind::gaussian_proximal) {
      wrapped = inexact_oracle_wrapper(
          [&target, &config](const Vec& y, RngStream& r) {
            return rgo_sample(target, y, config.eta, r, config.oracle_budget,
                              config.oracle_switch_after);
          },
          config.eps_tv, gaussian_proposal_corruptor(config.eta));
    } else if (config.kind == SamplerKind::stable_proximal) {
      wrapped = inexact_oracle_wrapper(
          [&target, &config](const Vec& y, RngStream& r) {
            return raso_sample(target, y, config.eta, config.alpha, r,
                               config.oracle_budget,
                               config.oracle_switch_after);
          },
          config.eps_tv, stable_proposal_corruptor(config.eta, config.alpha));
    }
  }

  const int n_threads_raw = config.threads > 0
                                ? config.threads
                                : static_cast<int>(
                                      std::thread::hardware_concurrency());
  const int n_threads =
      std::max(1, std::min(n_threads_raw, config.chains));

  std::mutex fail_mutex;
  std::exception_ptr failure;

  auto worker = [&](int first_chain, int stride) {
    try {
      std::vector<std::uint64_t> local_rej(
          static_cast<std::size_t>(config.iterations), 0);
      for (int c = first_chain; c < config.chains; c += stride) {
        RngStream rng(config.seed, static_cast<std::uint64_t>(c));
        Vec x = draw_init(config, target, rng);
        std::size_t next_rec = 0;
        while (next_rec < record_at.size() && record_at[next_rec] == 0) {
          run.batches[next_rec][static_cast<std::size_t>(c)] = x;
          ++next_rec;
        }
        for (long k = 1; k <= config.iterations; ++k) {
          std::uint64_t rej = 0;
          switch (config.kind) {
            case SamplerKind::ula:
              x = step_ula(target, x, config.eta, rng);
              break;
            case SamplerKind::gaussian_proximal: {
              if (wrapped) {
                const double s = std::sqrt(config.eta);
                Vec y(x.size());
                for (std::size_t i = 0; i < x.size(); ++i)
                  y[i] = x[i] + s * rng.normal();
                OracleOutcome o = wrapped(y, rng);
                x = std::move(o.sample);
                rej = o.rejections;
              } else {
                StepResult r = step_gaussian_proximal(
                    target, x, config.eta, rng, config.oracle_budget,
                    config.oracle_switch_after);
                x = std::move(r.x);
                rej = r.rejections;
              }
              break;
            }
            case SamplerKind::stable_proximal: {
              if (wrapped) {
                double z2 = rng.normal();
                while (z2 == 0.0) z2 = rng.normal();
                Vec y(x.size());
                if (config.alpha == 1.0) {
                  const double s = config.eta / std::fabs(z2);
                  for (std::size_t i = 0; i < x.size(); ++i)
                    y[i] = x[i] + s * rng.normal();
                } else {
                  const StableSpec spec{config.alpha, config.eta, target.dim};
                  const Vec z = sample_isotropic_stable(spec, rng);
                  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + z[i];
                }
                OracleOutcome o = wrapped(y, rng);
                x = std::move(o.sample);
                rej = o.rejections;
              } else {
                StepResult r = step_stable_proximal(
                    target, x, config.eta, config.alpha, rng,
                    config.oracle_budget, config.oracle_switch_after);
                x = std::move(r.x);
                rej = r.rejections;
              }
              break;
            }
          }
          local_rej[static_cast<std::size_t>(k - 1)] += rej;
          while (next_rec < record_at.size() && record_at[next_rec] == k) {
            run.batches[next_rec][static_cast<std::size_t>(c)] = x;
            ++next_rec;
          }
        }
      }
      std::lock_guard<std::mutex> lock(fail_mutex);
      for (std::size_t i = 0; i < local_rej.size(); ++i)
        run.rejections[i] += local_rej[i];
    } catch (...) {
      std::lock_guard<std::mutex> lock(fail_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  const auto t0 = std::chrono::steady_clock::now();
  if (n_threads == 1) {
    worker(0, 1);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker, t, n_threads);
    for (auto& th : pool) th.join();
  }
  const auto t1 = std::chrono::steady_clock::now();
  if (failure) std::rethrow_exception(failure);

  const double total_ms =
      std::chrono::duration<double, std::milli>(t1 - t0).count();
  run.wall_ms_per_iteration =
      total_ms / static_cast<double>(std::max<long>(1, config.iterations));
  return run;
}

}  // namespace htprox
