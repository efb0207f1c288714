#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "htprox/oracles.hpp"
#include "htprox/targets.hpp"

namespace htprox {

enum class SamplerKind { ula, gaussian_proximal, stable_proximal };
enum class InitKind { point_mass, standard_gaussian, exact_target };

SamplerKind sampler_kind_from_string(const std::string& s);
std::string to_string(SamplerKind k);
InitKind init_kind_from_string(const std::string& s);
std::string to_string(InitKind k);

struct SamplerConfig {
  SamplerKind kind = SamplerKind::stable_proximal;
  double eta = 0.0;
  double alpha = 1.0;  // stable_proximal only
  long iterations = 0;
  int chains = 1;
  InitKind init = InitKind::standard_gaussian;
  Vec x0;  // point_mass location; origin when empty
  std::uint64_t seed = 1;
  std::uint64_t oracle_budget = kDefaultOracleBudget;
  std::uint64_t oracle_switch_after = kDefaultSwitchAfter;
  double eps_tv = 0.0;  // > 0 routes oracle calls through the inexact wrapper
  int threads = 0;      // 0 means hardware concurrency
  void validate() const;
};

struct StepResult {
  Vec y;
  Vec x;
  std::uint64_t rejections = 0;
};

StepResult step_gaussian_proximal(const TargetSpec& target, const Vec& x_k,
                                  double eta, RngStream& rng,
                                  std::uint64_t budget = kDefaultOracleBudget,
                                  std::uint64_t switch_after = kDefaultSwitchAfter);
StepResult step_stable_proximal(const TargetSpec& target, const Vec& x_k,
                                double eta, double alpha, RngStream& rng,
                                std::uint64_t budget = kDefaultOracleBudget,
                                std::uint64_t switch_after = kDefaultSwitchAfter);
Vec step_ula(const TargetSpec& target, const Vec& x_k, double eta,
             RngStream& rng);

// preset step sizes; the order constants are open, c0 scales them directly
double step_size_policy(const TargetSpec& target, SamplerKind kind,
                        double c0 = 1.0);
// d^{-1/2} L^{-1/beta} from the Holder data keeps expected rejections O(1)
// at moderate |y|
double holder_step_size(const TargetSpec& target, double c0 = 1.0);

struct ChainRun {
  SamplerConfig config;
  std::vector<long> record_at;
  // batches[r][c] is chain c at iteration record_at[r]
  std::vector<std::vector<Vec>> batches;
  // oracle rejections summed over chains, one slot per iteration 1..N
  std::vector<std::uint64_t> rejections;
  double wall_ms_per_iteration = 0.0;

  double mean_rejections_at(long k) const;
};

ChainRun run_chains(const SamplerConfig& config, const TargetSpec& target,
                    std::vector<long> record_at);

}  // namespace htprox
