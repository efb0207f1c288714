#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

#include "htprox/rng.hpp"
#include "htprox/targets.hpp"

namespace htprox {

struct OracleOutcome {
  Vec sample;
  std::uint64_t rejections = 0;
  bool corrupted = false;  // set by the inexact wrapper only
};

inline constexpr std::uint64_t kDefaultOracleBudget = 10000000;
// proposals tried by the plain loop before the envelope stage takes over
inline constexpr std::uint64_t kDefaultSwitchAfter = 2000;

struct OracleBudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// restricted Gaussian oracle: law proportional to exp(-V(x)) exp(-|x-y|^2/(2 eta))
OracleOutcome rgo_sample(const TargetSpec& target, const Vec& y, double eta,
                         RngStream& rng,
                         std::uint64_t budget = kDefaultOracleBudget,
                         std::uint64_t switch_after = kDefaultSwitchAfter);

// restricted stable oracle: law proportional to exp(-V(x)) p^(alpha)(eta; x, y);
// alpha = 1 is the reference path with a closed-form kernel density
OracleOutcome raso_sample(const TargetSpec& target, const Vec& y, double eta,
                          double alpha, RngStream& rng,
                          std::uint64_t budget = kDefaultOracleBudget,
                          std::uint64_t switch_after = kDefaultSwitchAfter);

// acceptance exp(-V(x) + C_low) with C_low <= min V; identical output law,
// inflated rejection counts when C_low is loose
OracleOutcome raso_sample_lower_bounded(
    const TargetSpec& target, double C_low, const Vec& y, double eta,
    double alpha, RngStream& rng, std::uint64_t budget = kDefaultOracleBudget,
    std::uint64_t switch_after = kDefaultSwitchAfter);

using Oracle = std::function<OracleOutcome(const Vec& y, RngStream& rng)>;

// with probability eps_tv each call returns corruptor(y) flagged as corrupted;
// the conditional TV to the inner oracle is at most eps_tv by mixture
// construction; eps_tv = 0 forwards to inner without consuming randomness
Oracle inexact_oracle_wrapper(Oracle inner, double eps_tv, Oracle corruptor);

// default corruptors: the forward proposal with no accept step
Oracle gaussian_proposal_corruptor(double eta);
Oracle stable_proposal_corruptor(double eta, double alpha);

}  // namespace htprox
