// Release gate: each criterion prints exactly one PASS/FAIL line with its
// pinned tolerance; the process exits nonzero when any requested criterion
// fails. Criteria 5, 6 and 10 share one separation run.

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "htprox/diagnostics.hpp"
#include "htprox/experiments.hpp"
#include "htprox/oracles.hpp"
#include "htprox/samplers.hpp"
#include "htprox/stable.hpp"
#include "htprox/targets.hpp"
#include "htprox/theory.hpp"
#include "htprox/vec.hpp"

using namespace htprox;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof(buf), f, ap);
  va_end(ap);
  return buf;
}

// --------------------------------------------------------------------------
// 1: generator law against the characteristic function

Outcome criterion1() {
  const double freqs[5] = {0.25, 0.5, 1.0, 2.0, 4.0};
  const std::size_t n = 1000000;
  const double limit = 4.0 / std::sqrt(static_cast<double>(n));
  double worst = 0.0;
  int cfg_idx = 0;
  for (const double alpha : {0.5, 1.0, 1.5, 2.0}) {
    for (const int d : {1, 3}) {
      for (const double t : {0.5, 2.0}) {
        RngStream rng(9001, static_cast<std::uint64_t>(cfg_idx++));
        StableSpec spec{alpha, t, d};
        double sums[5] = {0, 0, 0, 0, 0};
        for (std::size_t i = 0; i < n; ++i) {
          const Vec x = sample_isotropic_stable(spec, rng);
          for (int j = 0; j < 5; ++j) sums[j] += std::cos(freqs[j] * x[0]);
        }
        for (int j = 0; j < 5; ++j) {
          const double emp = sums[j] / static_cast<double>(n);
          const double exact = std::exp(-t * std::pow(freqs[j], alpha));
          worst = std::max(worst, std::fabs(emp - exact));
        }
      }
    }
  }
  return {worst <= limit,
          fmt("stable generator charfn: worst |emp-exact| %.4g over 16 "
              "configs x 5 freqs (limit %.4g, n=1e6)",
              worst, limit)};
}

// --------------------------------------------------------------------------
// 2: two alpha=1 constructions agree; fractional moment closed form

Outcome criterion2() {
  const std::size_t n = 100000;
  RngStream rng(9002, 0);
  std::vector<Vec> a, b;
  a.reserve(n);
  b.reserve(n);
  StableSpec spec{1.0, 1.0, 3};
  for (std::size_t i = 0; i < n; ++i) a.push_back(sample_isotropic_stable(spec, rng));
  for (std::size_t i = 0; i < n; ++i) b.push_back(sample_cauchy_vector(1.0, 3, rng));
  const double ks = ks_two_sample(radii_of(a), radii_of(b));

  const MomentValue an = stable_abs_moment(1.0, 0.5, 1, MomentMode::analytic);
  const double target = std::sqrt(2.0);
  const double an_err = std::fabs(an.value - target);
  const MomentValue mc =
      stable_abs_moment(1.0, 0.5, 1, MomentMode::monte_carlo, 1000000, 9102);
  const double mc_err = std::fabs(mc.value - target);

  const bool pass = ks <= 0.01 && an_err <= 1e-12 && mc_err <= 3.0 * mc.se;
  return {pass,
          fmt("cauchy paths: radial two-sample KS %.4g (limit 0.01, n=1e5); "
              "E|X|^0.5 analytic err %.2g, mc err %.4g (limit 3se=%.4g)",
              ks, an_err, mc_err, 3.0 * mc.se)};
}

// --------------------------------------------------------------------------
// 3: oracle conditional laws against quadrature

Outcome criterion3() {
  const GeneralizedCauchy gc{1, 2.0};
  const TargetSpec spec = gc.as_target_spec();
  const std::size_t n = 100000;
  double worst = 0.0;
  int idx = 0;
  for (const bool gaussian : {true, false}) {
    for (const double y : {-1.0, 0.0, 0.7}) {
      for (const double eta : {0.05, 0.2}) {
        RngStream rng(9003, static_cast<std::uint64_t>(idx++));
        const auto fn = [&](const Vec& yy, RngStream& r) {
          return gaussian ? rgo_sample(spec, yy, eta, r).sample
                          : raso_sample(spec, yy, eta, 1.0, r).sample;
        };
        const double stat =
            oracle_exactness_statistic(fn, gc, gaussian, y, eta, n, rng);
        worst = std::max(worst, stat);
      }
    }
  }
  return {worst <= 0.02,
          fmt("oracle exactness: worst sup-CDF gap %.4g over 12 "
              "(oracle,y,eta) combos (limit 0.02, n=1e5)",
              worst)};
}

// --------------------------------------------------------------------------
// 4: exact init stays exact

Outcome criterion4() {
  struct Case {
    SamplerKind kind;
    double nu;
  };
  const Case cases[] = {{SamplerKind::gaussian_proximal, 2.0},
                        {SamplerKind::stable_proximal, 2.0},
                        {SamplerKind::stable_proximal, 0.8}};
  const int chains = 20000;
  const double crit = ks_one_sample_critical(static_cast<std::size_t>(chains), 0.01);
  double worst = 0.0;
  int idx = 0;
  for (const auto& c : cases) {
    const GeneralizedCauchy gc{1, c.nu};
    const TargetSpec spec = gc.as_target_spec();
    SamplerConfig sc;
    sc.kind = c.kind;
    sc.alpha = 1.0;
    sc.eta = step_size_policy(spec, c.kind, 1.0);
    sc.iterations = 50;
    sc.chains = chains;
    sc.init = InitKind::exact_target;
    sc.seed = 9004 + static_cast<std::uint64_t>(idx++);
    const ChainRun run = run_chains(sc, spec, {1, 10, 50});
    for (const auto& batch : run.batches) {
      const double stat = ks_statistic(
          radii_of(batch), [&](double r) { return gc.radial_cdf(r); });
      worst = std::max(worst, stat);
    }
  }
  return {worst <= crit,
          fmt("stationarity: worst radial KS %.4g over 3 targets x k in "
              "{1,10,50} (1%% critical %.4g, n=20000)",
              worst, crit)};
}

// --------------------------------------------------------------------------
// shared separation run for 5, 6 and 10

std::vector<ResultRow> run_shared_separation() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::separation;
  cfg.target.nu = 2.0;
  cfg.target.dim = 1;
  cfg.sampler.alpha = 1.0;
  cfg.sampler.chains = 10000;
  cfg.sampler.iterations = 600;
  cfg.sampler.init = InitKind::standard_gaussian;
  cfg.c0_grid = {0.5, 1.0, 2.0};
  cfg.bins = 50;
  cfg.seed = 9005;
  cfg.threads = 0;
  return run_separation(cfg);
}

struct Series {
  std::vector<long> k;
  std::vector<double> value, se, bound;
  std::vector<bool> has_bound;
};

Series series_of(const std::vector<ResultRow>& rows, const std::string& exp,
                 const std::string& sampler) {
  std::vector<const ResultRow*> sel;
  for (const auto& r : rows)
    if (r.experiment == exp && r.sampler == sampler) sel.push_back(&r);
  std::sort(sel.begin(), sel.end(),
            [](const ResultRow* x, const ResultRow* y) { return x->k < y->k; });
  Series s;
  for (const auto* r : sel) {
    s.k.push_back(r->k);
    s.value.push_back(r->div_value);
    s.se.push_back(r->div_se);
    s.bound.push_back(r->bound_value.value_or(0.0));
    s.has_bound.push_back(r->bound_value.has_value());
  }
  return s;
}

Outcome criterion5(const std::vector<ResultRow>& rows) {
  const SeparationSummary sum = summarize_separation(rows, {0.05});
  std::map<std::pair<std::string, std::string>, const SamplerVerdict*> vmap;
  for (const auto& v : sum.verdicts) vmap[{v.experiment, v.sampler}] = &v;

  const char* exps[] = {"separation_c0_0.5", "separation_c0_1",
                        "separation_c0_2"};
  // every clause is evaluated at every c0 so the one-line verdict is complete
  struct Clause {
    long kstar = -1;
    double r2 = 0.0, val_s = -1.0, val_g = -1.0, span = 0.0, slope = 0.0;
  };
  Clause c[3];
  for (int i = 0; i < 3; ++i) {
    const char* exp = exps[i];
    const auto* vs = vmap[{exp, "stable_proximal"}];
    const auto* vg = vmap[{exp, "gaussian_proximal"}];
    if (vs == nullptr || vg == nullptr)
      return {false, fmt("separation: missing sampler group for %s", exp)};
    c[i].kstar = vs->iterations_to_eps[0];
    if (c[i].kstar < 1)
      return {false,
              fmt("separation: %s stable never reached tv 0.05 within 600",
                  exp)};
    c[i].r2 = vs->decay_fit.r2;
    c[i].span = vg->fit_span;
    c[i].slope = vg->decay_fit.slope;
    const Series ss = series_of(rows, exp, "stable_proximal");
    const Series sg = series_of(rows, exp, "gaussian_proximal");
    for (std::size_t j = 0; j < ss.k.size(); ++j)
      if (ss.k[j] == c[i].kstar) c[i].val_s = ss.value[j];
    for (std::size_t j = 0; j < sg.k.size(); ++j)
      if (sg.k[j] == c[i].kstar) c[i].val_g = sg.value[j];
    if (c[i].val_s < 0.0 || c[i].val_g < 0.0)
      return {false, fmt("separation: %s missing k=%ld row", exp, c[i].kstar)};
  }
  bool pass = true;
  for (const auto& x : c) {
    const bool a_ok = x.r2 >= 0.9;
    const bool twox_ok = x.val_g >= 2.0 * x.val_s;
    const bool fit_ok = x.span >= std::log(10.0) && x.slope >= -1.75 &&
                        x.slope <= -0.25;
    pass = pass && a_ok && twox_ok && fit_ok;
  }
  return {pass,
          fmt("separation c0={0.5,1,2}: (a) stable K*=%ld/%ld/%ld fit r2 "
              "%.3f/%.3f/%.3f (need >=0.9); (b) gaussian tv at K* "
              "%.4f/%.4f/%.4f vs 2x stable %.4f/%.4f/%.4f, gaussian fit span "
              "%.2f/%.2f/%.2f (need >=%.2f) slope %.2f/%.2f/%.2f (need in "
              "[-1.75,-0.25])",
              c[0].kstar, c[1].kstar, c[2].kstar, c[0].r2, c[1].r2, c[2].r2,
              c[0].val_g, c[1].val_g, c[2].val_g, 2.0 * c[0].val_s,
              2.0 * c[1].val_s, 2.0 * c[2].val_s, c[0].span, c[1].span,
              c[2].span, std::log(10.0), c[0].slope, c[1].slope, c[2].slope)};
}

Outcome criterion6(const std::vector<ResultRow>& rows) {
  const Series g = series_of(rows, "separation_c0_1", "gaussian_proximal");
  if (g.k.empty()) return {false, "lower bound: no gaussian rows"};
  double min_slack = 1e300;
  long at_k = -1;
  for (std::size_t i = 0; i < g.k.size(); ++i) {
    if (!g.has_bound[i])
      return {false, fmt("lower bound: k=%ld row has no bound", g.k[i])};
    const double slack = g.value[i] + 3.0 * g.se[i] - g.bound[i];
    if (slack < min_slack) {
      min_slack = slack;
      at_k = g.k[i];
    }
  }
  return {min_slack >= 0.0,
          fmt("lower bound soundness: min (tv+3se-bound) %.4g at k=%ld over "
              "%zu recorded k (must be >= 0)",
              min_slack, at_k, g.k.size())};
}

Outcome criterion10(const std::vector<ResultRow>& rows) {
  const Series s = series_of(rows, "separation_c0_1", "stable_proximal");
  if (s.k.size() < 2) return {false, "contraction: too few stable rows"};
  double worst = -1e300;
  long at_k = -1;
  for (std::size_t i = 0; i + 1 < s.k.size(); ++i) {
    const double allow = 2.0 * std::hypot(s.se[i], s.se[i + 1]);
    const double excess = s.value[i + 1] - s.value[i] - allow;
    if (excess > worst) {
      worst = excess;
      at_k = s.k[i + 1];
    }
  }
  return {worst <= 0.0,
          fmt("monotone contraction: worst pairwise increase minus 2se "
              "allowance %.4g at k=%ld over %zu pairs (must be <= 0)",
              worst, at_k, s.k.size() - 1)};
}

// --------------------------------------------------------------------------
// 7: surrogate moment growth under the Gaussian-oracle chain

Outcome criterion7() {
  const GeneralizedCauchy gc{1, 2.0};
  const TargetSpec spec = gc.as_target_spec();
  SamplerConfig sc;
  sc.kind = SamplerKind::gaussian_proximal;
  sc.eta = step_size_policy(spec, SamplerKind::gaussian_proximal, 1.0);
  sc.iterations = 1000;
  sc.chains = 20000;
  sc.init = InitKind::point_mass;
  sc.seed = 9007;
  std::vector<long> grid;
  for (long k = 0; k <= 20; ++k) grid.push_back(k);
  for (long k = 26; k < sc.iterations;
       k = std::lround(static_cast<double>(k) * 1.3))
    grid.push_back(k);
  grid.push_back(sc.iterations);
  ChainRun run = run_chains(sc, spec, grid);

  const double kappa = 2.0;
  const double ks = kappa * (1.0 + 2.0);  // kappa (d + nu2)
  const MomentTrack track = surrogate_moment_track(run, kappa, 2.0);
  double worst = -1e300;
  long at_k = -1;
  for (std::size_t i = 0; i < track.iterations.size(); ++i) {
    const long k = track.iterations[i];
    const double m = track.mean[i];
    const double lhs = std::pow(m, 2.0 / ks);
    const double envelope =
        1.0 + 4.0 * ks * sc.eta * static_cast<double>(k);
    // 3 SE of the transformed estimate via the delta method
    const double slack3 = track.se[i] * std::pow(m, 2.0 / ks - 1.0);
    const double excess = lhs - envelope - slack3;
    if (excess > worst) {
      worst = excess;
      at_k = k;
    }
  }
  return {worst <= 0.0,
          fmt("moment growth: max (E^(1/3) - (1+24 eta k) - 3se) %.4g at "
              "k=%ld over %zu recorded k (must be <= 0)",
              worst, at_k, track.iterations.size())};
}

// --------------------------------------------------------------------------
// 8: inexact-oracle corruption propagates like a union bound

Outcome criterion8() {
  const GeneralizedCauchy gc{1, 2.0};
  const TargetSpec spec = gc.as_target_spec();
  const double eta = step_size_policy(spec, SamplerKind::gaussian_proximal, 1.0);
  const double eps = 0.01;
  const int steps = 20;
  const std::size_t n = 10000;

  const Oracle inner = [&](const Vec& y, RngStream& r) {
    return rgo_sample(spec, y, eta, r);
  };
  const Oracle wrapped =
      inexact_oracle_wrapper(inner, eps, gaussian_proposal_corruptor(eta));

  std::size_t diverged = 0;
  for (std::size_t i = 0; i < n; ++i) {
    RngStream rng(9008, i);
    Vec x{rng.normal()};
    for (int k = 0; k < steps; ++k) {
      Vec y{x[0] + std::sqrt(eta) * rng.normal()};
      const OracleOutcome out = wrapped(y, rng);
      if (out.corrupted) {
        // the coupled pair separates here and almost surely never rejoins
        ++diverged;
        break;
      }
      x = out.sample;
    }
  }
  const double frac = static_cast<double>(diverged) / static_cast<double>(n);
  const double p = 1.0 - std::pow(1.0 - eps, steps);
  const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(n));
  const double union_cap = eps * steps + 3.0 * se;
  const bool pass = std::fabs(frac - p) <= 3.0 * se && frac <= union_cap;
  return {pass,
          fmt("inexact propagation: diverged frac %.4g vs 1-(1-eps)^20 %.4g "
              "(3se %.4g), union cap %.4g",
              frac, p, 3.0 * se, union_cap)};
}

// --------------------------------------------------------------------------
// 9: double entry against independent transcriptions

struct RelTracker {
  double worst = 0.0;
  void add(double got, double ref) {
    const double scale = std::max({1.0, std::fabs(got), std::fabs(ref)});
    worst = std::max(worst, std::fabs(got - ref) / scale);
  }
};

Outcome criterion9() {
  RngStream rng(9009, 0);
  const auto u = [&rng](double lo, double hi) {
    return lo + (hi - lo) * rng.uniform01();
  };
  const auto ui = [&rng](long lo, long hi) {
    return lo + static_cast<long>(rng.next_u64() %
                                  static_cast<std::uint64_t>(hi - lo + 1));
  };
  RelTracker rel;
  bool longs_ok = true;
  bool identity_ok = true;

  for (int trial = 0; trial < 100; ++trial) {
    {
      const int d = static_cast<int>(ui(1, 4));
      const double nu2 = u(0.5, 3.0), delta = u(0.05, 1.5);
      const double s = d + nu2;
      rel.add(kappa_delta(d, nu2, delta),
              std::max({1.0, 2.0 / s, nu2 * (1.0 + delta) / (s * delta)}));
    }
    {
      const double nu1 = u(0.3, 4.0);
      rel.add(cauchy_tail_constant(nu1),
              std::pow(2.0, 1.0 - 0.5 * nu1) * std::exp(-nu1) /
                  ((1.0 + nu1) * std::tgamma(0.5 * nu1)));
    }
    {
      const double C = u(0.0, 3.0), eta = u(0.01, 1.0), chi2 = u(0.0, 5.0);
      const long k = ui(0, 200);
      rel.add(chi2_upper_bound(C, eta, k, chi2),
              std::exp(-static_cast<double>(k) * eta / (C + eta)) * chi2);
    }
    {
      const double tv0 = u(0.0, 1.0), eps = u(0.0, 0.05);
      const long k = ui(0, 100);
      rel.add(inexact_tv_bound(tv0, k, eps),
              tv0 + static_cast<double>(k) * eps);
    }
    {
      const double C = u(0.0, 3.0), eta = u(0.01, 1.0);
      const double chi2 = u(0.1, 5.0), eps = u(0.01, 0.3);
      const double val = (1.0 + C / eta) * std::log(chi2 / (eps * eps));
      const long ref = static_cast<long>(std::ceil(std::max(0.0, val)));
      if (iterations_to_eps(C, eta, chi2, eps) != ref) longs_ok = false;
    }
    {
      BoundQuery q;
      q.nu1 = q.nu2 = u(0.5, 3.0);
      q.d = static_cast<int>(ui(1, 4));
      q.kappa = u(0.7, 3.0);
      q.E_G0 = u(1.0, 10.0);
      const double t = u(0.0, 50.0);
      const double ks = q.kappa * (q.d + q.nu2);
      const double ref =
          std::pow(std::pow(q.E_G0, 2.0 / ks) + 2.0 * ks * t, 0.5 * ks);
      rel.add(ld_g(q, t), ref);
      const double eta = u(0.001, 1.0);
      const long k = ui(0, 500);
      rel.add(gaussian_prox_g(q, k, eta),
              std::pow(std::pow(q.E_G0, 2.0 / ks) +
                           2.0 * ks * (2.0 * eta * static_cast<double>(k)),
                       0.5 * ks));
      if (gaussian_prox_g(q, k, eta) !=
          ld_g(q, 2.0 * eta * static_cast<double>(k)))
        identity_ok = false;
    }
    {
      BoundQuery q;
      q.nu1 = q.nu2 = u(0.2, 0.6);
      q.d = static_cast<int>(ui(1, 2));
      q.alpha = 1.0;
      q.tau = q.nu2 + (1.0 - q.nu2) * u(0.05, 0.95);
      q.E_G0 = u(1.0, 5.0);
      const double eta = u(0.001, 0.5), m = u(0.5, 4.0);
      const long k = ui(0, 50);
      double ref = q.E_G0;
      if (k > 0) {
        const double r = 2.0 / (q.tau * static_cast<double>(k));
        const double a = std::pow(1.0 + r, 0.5 * q.tau);
        const double b = std::pow(1.0 + 1.0 / r, 0.5 * q.tau) *
                         std::pow(2.0 * eta, q.tau / q.alpha) * m;
        for (long j = 0; j < k; ++j) ref = a * ref + b;
      }
      rel.add(stable_moment_recursion(q, k, eta, m), ref);
    }
    {
      const double c = u(0.5, 3.0), nu = u(0.2, 0.9), eta = u(0.001, 0.5);
      const double r = u(0.01, 1.0), chi2 = u(0.0, 5.0), rinf = u(0.0, 2.0);
      const long k = ui(0, 100);
      const double beta = c * (1.0 + std::pow(r, -(1.0 - nu) / nu));
      const double rate = eta / (beta + eta);
      rel.add(wfpi_chi2_bound(c, nu, eta, k, r, chi2, rinf),
              std::exp(-static_cast<double>(k) * rate) * chi2 +
                  4.0 * r *
                      (1.0 - std::exp(-static_cast<double>(k + 1) * rate)) *
                      std::exp(2.0 * rinf));
      const double chi2b = u(1.0, 5.0), eps = u(0.01, 0.5);
      const double lead =
          1.0 + std::pow(c, 1.0 / nu) * std::pow(eta, -1.0 / nu) +
          std::pow(2.0, 1.0 / nu) * c / eta * std::pow(eps, -(1.0 - nu) / nu) *
              std::exp(2.0 * (1.0 - nu) * rinf / nu);
      rel.add(wfpi_iteration_threshold(c, nu, eta, eps, chi2b, rinf),
              lead * std::pow(std::log(2.0 * chi2b / eps), 1.0 / nu));
    }
    {
      const double nu = u(0.3, 3.0);
      const int d = static_cast<int>(ui(1, 4));
      rel.add(gaussian_init_rinf_bound(nu, d),
              0.5 * nu * std::log(2.0) + std::lgamma(0.5 * nu) +
                  std::log((static_cast<double>(d) + nu) / (2.0 * std::exp(1.0))));
    }
    {
      ComplexityInputs in;
      in.d = static_cast<int>(ui(1, 4));
      in.nu = u(1.0, 3.0);
      in.eps = u(0.01, 0.3);
      in.eta = u(0.01, 1.0);
      in.C_fpi = u(0.0, 3.0);
      in.chi2_0 = u(0.5, 5.0);
      const auto ideal = complexity_table(ComplexityScenario::ideal_fpi, in);
      rel.add(ideal.iterations,
              (1.0 + in.C_fpi / in.eta) * std::log(in.chi2_0 / in.eps));
      if (ideal.d_exponent != 0.0 || ideal.eps_exponent != 0.0)
        longs_ok = false;
      const auto ge1 =
          complexity_table(ComplexityScenario::implementable_nu_ge1, in);
      const double eta_ge1 =
          in.c0 * std::pow(static_cast<double>(in.d), -0.5) *
          std::pow(static_cast<double>(in.d) + in.nu, -4.0);
      rel.add(ge1.iterations,
              (1.0 + in.C_fpi / eta_ge1) * std::log(in.chi2_0 / in.eps));
      if (ge1.d_exponent != 4.5 || ge1.eps_exponent != 0.0) longs_ok = false;

      ComplexityInputs lt = in;
      lt.nu = u(0.3, 0.9);
      lt.c_wfpi = u(0.5, 3.0);
      const auto low =
          complexity_table(ComplexityScenario::implementable_nu_lt1, lt);
      const double eta_lt =
          lt.c0 * std::pow(static_cast<double>(lt.d), -0.5) *
          std::pow(static_cast<double>(lt.d) + lt.nu, -4.0 / lt.nu);
      rel.add(low.iterations,
              wfpi_iteration_threshold(lt.c_wfpi, lt.nu, eta_lt, lt.eps,
                                       lt.chi2_0,
                                       gaussian_init_rinf_bound(lt.nu, lt.d)));
      rel.add(low.d_exponent, 0.5 + 4.0 / lt.nu);
      rel.add(low.eps_exponent, -(1.0 - lt.nu) / lt.nu);
      const auto gl = complexity_table(ComplexityScenario::gaussian_lower, in);
      rel.add(gl.iterations,
              in.multiplier * std::pow(static_cast<double>(in.d), 1.5) *
                  std::pow(in.eps, -2.0 / in.nu));
      rel.add(gl.eps_exponent, -2.0 / in.nu);
      if (gl.d_exponent != 1.5) longs_ok = false;
    }
  }
  const bool pass = rel.worst <= 1e-12 && longs_ok && identity_ok;
  return {pass,
          fmt("theory double entry: worst rel err %.3g over 100 draws "
              "(limit 1e-12); integer arms %s; g identity %s",
              rel.worst, longs_ok ? "equal" : "MISMATCH",
              identity_ok ? "exact" : "BROKEN")};
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> wanted;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      const int n = std::atoi(argv[++i]);
      if (n < 1 || n > 10) {
        std::fprintf(stderr, "criterion number must be 1..10, got %s\n",
                     argv[i]);
        return 2;
      }
      wanted.insert(n);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]...\n", argv[0]);
      return 2;
    }
  }
  if (wanted.empty())
    for (int n = 1; n <= 10; ++n) wanted.insert(n);

  std::vector<ResultRow> sep_rows;
  if (wanted.count(5) || wanted.count(6) || wanted.count(10))
    sep_rows = run_shared_separation();

  bool all = true;
  for (const int n : wanted) {
    Outcome out;
    switch (n) {
      case 1: out = criterion1(); break;
      case 2: out = criterion2(); break;
      case 3: out = criterion3(); break;
      case 4: out = criterion4(); break;
      case 5: out = criterion5(sep_rows); break;
      case 6: out = criterion6(sep_rows); break;
      case 7: out = criterion7(); break;
      case 8: out = criterion8(); break;
      case 9: out = criterion9(); break;
      case 10: out = criterion10(sep_rows); break;
      default: break;
    }
    std::printf("%s criterion %d: %s\n", out.pass ? "PASS" : "FAIL", n,
                out.detail.c_str());
    all = all && out.pass;
  }
  return all ? 0 : 1;
}
