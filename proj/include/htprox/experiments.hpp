#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "htprox/diagnostics.hpp"
#include "htprox/samplers.hpp"
#include "htprox/targets.hpp"
#include "htprox/theory.hpp"

namespace htprox {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ExperimentKind { separation, bounds, validate, single_run };

ExperimentKind experiment_kind_from_string(const std::string& s);
std::string to_string(ExperimentKind k);

struct TargetConfig {
  std::string kind = "generalized_cauchy";
  double nu = 2.0;
  int dim = 1;
};

enum class OracleKind { rgo, raso, raso_lower_bounded };

struct BoundsConfig {
  std::vector<std::string> curves;
  double kappa = 0.0;  // 0 means derive from delta via kappa_delta when needed
  double delta = 0.05;
  double tau = 0.8;
  double C_fpi = -1.0;   // negative means not supplied
  double wfpi_c = -1.0;
  double wfpi_r = 1.0;
  double chi2_0 = -1.0;  // negative means compute for d=1, else required
  double E_G0 = -1.0;    // negative means Monte Carlo under the init law
  double eps = 0.05;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::single_run;
  TargetConfig target;
  SamplerConfig sampler;
  OracleKind oracle_kind = OracleKind::raso;
  std::vector<double> epsilons{0.05};
  std::vector<long> record_at;  // empty means the derived geometric grid
  std::vector<double> c0_grid{0.5, 1.0, 2.0};
  int bins = 50;
  BoundsConfig bounds;
  std::string out_dir;
  std::uint64_t seed = 1;
  int threads = 0;
  bool svg = false;
};

// strict schema: unknown or ill-typed keys raise ConfigError
ExperimentConfig parse_config_json(const std::string& text);
void apply_override(ExperimentConfig& cfg, const std::string& dotted_key,
                    const std::string& value);
// dotted keys the schema accepts, for CLI flag registration
std::vector<std::string> config_key_names();

struct ResultRow {
  std::string experiment;
  std::string sampler;
  int d = 1;
  double nu = 0.0;
  double alpha = 0.0;
  double eta = 0.0;
  long k = 0;
  double wall_ms = 0.0;
  double rejections_mean = 0.0;
  std::string div_kind;
  double div_value = 0.0;
  double div_se = 0.0;
  std::optional<double> bound_value;
  std::uint64_t seed = 0;
};

extern const char* const kCsvHeader;
std::string to_csv(std::vector<ResultRow> rows);  // sorts into canonical order
std::vector<ResultRow> parse_csv(const std::string& text);

struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::size_t points = 0;
};

FitResult linear_fit(const std::vector<double>& x,
                     const std::vector<double>& y);

struct SamplerVerdict {
  std::string experiment;
  std::string sampler;
  double eta = 0.0;
  double noise_floor = 0.0;  // smallest recorded divergence in the group
  std::vector<double> epsilons;
  std::vector<long> iterations_to_eps;  // -1 when never reached
  FitResult decay_fit;  // stable: ln TV vs k; gaussian: ln TV vs ln(k eta)
  double fit_span = 0.0;  // extent of the fitted abscissa window
};

struct SeparationSummary {
  std::vector<SamplerVerdict> verdicts;
  std::string text;
};

// pure function of the rows (plus the requested accuracy grid)
SeparationSummary summarize_separation(const std::vector<ResultRow>& rows,
                                       const std::vector<double>& epsilons);

std::vector<ResultRow> run_separation(const ExperimentConfig& cfg);
std::vector<ResultRow> run_bounds(const ExperimentConfig& cfg);
std::vector<ResultRow> run_single(const ExperimentConfig& cfg);

struct CheckResult {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

std::vector<CheckResult> run_validation_checks(std::uint64_t seed);

// sup-CDF distance between oracle draws and the quadrature conditional law;
// reused by the mutation sanity test with a deliberately broken oracle
double oracle_exactness_statistic(
    const std::function<Vec(const Vec&, RngStream&)>& oracle,
    const GeneralizedCauchy& target, bool gaussian_kernel, double y,
    double eta, std::size_t n, RngStream& rng);

// chi-square divergence of the standard Gaussian init against the nu-family,
// by quadrature; d = 1 only
double chi2_gaussian_init(double nu);

// writes results.csv plus summary.txt (and plot.svg when asked); returns the
// csv path
std::string write_outputs(const ExperimentConfig& cfg,
                          const std::vector<ResultRow>& rows,
                          const std::string& summary_text);

int run_experiment_cli(int argc, char** argv);

}  // namespace htprox
