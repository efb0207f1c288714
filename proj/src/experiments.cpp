#include "htprox/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "htprox/oracles.hpp"
#include "htprox/special.hpp"
#include "htprox/stable.hpp"
#include "htprox/svg.hpp"

namespace htprox {

using nlohmann::json;

ExperimentKind experiment_kind_from_string(const std::string& s) {
  if (s == "separation") return ExperimentKind::separation;
  if (s == "bounds") return ExperimentKind::bounds;
  if (s == "validate") return ExperimentKind::validate;
  if (s == "single_run") return ExperimentKind::single_run;
  throw ConfigError("experiment.kind: unknown value '" + s + "'");
}

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::separation: return "separation";
    case ExperimentKind::bounds: return "bounds";
    case ExperimentKind::validate: return "validate";
    case ExperimentKind::single_run: return "single_run";
  }
  return "?";
}

namespace {

enum class KeyType { Str, Dbl, Int, LongT, U64, Bool, DblList, LongList, StrList };

double want_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError(key + ": expected a number");
  return v.get<double>();
}

long long want_integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError(key + ": expected an integer");
  return v.get<long long>();
}

std::string want_string(const json& v, const std::string& key) {
  if (!v.is_string()) throw ConfigError(key + ": expected a string");
  return v.get<std::string>();
}

bool want_bool(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw ConfigError(key + ": expected a boolean");
  return v.get<bool>();
}

std::vector<double> want_dbl_list(const json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError(key + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& e : v) out.push_back(want_number(e, key));
  return out;
}

std::vector<long> want_long_list(const json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError(key + ": expected an array of integers");
  std::vector<long> out;
  for (const auto& e : v)
    out.push_back(static_cast<long>(want_integer(e, key)));
  return out;
}

std::vector<std::string> want_str_list(const json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError(key + ": expected an array of strings");
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(want_string(e, key));
  return out;
}

struct KeyDef {
  KeyType type;
  std::function<void(ExperimentConfig&, const json&, const std::string&)> set;
};

OracleKind oracle_kind_from_string(const std::string& s) {
  if (s == "rgo") return OracleKind::rgo;
  if (s == "raso") return OracleKind::raso;
  if (s == "raso_lower_bounded") return OracleKind::raso_lower_bounded;
  throw ConfigError("oracle.kind: unknown value '" + s + "'");
}

const std::map<std::string, KeyDef>& key_table() {
  static const std::map<std::string, KeyDef> table = {
      {"experiment.kind",
       {KeyType::Str,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.kind = experiment_kind_from_string(want_string(v, k));
        }}},
      {"target.kind",
       {KeyType::Str,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.target.kind = want_string(v, k);
          if (c.target.kind != "generalized_cauchy")
            throw ConfigError("target.kind: unknown value '" + c.target.kind +
                              "'");
        }}},
      {"target.nu",
       {KeyType::Dbl,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.target.nu = want_number(v, k);
        }}},
      {"target.dim",
       {KeyType::Int,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.target.dim = static_cast<int>(want_integer(v, k));
        }}},
      {"sampler.kind",
       {KeyType::Str,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          try {
            c.sampler.kind = sampler_kind_from_string(want_string(v, k));
          } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
          }
        }}},
      {"sampler.eta",
       {KeyType::Dbl,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.sampler.eta = want_number(v, k);
        }}},
      {"sampler.alpha",
       {KeyType::Dbl,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.sampler.alpha = want_number(v, k);
        }}},
      {"sampler.iterations",
       {KeyType::LongT,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.sampler.iterations = static_cast<long>(want_integer(v, k));
        }}},
      {"sampler.chains",
       {KeyType::Int,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.sampler.chains = static_cast<int>(want_integer(v, k));
        }}},
      {"sampler.init",
       {KeyType::Str,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          try {
            c.sampler.init = init_kind_from_string(want_string(v, k));
          } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
          }
        }}},
      {"sampler.x0",
       {KeyType::DblList,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.sampler.x0 = want_dbl_list(v, k);
        }}},
      {"oracle.kind",
       {KeyType::Str,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.oracle_kind = oracle_kind_from_string(want_string(v, k));
        }}},
      {"oracle.budget",
       {KeyType::U64,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          const long long b = want_integer(v, k);
          if (b < 1) throw ConfigError("oracle.budget: must be >= 1");
          c.sampler.oracle_budget = static_cast<std::uint64_t>(b);
        }}},
      {"oracle.switch_after",
       {KeyType::U64,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          const long long b = want_integer(v, k);
          if (b < 0) throw ConfigError("oracle.switch_after: must be >= 0");
          c.sampler.oracle_switch_after = static_cast<std::uint64_t>(b);
        }}},
      {"oracle.eps_tv",
       {KeyType::Dbl,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.sampler.eps_tv = want_number(v, k);
        }}},
      {"experiment.bins",
       {KeyType::Int,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.bins = static_cast<int>(want_integer(v, k));
        }}},
      {"experiment.epsilons",
       {KeyType::DblList,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.epsilons = want_dbl_list(v, k);
        }}},
      {"experiment.c0_grid",
       {KeyType::DblList,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.c0_grid = want_dbl_list(v, k);
          if (c.c0_grid.empty())
            throw ConfigError("experiment.c0_grid: must not be empty");
        }}},
      {"experiment.record_at",
       {KeyType::LongList,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.record_at = want_long_list(v, k);
        }}},
      {"experiment.svg",
       {KeyType::Bool,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.svg = want_bool(v, k);
        }}},
      {"bounds.curves",
       {KeyType::StrList,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.bounds.curves = want_str_list(v, k);
        }}},
      {"bounds.kappa",
       {KeyType::Dbl,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.bounds.kappa = want_number(v, k);
        }}},
      {"bounds.delta",
       {KeyType::Dbl,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.bounds.delta = want_number(v, k);
        }}},
      {"bounds.tau",
       {KeyType::Dbl,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.bounds.tau = want_number(v, k);
        }}},
      {"bounds.C_fpi",
       {KeyType::Dbl,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.bounds.C_fpi = want_number(v, k);
        }}},
      {"bounds.wfpi_c",
       {KeyType::Dbl,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.bounds.wfpi_c = want_number(v, k);
        }}},
      {"bounds.wfpi_r",
       {KeyType::Dbl,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.bounds.wfpi_r = want_number(v, k);
        }}},
      {"bounds.chi2_0",
       {KeyType::Dbl,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.bounds.chi2_0 = want_number(v, k);
        }}},
      {"bounds.E_G0",
       {KeyType::Dbl,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.bounds.E_G0 = want_number(v, k);
        }}},
      {"bounds.eps",
       {KeyType::Dbl,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.bounds.eps = want_number(v, k);
        }}},
      {"out",
       {KeyType::Str,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.out_dir = want_string(v, k);
        }}},
      {"seed",
       {KeyType::U64,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          const long long s = want_integer(v, k);
          if (s < 0) throw ConfigError("seed: must be >= 0");
          c.seed = static_cast<std::uint64_t>(s);
        }}},
      {"threads",
       {KeyType::Int,
        [](ExperimentConfig& c, const json& v, const std::string& k) {
          c.threads = static_cast<int>(want_integer(v, k));
        }}},
  };
  return table;
}

void apply_key(ExperimentConfig& cfg, const std::string& key, const json& v) {
  const auto& table = key_table();
  const auto it = table.find(key);
  if (it == table.end()) throw ConfigError("unknown config key: " + key);
  it->second.set(cfg, v, key);
}

std::vector<std::string> split_csv_list(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(s);
  while (std::getline(ss, cur, ',')) out.push_back(cur);
  if (!s.empty() && s.back() == ',') out.push_back("");
  return out;
}

json scalar_from_string(KeyType t, const std::string& raw,
                        const std::string& key) {
  auto parse_ll = [&](const std::string& p) {
    char* end = nullptr;
    const long long v = std::strtoll(p.c_str(), &end, 10);
    if (end == p.c_str() || *end != '\0')
      throw ConfigError(key + ": expected an integer, got '" + p + "'");
    return v;
  };
  auto parse_d = [&](const std::string& p) {
    char* end = nullptr;
    const double v = std::strtod(p.c_str(), &end);
    if (end == p.c_str() || *end != '\0')
      throw ConfigError(key + ": expected a number, got '" + p + "'");
    return v;
  };
  switch (t) {
    case KeyType::Str: return json(raw);
    case KeyType::Dbl: return json(parse_d(raw));
    case KeyType::Int:
    case KeyType::LongT:
    case KeyType::U64: return json(parse_ll(raw));
    case KeyType::Bool: {
      if (raw == "true" || raw == "1") return json(true);
      if (raw == "false" || raw == "0") return json(false);
      throw ConfigError(key + ": expected a boolean, got '" + raw + "'");
    }
    case KeyType::DblList: {
      json arr = json::array();
      for (const auto& p : split_csv_list(raw)) arr.push_back(parse_d(p));
      return arr;
    }
    case KeyType::LongList: {
      json arr = json::array();
      for (const auto& p : split_csv_list(raw)) arr.push_back(parse_ll(p));
      return arr;
    }
    case KeyType::StrList: {
      json arr = json::array();
      for (const auto& p : split_csv_list(raw)) arr.push_back(p);
      return arr;
    }
  }
  throw ConfigError(key + ": bad key type");
}

}  // namespace

std::vector<std::string> config_key_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : key_table()) names.push_back(k);
  return names;
}

ExperimentConfig parse_config_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config root must be an object");
  ExperimentConfig cfg;
  for (const auto& [key, value] : root.items()) {
    if (value.is_object()) {
      for (const auto& [sub, leaf] : value.items()) {
        if (leaf.is_object())
          throw ConfigError("unknown config key: " + key + "." + sub);
        apply_key(cfg, key + "." + sub, leaf);
      }
    } else {
      apply_key(cfg, key, value);
    }
  }
  return cfg;
}

void apply_override(ExperimentConfig& cfg, const std::string& dotted_key,
                    const std::string& value) {
  const auto& table = key_table();
  const auto it = table.find(dotted_key);
  if (it == table.end())
    throw ConfigError("unknown config key: " + dotted_key);
  apply_key(cfg, dotted_key,
            scalar_from_string(it->second.type, value, dotted_key));
}

const char* const kCsvHeader =
    "experiment,sampler,d,nu,alpha,eta,k,wall_ms,rejections_mean,div_kind,"
    "div_value,div_se,bound_value,seed";

namespace {

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

bool row_less(const ResultRow& a, const ResultRow& b) {
  return std::tie(a.experiment, a.sampler, a.div_kind, a.k, a.alpha) <
         std::tie(b.experiment, b.sampler, b.div_kind, b.k, b.alpha);
}

}  // namespace

std::string to_csv(std::vector<ResultRow> rows) {
  std::sort(rows.begin(), rows.end(), row_less);
  std::ostringstream out;
  out << kCsvHeader << "\n";
  for (const auto& r : rows) {
    out << r.experiment << ',' << r.sampler << ',' << r.d << ',' << fmt_g(r.nu)
        << ',' << fmt_g(r.alpha) << ',' << fmt_g(r.eta) << ',' << r.k << ','
        << fmt_g(r.wall_ms) << ',' << fmt_g(r.rejections_mean) << ','
        << r.div_kind << ',' << fmt_g(r.div_value) << ',' << fmt_g(r.div_se)
        << ',' << (r.bound_value ? fmt_g(*r.bound_value) : std::string())
        << ',' << r.seed << "\n";
  }
  return out.str();
}

std::vector<ResultRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw ConfigError("csv: bad header");
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cur;
    std::stringstream ss(line);
    while (std::getline(ss, cur, ',')) f.push_back(cur);
    if (line.back() == ',') f.push_back("");
    if (f.size() != 14) throw ConfigError("csv: bad row: " + line);
    ResultRow r;
    r.experiment = f[0];
    r.sampler = f[1];
    r.d = std::stoi(f[2]);
    r.nu = std::stod(f[3]);
    r.alpha = std::stod(f[4]);
    r.eta = std::stod(f[5]);
    r.k = std::stol(f[6]);
    r.wall_ms = std::stod(f[7]);
    r.rejections_mean = std::stod(f[8]);
    r.div_kind = f[9];
    r.div_value = std::stod(f[10]);
    r.div_se = std::stod(f[11]);
    if (!f[12].empty()) r.bound_value = std::stod(f[12]);
    r.seed = std::stoull(f[13]);
    rows.push_back(std::move(r));
  }
  return rows;
}

FitResult linear_fit(const std::vector<double>& x,
                     const std::vector<double>& y) {
  FitResult fit;
  fit.points = x.size();
  if (x.size() != y.size())
    throw std::invalid_argument("linear_fit: size mismatch");
  if (x.size() < 2) return fit;
  const double n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double den = n * sxx - sx * sx;
  if (den == 0.0) return fit;
  fit.slope = (n * sxy - sx * sy) / den;
  fit.intercept = (sy - fit.slope * sx) / n;
  double ss_res = 0.0, ss_tot = 0.0;
  const double ybar = sy / n;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (fit.intercept + fit.slope * x[i]);
    ss_res += e * e;
    ss_tot += (y[i] - ybar) * (y[i] - ybar);
  }
  fit.r2 = ss_tot > 0.0 ? std::max(0.0, 1.0 - ss_res / ss_tot)
                        : (ss_res == 0.0 ? 1.0 : 0.0);
  return fit;
}

double chi2_gaussian_init(double nu) {
  if (!(nu > 0.0)) throw std::invalid_argument("chi2_gaussian_init: nu > 0");
  // chi^2(N(0,1) | pi_nu) = Z_pi * integral of phi(x)^2 (1+x^2)^{(1+nu)/2} - 1
  const double logZ = 0.5 * std::log(kPi) + std::lgamma(0.5 * nu) -
                      std::lgamma(0.5 * (1.0 + nu));
  const int n = 30000;  // Simpson, even count
  const double lo = -15.0, hi = 15.0;
  const double h = (hi - lo) / n;
  double s = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = lo + h * i;
    const double f = std::exp(-x * x + 0.5 * (1.0 + nu) * std::log1p(x * x)) /
                     (2.0 * kPi);
    const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
    s += w * f;
  }
  s *= h / 3.0;
  return std::exp(logZ) * s - 1.0;
}

double oracle_exactness_statistic(
    const std::function<Vec(const Vec&, RngStream&)>& oracle,
    const GeneralizedCauchy& target, bool gaussian_kernel, double y,
    double eta, std::size_t n, RngStream& rng) {
  if (target.dim != 1)
    throw std::invalid_argument("oracle_exactness_statistic: d=1 only");
  const int m = 48000;
  const double lo = -60.0, hi = 60.0;
  const double dx = (hi - lo) / m;
  std::vector<double> lw(static_cast<std::size_t>(m) + 1);
  double lmax = -1e300;
  for (int i = 0; i <= m; ++i) {
    const double x = lo + dx * i;
    const double lkern =
        gaussian_kernel ? -0.5 * (x - y) * (x - y) / eta
                        : -std::log((x - y) * (x - y) + eta * eta);
    const double v = -target.V(Vec{x}) + lkern;
    lw[static_cast<std::size_t>(i)] = v;
    lmax = std::max(lmax, v);
  }
  std::vector<double> cdf(lw.size(), 0.0);
  for (std::size_t i = 1; i < lw.size(); ++i)
    cdf[i] = cdf[i - 1] +
             0.5 * (std::exp(lw[i - 1] - lmax) + std::exp(lw[i] - lmax)) * dx;
  const double total = cdf.back();
  for (auto& c : cdf) c /= total;

  auto cdf_at = [&](double x) {
    if (x <= lo) return 0.0;
    if (x >= hi) return 1.0;
    const double t = (x - lo) / dx;
    const std::size_t j = static_cast<std::size_t>(t);
    const double frac = t - static_cast<double>(j);
    return cdf[j] + (cdf[j + 1] - cdf[j]) * frac;
  };

  std::vector<double> xs;
  xs.reserve(n);
  const Vec yv{y};
  for (std::size_t i = 0; i < n; ++i) xs.push_back(oracle(yv, rng)[0]);
  std::sort(xs.begin(), xs.end());
  double d = 0.0;
  const double nn = static_cast<double>(n);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf_at(xs[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / nn));
    d = std::max(d, std::fabs(f - static_cast<double>(i + 1) / nn));
  }
  return d;
}

namespace {

std::vector<long> derive_record_grid(long iterations) {
  std::vector<long> g;
  g.push_back(0);
  for (long k = 1; k <= std::min<long>(20, iterations); ++k) g.push_back(k);
  double v = 20.0;
  while (true) {
    v *= 1.3;
    const long k = std::lround(v);
    if (k >= iterations) break;
    if (k > g.back()) g.push_back(k);
  }
  if (iterations > 0 && (g.empty() || g.back() != iterations))
    g.push_back(iterations);
  return g;
}

GeneralizedCauchy make_target(const ExperimentConfig& cfg) {
  if (cfg.target.kind != "generalized_cauchy")
    throw ConfigError("target.kind: unknown value '" + cfg.target.kind + "'");
  if (!(cfg.target.nu > 0.0)) throw ConfigError("target.nu: must be positive");
  if (cfg.target.dim < 1) throw ConfigError("target.dim: must be >= 1");
  return GeneralizedCauchy{cfg.target.dim, cfg.target.nu};
}

double resolve_E_G0(const ExperimentConfig& cfg, const TargetSpec& spec,
                    double kappa) {
  if (cfg.bounds.E_G0 > 0.0) return cfg.bounds.E_G0;
  const double expo = 0.5 * kappa * (spec.dim + *spec.nu2);
  if (cfg.sampler.init == InitKind::point_mass) {
    Vec x0 = cfg.sampler.x0.empty()
                 ? Vec(static_cast<std::size_t>(spec.dim), 0.0)
                 : cfg.sampler.x0;
    return std::exp(expo * std::log1p(norm2(x0)));
  }
  if (cfg.sampler.init != InitKind::standard_gaussian) return -1.0;
  RngStream rng(cfg.seed, kMomentStreamBase + 7);
  const std::size_t n = 200000;
  double s = 0.0;
  Vec x(static_cast<std::size_t>(spec.dim));
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& xi : x) xi = rng.normal();
    s += std::exp(expo * std::log1p(norm2(x)));
  }
  return std::max(1.0, s / static_cast<double>(n));
}

struct RunPlan {
  std::string experiment;
  SamplerKind kind;
  double eta = 0.0;
  double alpha = 0.0;  // csv column value
  std::uint64_t seed = 0;
};

std::vector<ResultRow> rows_for_run(const ExperimentConfig& cfg,
                                    const GeneralizedCauchy& target,
                                    const RunPlan& plan,
                                    const std::vector<long>& record_at,
                                    std::uint64_t* bootstrap_counter) {
  const TargetSpec spec = target.as_target_spec();
  SamplerConfig sc = cfg.sampler;
  sc.kind = plan.kind;
  sc.eta = plan.eta;
  sc.seed = plan.seed;
  sc.threads = cfg.threads;
  if (sc.iterations <= 0) sc.iterations = record_at.back();

  const ChainRun run = run_chains(sc, spec, record_at);

  // bound inputs shared by every row of this run
  double kappa = cfg.bounds.kappa;
  if (!(kappa > 0.0))
    kappa = std::max(1.0, 2.0 / (target.dim + target.nu));
  const double e_g0 = resolve_E_G0(cfg, spec, kappa);
  BoundQuery q;
  q.nu1 = target.nu;
  q.nu2 = target.nu;
  q.d = target.dim;
  q.kappa = kappa;
  q.E_G0 = std::max(1.0, e_g0);
  double chi2_0 = cfg.bounds.chi2_0;
  if (!(chi2_0 > 0.0) && target.dim == 1 &&
      cfg.sampler.init == InitKind::standard_gaussian)
    chi2_0 = chi2_gaussian_init(target.nu);

  std::vector<ResultRow> rows;
  for (std::size_t r = 0; r < run.record_at.size(); ++r) {
    const long k = run.record_at[r];
    RngStream boot(cfg.seed, kBootstrapStreamBase + (*bootstrap_counter)++);
    const DivergenceEstimate est =
        radial_tv_estimate(run.batches[r], target, cfg.bins, boot);
    ResultRow row;
    row.experiment = plan.experiment;
    row.sampler = to_string(plan.kind);
    row.d = target.dim;
    row.nu = target.nu;
    row.alpha = plan.alpha;
    row.eta = plan.eta;
    row.k = k;
    row.wall_ms = run.wall_ms_per_iteration;
    row.rejections_mean = run.mean_rejections_at(k);
    row.div_kind = to_string(est.kind);
    row.div_value = est.value;
    row.div_se = est.se_proxy;
    row.seed = plan.seed;
    if (plan.kind == SamplerKind::gaussian_proximal && e_g0 > 0.0) {
      row.bound_value = gaussian_prox_tv_lower_bound(q, k, plan.eta);
    } else if (plan.kind == SamplerKind::stable_proximal &&
               cfg.bounds.C_fpi > 0.0 && chi2_0 > 0.0) {
      // TV upper overlay through 2 TV^2 <= chi^2
      const double c2 = chi2_upper_bound(cfg.bounds.C_fpi, plan.eta, k, chi2_0);
      row.bound_value = std::min(1.0, std::sqrt(0.5 * c2));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

std::vector<ResultRow> run_separation(const ExperimentConfig& cfg) {
  const GeneralizedCauchy target = make_target(cfg);
  const TargetSpec spec = target.as_target_spec();
  const long iterations = cfg.sampler.iterations > 0 ? cfg.sampler.iterations : 600;
  const std::vector<long> record_at =
      cfg.record_at.empty() ? derive_record_grid(iterations) : cfg.record_at;

  std::vector<ResultRow> rows;
  std::uint64_t boot_counter = 0;
  for (std::size_t i = 0; i < cfg.c0_grid.size(); ++i) {
    const double c0 = cfg.c0_grid[i];
    for (const SamplerKind kind :
         {SamplerKind::stable_proximal, SamplerKind::gaussian_proximal}) {
      RunPlan plan;
      plan.experiment = "separation_c0_" + fmt_g(c0);
      plan.kind = kind;
      plan.eta = cfg.sampler.eta > 0.0 ? cfg.sampler.eta
                                       : step_size_policy(spec, kind, c0);
      plan.alpha =
          kind == SamplerKind::stable_proximal ? cfg.sampler.alpha : 2.0;
      plan.seed = cfg.seed + 1000 * i +
                  (kind == SamplerKind::gaussian_proximal ? 500 : 0);
      ExperimentConfig local = cfg;
      local.sampler.iterations = iterations;
      const auto part =
          rows_for_run(local, target, plan, record_at, &boot_counter);
      rows.insert(rows.end(), part.begin(), part.end());
    }
  }
  return rows;
}

std::vector<ResultRow> run_single(const ExperimentConfig& cfg) {
  const GeneralizedCauchy target = make_target(cfg);
  const TargetSpec spec = target.as_target_spec();
  // oracle.kind must agree with the sampler; the lower-bounded variant at
  // C_low = min V shares the raso draw path exactly
  if (cfg.sampler.kind == SamplerKind::gaussian_proximal &&
      cfg.oracle_kind != OracleKind::rgo)
    throw ConfigError("oracle.kind: gaussian_proximal uses rgo");
  if (cfg.sampler.kind == SamplerKind::stable_proximal &&
      cfg.oracle_kind == OracleKind::rgo)
    throw ConfigError("oracle.kind: stable_proximal uses raso");
  const long iterations =
      cfg.sampler.iterations > 0 ? cfg.sampler.iterations : 200;
  const std::vector<long> record_at =
      cfg.record_at.empty() ? derive_record_grid(iterations) : cfg.record_at;
  double eta = cfg.sampler.eta;
  if (!(eta > 0.0)) {
    if (cfg.sampler.kind == SamplerKind::ula)
      throw ConfigError("sampler.eta: no step preset for ula; set eta");
    eta = step_size_policy(spec, cfg.sampler.kind, 1.0);
  }
  RunPlan plan;
  plan.experiment = "single_run";
  plan.kind = cfg.sampler.kind;
  plan.eta = eta;
  plan.alpha = cfg.sampler.kind == SamplerKind::stable_proximal
                   ? cfg.sampler.alpha
                   : 2.0;
  plan.seed = cfg.seed;
  ExperimentConfig local = cfg;
  local.sampler.iterations = iterations;
  std::uint64_t boot_counter = 0;
  return rows_for_run(local, target, plan, record_at, &boot_counter);
}

std::vector<ResultRow> run_bounds(const ExperimentConfig& cfg) {
  const GeneralizedCauchy target = make_target(cfg);
  const TargetSpec spec = target.as_target_spec();
  std::vector<long> ks = cfg.record_at;
  if (ks.empty()) ks = derive_record_grid(100000);
  std::vector<std::string> curves = cfg.bounds.curves;
  if (curves.empty()) {
    curves.push_back("gaussian_prox_tv_lower");
    if (cfg.bounds.C_fpi > 0.0) curves.push_back("chi2_upper");
  }

  double kappa = cfg.bounds.kappa;
  if (!(kappa > 0.0)) kappa = kappa_delta(target.dim, target.nu, cfg.bounds.delta);
  BoundQuery q;
  q.nu1 = target.nu;
  q.nu2 = target.nu;
  q.d = target.dim;
  q.kappa = kappa;
  q.alpha = cfg.sampler.alpha;
  q.tau = cfg.bounds.tau;
  const double e_g0 = resolve_E_G0(cfg, spec, kappa);
  q.E_G0 = e_g0 > 0.0 ? std::max(1.0, e_g0) : 1.0;

  double chi2_0 = cfg.bounds.chi2_0;
  if (!(chi2_0 > 0.0) && target.dim == 1) chi2_0 = chi2_gaussian_init(target.nu);

  const double eta_g = cfg.sampler.eta > 0.0
                           ? cfg.sampler.eta
                           : step_size_policy(spec, SamplerKind::gaussian_proximal, 1.0);
  const double eta_s = cfg.sampler.eta > 0.0
                           ? cfg.sampler.eta
                           : step_size_policy(spec, SamplerKind::stable_proximal, 1.0);

  std::vector<ResultRow> rows;
  for (const auto& curve : curves) {
    for (const long k : ks) {
      if (k < 0) throw ConfigError("experiment.record_at: negative k");
      ResultRow row;
      row.experiment = "bounds";
      row.sampler = "theory";
      row.d = target.dim;
      row.nu = target.nu;
      row.k = k;
      row.div_kind = curve;
      row.seed = cfg.seed;
      double value = 0.0;
      if (curve == "gaussian_prox_tv_lower") {
        row.alpha = 2.0;
        row.eta = eta_g;
        value = gaussian_prox_tv_lower_bound(q, k, eta_g);
      } else if (curve == "ld_tv_lower") {
        row.alpha = 2.0;
        row.eta = eta_g;
        value = ld_tv_lower_bound(q, 2.0 * eta_g * static_cast<double>(k));
      } else if (curve == "stable_prox_tv_lower") {
        row.alpha = cfg.sampler.alpha;
        row.eta = eta_s;
        BoundQuery qs = q;
        qs.tau = cfg.bounds.tau;
        MomentValue m;
        if (cfg.sampler.alpha == 1.0) {
          m = stable_abs_moment(1.0, qs.tau, target.dim, MomentMode::analytic);
        } else {
          m = stable_abs_moment(cfg.sampler.alpha, qs.tau, target.dim,
                                MomentMode::monte_carlo, 200000,
                                cfg.seed + 99);
        }
        if (m.infinite)
          throw ConfigError("bounds.tau: m_tau infinite for this alpha");
        value = stable_prox_tv_lower_bound(qs, k, eta_s, m.value);
      } else if (curve == "chi2_upper") {
        if (!(cfg.bounds.C_fpi >= 0.0) || !(chi2_0 > 0.0))
          throw ConfigError("bounds.C_fpi and bounds.chi2_0 required for chi2_upper");
        row.alpha = cfg.sampler.alpha;
        row.eta = eta_s;
        value = chi2_upper_bound(cfg.bounds.C_fpi, eta_s, k, chi2_0);
      } else if (curve == "wfpi_chi2") {
        if (!(cfg.bounds.wfpi_c > 0.0) || !(chi2_0 > 0.0))
          throw ConfigError("bounds.wfpi_c and bounds.chi2_0 required for wfpi_chi2");
        row.alpha = cfg.sampler.alpha;
        row.eta = eta_s;
        value = wfpi_chi2_bound(cfg.bounds.wfpi_c, target.nu, eta_s, k,
                                cfg.bounds.wfpi_r, chi2_0,
                                gaussian_init_rinf_bound(target.nu, target.dim));
      } else {
        throw ConfigError("bounds.curves: unknown curve '" + curve + "'");
      }
      row.div_value = value;
      row.bound_value = value;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

SeparationSummary summarize_separation(const std::vector<ResultRow>& rows,
                                       const std::vector<double>& epsilons) {
  std::map<std::pair<std::string, std::string>, std::vector<const ResultRow*>>
      groups;
  for (const auto& r : rows) {
    if (r.div_kind != "radial_tv") continue;
    groups[{r.experiment, r.sampler}].push_back(&r);
  }
  SeparationSummary summary;
  std::ostringstream text;
  for (auto& [key, group] : groups) {
    std::sort(group.begin(), group.end(),
              [](const ResultRow* a, const ResultRow* b) { return a->k < b->k; });
    SamplerVerdict v;
    v.experiment = key.first;
    v.sampler = key.second;
    v.eta = group.front()->eta;
    double floor = 1.0;
    for (const auto* r : group)
      if (r->k >= 1) floor = std::min(floor, r->div_value);
    v.noise_floor = floor;
    v.epsilons = epsilons;
    for (const double eps : epsilons) {
      long hit = -1;
      for (const auto* r : group) {
        if (r->k >= 1 && r->div_value <= eps) {
          hit = r->k;
          break;
        }
      }
      v.iterations_to_eps.push_back(hit);
    }
    // fit window: recorded points clearly above the floor; stable decays are
    // fit in ln TV vs k, diffusive samplers in ln TV vs ln(k eta)
    std::vector<double> xs, ys;
    const bool semilog = v.sampler == "stable_proximal";
    for (const auto* r : group) {
      if (r->k < 1 || !(r->div_value > 0.0)) continue;
      if (r->div_value < 2.0 * floor) continue;
      xs.push_back(semilog ? static_cast<double>(r->k)
                           : std::log(static_cast<double>(r->k) * r->eta));
      ys.push_back(std::log(r->div_value));
    }
    v.decay_fit = linear_fit(xs, ys);
    if (!xs.empty())
      v.fit_span = *std::max_element(xs.begin(), xs.end()) -
                   *std::min_element(xs.begin(), xs.end());
    text << "group experiment=" << v.experiment << " sampler=" << v.sampler
         << " eta=" << fmt_g(v.eta) << " floor=" << fmt_g(v.noise_floor)
         << "\n";
    for (std::size_t i = 0; i < epsilons.size(); ++i) {
      text << "  eps=" << fmt_g(epsilons[i]) << " iterations="
           << v.iterations_to_eps[i]
           << (v.iterations_to_eps[i] < 0 ? " not_reached" : " reached")
           << "\n";
    }
    text << "  fit kind=" << (semilog ? "ln_tv_vs_k" : "ln_tv_vs_ln_keta")
         << " slope=" << fmt_g(v.decay_fit.slope)
         << " intercept=" << fmt_g(v.decay_fit.intercept)
         << " r2=" << fmt_g(v.decay_fit.r2) << " points=" << v.decay_fit.points
         << " span=" << fmt_g(v.fit_span) << "\n";
    summary.verdicts.push_back(std::move(v));
  }
  summary.text = text.str();
  return summary;
}

std::string write_outputs(const ExperimentConfig& cfg,
                          const std::vector<ResultRow>& rows,
                          const std::string& summary_text) {
  namespace fs = std::filesystem;
  const fs::path dir = cfg.out_dir.empty() ? fs::path("htprox_out")
                                           : fs::path(cfg.out_dir);
  fs::create_directories(dir);
  const fs::path csv_path = dir / "results.csv";
  {
    std::ofstream out(csv_path);
    if (!out) throw std::runtime_error("cannot write " + csv_path.string());
    out << to_csv(rows);
  }
  {
    std::ofstream out(dir / "summary.txt");
    out << summary_text;
  }
  if (cfg.svg) {
    std::map<std::string, SvgSeries> series;
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};
    for (const auto& r : rows) {
      const std::string name = r.experiment + "/" + r.sampler +
                               (r.div_kind == "radial_tv" ? "" : "/" + r.div_kind);
      auto& s = series[name];
      if (s.name.empty()) {
        s.name = name;
        s.color = palette[series.size() % 8];
      }
      if (r.k >= 1) s.points.emplace_back(static_cast<double>(r.k), r.div_value);
    }
    std::vector<SvgSeries> list;
    for (auto& [k, s] : series) {
      std::sort(s.points.begin(), s.points.end());
      list.push_back(std::move(s));
    }
    std::ofstream out(dir / "plot.svg");
    out << render_svg_plot("divergence vs iteration", "k", "divergence", list,
                           true, true);
  }
  return csv_path.string();
}

// ---------------------------------------------------------------------------
// validation registry

namespace {

CheckResult make_check(const std::string& name, double stat, double thresh,
                       bool pass) {
  return CheckResult{name, stat, thresh, pass};
}

void check_rng(std::vector<CheckResult>& out, std::uint64_t seed) {
  RngStream a(seed, 3);
  RngStream b(seed, 3);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i)
    worst = std::max(worst, std::fabs(a.uniform01() - b.uniform01()));
  out.push_back(make_check("rng_determinism", worst, 0.0, worst == 0.0));

  RngStream s1(seed, 1);
  RngStream s2(seed, 2);
  const int n = 100000;
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double x = s1.uniform01();
    const double y = s2.uniform01();
    sx += x;
    sy += y;
    sxx += x * x;
    syy += y * y;
    sxy += x * y;
  }
  const double cov = sxy / n - (sx / n) * (sy / n);
  const double vx = sxx / n - (sx / n) * (sx / n);
  const double vy = syy / n - (sy / n) * (sy / n);
  const double rho = std::fabs(cov / std::sqrt(vx * vy));
  const double crit = 4.0 / std::sqrt(static_cast<double>(n));
  out.push_back(make_check("rng_stream_decorrelation", rho, crit, rho <= crit));
}

void check_stable(std::vector<CheckResult>& out, std::uint64_t seed) {
  {
    RngStream rng(seed, 11);
    const StableSpec spec{1.5, 0.7, 2};
    const int n = 200000;
    const double xis[3] = {0.5, 1.0, 2.0};
    double sums[3] = {0, 0, 0};
    for (int i = 0; i < n; ++i) {
      const Vec x = sample_isotropic_stable(spec, rng);
      for (int j = 0; j < 3; ++j) sums[j] += std::cos(xis[j] * x[0]);
    }
    double worst = 0.0;
    for (int j = 0; j < 3; ++j) {
      const double want = std::exp(-spec.t * std::pow(xis[j], spec.alpha));
      worst = std::max(worst, std::fabs(sums[j] / n - want));
    }
    const double crit = 4.0 / std::sqrt(static_cast<double>(n));
    out.push_back(make_check("stable_charfn", worst, crit, worst <= crit));
  }
  {
    RngStream rng(seed, 12);
    const int n = 200000;
    double s1 = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
      const double v = std::exp(-sample_one_sided_stable(0.5, rng));
      s1 += v;
      s2 += v * v;
    }
    const double mean = s1 / n;
    const double se =
        std::sqrt(std::max(1e-300, s2 / n - mean * mean) / n);
    const double z = std::fabs(mean - std::exp(-1.0)) / se;
    out.push_back(make_check("one_sided_laplace", z, 4.0, z <= 4.0));
  }
  {
    RngStream rng(seed, 13);
    const int n = 50000;
    std::vector<double> a, b;
    a.reserve(n);
    b.reserve(n);
    const StableSpec spec{1.0, 0.8, 1};
    for (int i = 0; i < n; ++i) {
      a.push_back(std::fabs(sample_cauchy_vector(0.8, 1, rng)[0]));
      b.push_back(std::fabs(sample_isotropic_stable(spec, rng)[0]));
    }
    const double d = ks_two_sample(a, b);
    const double crit = ks_two_sample_critical(a.size(), b.size(), 0.01);
    out.push_back(make_check("cauchy_subordination_ks", d, crit, d <= crit));
  }
  {
    RngStream rng(seed, 14);
    const int n = 50000;
    std::vector<double> a, b;
    const double scale = std::pow(2.0, 1.0 / 1.5);
    const StableSpec s1{1.5, 1.0, 3};
    const StableSpec s2{1.5, 2.0, 3};
    for (int i = 0; i < n; ++i) {
      a.push_back(scale * norm(sample_isotropic_stable(s1, rng)));
      b.push_back(norm(sample_isotropic_stable(s2, rng)));
    }
    const double d = ks_two_sample(a, b);
    const double crit = ks_two_sample_critical(a.size(), b.size(), 0.01);
    out.push_back(make_check("stable_self_similarity", d, crit, d <= crit));
  }
  {
    RngStream rng(seed, 15);
    const int n = 50000;
    std::vector<double> a, b;
    const StableSpec spec{1.2, 1.0, 2};
    const double c = std::sqrt(0.5);
    for (int i = 0; i < n; ++i) {
      const Vec x = sample_isotropic_stable(spec, rng);
      const Vec y = sample_isotropic_stable(spec, rng);
      a.push_back(x[0]);
      b.push_back(c * (y[0] + y[1]));  // 45 degree rotation, first coordinate
    }
    const double d = ks_two_sample(a, b);
    const double crit = ks_two_sample_critical(a.size(), b.size(), 0.01);
    out.push_back(make_check("stable_isotropy", d, crit, d <= crit));
  }
}

void check_targets(std::vector<CheckResult>& out, std::uint64_t seed) {
  {
    const GeneralizedCauchy gc{3, 2.3};
    RngStream rng(seed, 21);
    double worst = 0.0;
    const double h = 1e-6;
    for (int t = 0; t < 20; ++t) {
      Vec x(3);
      for (auto& xi : x) xi = 3.0 * rng.normal();
      const Vec g = gc.grad(x);
      for (int i = 0; i < 3; ++i) {
        Vec xp = x, xm = x;
        xp[static_cast<std::size_t>(i)] += h;
        xm[static_cast<std::size_t>(i)] -= h;
        const double fd = (gc.V(xp) - gc.V(xm)) / (2.0 * h);
        const double scale =
            std::max(1.0, std::fabs(g[static_cast<std::size_t>(i)]));
        worst = std::max(
            worst, std::fabs(fd - g[static_cast<std::size_t>(i)]) / scale);
      }
    }
    out.push_back(make_check("gc_gradient_fd", worst, 1e-5, worst <= 1e-5));
  }
  {
    double worst = -1e300;
    for (const auto& [dim, nu] : std::vector<std::pair<int, double>>{
             {1, 2.0}, {2, 0.8}}) {
      const GeneralizedCauchy gc{dim, nu};
      const TargetSpec spec = gc.as_target_spec();
      for (int i = 0; i <= 2000; ++i) {
        const double r = std::exp(-6.0 + 12.0 * i / 2000.0);
        Vec x(static_cast<std::size_t>(dim), 0.0);
        x[0] = r;
        const double excess =
            gc.V(x) - spec.holder->L * std::pow(r, spec.holder->beta);
        worst = std::max(worst, excess);
      }
    }
    out.push_back(make_check("gc_holder_envelope", worst, 0.0, worst <= 0.0));
  }
  {
    const GeneralizedCauchy gc{2, 2.0};
    double worst = 0.0;
    for (const double R : {0.5, 3.0}) {
      // independent quadrature: linear Simpson inside, log-Simpson for the
      // tail of the normalizer
      auto dens = [&](double r) {
        return std::exp((gc.dim - 1) * std::log(r) -
                        0.5 * (gc.dim + gc.nu) * std::log1p(r * r));
      };
      const int n1 = 200000;
      auto simpson_lin = [&](double lo, double hi) {
        const double h = (hi - lo) / n1;
        double s = 0.0;
        for (int i = 0; i <= n1; ++i) {
          const double r = lo + h * i;
          const double f = r > 0.0 ? dens(r) : 0.0;
          const double w = (i == 0 || i == n1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
          s += w * f;
        }
        return s * h / 3.0;
      };
      auto simpson_log = [&](double lo, double hi) {
        const double llo = std::log(lo), lhi = std::log(hi);
        const double h = (lhi - llo) / n1;
        double s = 0.0;
        for (int i = 0; i <= n1; ++i) {
          const double r = std::exp(llo + h * i);
          const double f = dens(r) * r;  // d r = r d(ln r)
          const double w = (i == 0 || i == n1) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
          s += w * f;
        }
        return s * h / 3.0;
      };
      const double num = simpson_lin(0.0, R);
      const double den = simpson_lin(0.0, R) + simpson_log(R, 1e6);
      const double want = num / den;
      worst = std::max(worst, std::fabs(gc.radial_cdf(R) - want));
    }
    out.push_back(
        make_check("gc_radial_cdf_quadrature", worst, 1e-8, worst <= 1e-8));
  }
  {
    const GeneralizedCauchy gc{1, 1.0};
    RngStream rng(seed, 22);
    const auto xs = sample_exact(gc, 20000, rng);
    const double d = ks_statistic(radii_of(xs),
                                  [&](double r) { return gc.radial_cdf(r); });
    const double crit = ks_one_sample_critical(20000, 0.01);
    out.push_back(make_check("gc_sample_exact_ks", d, crit, d <= crit));
  }
  {
    const GeneralizedCauchy gc{1, 2.0};
    double worst = -1e300;
    for (const double R : {0.5, 1.0, 2.0, 5.0, 10.0, 50.0}) {
      const double bound = cauchy_tail_lower_bound(2.0, 2.0, 1, R);
      const double tail = 1.0 - gc.radial_cdf(R);
      worst = std::max(worst, bound - tail);
    }
    out.push_back(make_check("gc_tail_bound", worst, 0.0, worst <= 0.0));
  }
}

void check_oracles(std::vector<CheckResult>& out, std::uint64_t seed) {
  const GeneralizedCauchy gc{1, 2.0};
  const TargetSpec spec = gc.as_target_spec();
  {
    RngStream rng(seed, 31);
    const double d = oracle_exactness_statistic(
        [&](const Vec& y, RngStream& r) {
          return rgo_sample(spec, y, 0.2, r).sample;
        },
        gc, true, 0.7, 0.2, 40000, rng);
    out.push_back(make_check("oracle_rgo_quadrature", d, 0.02, d <= 0.02));
  }
  {
    RngStream rng(seed, 32);
    const double d = oracle_exactness_statistic(
        [&](const Vec& y, RngStream& r) {
          return raso_sample(spec, y, 0.2, 1.0, r).sample;
        },
        gc, false, 0.7, 0.2, 40000, rng);
    out.push_back(make_check("oracle_raso_quadrature", d, 0.02, d <= 0.02));
  }
  {
    // switch_after = 0 forces the mixture-envelope stage from round one
    RngStream rng(seed, 33);
    const double d = oracle_exactness_statistic(
        [&](const Vec& y, RngStream& r) {
          return raso_sample(spec, y, 0.05, 1.0, r, kDefaultOracleBudget, 0)
              .sample;
        },
        gc, false, 5.0, 0.05, 40000, rng);
    out.push_back(make_check("oracle_envelope_quadrature", d, 0.02, d <= 0.02));
  }
  {
    RngStream rng(seed, 34);
    const int n = 40000;
    std::vector<std::uint64_t> rej;
    rej.reserve(n);
    const Vec y{1.0};
    double mean = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto o = raso_sample(spec, y, 0.2, 1.0, rng);
      rej.push_back(o.rejections);
      mean += static_cast<double>(o.rejections);
    }
    mean /= n;
    const double p = 1.0 / (1.0 + mean);
    // pooled tail keeps expected cell counts comfortably large
    const int cells = 8;
    std::vector<double> obs(cells, 0.0), expd(cells, 0.0);
    for (const auto rj : rej) {
      const int c = rj >= static_cast<std::uint64_t>(cells - 1)
                        ? cells - 1
                        : static_cast<int>(rj);
      obs[static_cast<std::size_t>(c)] += 1.0;
    }
    double q = 1.0;
    for (int c = 0; c < cells - 1; ++c) {
      expd[static_cast<std::size_t>(c)] = n * q * p;
      q *= 1.0 - p;
    }
    expd[cells - 1] = n * q;
    double chi2 = 0.0;
    for (int c = 0; c < cells; ++c) {
      const double e = expd[static_cast<std::size_t>(c)];
      const double o = obs[static_cast<std::size_t>(c)];
      chi2 += (o - e) * (o - e) / e;
    }
    const double crit = chi2_quantile(cells - 2, 0.99);
    out.push_back(make_check("oracle_rejection_geometric", chi2, crit,
                             chi2 <= crit));
  }
  {
    RngStream rng(seed, 35);
    bool threw = false;
    try {
      rgo_sample(spec, Vec{1e6}, 1e-8, rng, 10, 1000000000ull);
    } catch (const OracleBudgetError&) {
      threw = true;
    }
    out.push_back(make_check("oracle_budget_error", threw ? 1.0 : 0.0, 1.0,
                             threw));
  }
  {
    RngStream rng(seed, 36);
    const Vec y{0.5};
    const int n = 20000;
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i < n; ++i)
      m1 += static_cast<double>(raso_sample(spec, y, 0.2, 1.0, rng).rejections);
    for (int i = 0; i < n; ++i)
      m2 += static_cast<double>(
          raso_sample_lower_bounded(spec, -std::log(2.0), y, 0.2, 1.0, rng)
              .rejections);
    m1 /= n;
    m2 /= n;
    // halved acceptance doubles the expected proposal count
    const double ratio = (1.0 + m2) / (1.0 + m1);
    const double err = std::fabs(ratio - 2.0);
    out.push_back(make_check("oracle_lower_bounded_ratio", err, 0.1,
                             err <= 0.1));
  }
  {
    RngStream r1(seed, 37);
    RngStream r2(seed, 37);
    const Oracle inner = [&spec](const Vec& y, RngStream& r) {
      return raso_sample(spec, y, 0.2, 1.0, r);
    };
    const Oracle wrapped =
        inexact_oracle_wrapper(inner, 0.0, stable_proposal_corruptor(0.2, 1.0));
    double worst = 0.0;
    const Vec y{0.3};
    for (int i = 0; i < 200; ++i) {
      const auto a = inner(y, r1);
      const auto b = wrapped(y, r2);
      worst = std::max(worst, std::fabs(a.sample[0] - b.sample[0]));
      if (b.corrupted) worst = std::max(worst, 1.0);
    }
    out.push_back(make_check("inexact_eps0_identity", worst, 0.0, worst == 0.0));

    RngStream r3(seed, 38);
    const Oracle always =
        inexact_oracle_wrapper(inner, 1.0, stable_proposal_corruptor(0.2, 1.0));
    double frac = 0.0;
    for (int i = 0; i < 200; ++i) frac += always(y, r3).corrupted ? 1.0 : 0.0;
    frac /= 200.0;
    out.push_back(make_check("inexact_eps1_corrupts", frac, 1.0, frac == 1.0));
  }
}

}  // namespace

std::vector<CheckResult> run_validation_checks(std::uint64_t seed) {
  std::vector<CheckResult> out;
  check_rng(out, seed);
  check_stable(out, seed);
  check_targets(out, seed);
  check_oracles(out, seed);
  return out;
}

// ---------------------------------------------------------------------------
// CLI

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int run_experiment_cli(int argc, char** argv) {
  CLI::App app{"heavy-tailed proximal sampler harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  bool svg_flag = false;
  std::uint64_t seed_flag = 0;
  int threads_flag = -1;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed_flag, "master seed");
  app.add_option("--threads", threads_flag, "worker threads (0 = hardware)");
  app.add_flag("--svg", svg_flag, "emit plot.svg next to results.csv");

  std::vector<std::pair<std::string, std::string>> overrides;
  for (const auto& key : config_key_names()) {
    if (key == "out" || key == "seed" || key == "threads") continue;
    app.add_option_function<std::string>(
        "--" + key,
        [&overrides, key](const std::string& v) {
          overrides.emplace_back(key, v);
        },
        "config override");
  }

  // overrides live on the root app; let them appear after the subcommand too
  CLI::App* sub_sep =
      app.add_subcommand("separation", "two-sampler study")->fallthrough();
  CLI::App* sub_bounds =
      app.add_subcommand("bounds", "theory curves")->fallthrough();
  CLI::App* sub_val =
      app.add_subcommand("validate", "self checks")->fallthrough();
  CLI::App* sub_run =
      app.add_subcommand("run", "experiment from config")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    ExperimentConfig cfg;
    if (!config_path.empty()) cfg = parse_config_json(read_file(config_path));
    for (const auto& [k, v] : overrides) apply_override(cfg, k, v);
    if (app.count("--seed") > 0) cfg.seed = seed_flag;
    if (app.count("--threads") > 0 && threads_flag >= 0)
      cfg.threads = threads_flag;
    if (svg_flag) cfg.svg = true;
    if (!out_dir.empty()) {
      cfg.out_dir = out_dir;
    } else if (cfg.out_dir.empty()) {
      const char* env = std::getenv("HTPROX_OUT");
      cfg.out_dir = env && *env ? env : "htprox_out";
    }

    if (sub_sep->parsed()) cfg.kind = ExperimentKind::separation;
    if (sub_bounds->parsed()) cfg.kind = ExperimentKind::bounds;
    if (sub_val->parsed()) cfg.kind = ExperimentKind::validate;
    (void)sub_run;  // run keeps the configured experiment.kind

    if (cfg.kind == ExperimentKind::validate) {
      const auto checks = run_validation_checks(cfg.seed);
      bool all = true;
      std::ostringstream report;
      for (const auto& c : checks) {
        report << c.name << " " << fmt_g(c.statistic) << " "
               << fmt_g(c.threshold) << " " << (c.pass ? "PASS" : "FAIL")
               << "\n";
        all = all && c.pass;
      }
      std::fputs(report.str().c_str(), stdout);
      namespace fs = std::filesystem;
      fs::create_directories(cfg.out_dir);
      std::ofstream f(fs::path(cfg.out_dir) / "validate.txt");
      f << report.str();
      return all ? 0 : 1;
    }

    std::vector<ResultRow> rows;
    std::string summary;
    switch (cfg.kind) {
      case ExperimentKind::separation: {
        rows = run_separation(cfg);
        summary = summarize_separation(rows, cfg.epsilons).text;
        break;
      }
      case ExperimentKind::bounds: {
        rows = run_bounds(cfg);
        std::ostringstream s;
        for (const auto& r : rows)
          s << r.div_kind << " k=" << r.k << " value=" << fmt_g(r.div_value)
            << "\n";
        summary = s.str();
        break;
      }
      case ExperimentKind::single_run: {
        rows = run_single(cfg);
        summary = summarize_separation(rows, cfg.epsilons).text;
        break;
      }
      default: break;
    }
    const std::string csv = write_outputs(cfg, rows, summary);
    std::fputs((summary + "wrote " + csv + "\n").c_str(), stdout);
    return 0;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}

}  // namespace htprox
