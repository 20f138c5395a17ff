// Command-line front end. All arithmetic happens in the library; this file
// only parses flags, routes data, and serializes results, so emitted numbers
// match direct library calls bit for bit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "akde/bandwidth.hpp"
#include "akde/errors.hpp"
#include "akde/estimators.hpp"
#include "akde/kernels.hpp"
#include "akde/lognormal.hpp"
#include "akde/montecarlo.hpp"
#include "akde/samples.hpp"
#include "akde/special.hpp"
#include "akde/table.hpp"
#include "akde/verify.hpp"
#include "akde/version.hpp"

namespace {

using namespace akde;

enum class BandwidthMode { plugin, cv, fixed };

struct GridRequest {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 0;
  bool geometric = true;
  bool given = false;
};

struct Options {
  std::string kernel = "gamma";
  std::string role = "improper";
  std::string bandwidth = "plugin";
  std::string grid;
  std::string input;
  std::string format = "csv";
  std::string out;
  std::string bandwidth_report = "cv";
  std::uint64_t seed = 1;
  std::size_t reps = 100;
  std::size_t n = 300;
  double mu = 1.0;
  double Sigma = 1.0;
  bool quick = false;
  std::string only;
  double tolerance_scale = 1.0;
};

BandwidthMode parse_bandwidth(const std::string& text, double& fixed_sigma) {
  if (text == "plugin") return BandwidthMode::plugin;
  if (text == "cv") return BandwidthMode::cv;
  if (text.rfind("fixed:", 0) == 0) {
    const std::string value = text.substr(6);
    try {
      std::size_t used = 0;
      fixed_sigma = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw std::invalid_argument("--bandwidth fixed: bad value '" + value + "'");
    }
    if (!(fixed_sigma > 0.0) || !std::isfinite(fixed_sigma)) {
      throw std::invalid_argument("--bandwidth fixed: value must be positive");
    }
    return BandwidthMode::fixed;
  }
  throw std::invalid_argument("--bandwidth must be plugin, cv, or fixed:VALUE");
}

GridRequest parse_grid(const std::string& text) {
  GridRequest g;
  if (text.empty()) return g;
  std::vector<std::string> parts;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ':')) {
    parts.push_back(token);
  }
  if (parts.size() < 3 || parts.size() > 4) {
    throw std::invalid_argument("--grid needs MIN:MAX:COUNT[:geo|ari]");
  }
  try {
    g.min = std::stod(parts[0]);
    g.max = std::stod(parts[1]);
    g.count = static_cast<std::size_t>(std::stoul(parts[2]));
  } catch (const std::exception&) {
    throw std::invalid_argument("--grid: non-numeric field in '" + text + "'");
  }
  if (parts.size() == 4) {
    if (parts[3] == "geo") {
      g.geometric = true;
    } else if (parts[3] == "ari") {
      g.geometric = false;
    } else {
      throw std::invalid_argument("--grid: spacing must be geo or ari");
    }
  }
  if (g.count < 2) {
    throw std::invalid_argument("--grid: need at least two points");
  }
  if (!(g.min < g.max)) {
    throw std::invalid_argument("--grid: need MIN < MAX");
  }
  g.given = true;
  return g;
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw std::invalid_argument("--format must be csv or json");
}

void emit(const Table& table, const Options& opt) {
  const OutputFormat format = parse_format(opt.format);
  if (opt.out.empty()) {
    write_table(std::cout, table, format);
    return;
  }
  std::ofstream file(opt.out, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot open output file: " + opt.out);
  }
  write_table(file, table, format);
}

const char* bandwidth_mode_name(BandwidthMode mode) {
  switch (mode) {
    case BandwidthMode::plugin: return "plugin";
    case BandwidthMode::cv: return "cv";
    case BandwidthMode::fixed: return "fixed";
  }
  return "?";
}

std::vector<double> default_estimate_grid(KernelFamily family, Role role,
                                          const SampleSet& samples,
                                          double sigma) {
  if (family == KernelFamily::gaussian) {
    // symmetric baseline lives on the whole line
    const double pad = 4.0 * sigma;
    return arithmetic_grid(samples.min() - pad, samples.max() + pad, 512);
  }
  const LogParams lp = estimate_log_params(samples);
  const double spread = lp.sigma > 0.0 ? lp.sigma : 0.1;
  double lo = 0.5 * std::exp(lp.mu + spread * normal_quantile(1e-5));
  double hi = 2.0 * std::exp(lp.mu + spread * normal_quantile(1.0 - 1e-5));
  const double dmin = KernelSpec(family, role, sigma).domain_min();
  if (dmin > 0.0) {
    lo = std::max(lo, dmin * (1.0 + 1e-9));
    hi = std::max(hi, lo * 16.0);
  }
  return geometric_grid(lo, hi, 512);
}

int run_estimate(const Options& opt) {
  if (opt.input.empty()) {
    throw std::invalid_argument("estimate: --input is required");
  }
  const KernelFamily family = parse_family(opt.kernel);
  const Role role = parse_role(opt.role);
  double fixed_sigma = 0.0;
  const BandwidthMode mode = parse_bandwidth(opt.bandwidth, fixed_sigma);
  const SampleSet samples = read_samples_file(opt.input);

  double sigma = 0.0;
  switch (mode) {
    case BandwidthMode::plugin:
      sigma = plugin_bandwidth(family, role, samples);
      break;
    case BandwidthMode::cv:
      sigma = cv_profile(family, role, samples).cv_argmin;
      break;
    case BandwidthMode::fixed:
      sigma = fixed_sigma;
      break;
  }

  const GridRequest req = parse_grid(opt.grid);
  std::vector<double> xs;
  if (req.given) {
    if (family != KernelFamily::gaussian && !(req.min > 0.0)) {
      throw std::invalid_argument("--grid: MIN must be positive for this kernel");
    }
    xs = req.geometric ? geometric_grid(req.min, req.max, req.count)
                       : arithmetic_grid(req.min, req.max, req.count);
  } else {
    xs = default_estimate_grid(family, role, samples, sigma);
  }

  std::vector<double> density;
  if (family == KernelFamily::gaussian) {
    auto normal = [](double z) { return normal_pdf(z); };
    density.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
      density[i] = standard_kde(samples, normal, sigma, xs[i]);
    }
  } else {
    const DensityEstimate est(KernelSpec(family, role, sigma), samples);
    density = est.on_grid(xs);
  }

  Table table;
  table.meta = {
      {"tool", std::string("akde ") + kVersion},
      {"kernel", family_name(family)},
      {"role", role_name(role)},
      {"bandwidth_mode", bandwidth_mode_name(mode)},
      {"sigma", format_double(sigma)},
      {"n", std::to_string(samples.size())},
  };
  table.columns = {"x", "density"};
  table.rows.reserve(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    table.rows.push_back({Cell(xs[i]), Cell(density[i])});
  }
  emit(table, opt);
  return 0;
}

int run_bandwidth(const Options& opt) {
  if (opt.input.empty()) {
    throw std::invalid_argument("bandwidth: --input is required");
  }
  const KernelFamily family = parse_family(opt.kernel);
  const Role role = parse_role(opt.role);
  if (opt.bandwidth_report != "plugin" && opt.bandwidth_report != "cv") {
    throw std::invalid_argument("bandwidth: --bandwidth must be plugin or cv");
  }
  const BandwidthMode mode = opt.bandwidth_report == "plugin"
                                 ? BandwidthMode::plugin
                                 : BandwidthMode::cv;
  const SampleSet samples = read_samples_file(opt.input);

  Table table;
  table.meta = {
      {"tool", std::string("akde ") + kVersion},
      {"kernel", family_name(family)},
      {"role", role_name(role)},
      {"n", std::to_string(samples.size())},
  };
  if (mode == BandwidthMode::plugin) {
    const double sigma = plugin_bandwidth(family, role, samples);
    table.meta.emplace_back("bandwidth_mode", "plugin");
    table.columns = {"sigma_plugin"};
    table.rows.push_back({Cell(sigma)});
    emit(table, opt);
    return 0;
  }

  const GridRequest req = parse_grid(opt.grid);
  std::vector<double> grid;
  if (req.given) {
    if (!(req.min > 0.0)) {
      throw std::invalid_argument("--grid: sigma grid needs MIN > 0");
    }
    grid = req.geometric ? geometric_grid(req.min, req.max, req.count)
                         : arithmetic_grid(req.min, req.max, req.count);
  }
  const BandwidthProfile profile = cv_profile(family, role, samples, grid);
  table.meta.emplace_back("bandwidth_mode", "cv");
  table.meta.emplace_back("cv_argmin", format_double(profile.cv_argmin));
  if (profile.plugin) {
    table.meta.emplace_back("sigma_plugin", format_double(*profile.plugin));
  }
  const bool with_asym = !profile.asymptotic_mise.empty();
  table.columns = {"sigma", "cv_score"};
  if (with_asym) {
    table.columns.push_back("asymptotic_mise");
  }
  for (std::size_t g = 0; g < profile.sigma.size(); ++g) {
    std::vector<Cell> row{Cell(profile.sigma[g]), Cell(profile.cv_score[g])};
    if (with_asym) {
      row.emplace_back(profile.asymptotic_mise[g]);
    }
    table.rows.push_back(std::move(row));
  }
  emit(table, opt);
  return 0;
}

double quantile_type7(std::vector<double> sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= sorted.size()) {
    return sorted.back();
  }
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

int run_simulate(const Options& opt) {
  const KernelFamily family = parse_family(opt.kernel);
  const Role role = parse_role(opt.role);
  if (opt.reps < 2) {
    throw std::invalid_argument("simulate: need --reps >= 2");
  }
  if (!(opt.Sigma > 0.0)) {
    throw std::invalid_argument("simulate: need --Sigma > 0");
  }
  const std::size_t reps = opt.quick && opt.reps > 20 ? 20 : opt.reps;
  const LogNormalRef truth(opt.mu, opt.Sigma);

  const GridRequest req = parse_grid(opt.grid);
  std::vector<double> grid;
  if (req.given) {
    if (!(req.min > 0.0)) {
      throw std::invalid_argument("--grid: sigma grid needs MIN > 0");
    }
    grid = req.geometric ? geometric_grid(req.min, req.max, req.count)
                         : arithmetic_grid(req.min, req.max, req.count);
  } else {
    const std::size_t points = opt.quick ? 15 : 40;
    try {
      const double center =
          plugin_bandwidth(family, role, opt.mu, opt.Sigma, opt.n);
      grid = geometric_grid(center / 5.0, center * 5.0, points);
    } catch (const UnsupportedAsymptotics&) {
      grid = geometric_grid(0.01, 2.0, points);
    }
  }

  const RandomStream root(opt.seed);
  std::vector<std::vector<double>> scores(reps);
  std::vector<double> argmin(reps);
  std::vector<double> plugin_fit(reps);
  parallel_index(reps, default_execution(), [&](std::size_t r) {
    const SampleSet sample = truth.sample(opt.n, root.substream(r));
    // the inner profile stays serial; replications are the parallel axis
    const BandwidthProfile profile =
        cv_profile(family, role, sample, grid, Execution::serial);
    scores[r] = profile.cv_score;
    argmin[r] = profile.cv_argmin;
    plugin_fit[r] = profile.plugin ? *profile.plugin
                                   : std::numeric_limits<double>::quiet_NaN();
  });

  Table table;
  table.meta = {
      {"tool", std::string("akde ") + kVersion},
      {"kernel", family_name(family)},
      {"role", role_name(role)},
      {"mu", format_double(opt.mu)},
      {"Sigma", format_double(opt.Sigma)},
      {"n", std::to_string(opt.n)},
      {"replications", std::to_string(reps)},
      {"seed", std::to_string(opt.seed)},
  };
  table.columns = {"record", "rep", "sigma", "value"};
  for (std::size_t r = 0; r < reps; ++r) {
    for (std::size_t g = 0; g < grid.size(); ++g) {
      table.rows.push_back({Cell(std::string("cv")),
                            Cell(static_cast<std::int64_t>(r)), Cell(grid[g]),
                            Cell(scores[r][g])});
    }
  }
  for (std::size_t r = 0; r < reps; ++r) {
    table.rows.push_back({Cell(std::string("argmin")),
                          Cell(static_cast<std::int64_t>(r)), Cell(argmin[r]),
                          Cell()});
    if (std::isfinite(plugin_fit[r])) {
      table.rows.push_back({Cell(std::string("plugin")),
                            Cell(static_cast<std::int64_t>(r)),
                            Cell(plugin_fit[r]), Cell()});
    }
  }
  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::vector<double> column(reps);
    for (std::size_t r = 0; r < reps; ++r) {
      column[r] = scores[r][g];
    }
    std::sort(column.begin(), column.end());
    const std::pair<const char*, double> bands[3] = {
        {"q05", 0.05}, {"q50", 0.50}, {"q95", 0.95}};
    for (const auto& [name, p] : bands) {
      table.rows.push_back({Cell(std::string(name)), Cell(), Cell(grid[g]),
                            Cell(quantile_type7(column, p))});
    }
  }
  emit(table, opt);
  return 0;
}

int run_verify(const Options& opt, const char* argv0) {
  VerifyOptions vo;
  vo.quick = opt.quick;
  vo.tolerance_scale = opt.tolerance_scale;
  vo.only = opt.only;
  vo.cli_path = argv0;
  vo.seed = opt.seed;
  const auto results = run_acceptance(vo);
  bool all_passed = true;
  for (const auto& r : results) {
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name;
    std::cout << "  (" << format_double(r.seconds) << " s)\n";
    for (const auto& line : r.details) {
      std::cout << "       " << line << "\n";
    }
    all_passed = all_passed && r.passed;
  }
  if (results.empty()) {
    std::cerr << "error: no criterion matched '" << opt.only << "'\n";
    return 2;
  }
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  CLI::App app{"asymmetric kernel density estimation for positive data"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* cmd, bool with_input) {
    cmd->add_option("--kernel", opt.kernel,
                    "kernel family: gamma, lognormal, birnbaum-saunders, "
                    "inverse-gaussian, reciprocal-inverse-gaussian, gaussian");
    cmd->add_option("--role", opt.role, "parametrization role: improper, proper");
    cmd->add_option("--format", opt.format, "output format: csv, json");
    cmd->add_option("--out", opt.out, "output path (default: stdout)");
    if (with_input) {
      cmd->add_option("--input", opt.input, "observations, one or more per line");
    }
  };

  CLI::App* estimate = app.add_subcommand("estimate", "evaluate a density estimate on a grid");
  add_common(estimate, true);
  estimate->add_option("--bandwidth", opt.bandwidth, "plugin, cv, or fixed:VALUE");
  estimate->add_option("--grid", opt.grid, "evaluation grid MIN:MAX:COUNT[:geo|ari]");

  CLI::App* bandwidth = app.add_subcommand("bandwidth", "report plugin and cross-validation bandwidths");
  add_common(bandwidth, true);
  bandwidth->add_option("--bandwidth", opt.bandwidth_report, "plugin or cv (default)");
  bandwidth->add_option("--grid", opt.grid, "sigma grid MIN:MAX:COUNT[:geo|ari]");

  CLI::App* simulate = app.add_subcommand("simulate", "replicated cross-validation experiment");
  add_common(simulate, false);
  simulate->add_option("--mu", opt.mu, "true log-mean");
  simulate->add_option("--Sigma", opt.Sigma, "true log-standard-deviation");
  simulate->add_option("--n", opt.n, "sample size per replication");
  simulate->add_option("--reps", opt.reps, "number of replications");
  simulate->add_option("--seed", opt.seed, "random seed");
  simulate->add_option("--grid", opt.grid, "sigma grid MIN:MAX:COUNT[:geo|ari]");
  simulate->add_flag("--quick", opt.quick, "reduced replication count");

  CLI::App* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_flag("--quick", opt.quick,
                   "reduced replication counts, runtime budgets not enforced");
  verify->add_option("--only", opt.only, "run a single criterion by name");
  verify->add_option("--seed", opt.seed, "random seed");
  verify->add_option("--tolerance-scale", opt.tolerance_scale)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(estimate)) return run_estimate(opt);
    if (app.got_subcommand(bandwidth)) return run_bandwidth(opt);
    if (app.got_subcommand(simulate)) return run_simulate(opt);
    return run_verify(opt, argv[0]);
  } catch (const akde::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const akde::InsufficientSamples& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const akde::UnsupportedAsymptotics& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }
}
