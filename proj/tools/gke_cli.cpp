// Command-line front end: estimate curves from data files, compute
// bandwidths, run replication studies and generate samples. All output is
// plain CSV (LF endings, '.' decimal separator); every subcommand is
// deterministic given its flags and --seed.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gke/bandwidth.hpp"
#include "gke/csv.hpp"
#include "gke/distributions.hpp"
#include "gke/estimator.hpp"
#include "gke/sample.hpp"
#include "gke/simulation.hpp"

namespace {

using gke::format_double;

void write_output(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
}

std::string fmt10(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

struct KeyValues {
  std::string get(const std::string& key, bool required,
                  const std::string& fallback = "") const {
    for (const auto& [k, v] : pairs) {
      if (k == key) return v;
    }
    if (required) throw CLI::ValidationError("missing " + key + "= entry");
    return fallback;
  }
  std::vector<std::pair<std::string, std::string>> pairs;
};

KeyValues parse_key_values(const std::vector<std::string>& tokens,
                           const std::vector<std::string>& allowed) {
  KeyValues out;
  for (const auto& token : tokens) {
    const auto eq = token.find('=');
    if (eq == std::string::npos) {
      throw CLI::ValidationError("expected key=value, got '" + token + "'");
    }
    const std::string key = token.substr(0, eq);
    bool known = false;
    for (const auto& a : allowed) known = known || a == key;
    if (!known) throw CLI::ValidationError("unknown key '" + key + "'");
    out.pairs.emplace_back(key, token.substr(eq + 1));
  }
  return out;
}

int cmd_estimate(const std::string& input, const std::string& output,
                 bool derivative, std::optional<double> bandwidth_flag,
                 bool pdf_law, std::size_t grid_points,
                 std::optional<double> grid_min, std::optional<double> grid_max,
                 const std::string& true_dist_spec,
                 const std::string& histogram_from, std::size_t histogram_bins) {
  const gke::Sample sample = gke::Sample::from_file(input);

  double bw = 0.0;
  if (bandwidth_flag) {
    bw = *bandwidth_flag;
  } else {
    const auto rot = gke::rule_of_thumb_report(sample);
    bw = pdf_law ? gke::pdf_law_bandwidth(
                       gke::ReferenceDistribution::gamma(rot.fit.alpha, rot.fit.beta),
                       sample.size())
                 : rot.bandwidth.value;
  }
  std::fprintf(stderr, "bandwidth = %s\n", format_double(bw).c_str());

  const double lo = grid_min ? *grid_min : std::max(1e-3, 0.5 * sample.min_value());
  const double hi = grid_max ? *grid_max : sample.empirical_quantile(0.999);
  const gke::EvalGrid grid = gke::EvalGrid::uniform(lo, hi, grid_points);

  const auto curve = gke::estimate_on_grid(
      sample, bw, grid,
      derivative ? gke::EstimateKind::Derivative : gke::EstimateKind::Density);

  std::optional<gke::ReferenceDistribution> true_dist;
  if (!true_dist_spec.empty()) {
    true_dist = gke::ReferenceDistribution::parse(true_dist_spec);
  }
  std::vector<double> hist;
  if (!histogram_from.empty()) {
    hist = gke::histogram_density(gke::Sample::from_file(histogram_from), grid,
                                  histogram_bins);
  }

  std::string csv = "x";
  if (true_dist) csv += ",true";
  csv += ",estimate";
  if (!hist.empty()) csv += ",histogram";
  csv += '\n';
  for (std::size_t i = 0; i < curve.size(); ++i) {
    csv += format_double(curve[i].first);
    if (true_dist) {
      const double t = derivative ? true_dist->pdf_derivative(curve[i].first)
                                  : true_dist->pdf(curve[i].first);
      csv += ',';
      csv += format_double(t);
    }
    csv += ',';
    csv += format_double(curve[i].second);
    if (!hist.empty()) {
      csv += ',';
      csv += format_double(hist[i]);
    }
    csv += '\n';
  }
  write_output(output, csv);
  return 0;
}

int cmd_bandwidth(const std::string& input) {
  const gke::Sample sample = gke::Sample::from_file(input);
  const auto rot = gke::rule_of_thumb_report(sample);
  std::string alpha_line = fmt10(rot.fit.alpha);
  if (rot.fit.clamped) {
    const double raw = sample.mean() * sample.mean() / sample.variance();
    alpha_line += " (clamped from " + fmt10(raw) + " to keep I1 finite)";
  }
  std::cout << "n         = " << sample.size() << '\n'
            << "alpha_hat = " << alpha_line << '\n'
            << "beta_hat  = " << fmt10(rot.fit.beta) << '\n'
            << "I1        = " << fmt10(rot.functionals.i1) << '\n'
            << "I2        = " << fmt10(rot.functionals.i2) << '\n'
            << "T         = " << fmt10(rot.functionals.t_const) << '\n'
            << "b0        = " << fmt10(rot.bandwidth.value) << '\n';
  return 0;
}

gke::StudyConfig parse_study_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  gke::StudyConfig cfg;
  cfg.distributions.clear();
  cfg.sizes.clear();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) +
                               ": expected key = value");
    }
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    std::istringstream vs(value);
    std::string item;
    if (key == "distributions") {
      while (std::getline(vs, item, ',')) {
        if (!item.empty()) cfg.distributions.push_back(gke::ReferenceDistribution::parse(item));
      }
    } else if (key == "sizes") {
      while (std::getline(vs, item, ',')) {
        if (!item.empty()) cfg.sizes.push_back(std::stoull(item));
      }
    } else if (key == "replications") {
      cfg.replications = std::stoull(value);
    } else if (key == "mode") {
      if (value == "iid") {
        cfg.mode = gke::StudyMode::IID;
      } else if (value == "mh") {
        cfg.mode = gke::StudyMode::MH;
      } else {
        throw std::runtime_error("mode must be iid or mh, got '" + value + "'");
      }
    } else if (key == "bandwidth_rule") {
      if (value == "derivative") {
        cfg.bandwidth_rule = gke::BandwidthRule::DerivativeLaw;
      } else if (value == "pdf") {
        cfg.bandwidth_rule = gke::BandwidthRule::PdfLaw;
      } else {
        throw std::runtime_error("bandwidth_rule must be derivative or pdf, got '" + value + "'");
      }
    } else if (key == "seed") {
      cfg.seed = std::stoull(value);
    } else if (key == "mh_proposal_step") {
      cfg.mh_proposal_step = std::stod(value);
    } else if (key == "mh_burn_in") {
      cfg.mh_burn_in = std::stoull(value);
    } else {
      throw std::runtime_error("unknown config key: " + key);
    }
  }
  // distributions sizes have no defaults; gamma spec parse above validates
  if (cfg.distributions.empty()) throw std::runtime_error("config needs distributions = ...");
  if (cfg.sizes.empty()) throw std::runtime_error("config needs sizes = ...");
  return cfg;
}

int cmd_study(const std::string& config_path, const std::string& output,
              unsigned threads) {
  gke::StudyConfig cfg = parse_study_config(config_path);
  cfg.threads = threads;
  const auto rows = gke::replication_study(cfg);
  write_output(output, gke::study_csv(rows));
  return 0;
}

int cmd_sample(const std::string& dist_spec, const std::vector<std::string>& mh,
               const std::vector<std::string>& ar1, std::size_t n,
               std::uint64_t seed, const std::string& output) {
  std::optional<gke::Sample> sample;
  if (!dist_spec.empty()) {
    sample = gke::ReferenceDistribution::parse(dist_spec).sample(n, seed);
  } else if (!mh.empty()) {
    const auto kv = parse_key_values(mh, {"target", "step", "burn_in"});
    gke::MHConfig cfg{gke::ReferenceDistribution::parse(kv.get("target", true)),
                      1.0, 1000, seed, 0};
    if (const auto s = kv.get("step", false); !s.empty()) cfg.proposal_step = std::stod(s);
    if (const auto b = kv.get("burn_in", false); !b.empty()) cfg.burn_in = std::stoull(b);
    sample = gke::mh_chain(cfg, n);
  } else if (!ar1.empty()) {
    const auto kv = parse_key_values(ar1, {"rho", "noise", "burn_in"});
    gke::AR1Config cfg{std::stod(kv.get("rho", true)),
                       gke::ReferenceDistribution::parse(kv.get("noise", true)),
                       1000, seed, 0};
    if (const auto b = kv.get("burn_in", false); !b.empty()) cfg.burn_in = std::stoull(b);
    sample = gke::ar1_chain(cfg, n);
  } else {
    throw CLI::ValidationError("one of --dist, --mh or --ar1 is required");
  }
  std::string text;
  for (double v : sample->values()) {
    text += format_double(v);
    text += '\n';
  }
  write_output(output, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gamma-kernel density and density-derivative estimation on [0, inf)"};
  app.require_subcommand(1);

  // estimate
  std::string est_input, est_output = "-", est_true_dist, est_hist_from;
  bool est_derivative = false, est_density = false, est_rot = false, est_pdf_law = false;
  double est_bandwidth = 0.0;
  std::size_t est_grid_points = gke::EvalGrid::kDefaultPoints, est_hist_bins = 64;
  double est_grid_min = 0.0, est_grid_max = 0.0;
  auto* estimate = app.add_subcommand("estimate", "Estimate a curve from a data file");
  estimate->add_option("-i,--input", est_input, "sample file, one value per line")->required();
  estimate->add_option("-o,--output", est_output, "output CSV path, - for stdout");
  auto* flag_deriv = estimate->add_flag("--derivative", est_derivative, "estimate f'");
  estimate->add_flag("--density", est_density, "estimate f (default)")->excludes(flag_deriv);
  auto* opt_bw = estimate->add_option("--bandwidth", est_bandwidth, "explicit bandwidth")
                     ->check(CLI::PositiveNumber);
  estimate->add_flag("--rule-of-thumb", est_rot, "select bandwidth by rule of thumb (default)")
      ->excludes(opt_bw);
  estimate->add_flag("--pdf-law", est_pdf_law,
                     "use the pdf-estimation law T^(2/5) n^(-2/5) instead of b0")
      ->excludes(opt_bw);
  estimate->add_option("--grid-points", est_grid_points, "grid size")->check(CLI::Range(2u, 100000u));
  auto* opt_gmin = estimate->add_option("--grid-min", est_grid_min, "grid lower cut")
                       ->check(CLI::PositiveNumber);
  auto* opt_gmax = estimate->add_option("--grid-max", est_grid_max, "grid upper cut")
                       ->check(CLI::PositiveNumber);
  estimate->add_option("--true-dist", est_true_dist,
                       "reference spec; adds a 'true' column");
  estimate->add_option("--histogram-from", est_hist_from,
                       "sample file; adds a 'histogram' column");
  estimate->add_option("--histogram-bins", est_hist_bins, "histogram bins")
      ->check(CLI::Range(1u, 100000u));

  // bandwidth
  std::string bw_input;
  auto* bandwidth = app.add_subcommand("bandwidth", "Rule-of-thumb bandwidth report");
  bandwidth->add_option("-i,--input", bw_input, "sample file")->required();

  // study
  std::string study_config, study_output = "-";
  unsigned study_threads = 0;
  auto* study = app.add_subcommand("study", "Run a replication study from a config file");
  study->add_option("-c,--config", study_config, "key = value config file")->required();
  study->add_option("-o,--output", study_output, "output CSV path, - for stdout");
  study->add_option("--threads", study_threads, "worker threads (0 = auto)");

  // sample
  std::string smp_dist, smp_output = "-";
  std::vector<std::string> smp_mh, smp_ar1;
  std::size_t smp_n = 0;
  std::uint64_t smp_seed = gke::kDefaultSeed;
  auto* sample = app.add_subcommand("sample", "Generate i.i.d. or dependent samples");
  auto* opt_dist = sample->add_option("--dist", smp_dist, "i.i.d. draws from a reference spec");
  auto* opt_mh = sample->add_option("--mh", smp_mh,
                                    "Metropolis-Hastings chain: target=SPEC [step=S] [burn_in=B]")
                     ->expected(-1)->excludes(opt_dist);
  sample->add_option("--ar1", smp_ar1, "AR(1) chain: rho=R noise=SPEC [burn_in=B]")
      ->expected(-1)->excludes(opt_dist)->excludes(opt_mh);
  sample->add_option("-n,--n", smp_n, "sample size")->required()->check(CLI::PositiveNumber);
  sample->add_option("--seed", smp_seed, "RNG seed");
  sample->add_option("-o,--output", smp_output, "output path, - for stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*estimate) {
      return cmd_estimate(est_input, est_output, est_derivative,
                          opt_bw->count() ? std::optional<double>(est_bandwidth) : std::nullopt,
                          est_pdf_law, est_grid_points,
                          opt_gmin->count() ? std::optional<double>(est_grid_min) : std::nullopt,
                          opt_gmax->count() ? std::optional<double>(est_grid_max) : std::nullopt,
                          est_true_dist, est_hist_from, est_hist_bins);
    }
    if (*bandwidth) return cmd_bandwidth(bw_input);
    if (*study) return cmd_study(study_config, study_output, study_threads);
    if (*sample) return cmd_sample(smp_dist, smp_mh, smp_ar1, smp_n, smp_seed, smp_output);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
