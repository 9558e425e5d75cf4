#include "gke/simulation.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

#include "gke/csv.hpp"
#include "gke/errors.hpp"
#include "gke/quadrature.hpp"
#include "gke/rng.hpp"

namespace gke {

Sample mh_chain(const MHConfig& cfg, std::size_t n, double* acceptance_rate) {
  if (n == 0) throw std::invalid_argument("mh_chain: need n >= 1");
  if (!(cfg.proposal_step > 0.0)) {
    throw std::invalid_argument("mh_chain: proposal_step must be positive");
  }
  const std::size_t thin = cfg.thin == 0 ? 1 : cfg.thin;
  SplitMix64 rng = SplitMix64::for_stream(cfg.seed, cfg.stream);
  double x = cfg.target.mean();
  double log_f = std::log(cfg.target.pdf(x));
  std::size_t accepted = 0;
  const std::size_t total = cfg.burn_in + n * thin;
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < total; ++i) {
    const double zeta = (2.0 * rng.next_unit() - 1.0) * cfg.proposal_step;
    const double proposal = x * std::exp(zeta);
    const double log_f_prop = std::log(cfg.target.pdf(proposal));
    const double log_ratio = log_f_prop + std::log(proposal) - log_f - std::log(x);
    if (log_ratio >= 0.0 || std::log(rng.next_open_unit()) < log_ratio) {
      x = proposal;
      log_f = log_f_prop;
      ++accepted;
    }
    if (i >= cfg.burn_in && (i - cfg.burn_in) % thin == thin - 1) {
      out.push_back(x);
    }
  }
  if (acceptance_rate) {
    *acceptance_rate = static_cast<double>(accepted) / static_cast<double>(total);
  }
  return Sample(std::move(out), DataMode::Dependent,
                "mh target=" + cfg.target.label() + " seed=" + std::to_string(cfg.seed) +
                    " stream=" + std::to_string(cfg.stream));
}

Sample ar1_chain(const AR1Config& cfg, std::size_t n) {
  if (n == 0) throw std::invalid_argument("ar1_chain: need n >= 1");
  if (!(std::abs(cfg.rho_ar) < 1.0)) {
    throw std::invalid_argument("ar1_chain: |rho_ar| must be below 1");
  }
  SplitMix64 rng = SplitMix64::for_stream(cfg.seed, cfg.stream);
  double x = cfg.noise.mean();
  std::vector<double> out;
  out.reserve(n);
  const std::size_t total = cfg.burn_in + n;
  for (std::size_t i = 0; i < total; ++i) {
    x = cfg.rho_ar * x + cfg.noise.draw(rng);
    if (i >= cfg.burn_in) out.push_back(x);
  }
  for (double v : out) {
    if (!(v > 0.0)) {
      throw GenerationError(
          "ar1_chain: chain left the positive semi-axis (rho_ar = " +
          format_double(cfg.rho_ar) + "); use rho_ar >= 0 with positive noise");
    }
  }
  return Sample(std::move(out), DataMode::Dependent,
                "ar1 rho=" + format_double(cfg.rho_ar) + " noise=" + cfg.noise.label() +
                    " seed=" + std::to_string(cfg.seed) +
                    " stream=" + std::to_string(cfg.stream));
}

double error_metric_against(const ReferenceDistribution& dist, const EvalGrid& grid,
                            const std::function<double(double)>& estimate) {
  const auto& xs = grid.points();
  std::vector<double> sq(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double diff = dist.pdf_derivative(xs[i]) - estimate(xs[i]);
    sq[i] = diff * diff;
  }
  return trapezoid(xs, sq);
}

double error_metric(const ReferenceDistribution& dist, const Sample& s,
                    const Bandwidth& b, const EvalGrid& grid) {
  const GammaKernelEstimator est(s, b.value);
  return error_metric_against(dist, grid,
                              [&est](double x) { return est.derivative(x); });
}

EvalGrid study_grid(const ReferenceDistribution& dist) {
  return EvalGrid::uniform(1e-3, dist.quantile(0.999), EvalGrid::kDefaultPoints);
}

std::uint64_t replication_stream(std::size_t cell_index, std::size_t replication) {
  return (static_cast<std::uint64_t>(cell_index) << 32) ^
         static_cast<std::uint64_t>(replication);
}

namespace {

struct StudyTask {
  std::size_t cell;
  std::size_t dist_index;
  std::size_t size_index;
  std::size_t replication;
};

double run_replication(const StudyConfig& cfg, const StudyTask& task) {
  const ReferenceDistribution& dist = cfg.distributions[task.dist_index];
  const std::size_t n = cfg.sizes[task.size_index];
  const std::uint64_t stream = replication_stream(task.cell, task.replication);
  Sample s = cfg.mode == StudyMode::IID
                 ? dist.sample(n, cfg.seed, stream)
                 : mh_chain({dist, cfg.mh_proposal_step, cfg.mh_burn_in, cfg.mh_thin,
                             cfg.seed, stream},
                            n);
  const RuleOfThumbReport rot = rule_of_thumb_report(s);
  Bandwidth bw = rot.bandwidth;
  if (cfg.bandwidth_rule == BandwidthRule::PdfLaw) {
    const auto reference = ReferenceDistribution::gamma(rot.fit.alpha, rot.fit.beta);
    bw = Bandwidth{pdf_law_bandwidth(reference, s.size()), s.size(),
                   BandwidthSource::Explicit};
  }
  return error_metric(dist, s, bw, study_grid(dist));
}

}  // namespace

std::vector<ErrorSummary> replication_study(const StudyConfig& cfg) {
  if (cfg.distributions.empty() || cfg.sizes.empty()) {
    throw std::invalid_argument("replication_study: need distributions and sizes");
  }
  if (cfg.replications == 0) {
    throw std::invalid_argument("replication_study: need replications >= 1");
  }
  std::vector<StudyTask> tasks;
  const std::size_t cells = cfg.distributions.size() * cfg.sizes.size();
  tasks.reserve(cells * cfg.replications);
  for (std::size_t d = 0; d < cfg.distributions.size(); ++d) {
    for (std::size_t s = 0; s < cfg.sizes.size(); ++s) {
      const std::size_t cell = d * cfg.sizes.size() + s;
      for (std::size_t r = 0; r < cfg.replications; ++r) {
        tasks.push_back({cell, d, s, r});
      }
    }
  }

  std::vector<double> metric(tasks.size(), 0.0);
  std::vector<std::exception_ptr> failures(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        metric[i] = run_replication(cfg, tasks[i]);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };

  unsigned threads = cfg.threads != 0 ? cfg.threads : std::thread::hardware_concurrency();
  if (threads == 0) threads = 1;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(tasks.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  // Report the first failure in task order so reruns reproduce it.
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (failures[i]) {
      try {
        std::rethrow_exception(failures[i]);
      } catch (const std::exception& e) {
        throw GenerationError(
            "replication failed (seed=" + std::to_string(cfg.seed) + ", stream=" +
            std::to_string(replication_stream(tasks[i].cell, tasks[i].replication)) +
            ", " + cfg.distributions[tasks[i].dist_index].label() + ", n=" +
            std::to_string(cfg.sizes[tasks[i].size_index]) + "): " + e.what());
      }
    }
  }

  std::vector<ErrorSummary> out;
  out.reserve(cells);
  std::size_t offset = 0;
  for (std::size_t d = 0; d < cfg.distributions.size(); ++d) {
    for (std::size_t s = 0; s < cfg.sizes.size(); ++s) {
      const std::size_t r = cfg.replications;
      double mean = 0.0;
      for (std::size_t i = 0; i < r; ++i) mean += metric[offset + i];
      mean /= static_cast<double>(r);
      double var = 0.0;
      for (std::size_t i = 0; i < r; ++i) {
        const double dlt = metric[offset + i] - mean;
        var += dlt * dlt;
      }
      const double sd = r > 1 ? std::sqrt(var / static_cast<double>(r - 1)) : 0.0;
      out.push_back({cfg.distributions[d].label(), cfg.sizes[s], cfg.mode, mean, sd});
      offset += r;
    }
  }
  return out;
}

std::string study_csv(const std::vector<ErrorSummary>& rows) {
  std::string out = "distribution,n,mode,mean_m,std_m\n";
  for (const auto& row : rows) {
    out += row.distribution;
    out += ',';
    out += std::to_string(row.n);
    out += ',';
    out += row.mode == StudyMode::MH ? "mh" : "iid";
    out += ',';
    out += format_double(row.mean_m);
    out += ',';
    out += format_double(row.std_m);
    out += '\n';
  }
  return out;
}

std::vector<double> histogram_density(const Sample& s, const EvalGrid& grid,
                                      std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("histogram_density: need bins >= 1");
  const double lo = grid.lower_cut();
  const double hi = grid.upper_cut();
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<double> counts(bins, 0.0);
  for (double v : s.values()) {
    if (v < lo || v >= hi) continue;
    auto bin = static_cast<std::size_t>((v - lo) / width);
    if (bin >= bins) bin = bins - 1;
    counts[bin] += 1.0;
  }
  const double norm = static_cast<double>(s.size()) * width;
  std::vector<double> out;
  out.reserve(grid.size());
  for (double x : grid.points()) {
    auto bin = static_cast<std::size_t>((x - lo) / width);
    if (bin >= bins) bin = bins - 1;
    out.push_back(counts[bin] / norm);
  }
  return out;
}

}  // namespace gke
