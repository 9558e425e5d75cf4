#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "gke/bandwidth.hpp"
#include "gke/distributions.hpp"
#include "gke/estimator.hpp"
#include "gke/sample.hpp"

namespace gke {

inline constexpr std::uint64_t kDefaultSeed = 12345;

// Metropolis-Hastings targeting a reference density, with a multiplicative
// random walk x' = x exp(zeta), zeta ~ U[-step, step]. The walk never leaves
// the positive semi-axis and the Jacobian correction makes the acceptance
// ratio f(x') x' / (f(x) x).
struct MHConfig {
  ReferenceDistribution target;
  double proposal_step = 1.5;
  std::size_t burn_in = 1000;
  std::size_t thin = 3;  // keep every thin-th state
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t stream = 0;
};

Sample mh_chain(const MHConfig& cfg, std::size_t n, double* acceptance_rate = nullptr);

// AR(1): X_i = rho X_{i-1} + eps_i, started at the noise mean and burned in.
// The emitted chain is validated; a non-positive value aborts generation.
struct AR1Config {
  double rho_ar;
  ReferenceDistribution noise;
  std::size_t burn_in = 1000;
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t stream = 0;
};

Sample ar1_chain(const AR1Config& cfg, std::size_t n);

// m = int (f'(x) - estimate(x))^2 dx, trapezoid over the grid.
double error_metric_against(const ReferenceDistribution& dist, const EvalGrid& grid,
                            const std::function<double(double)>& estimate);
double error_metric(const ReferenceDistribution& dist, const Sample& s,
                    const Bandwidth& b, const EvalGrid& grid);

// Metric domain used by the replication study: [1e-3, q_0.999] of the target
// distribution itself, so every sample size is scored over the same window.
// A sample-derived window shrinks at small n and hides exactly the error the
// tables count.
EvalGrid study_grid(const ReferenceDistribution& dist);

enum class StudyMode { IID, MH };
enum class BandwidthRule { DerivativeLaw, PdfLaw };

struct StudyConfig {
  std::vector<ReferenceDistribution> distributions;
  std::vector<std::size_t> sizes;
  std::size_t replications = 100;
  StudyMode mode = StudyMode::IID;
  BandwidthRule bandwidth_rule = BandwidthRule::DerivativeLaw;
  double mh_proposal_step = 1.5;
  std::size_t mh_burn_in = 1000;
  std::size_t mh_thin = 3;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;  // 0 = hardware concurrency
};

struct ErrorSummary {
  std::string distribution;
  std::size_t n;
  StudyMode mode;
  double mean_m;
  double std_m;
};

// Stream id of one replication; exposed so failures can name the seed that
// reproduces them.
std::uint64_t replication_stream(std::size_t cell_index, std::size_t replication);

// For each (distribution, n): generate `replications` samples, select the
// bandwidth per replication by rule of thumb, compute m on the default grid
// and report mean and standard deviation. Bit-identical output for a given
// config regardless of thread count.
std::vector<ErrorSummary> replication_study(const StudyConfig& cfg);

std::string study_csv(const std::vector<ErrorSummary>& rows);

// Density-normalized histogram of a (typically long-run) sample, evaluated at
// the grid points; the dependent-data overlays treat it as the true pdf.
std::vector<double> histogram_density(const Sample& s, const EvalGrid& grid,
                                      std::size_t bins);

}  // namespace gke
