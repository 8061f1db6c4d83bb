#pragma once

#include "here/core.hpp"
#include "here/eval.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace here {

// Method names: here, here-noverify, here-random, here-score,
// ransac-1k, ransac-10k, ransac-100k.
const std::vector<std::string>& known_methods();
bool is_known_method(const std::string& name);

struct BenchConfig {
  std::vector<std::size_t> grid_n{1000};
  std::vector<double> grid_rho{0.5};
  std::size_t trials = 10;
  std::vector<std::string> methods{"here", "ransac-1k"};
  std::uint64_t seed = 0;  // trial k uses seed + k
  PipelineConfig pipeline;  // xi and seed here also drive RANSAC
  SuccessThresholds thresholds;

  void validate() const;
};

struct TrialRow {
  std::string method;
  std::size_t n = 0;
  double rho = 0.0;
  std::uint64_t seed = 0;
  double e_r_deg = 0.0;
  double e_t = 0.0;
  std::size_t final_size = 0;
  InlierMetrics metrics;
  double time_ms = 0.0;

  // pipeline only; RANSAC rows carry the final size in all three slots
  std::array<std::size_t, 3> stage_sizes{};
  bool failed = false;       // registration threw; transform taken as identity
  bool residuals_ok = true;  // every final member has residual ≤ ξ
  std::vector<std::string> fallbacks;

  bool stages_non_increasing() const;
};

// Runs one method on one instance. Registration errors are recorded in the
// row, not thrown.
TrialRow run_trial(const std::string& method, const CorrespondenceSet& set,
                   const RigidTransform& truth, const std::vector<bool>& inlier_mask,
                   const PipelineConfig& pipeline);

// Full grid, rows sorted by (method, N, rho, seed). progress, when set, sees
// each row as it completes.
std::vector<TrialRow> run_bench(const BenchConfig& cfg,
                                const std::function<void(const TrialRow&)>& progress = {});

struct SummaryRow {
  std::string method;
  std::size_t n = 0;
  double rho = 0.0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double success_rate = 0.0;
  double median_e_r_deg = 0.0;
  double median_e_t = 0.0;
  double median_f1 = 0.0;
  double median_time_ms = 0.0;
};

// rows must be grouped by (method, N, rho), as run_bench returns them.
std::vector<SummaryRow> summarize(const std::vector<TrialRow>& rows,
                                  const SuccessThresholds& thresholds);

double median(std::vector<double> values);

extern const char* const kCsvHeader;
void write_csv(std::ostream& out, const std::vector<TrialRow>& rows);
void write_summary(std::ostream& out, const std::vector<SummaryRow>& summary);

}  // namespace here
