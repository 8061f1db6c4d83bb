#include "here/bench.hpp"

#include "here/pipeline.hpp"
#include "here/synth.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace here {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::size_t ransac_iterations(const std::string& method) {
  if (method == "ransac-1k") return 1000;
  if (method == "ransac-10k") return 10000;
  if (method == "ransac-100k") return 100000;
  return 0;
}

// Fixed-point with trailing zeros trimmed; never exponent notation.
std::string fmt(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.6f", v);
  std::string s = buf.data();
  const auto dot = s.find('.');
  if (dot != std::string::npos) {
    s.erase(s.find_last_not_of('0') + 1);
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

bool residuals_within(const RigidTransform& T, const CorrespondenceSet& set,
                      const ConsensusSet& c, double xi) {
  return std::all_of(c.indices.begin(), c.indices.end(),
                     [&](std::size_t i) { return residual(T, set[i]) <= xi; });
}

}  // namespace

const std::vector<std::string>& known_methods() {
  static const std::vector<std::string> names{"here",       "here-noverify", "here-random",
                                              "here-score", "ransac-1k",     "ransac-10k",
                                              "ransac-100k"};
  return names;
}

bool is_known_method(const std::string& name) {
  const auto& m = known_methods();
  return std::find(m.begin(), m.end(), name) != m.end();
}

void BenchConfig::validate() const {
  if (grid_n.empty() || grid_rho.empty()) throw std::invalid_argument("empty bench grid");
  if (trials == 0) throw std::invalid_argument("trials must be positive");
  if (methods.empty()) throw std::invalid_argument("no methods given");
  for (const auto& m : methods) {
    if (!is_known_method(m)) throw std::invalid_argument("unknown method '" + m + "'");
  }
  for (const auto n : grid_n) {
    if (n < 3) throw std::invalid_argument("grid N must be at least 3");
  }
  for (const auto r : grid_rho) {
    if (!(r >= 0.0 && r < 1.0)) throw std::invalid_argument("grid rho must be in [0, 1)");
  }
  pipeline.validate();
}

bool TrialRow::stages_non_increasing() const {
  return stage_sizes[1] <= stage_sizes[0] && stage_sizes[2] <= stage_sizes[1];
}

TrialRow run_trial(const std::string& method, const CorrespondenceSet& set,
                   const RigidTransform& truth, const std::vector<bool>& inlier_mask,
                   const PipelineConfig& pipeline) {
  if (!is_known_method(method)) throw std::invalid_argument("unknown method '" + method + "'");
  TrialRow row;
  row.method = method;
  row.n = set.size();

  RigidTransform T;
  ConsensusSet kept;
  const auto t0 = Clock::now();
  if (const auto iters = ransac_iterations(method); iters > 0) {
    try {
      auto r = ransac_baseline(set, pipeline.xi, iters, pipeline.seed);
      T = r.transform;
      kept = std::move(r.consensus);
    } catch (const RegistrationError&) {
      row.failed = true;
    }
    row.time_ms = ms_since(t0);
    row.stage_sizes = {kept.size(), kept.size(), kept.size()};
  } else {
    PipelineConfig cfg = pipeline;
    if (method == "here-noverify") cfg.use_verification = false;
    if (method == "here-random") cfg.sampling = SamplingMode::Random;
    if (method == "here-score") cfg.sampling = SamplingMode::ScoreOnly;
    try {
      auto rep = register_correspondences(set, cfg);
      T = rep.transform;
      kept = std::move(rep.consensus);
      row.stage_sizes = rep.stage_sizes;
      row.fallbacks = std::move(rep.fallbacks);
    } catch (const RegistrationError&) {
      row.failed = true;
    }
    row.time_ms = ms_since(t0);
  }

  row.e_r_deg = rotation_error_deg(T.R, truth.R);
  row.e_t = translation_error(T.t, truth.t);
  row.final_size = kept.size();
  row.metrics = inlier_metrics(kept, inlier_mask);
  row.residuals_ok = residuals_within(T, set, kept, pipeline.xi);
  return row;
}

std::vector<TrialRow> run_bench(const BenchConfig& cfg,
                                const std::function<void(const TrialRow&)>& progress) {
  cfg.validate();
  std::vector<TrialRow> rows;
  for (const auto n : cfg.grid_n) {
    for (const auto rho : cfg.grid_rho) {
      for (std::size_t k = 0; k < cfg.trials; ++k) {
        SynthConfig sc;
        sc.n = n;
        sc.rho = rho;
        sc.seed = cfg.seed + k;
        const auto inst = generate(sc);
        PipelineConfig pc = cfg.pipeline;
        pc.seed = sc.seed;
        for (const auto& method : cfg.methods) {
          auto row = run_trial(method, inst.set, inst.truth, inst.inlier_mask, pc);
          row.rho = rho;
          row.seed = sc.seed;
          if (progress) progress(row);
          rows.push_back(std::move(row));
        }
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const TrialRow& a, const TrialRow& b) {
    return std::tie(a.method, a.n, a.rho, a.seed) < std::tie(b.method, b.n, b.rho, b.seed);
  });
  return rows;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const auto h = values.size() / 2;
  return values.size() % 2 == 1 ? values[h] : 0.5 * (values[h - 1] + values[h]);
}

std::vector<SummaryRow> summarize(const std::vector<TrialRow>& rows,
                                  const SuccessThresholds& thresholds) {
  std::vector<SummaryRow> out;
  std::size_t i = 0;
  while (i < rows.size()) {
    std::size_t j = i;
    while (j < rows.size() && rows[j].method == rows[i].method && rows[j].n == rows[i].n &&
           rows[j].rho == rows[i].rho) {
      ++j;
    }
    SummaryRow s;
    s.method = rows[i].method;
    s.n = rows[i].n;
    s.rho = rows[i].rho;
    s.trials = j - i;
    std::vector<double> er, et, f1, tm;
    for (std::size_t k = i; k < j; ++k) {
      const auto& r = rows[k];
      if (success(r.e_r_deg, r.e_t, thresholds)) ++s.successes;
      er.push_back(r.e_r_deg);
      et.push_back(r.e_t);
      f1.push_back(r.metrics.f1);
      tm.push_back(r.time_ms);
    }
    s.success_rate = static_cast<double>(s.successes) / static_cast<double>(s.trials);
    s.median_e_r_deg = median(std::move(er));
    s.median_e_t = median(std::move(et));
    s.median_f1 = median(std::move(f1));
    s.median_time_ms = median(std::move(tm));
    out.push_back(std::move(s));
    i = j;
  }
  return out;
}

const char* const kCsvHeader = "method,N,rho,seed,E_R_deg,E_t,|I_final|,IP,IR,F1,time_ms";

void write_csv(std::ostream& out, const std::vector<TrialRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.method << ',' << r.n << ',' << fmt(r.rho) << ',' << r.seed << ',' << fmt(r.e_r_deg)
        << ',' << fmt(r.e_t) << ',' << r.final_size << ',' << fmt(r.metrics.precision) << ','
        << fmt(r.metrics.recall) << ',' << fmt(r.metrics.f1) << ',' << fmt(r.time_ms) << '\n';
  }
}

void write_summary(std::ostream& out, const std::vector<SummaryRow>& summary) {
  std::array<char, 256> buf{};
  std::snprintf(buf.data(), buf.size(), "%-14s %7s %6s %6s %8s %10s %10s %8s %10s\n", "method",
                "N", "rho", "trials", "success", "med_E_R", "med_E_t", "med_F1", "med_ms");
  out << buf.data();
  for (const auto& s : summary) {
    std::snprintf(buf.data(), buf.size(), "%-14s %7zu %6.3g %6zu %8.3f %10.4g %10.4g %8.4f %10.4g\n",
                  s.method.c_str(), s.n, s.rho, s.trials, s.success_rate, s.median_e_r_deg,
                  s.median_e_t, s.median_f1, s.median_time_ms);
    out << buf.data();
  }
}

}  // namespace here
