#include "here/pipeline.hpp"

#include "here/angle.hpp"
#include "here/axis.hpp"
#include "here/compat.hpp"
#include "here/refine.hpp"
#include "here/translation.hpp"

#include <chrono>

namespace here {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Vec3 centroid_offset(const CorrespondenceSet& set) {
  Vec3 d = Vec3::Zero();
  for (const auto& c : set) d += c.y - c.x;
  return d / static_cast<double>(set.size());
}

}  // namespace

RegistrationReport register_correspondences(const CorrespondenceSet& set,
                                            const PipelineConfig& cfg,
                                            CandidateObserver* observer) {
  cfg.validate();
  if (set.size() < 3) {
    throw RegistrationError(Signal::TooFewCorrespondences,
                            "need at least 3 correspondences, got " + std::to_string(set.size()));
  }
  RegistrationReport report;
  report.config = cfg;
  const auto t_start = Clock::now();

  const auto W = build_affinity(set, cfg.xi);
  const auto table = compute_priorities(W);
  report.affinity_time_ms = ms_since(t_start);

  auto t_stage = Clock::now();
  ConsensusSet I1;
  try {
    auto s1 = solve_stage1(set, W, table, cfg, observer);
    report.t_prime = s1.t;
    I1 = std::move(s1.consensus);
  } catch (const RegistrationError& e) {
    report.fallbacks.emplace_back(signal_name(e.signal()));
    I1 = ConsensusSet::all(set.size(), Stage::Translation);
    report.t_prime = centroid_offset(set);
  }
  report.stage_times_ms[0] = ms_since(t_stage);

  t_stage = Clock::now();
  Stage2Result s2;
  try {
    s2 = solve_stage2(I1, report.t_prime, set, W, table, cfg, observer);
  } catch (const RegistrationError& e) {
    report.fallbacks.emplace_back(signal_name(e.signal()));
    s2 = stage2_fallback(I1, set, table);
  }
  report.r_prime = s2.r;
  report.stage_times_ms[1] = ms_since(t_stage);

  t_stage = Clock::now();
  Stage3Result s3;
  try {
    s3 = solve_stage3(s2.consensus, report.t_prime, report.r_prime, set, cfg.xi);
  } catch (const RegistrationError& e) {
    report.fallbacks.emplace_back(signal_name(e.signal()));
    s3 = stage3_fallback(s2.consensus, report.t_prime, report.r_prime, set);
  }
  report.theta = s3.theta;
  report.stage_times_ms[2] = ms_since(t_stage);

  report.stage_sizes = {I1.size(), s2.consensus.size(), s3.consensus.size()};

  auto fin = finalize(set, report.t_prime, report.r_prime, report.theta, cfg.xi);
  report.transform = fin.transform;
  report.consensus = std::move(fin.consensus);
  report.total_time_ms = ms_since(t_start);
  return report;
}

}  // namespace here
