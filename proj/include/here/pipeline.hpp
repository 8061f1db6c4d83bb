#pragma once

#include "here/core.hpp"
#include "here/observer.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace here {

struct RegistrationReport {
  RigidTransform transform;
  ConsensusSet consensus;
  std::array<std::size_t, 3> stage_sizes{};  // translation, axis, angle
  std::array<double, 3> stage_times_ms{};
  double affinity_time_ms = 0.0;
  double total_time_ms = 0.0;
  PipelineConfig config;

  // intermediate stage estimates
  Vec3 t_prime = Vec3::Zero();
  Vec3 r_prime = Vec3::UnitZ();
  double theta = 0.0;
  // names of signals absorbed by fallbacks, in stage order
  std::vector<std::string> fallbacks;
};

// Affinity and priorities, then translation, axis and angle stages, then the
// least-squares refinement. Throws RegistrationError(TooFewCorrespondences)
// for fewer than 3 pairs and std::invalid_argument for a bad config; stage
// degeneracies fall back to passing the stage input through.
RegistrationReport register_correspondences(const CorrespondenceSet& set,
                                            const PipelineConfig& cfg,
                                            CandidateObserver* observer = nullptr);

}  // namespace here
