#pragma once

#include "here/core.hpp"

#include <cstddef>
#include <span>

namespace here {

// Hook for instrumented runs: sees, per sampled correspondence, the pool it
// was drawn against and the candidates whose intervals go to stabbing.
class CandidateObserver {
 public:
  virtual ~CandidateObserver() = default;
  virtual void on_candidates(Stage stage, std::size_t sample, std::span<const std::size_t> domain,
                             std::span<const std::size_t> candidates) = 0;
};

}  // namespace here
