#pragma once

#include "here/core.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace here {

// Largest N accepted by build_affinity (~50 MB of packed bits).
constexpr std::size_t kMaxAffinitySize = 20000;

// Symmetric pairwise spatial-compatibility matrix, one bit per pair.
// (i, j) compatible ⟺ | ‖y_i − y_j‖ − ‖x_i − x_j‖ | ≤ 2ξ.
class AffinityMatrix {
 public:
  AffinityMatrix() = default;
  explicit AffinityMatrix(std::size_t n);

  std::size_t size() const { return n_; }
  bool operator()(std::size_t i, std::size_t j) const {
    return (bits_[i * words_ + (j >> 6)] >> (j & 63)) & 1u;
  }
  void set(std::size_t i, std::size_t j);
  // Number of set bits in row i.
  std::size_t row_count(std::size_t i) const;
  std::span<const std::uint64_t> row(std::size_t i) const {
    return {bits_.data() + i * words_, words_};
  }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct PriorityTable {
  std::vector<std::uint64_t> score;     // compatible count, self included
  std::vector<std::uint64_t> priority;  // sum of compatible neighbours' scores
};

enum class RankKey { Priority, Score };

// Throws RegistrationError(AffinityTooLarge) above kMaxAffinitySize.
AffinityMatrix build_affinity(const CorrespondenceSet& set, double xi);

PriorityTable compute_priorities(const AffinityMatrix& W);

// Up to k indices with the highest key, descending; ties by ascending index.
// restrict_to limits the pool when given.
std::vector<std::size_t> sample_top(const PriorityTable& table, std::size_t k,
                                    const ConsensusSet* restrict_to = nullptr,
                                    RankKey key = RankKey::Priority);

// k distinct uniform indices from [0, n), reproducible from seed. k ≥ n
// yields a permutation of all indices.
std::vector<std::size_t> sample_random(std::size_t n, std::size_t k, std::uint64_t seed);

// Candidates compatible with sample, in input order, sample itself dropped.
std::vector<std::size_t> verify_against_sample(const AffinityMatrix& W, std::size_t sample,
                                               std::span<const std::size_t> candidates);

// Sample indices for a stage according to the sampling mode. pool == nullptr
// means all correspondences.
std::vector<std::size_t> select_samples(const PriorityTable& table, std::size_t n_total,
                                        std::size_t k, const ConsensusSet* pool,
                                        SamplingMode mode, std::uint64_t seed);

// Candidate list for one sample: the pool minus the sample, filtered by
// compatibility when verify is set.
std::vector<std::size_t> candidates_for(const AffinityMatrix& W, std::size_t sample,
                                        std::span<const std::size_t> pool, bool verify);

}  // namespace here
