#include "here/compat.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace here {

AffinityMatrix::AffinityMatrix(std::size_t n)
    : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

void AffinityMatrix::set(std::size_t i, std::size_t j) {
  bits_[i * words_ + (j >> 6)] |= std::uint64_t{1} << (j & 63);
}

std::size_t AffinityMatrix::row_count(std::size_t i) const {
  std::size_t c = 0;
  for (const auto w : row(i)) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

AffinityMatrix build_affinity(const CorrespondenceSet& set, double xi) {
  const std::size_t n = set.size();
  if (n > kMaxAffinitySize) {
    throw RegistrationError(Signal::AffinityTooLarge,
                            "affinity matrix limited to " + std::to_string(kMaxAffinitySize) +
                                " correspondences, got " + std::to_string(n));
  }
  AffinityMatrix W(n);
  const double bound = 2.0 * xi;
  for (std::size_t i = 0; i < n; ++i) {
    W.set(i, i);
    const Vec3& xi_pt = set[i].x;
    const Vec3& yi_pt = set[i].y;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double dx = (xi_pt - set[j].x).norm();
      const double dy = (yi_pt - set[j].y).norm();
      if (std::abs(dy - dx) <= bound) {
        W.set(i, j);
        W.set(j, i);
      }
    }
  }
  return W;
}

PriorityTable compute_priorities(const AffinityMatrix& W) {
  const std::size_t n = W.size();
  PriorityTable t;
  t.score.resize(n);
  t.priority.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) t.score[i] = W.row_count(i);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = W.row(i);
    std::uint64_t sum = 0;
    for (std::size_t w = 0; w < r.size(); ++w) {
      std::uint64_t bits = r[w];
      while (bits) {
        const int b = std::countr_zero(bits);
        sum += t.score[w * 64 + static_cast<std::size_t>(b)];
        bits &= bits - 1;
      }
    }
    t.priority[i] = sum;
  }
  return t;
}

std::vector<std::size_t> sample_top(const PriorityTable& table, std::size_t k,
                                    const ConsensusSet* restrict_to, RankKey key) {
  const auto& value = key == RankKey::Priority ? table.priority : table.score;
  std::vector<std::size_t> pool;
  if (restrict_to) {
    pool = restrict_to->indices;
  } else {
    pool.resize(value.size());
    std::iota(pool.begin(), pool.end(), std::size_t{0});
  }
  const std::size_t take = std::min(k, pool.size());
  const auto higher = [&](std::size_t a, std::size_t b) {
    if (value[a] != value[b]) return value[a] > value[b];
    return a < b;
  };
  std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take), pool.end(),
                    higher);
  pool.resize(take);
  return pool;
}

std::vector<std::size_t> sample_random(std::size_t n, std::size_t k, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  const std::size_t take = std::min(k, n);
  // partial Fisher-Yates
  for (std::size_t i = 0; i < take; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, n - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(take);
  return idx;
}

std::vector<std::size_t> verify_against_sample(const AffinityMatrix& W, std::size_t sample,
                                               std::span<const std::size_t> candidates) {
  std::vector<std::size_t> out;
  out.reserve(candidates.size());
  for (const auto i : candidates) {
    if (i != sample && W(sample, i)) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> select_samples(const PriorityTable& table, std::size_t n_total,
                                        std::size_t k, const ConsensusSet* pool,
                                        SamplingMode mode, std::uint64_t seed) {
  switch (mode) {
    case SamplingMode::Valid:
      return sample_top(table, k, pool, RankKey::Priority);
    case SamplingMode::ScoreOnly:
      return sample_top(table, k, pool, RankKey::Score);
    case SamplingMode::Random:
      break;
  }
  if (!pool) return sample_random(n_total, k, seed);
  auto picks = sample_random(pool->size(), k, seed);
  for (auto& p : picks) p = pool->indices[p];
  return picks;
}

std::vector<std::size_t> candidates_for(const AffinityMatrix& W, std::size_t sample,
                                        std::span<const std::size_t> pool, bool verify) {
  if (verify) return verify_against_sample(W, sample, pool);
  std::vector<std::size_t> out;
  out.reserve(pool.size());
  for (const auto i : pool) {
    if (i != sample) out.push_back(i);
  }
  return out;
}

}  // namespace here
