#include "here/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace here {

void SynthConfig::validate() const {
  if (!(rho >= 0.0 && rho < 1.0)) throw std::invalid_argument("rho must be in [0, 1)");
  if (!(noise_radius >= 0.0)) throw std::invalid_argument("noise_radius must be >= 0");
  if (!(outlier_radius > 0.0)) throw std::invalid_argument("outlier_radius must be > 0");
  if (!(t_max >= 0.0)) throw std::invalid_argument("t_max must be >= 0");
}

std::size_t SynthInstance::inlier_count() const {
  return static_cast<std::size_t>(std::count(inlier_mask.begin(), inlier_mask.end(), true));
}

Mat3 random_rotation(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::Quaterniond q;
  do {
    q = Eigen::Quaterniond(g(rng), g(rng), g(rng), g(rng));
  } while (q.norm() < 1e-12);
  q.normalize();
  return q.toRotationMatrix();
}

Vec3 uniform_in_ball(std::mt19937_64& rng, double radius) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Vec3 v;
  do {
    v = {u(rng), u(rng), u(rng)};
  } while (v.squaredNorm() > 1.0);
  return radius * v;
}

SynthInstance generate(const SynthConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  SynthInstance out;
  out.truth.R = random_rotation(rng);
  out.truth.t = uniform_in_ball(rng, cfg.t_max);

  std::vector<Vec3> source = cfg.source;
  if (source.empty()) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    source.resize(cfg.n);
    for (auto& p : source) p = {unit(rng), unit(rng), unit(rng)};
  }
  const std::size_t n = source.size();

  std::vector<Vec3> target(n);
  for (std::size_t i = 0; i < n; ++i) {
    target[i] = apply(out.truth, source[i]) + uniform_in_ball(rng, cfg.noise_radius);
  }

  // guard against ρN landing a hair above an integer
  const auto n_out = std::min(
      n, static_cast<std::size_t>(std::ceil(cfg.rho * static_cast<double>(n) - 1e-9)));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);

  out.inlier_mask.assign(n, true);
  for (std::size_t k = 0; k < n_out; ++k) {
    const auto i = order[k];
    out.inlier_mask[i] = false;
    target[i] = uniform_in_ball(rng, cfg.outlier_radius);
  }
  out.set = CorrespondenceSet(source, target);
  return out;
}

}  // namespace here
