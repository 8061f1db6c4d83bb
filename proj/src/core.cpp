#include "here/core.hpp"

#include <algorithm>
#include <cmath>

namespace here {

const char* signal_name(Signal s) {
  switch (s) {
    case Signal::TooFewCorrespondences: return "SignalTooFewCorrespondences";
    case Signal::NoSamples: return "SignalNoSamples";
    case Signal::DegenerateAxis: return "SignalDegenerateAxis";
    case Signal::NoAngle: return "SignalNoAngle";
    case Signal::TooFewInliers: return "SignalTooFewInliers";
    case Signal::DegenerateFit: return "SignalDegenerateFit";
    case Signal::AffinityTooLarge: return "SignalAffinityTooLarge";
  }
  return "SignalUnknown";
}

const char* sampling_name(SamplingMode m) {
  switch (m) {
    case SamplingMode::Valid: return "valid";
    case SamplingMode::Random: return "random";
    case SamplingMode::ScoreOnly: return "score";
  }
  return "unknown";
}

CorrespondenceSet::CorrespondenceSet(const std::vector<Vec3>& source,
                                     const std::vector<Vec3>& target) {
  if (source.size() != target.size()) {
    throw std::invalid_argument("source and target sizes differ");
  }
  items_.reserve(source.size());
  for (std::size_t i = 0; i < source.size(); ++i) push_back(source[i], target[i]);
}

void CorrespondenceSet::push_back(const Vec3& x, const Vec3& y) {
  items_.push_back({x, y, items_.size()});
}

bool RigidTransform::is_valid(double tol) const {
  if (!R.allFinite() || !t.allFinite()) return false;
  const Mat3 gram = R.transpose() * R;
  if ((gram - Mat3::Identity()).cwiseAbs().maxCoeff() > tol) return false;
  return std::abs(R.determinant() - 1.0) <= tol;
}

bool in_canonical_hemisphere(const Vec3& v) {
  if (v.z() != 0.0) return v.z() > 0.0;
  if (v.y() != 0.0) return v.y() > 0.0;
  return v.x() >= 0.0;
}

Vec3 to_canonical_hemisphere(const Vec3& v) { return in_canonical_hemisphere(v) ? v : Vec3(-v); }

AxisAngle AxisAngle::canonical(const Vec3& axis, double angle) {
  Vec3 r = axis.normalized();
  double a = angle;
  if (!in_canonical_hemisphere(r)) {
    r = -r;
    a = -a;
  }
  a = std::fmod(a, kTwoPi);
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return {r, a};
}

bool ConsensusSet::contains(std::size_t i) const {
  return std::binary_search(indices.begin(), indices.end(), i);
}

ConsensusSet ConsensusSet::from_unsorted(std::vector<std::size_t> idx, Stage stage) {
  std::sort(idx.begin(), idx.end());
  idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
  return {std::move(idx), stage};
}

ConsensusSet ConsensusSet::all(std::size_t n, Stage stage) {
  ConsensusSet c{{}, stage};
  c.indices.resize(n);
  for (std::size_t i = 0; i < n; ++i) c.indices[i] = i;
  return c;
}

void PipelineConfig::validate() const {
  if (!(xi > 0.0)) throw std::invalid_argument("xi must be positive");
  if (k_t < 1) throw std::invalid_argument("k_t must be >= 1");
  if (k_r < 1) throw std::invalid_argument("k_r must be >= 1");
  if (m < 1) throw std::invalid_argument("m must be >= 1");
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (!(psi > 0.0)) throw std::invalid_argument("psi must be positive");
}

Mat3 skew(const Vec3& v) {
  Mat3 S;
  S << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return S;
}

Mat3 rotation_about(const Vec3& r, double angle) {
  const Mat3 rrt = r * r.transpose();
  return rrt + skew(r) * std::sin(angle) + (Mat3::Identity() - rrt) * std::cos(angle);
}

Mat3 rodrigues(const AxisAngle& aa) { return rotation_about(aa.axis, aa.angle); }

AxisAngle axis_angle_from_matrix(const Mat3& R) {
  const Eigen::AngleAxisd aa(R);
  if (aa.angle() == 0.0) return {Vec3::UnitZ(), 0.0};
  return AxisAngle::canonical(aa.axis(), aa.angle());
}

Vec3 apply(const RigidTransform& T, const Vec3& p) { return T.R * p + T.t; }

double residual(const RigidTransform& T, const Correspondence& c) {
  return (c.y - (T.R * c.x + T.t)).norm();
}

ConsensusSet consensus(const RigidTransform& T, const CorrespondenceSet& set, double xi) {
  ConsensusSet out{{}, Stage::Final};
  for (const auto& c : set) {
    if (residual(T, c) <= xi) out.indices.push_back(c.index);
  }
  return out;
}

}  // namespace here
