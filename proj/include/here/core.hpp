#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace here {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

// Failure modes reported by the registration stages. Stages that can fall
// back do so inside the pipeline; the rest surface as RegistrationError.
enum class Signal {
  TooFewCorrespondences,
  NoSamples,
  DegenerateAxis,
  NoAngle,
  TooFewInliers,
  DegenerateFit,
  AffinityTooLarge,
};

const char* signal_name(Signal s);

class RegistrationError : public std::runtime_error {
 public:
  RegistrationError(Signal s, const std::string& what)
      : std::runtime_error(std::string(signal_name(s)) + ": " + what), signal_(s) {}

  Signal signal() const { return signal_; }

 private:
  Signal signal_;
};

struct Correspondence {
  Vec3 x = Vec3::Zero();  // source point
  Vec3 y = Vec3::Zero();  // target point
  std::size_t index = 0;
};

// Ordered correspondences. index of item k is always k.
class CorrespondenceSet {
 public:
  CorrespondenceSet() = default;
  CorrespondenceSet(const std::vector<Vec3>& source, const std::vector<Vec3>& target);

  void push_back(const Vec3& x, const Vec3& y);

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const Correspondence& operator[](std::size_t i) const { return items_[i]; }
  const std::vector<Correspondence>& items() const { return items_; }

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

 private:
  std::vector<Correspondence> items_;
};

struct RigidTransform {
  Mat3 R = Mat3::Identity();
  Vec3 t = Vec3::Zero();

  static RigidTransform identity() { return {}; }
  RigidTransform inverse() const { return {R.transpose(), -(R.transpose() * t)}; }
  // RᵀR = I and det R = 1, both within tol.
  bool is_valid(double tol = 1e-9) const;
};

// Axis-angle pair with the axis on the upper hemisphere. The angle lives in
// [0, 2π): with the axis pinned to r₃ ≥ 0 a half-turn range cannot represent
// every rotation.
struct AxisAngle {
  Vec3 axis = Vec3::UnitZ();
  double angle = 0.0;

  // Normalizes axis, maps it onto the canonical hemisphere (r₃ > 0, or r₃ = 0
  // and r₂ > 0, or r₃ = r₂ = 0 and r₁ ≥ 0) and wraps the angle into [0, 2π).
  static AxisAngle canonical(const Vec3& axis, double angle);
};

// True when v already sits on the canonical hemisphere described above.
bool in_canonical_hemisphere(const Vec3& v);
// Returns v or -v, whichever is on the canonical hemisphere.
Vec3 to_canonical_hemisphere(const Vec3& v);

enum class Stage { Translation, Axis, Angle, Final };

struct ConsensusSet {
  std::vector<std::size_t> indices;  // strictly ascending
  Stage stage = Stage::Final;

  std::size_t size() const { return indices.size(); }
  bool empty() const { return indices.empty(); }
  bool contains(std::size_t i) const;

  // Sorts and deduplicates.
  static ConsensusSet from_unsorted(std::vector<std::size_t> idx, Stage stage);
  static ConsensusSet all(std::size_t n, Stage stage);
};

enum class SamplingMode { Valid, Random, ScoreOnly };

const char* sampling_name(SamplingMode m);

struct PipelineConfig {
  double xi = 0.05;
  int k_t = 15;
  int m = 2;
  int k_r = 8;
  int n = 2;
  double psi = 1e-3;
  std::uint64_t seed = 0;
  bool use_verification = true;
  SamplingMode sampling = SamplingMode::Valid;

  // Throws std::invalid_argument on a violated bound.
  void validate() const;
};

Mat3 skew(const Vec3& v);

// R = rrᵀ + [r]× sin θ + (I − rrᵀ) cos θ
Mat3 rodrigues(const AxisAngle& aa);
// Same formula without canonicalization; axis must be unit length.
Mat3 rotation_about(const Vec3& unit_axis, double angle);

// Inverse of rodrigues, returned in canonical form.
AxisAngle axis_angle_from_matrix(const Mat3& R);

Vec3 apply(const RigidTransform& T, const Vec3& p);

double residual(const RigidTransform& T, const Correspondence& c);

// Closed inlier test: residual == xi counts.
ConsensusSet consensus(const RigidTransform& T, const CorrespondenceSet& set, double xi);

}  // namespace here
