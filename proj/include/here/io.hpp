#pragma once

// Text formats:
//   correspondence file  one pair per line, "x1 x2 x3 y1 y2 y3"; '#' comments
//                        and blank lines are skipped
//   point cloud file     same, three columns
//   ground-truth sidecar {"rotation": [9, row-major], "translation": [3],
//                         "inlier_mask": [0/1 per pair]}
//   pose file            rotation/translation as above, "transform" as 3×4
//                        rows, "consensus" indices and the run report

#include "here/core.hpp"
#include "here/pipeline.hpp"
#include "here/synth.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace here {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

CorrespondenceSet read_correspondences(std::istream& in);
CorrespondenceSet read_correspondences(const std::filesystem::path& path);
// 17 significant digits, so a read back is exact.
void write_correspondences(std::ostream& out, const CorrespondenceSet& set);

std::vector<Vec3> read_point_cloud(std::istream& in);
std::vector<Vec3> read_point_cloud(const std::filesystem::path& path);

struct GroundTruth {
  RigidTransform transform;
  std::vector<bool> inlier_mask;
};

void write_ground_truth(std::ostream& out, const RigidTransform& T,
                        const std::vector<bool>& inlier_mask);
GroundTruth read_ground_truth(std::istream& in);

void write_pose(std::ostream& out, const RegistrationReport& report);

// Opens for writing or throws std::runtime_error naming the path.
std::ofstream open_output(const std::filesystem::path& path);

}  // namespace here
