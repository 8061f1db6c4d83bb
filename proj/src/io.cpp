#include "here/io.hpp"

#include <json.hpp>

#include <array>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace here {
namespace {

using nlohmann::json;

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

// Splits a data line into numbers; returns false for comment/blank lines.
bool parse_numbers(const std::string& line, std::size_t line_no, std::vector<double>& out) {
  out.clear();
  std::size_t pos = line.find_first_not_of(" \t\r");
  if (pos == std::string::npos || line[pos] == '#') return false;
  const char* p = line.data();
  const char* end = line.data() + line.size();
  while (true) {
    while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
    if (p >= end) break;
    const char* tok_end = p;
    while (tok_end < end && *tok_end != ' ' && *tok_end != '\t' && *tok_end != '\r') ++tok_end;
    double v = 0.0;
    const char* start = (*p == '+') ? p + 1 : p;
    const auto [ptr, ec] = std::from_chars(start, tok_end, v);
    if (ec != std::errc() || ptr != tok_end) {
      throw ParseError(line_no, "not a number: '" + std::string(p, tok_end) + "'");
    }
    out.push_back(v);
    p = tok_end;
  }
  return true;
}

std::string format_double(double v) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

json rotation_json(const Mat3& R) {
  json a = json::array();
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) a.push_back(R(r, c));
  return a;
}

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

}  // namespace

CorrespondenceSet read_correspondences(std::istream& in) {
  CorrespondenceSet set;
  std::string line;
  std::vector<double> v;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!parse_numbers(line, line_no, v)) continue;
    if (v.size() != 6) {
      throw ParseError(line_no, "expected 6 values, got " + std::to_string(v.size()));
    }
    set.push_back({v[0], v[1], v[2]}, {v[3], v[4], v[5]});
  }
  return set;
}

CorrespondenceSet read_correspondences(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_correspondences(in);
}

void write_correspondences(std::ostream& out, const CorrespondenceSet& set) {
  for (const auto& c : set) {
    out << format_double(c.x.x()) << ' ' << format_double(c.x.y()) << ' '
        << format_double(c.x.z()) << ' ' << format_double(c.y.x()) << ' '
        << format_double(c.y.y()) << ' ' << format_double(c.y.z()) << '\n';
  }
}

std::vector<Vec3> read_point_cloud(std::istream& in) {
  std::vector<Vec3> pts;
  std::string line;
  std::vector<double> v;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!parse_numbers(line, line_no, v)) continue;
    if (v.size() != 3) {
      throw ParseError(line_no, "expected 3 values, got " + std::to_string(v.size()));
    }
    pts.emplace_back(v[0], v[1], v[2]);
  }
  return pts;
}

std::vector<Vec3> read_point_cloud(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_point_cloud(in);
}

void write_ground_truth(std::ostream& out, const RigidTransform& T,
                        const std::vector<bool>& inlier_mask) {
  json j;
  j["rotation"] = rotation_json(T.R);
  j["translation"] = vec_json(T.t);
  json mask = json::array();
  for (const bool b : inlier_mask) mask.push_back(b ? 1 : 0);
  j["inlier_mask"] = std::move(mask);
  out << j.dump(2) << '\n';
}

GroundTruth read_ground_truth(std::istream& in) {
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error(std::string("ground truth: ") + e.what());
  }
  GroundTruth gt;
  const auto& rot = j.at("rotation");
  const auto& tr = j.at("translation");
  if (rot.size() != 9 || tr.size() != 3) {
    throw std::runtime_error("ground truth: rotation needs 9 values and translation 3");
  }
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) gt.transform.R(r, c) = rot.at(3 * r + c).get<double>();
  for (int k = 0; k < 3; ++k) gt.transform.t[k] = tr.at(k).get<double>();
  for (const auto& b : j.at("inlier_mask")) gt.inlier_mask.push_back(b.get<int>() != 0);
  return gt;
}

void write_pose(std::ostream& out, const RegistrationReport& report) {
  const auto& T = report.transform;
  json j;
  j["rotation"] = rotation_json(T.R);
  j["translation"] = vec_json(T.t);
  json rows = json::array();
  for (int r = 0; r < 3; ++r) rows.push_back({T.R(r, 0), T.R(r, 1), T.R(r, 2), T.t[r]});
  j["transform"] = std::move(rows);
  j["consensus"] = report.consensus.indices;
  j["stage_sizes"] = report.stage_sizes;
  j["stage_times_ms"] = report.stage_times_ms;
  j["affinity_time_ms"] = report.affinity_time_ms;
  j["total_time_ms"] = report.total_time_ms;
  j["fallbacks"] = report.fallbacks;
  const auto& c = report.config;
  j["config"] = {{"xi", c.xi},   {"k_t", c.k_t}, {"m", c.m},
                 {"k_r", c.k_r}, {"n", c.n},     {"psi", c.psi},
                 {"seed", c.seed}, {"use_verification", c.use_verification},
                 {"sampling", sampling_name(c.sampling)}};
  out << j.dump(2) << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace here
