#ifndef THREADKIT_EXPORT_HPP
#define THREADKIT_EXPORT_HPP

#include "threadkit/motion.hpp"

#include <Eigen/Geometry>
#include <filesystem>
#include <string>
#include <vector>

namespace threadkit {

struct FrameRecord {
  ChainParam param;
  Pose pose;
  std::vector<Eigen::Vector2d> vertices;  // chain under the pose
};

std::vector<FrameRecord> frame_set(const MotionPlan& plan, int count);

// Numbers are written with 17 significant digits, so they read back exactly.
std::string frames_json(const std::vector<FrameRecord>& frames);
std::vector<FrameRecord> parse_frames_json(const std::string& text);

std::string frame_svg(const FrameRecord& frame, const Eigen::AlignedBox2d& view, double diameter);

// Writes frame_000.svg, frame_001.svg, ... into dir; returns the paths.
std::vector<std::filesystem::path> export_svg_frames(const MotionPlan& plan, int count, const std::filesystem::path& dir);
void export_frames_json(const MotionPlan& plan, int count, const std::filesystem::path& path);

}  // namespace threadkit

#endif
