#ifndef THREADKIT_MOTION_HPP
#define THREADKIT_MOTION_HPP

#include "threadkit/threadability.hpp"

#include <Eigen/Core>
#include <optional>
#include <stdexcept>
#include <vector>

namespace threadkit {

struct NotThreadable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// q -> R(angle) q + translation. The hole sits at the origin in the x-axis.
struct Pose {
  double angle = 0;
  Eigen::Vector2d translation = Eigen::Vector2d::Zero();

  Eigen::Vector2d apply(const Eigen::Vector2d& q) const;
};

struct MotionInterval {
  ChainParam start, end;  // within one edge
  Anchors prefix, suffix;
  std::optional<Anchors> prefix_at_start, suffix_at_start, prefix_at_end, suffix_at_end;
  std::optional<ChainParam> rotation_monotone_split;
};

struct MotionPlan {
  Chain2 chain;
  std::vector<MotionInterval> intervals;
  int samples_per_interval = 32;
};

// Certificate intervals, split where the wings bounding the butterfly switch
// anchors. The separating line bisects the butterfly, with the prefix above
// the x-axis and the suffix below.
MotionPlan plan(const Chain2& c);

Pose pose_at(const MotionPlan& plan, const ChainParam& p);

// p is at the origin, everything before it strictly above the axis and
// everything after strictly below, with margins scaled by the chain diameter.
bool validate_pose(const Chain2& c, const ChainParam& p, const Pose& pose, double tol);

struct Frame {
  ChainParam param;
  Pose pose;
};

// `per_interval` steps on every interval; shared boundaries appear once. A step
// that turns by more than pi / per_interval or shifts by more than
// diameter / per_interval is halved until it does not.
std::vector<Frame> sample_plan(const MotionPlan& plan, int per_interval);

// `count` frames at parameters evenly spaced along the whole chain.
std::vector<Frame> sample_frames(const MotionPlan& plan, int count);

double rotation_cost(const MotionPlan& plan, int samples_per_interval);

// Signed angle difference b - a folded into (-pi, pi].
double angle_step(double a, double b);

double chain_diameter(const Chain2& c);

}  // namespace threadkit

#endif
