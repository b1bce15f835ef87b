#include "threadkit/motion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace threadkit {

Eigen::Vector2d Pose::apply(const Eigen::Vector2d& q) const {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * q.x() - s * q.y() + translation.x(), s * q.x() + c * q.y() + translation.y()};
}

double angle_step(double a, double b) {
  double d = std::remainder(b - a, 2 * std::numbers::pi);
  if (d <= -std::numbers::pi) d += 2 * std::numbers::pi;
  return d;
}

double chain_diameter(const Chain2& c) {
  Eigen::Vector2d lo = to_vec(c[0]), hi = lo;
  for (const auto& v : c.vertices()) {
    lo = lo.cwiseMin(to_vec(v));
    hi = hi.cwiseMax(to_vec(v));
  }
  return (hi - lo).norm();
}

namespace {

struct SideAnchors {
  std::optional<Anchors> prefix, suffix;
};

SideAnchors anchors_for(const MotionInterval& iv, const ChainParam& p) {
  if (param_equal(p, iv.start)) return {iv.prefix_at_start, iv.suffix_at_start};
  if (param_equal(p, iv.end)) return {iv.prefix_at_end, iv.suffix_at_end};
  return {iv.prefix, iv.suffix};
}

Pose pose_in(const Chain2& c, const MotionInterval& iv, const ChainParam& p) {
  const Point2 at = point_at(c, p);
  const auto side = anchors_for(iv, p);
  const auto arc = butterfly_from_anchors(c, at, side.prefix, side.suffix);
  if (!arc) throw std::logic_error("empty butterfly at " + format_param(p) + " inside a threading plan");
  const Eigen::Vector2d n = arc_bisector(*arc);
  Pose pose;
  pose.angle = angle_step(0, std::numbers::pi / 2 - std::atan2(n.y(), n.x()));
  pose.translation = -Pose{pose.angle, Eigen::Vector2d::Zero()}.apply(to_vec(at));
  return pose;
}

// Local edge parameter as a ChainParam, clamped to the interval.
ChainParam local(const MotionInterval& iv, double t) {
  const Scalar s = from_double(t);
  if (s <= iv.start.t) return iv.start;
  if (s >= iv.end.t) return iv.end;
  return {iv.start.edge, s};
}

std::optional<ChainParam> find_split(const Chain2& c, const MotionInterval& iv) {
  constexpr int kSamples = 64;
  constexpr double kFlat = 1e-13;
  const double t0 = to_double(iv.start.t), t1 = to_double(iv.end.t);
  auto theta = [&](double t) { return pose_in(c, iv, local(iv, t)).angle; };

  std::vector<double> th(kSamples + 1);
  for (int k = 0; k <= kSamples; ++k) th[k] = theta(t0 + (t1 - t0) * k / kSamples);
  int prev_sign = 0, prev_k = -1;
  for (int k = 0; k < kSamples; ++k) {
    const double d = angle_step(th[k], th[k + 1]);
    if (std::abs(d) <= kFlat) continue;
    const int s = d > 0 ? 1 : -1;
    if (prev_sign != 0 && s != prev_sign) {
      double lo = t0 + (t1 - t0) * prev_k / kSamples;
      double hi = t0 + (t1 - t0) * (k + 1) / kSamples;
      for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double m = 0.5 * (lo + hi);
        const double h = std::max(1e-14, 1e-3 * (hi - lo));
        const double dm = angle_step(theta(m - h), theta(m + h));
        if ((dm > 0 ? 1 : -1) == prev_sign)
          lo = m;
        else
          hi = m;
      }
      return local(iv, 0.5 * (lo + hi));
    }
    prev_sign = s;
    prev_k = k;
  }
  return std::nullopt;
}

const MotionInterval& interval_for(const MotionPlan& plan, const ChainParam& p) {
  const auto& ivs = plan.intervals;
  const ChainParam q = canonical(p, plan.chain.size());
  // First interval whose end is not before q.
  auto it = std::partition_point(ivs.begin(), ivs.end(), [&](const MotionInterval& iv) { return param_less(iv.end, q); });
  if (it == ivs.end() || param_less(q, it->start)) throw OutOfRange("param " + format_param(q) + " outside plan");
  return *it;
}

// Expresses a boundary param on the interval's own edge (t = 1 instead of the next edge's t = 0).
ChainParam on_edge(const ChainParam& p, std::size_t edge) {
  if (p.edge == edge + 1 && sgn(p.t) == 0) return {edge, Scalar(1)};
  return p;
}

}  // namespace

MotionPlan plan(const Chain2& c) {
  const Verdict v = decide(c);
  if (!v.threadable)
    throw NotThreadable("chain is not threadable; first failure at " + format_param(v.witness->param));
  MotionPlan mp{c, {}, 32};
  mp.intervals.reserve(v.certificate.size());
  auto points = [&](const Anchors& a) {
    std::vector<Point2> out{c[static_cast<std::size_t>(a.a1)]};
    if (a.b1 >= 0 && a.b1 != a.a1) out.push_back(c[static_cast<std::size_t>(a.b1)]);
    return out;
  };
  for (const auto& cell : v.certificate) {
    // The wings bounding the butterfly switch where p lines up with a prefix
    // and a suffix anchor; the rotation is unimodal only between switches.
    std::vector<Point2> pts = points(cell.prefix);
    for (const auto& q : points(cell.suffix)) pts.push_back(q);
    const ChainParam end = on_edge(cell.end, cell.start.edge);
    const auto roots = collinearity_roots(c, cell.start.edge, pts, cell.start.t, end.t);
    ChainParam from = cell.start;
    std::optional<Anchors> pre_from = cell.prefix_at_start, suf_from = cell.suffix_at_start;
    for (std::size_t k = 0; k <= roots.size(); ++k) {
      const bool last = k == roots.size();
      const ChainParam to = last ? end : ChainParam{cell.start.edge, roots[k]};
      MotionInterval iv{from,
                        to,
                        cell.prefix,
                        cell.suffix,
                        pre_from,
                        suf_from,
                        last ? cell.prefix_at_end : std::optional<Anchors>(cell.prefix),
                        last ? cell.suffix_at_end : std::optional<Anchors>(cell.suffix),
                        std::nullopt};
      iv.rotation_monotone_split = find_split(c, iv);
      mp.intervals.push_back(std::move(iv));
      from = to;
      pre_from = cell.prefix;
      suf_from = cell.suffix;
    }
  }
  return mp;
}

Pose pose_at(const MotionPlan& plan, const ChainParam& p) {
  const MotionInterval& iv = interval_for(plan, p);
  return pose_in(plan.chain, iv, on_edge(canonical(p, plan.chain.size()), iv.start.edge));
}

bool validate_pose(const Chain2& c, const ChainParam& p, const Pose& pose, double tol) {
  const double margin = tol * std::max(1.0, chain_diameter(c));
  const ChainParam q = canonical(p, c.size());
  if (pose.apply(to_vec(point_at(c, q))).norm() > margin) return false;
  const auto at_vertex = vertex_at(q);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (at_vertex && *at_vertex == i) continue;
    const bool before = i < q.edge;  // vertex i precedes p
    const double y = pose.apply(to_vec(c[i])).y();
    if (before ? !(y > margin) : !(y < -margin)) return false;
  }
  return true;
}

std::vector<Frame> sample_plan(const MotionPlan& plan, int per_interval) {
  const double max_turn = std::numbers::pi / per_interval;
  const double max_shift = chain_diameter(plan.chain) / per_interval;
  std::vector<Frame> frames;
  // Appends the frames after `a` up to and including `b`, halving steps that move too far.
  auto fill = [&](auto& self, const MotionInterval& iv, const Frame& a, const Frame& b, int depth) -> void {
    const bool coarse = std::abs(angle_step(a.pose.angle, b.pose.angle)) > max_turn ||
                        (b.pose.translation - a.pose.translation).norm() > max_shift;
    if (coarse && depth < 24) {
      const ChainParam m{iv.start.edge, (on_edge(a.param, iv.start.edge).t + on_edge(b.param, iv.start.edge).t) / 2};
      const Frame mid{m, pose_in(plan.chain, iv, m)};
      self(self, iv, a, mid, depth + 1);
      self(self, iv, mid, b, depth + 1);
      return;
    }
    frames.push_back(b);
  };
  for (std::size_t j = 0; j < plan.intervals.size(); ++j) {
    const auto& iv = plan.intervals[j];
    auto frame = [&](int k) {
      const ChainParam p{iv.start.edge, iv.start.t + (iv.end.t - iv.start.t) * k / per_interval};
      return Frame{canonical(p, plan.chain.size()), pose_in(plan.chain, iv, p)};
    };
    Frame prev = frame(0);
    if (j == 0) frames.push_back(prev);
    for (int k = 1; k <= per_interval; ++k) {
      Frame next = frame(k);
      fill(fill, iv, prev, next, 0);
      prev = std::move(next);
    }
  }
  return frames;
}

std::vector<Frame> sample_frames(const MotionPlan& plan, int count) {
  std::vector<Frame> frames;
  const std::size_t n = plan.chain.size();
  const Scalar length(static_cast<unsigned long>(n - 1));
  for (int k = 0; k < count; ++k) {
    const Scalar pos = count == 1 ? Scalar(length / 2) : Scalar(length * k / (count - 1));
    mpz_class whole = pos.get_num() / pos.get_den();
    ChainParam p = whole.get_ui() >= n - 1 ? vertex_param(n - 1, n)
                                           : ChainParam{whole.get_ui() + 1, Scalar(pos - Scalar(whole))};
    frames.push_back({p, pose_at(plan, p)});
  }
  return frames;
}

double rotation_cost(const MotionPlan& plan, int samples_per_interval) {
  const auto frames = sample_plan(plan, samples_per_interval);
  double cost = 0;
  for (std::size_t k = 1; k < frames.size(); ++k) cost += std::abs(angle_step(frames[k - 1].pose.angle, frames[k].pose.angle));
  return cost;
}

}  // namespace threadkit
