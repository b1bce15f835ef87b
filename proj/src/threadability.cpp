#include "threadkit/threadability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

namespace threadkit {

namespace {

std::vector<Point2> anchor_points(const Chain2& c, const std::optional<Anchors>& a) {
  std::vector<Point2> out;
  if (!a || a->empty()) return out;
  out.push_back(c[static_cast<std::size_t>(a->a1)]);
  if (a->b1 >= 0 && a->b1 != a->a1) out.push_back(c[static_cast<std::size_t>(a->b1)]);
  return out;
}

}  // namespace

std::optional<NormalArc> butterfly_from_anchors(const Chain2& c, const Point2& p,
                                                const std::optional<Anchors>& prefix,
                                                const std::optional<Anchors>& suffix) {
  auto above = anchor_points(c, prefix);
  auto below = anchor_points(c, suffix);
  return separating_normals(p, above, below);
}

std::optional<Cone2> anchor_cone(const Chain2& c, const Point2& p, const std::optional<Anchors>& a) {
  auto pts = anchor_points(c, a);
  if (pts.empty()) return std::nullopt;
  if (pts.size() == 1) return make_ray(p, pts[0] - p);
  return make_cone(p, pts[0] - p, pts[1] - p);
}

std::optional<NormalArc> butterfly_at(const Chain2& c, const ChainParam& param) {
  const ChainParam q = canonical(param, c.size());
  const Point2 p = point_at(c, q);
  const auto vertex = vertex_at(q);

  std::vector<Point2> before(c.vertices().begin(), c.vertices().begin() + static_cast<std::ptrdiff_t>(q.edge));
  std::vector<Point2> after(c.vertices().begin() + static_cast<std::ptrdiff_t>(q.edge), c.vertices().end());
  if (!vertex) {
    before.push_back(p);
    after.insert(after.begin(), p);
  } else if (*vertex == q.edge - 1) {
    after.insert(after.begin(), p);
  } else {
    before.push_back(p);  // last vertex
  }
  const auto upper = melkman_hull(before);
  const auto lower = melkman_hull(after);
  return separating_normals(p, upper.vertices, lower.vertices);
}

std::optional<Dir2> is_strictly_monotone(const Chain2& c) { return monotone_direction(c.vertices()); }

std::vector<Scalar> collinearity_roots(const Chain2& c, std::size_t edge, const std::vector<Point2>& points,
                                       const Scalar& lo, const Scalar& hi) {
  const Point2& start = c[edge - 1];
  const Dir2 dir = c[edge] - start;
  std::vector<Scalar> roots;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Dir2 x = points[i] - start;
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      // cross(x - t*dir, y - t*dir) = cross(x, y) - t * cross(dir, y - x)
      const Dir2 y = points[j] - start;
      Scalar slope = cross(dir, points[j] - points[i]);
      if (sgn(slope) == 0) continue;
      Scalar t = cross(x, y) / slope;
      if (lo < t && t < hi) roots.push_back(std::move(t));
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

// ---------------------------------------------------------------------------

namespace {

// Breakpoints of one pass in ascending chain order. `span[k]` holds the
// anchors on the open interval (pos[k], pos[k+1]).
struct Timeline {
  std::vector<Scalar> pos;
  std::vector<std::optional<Anchors>> at;
  std::vector<Anchors> span;
};

Timeline forward_timeline(const HullPass& pass) {
  Timeline tl;
  tl.pos.push_back(Scalar(0));
  tl.at.push_back(std::nullopt);
  tl.span.push_back(Anchors{0, -1, 0, -1});
  const auto& ev = pass.events;
  for (std::size_t k = 0; k < ev.size();) {
    std::size_t j = k;
    std::optional<Anchors> at_vertex;
    while (j < ev.size() && param_equal(ev[j].param, ev[k].param)) {
      if (ev[j].kind == HullEventKind::VertexArrival || ev[j].kind == HullEventKind::EntersHull)
        at_vertex = ev[j].at_vertex;
      ++j;
    }
    tl.pos.push_back(param_position(ev[k].param));
    tl.at.push_back(at_vertex ? at_vertex : std::optional<Anchors>(ev[k].anchors_after));
    tl.span.push_back(ev[j - 1].anchors_after);
    k = j;
  }
  tl.span.pop_back();
  return tl;
}

Timeline backward_timeline(const HullPass& pass) {
  const std::size_t n = pass.vertex_count;
  Timeline rev;  // descending first, flipped at the end
  rev.pos.push_back(Scalar(static_cast<unsigned long>(n - 1)));
  rev.at.push_back(std::nullopt);
  const std::int32_t last = static_cast<std::int32_t>(n - 1);
  std::vector<Anchors> before{Anchors{last, -1, last, -1}};
  const auto& ev = pass.events;
  for (std::size_t k = 0; k < ev.size();) {
    std::size_t j = k;
    std::optional<Anchors> at_vertex;
    while (j < ev.size() && param_equal(ev[j].param, ev[k].param)) {
      if (ev[j].kind == HullEventKind::VertexArrival || ev[j].kind == HullEventKind::EntersHull)
        at_vertex = ev[j].at_vertex;
      ++j;
    }
    rev.pos.push_back(param_position(ev[k].param));
    rev.at.push_back(at_vertex ? at_vertex : std::optional<Anchors>(ev[k].anchors_after));
    before.push_back(ev[j - 1].anchors_after);
    k = j;
  }
  before.pop_back();
  Timeline tl;
  tl.pos.assign(rev.pos.rbegin(), rev.pos.rend());
  tl.at.assign(rev.at.rbegin(), rev.at.rend());
  tl.span.assign(before.rbegin(), before.rend());
  return tl;
}

// Walks a timeline alongside ascending query positions.
class TimelineCursor {
 public:
  explicit TimelineCursor(const Timeline& tl) : tl_(tl) {}

  // Anchors exactly at `pos` (which must lie inside the timeline's range).
  std::optional<Anchors> at(const Scalar& pos) {
    advance(pos);
    if (tl_.pos[k_] == pos) return tl_.at[k_];
    return tl_.span[k_];
  }
  // Anchors on the open interval starting at `pos`.
  const Anchors& after(const Scalar& pos) {
    advance(pos);
    return tl_.span[k_];
  }

 private:
  void advance(const Scalar& pos) {
    while (k_ + 1 < tl_.pos.size() && tl_.pos[k_ + 1] <= pos) ++k_;
  }
  const Timeline& tl_;
  std::size_t k_ = 0;
};

ChainParam param_from_position(const Scalar& pos, std::size_t n) {
  mpz_class whole = pos.get_num() / pos.get_den();  // floor for pos >= 0
  std::size_t floor_pos = whole.get_ui();
  if (floor_pos >= n - 1) return vertex_param(n - 1, n);
  return {floor_pos + 1, Scalar(pos - Scalar(whole))};
}

// Parameters in (lo, hi) on `edge` where p(t) is collinear with a prefix
// anchor and a suffix anchor. Pairs on one side cannot change the verdict
// while p stays a strict vertex of both hulls.
std::vector<Scalar> cross_roots(const Chain2& c, std::size_t edge, const std::vector<Point2>& above,
                                const std::vector<Point2>& below, const Scalar& lo, const Scalar& hi) {
  const Point2& start = c[edge - 1];
  const Dir2 dir = c[edge] - start;
  std::vector<Scalar> roots;
  for (const auto& a : above)
    for (const auto& b : below) {
      Scalar slope = cross(dir, b - a);
      if (sgn(slope) == 0) continue;
      Scalar t = cross(a - start, b - start) / slope;
      if (lo < t && t < hi) roots.push_back(std::move(t));
    }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

// True when q - p over `above` and p - q over `below` certainly fit in an
// open half-plane, judged in doubles with room for rounding. False means the
// exact test has to decide.
bool surely_separable(const Eigen::Vector2d& p, const std::vector<Eigen::Vector2d>& above,
                      const std::vector<Eigen::Vector2d>& below) {
  double scale = p.cwiseAbs().maxCoeff();
  for (const auto* side : {&above, &below})
    for (const auto& q : *side) scale = std::max(scale, q.cwiseAbs().maxCoeff());
  std::array<double, 4> angles{};
  std::size_t m = 0;
  double margin = 1e-12;
  for (int s = 0; s < 2; ++s)
    for (const auto& q : s == 0 ? above : below) {
      const Eigen::Vector2d v = s == 0 ? Eigen::Vector2d(q - p) : Eigen::Vector2d(p - q);
      const double len = v.norm();
      if (!(len > 1e-6 * scale)) return false;
      margin += 2e-14 * scale / len;
      angles[m++] = std::atan2(v.y(), v.x());
    }
  if (m < 2) return m == 1;
  std::sort(angles.begin(), angles.begin() + static_cast<std::ptrdiff_t>(m));
  double gap = angles[0] + 2 * std::numbers::pi - angles[m - 1];
  for (std::size_t k = 1; k < m; ++k) gap = std::max(gap, angles[k] - angles[k - 1]);
  return gap > std::numbers::pi + margin;
}

}  // namespace

CertificateInterval Certificate::operator[](std::size_t k) const {
  const Breakpoint &a = points_[k], &b = points_[k + 1];
  return {a.param, b.param, spans_[k].first, spans_[k].second, a.prefix, a.suffix, b.prefix, b.suffix, a.arc, b.arc};
}

void Certificate::add_breakpoint(ChainParam param, std::optional<Anchors> prefix, std::optional<Anchors> suffix,
                                 NormalArc arc) {
  points_.push_back({std::move(param), prefix, suffix, std::move(arc)});
}

void Certificate::add_span(const Anchors& prefix, const Anchors& suffix) { spans_.emplace_back(prefix, suffix); }

void Certificate::clear() {
  points_.clear();
  spans_.clear();
}

Verdict decide(const Chain2& c) {
  const std::size_t n = c.size();
  Timeline ft, bt;
  PassOutcome fwd_outcome, bwd_outcome;
  std::optional<ChainParam> fwd_entered, bwd_entered;
  {
    // The event lists are only needed to build the timelines.
    const HullPass fwd = growing_pass(c, PassDirection::Forward);
    ft = forward_timeline(fwd);
    fwd_outcome = fwd.outcome;
    fwd_entered = fwd.entered_at;
  }
  {
    const HullPass bwd = growing_pass(c, PassDirection::Backward);
    bt = backward_timeline(bwd);
    bwd_outcome = bwd.outcome;
    bwd_entered = bwd.entered_at;
  }

  Verdict verdict;
  const Scalar lo_bound = bt.pos.front();
  const Scalar hi_bound = ft.pos.back();

  if (bwd_outcome == PassOutcome::Entered) {
    Witness w{*bwd_entered, std::nullopt, std::nullopt};
    const Point2 p = point_at(c, w.param);
    if (lo_bound <= hi_bound) {
      TimelineCursor fc(ft);
      w.prefix_cone = anchor_cone(c, p, fc.at(lo_bound));
    }
    w.suffix_cone = anchor_cone(c, p, bt.at.front());
    verdict.witness = w;
    return verdict;
  }

  std::vector<Scalar> merged;
  merged.reserve(ft.pos.size() + bt.pos.size());
  std::merge(ft.pos.begin(), ft.pos.end(), bt.pos.begin(), bt.pos.end(), std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
  while (!merged.empty() && merged.back() > hi_bound) merged.pop_back();

  std::vector<Eigen::Vector2d> approx;
  approx.reserve(n);
  for (const auto& v : c.vertices()) approx.push_back(to_vec(v));
  auto approx_points = [&](const Anchors& a) {
    std::vector<Eigen::Vector2d> out;
    if (a.empty()) return out;
    out.push_back(approx[static_cast<std::size_t>(a.a1)]);
    if (a.b1 >= 0 && a.b1 != a.a1) out.push_back(approx[static_cast<std::size_t>(a.b1)]);
    return out;
  };

  TimelineCursor fc(ft), bc(bt);
  auto fail = [&](const ChainParam& q, const std::optional<Cone2>& pc, const std::optional<Cone2>& sc) {
    verdict.threadable = false;
    verdict.witness = Witness{q, pc, sc};
    verdict.certificate.clear();
    return verdict;
  };

  for (std::size_t k = 0; k < merged.size(); ++k) {
    const Scalar& pos = merged[k];
    const ChainParam q = param_from_position(pos, n);
    const Point2 p = point_at(c, q);
    const auto pre_at = fc.at(pos);
    const auto suf_at = bc.at(pos);
    // The arc is empty exactly when the two cones cannot be separated.
    auto arc_here = butterfly_from_anchors(c, p, pre_at, suf_at);
    if (!arc_here) return fail(q, anchor_cone(c, p, pre_at), anchor_cone(c, p, suf_at));
    verdict.certificate.add_breakpoint(q, pre_at, suf_at, std::move(*arc_here));
    if (k + 1 == merged.size()) break;

    const Scalar& next = merged[k + 1];
    const Anchors pre = fc.after(pos);
    const Anchors suf = bc.after(pos);
    verdict.certificate.add_span(pre, suf);

    // Interior of (pos, next): one edge, constant anchors. Separability can
    // only change where two anchor directions become parallel.
    const std::size_t edge = q.edge;
    const Scalar base(static_cast<unsigned long>(edge - 1));
    const Scalar t_lo = pos - base, t_hi = next - base;
    const std::vector<Point2> above = anchor_points(c, pre), below = anchor_points(c, suf);
    const auto roots = cross_roots(c, edge, above, below, t_lo, t_hi);

    std::vector<Scalar> probes;
    Scalar left = t_lo;
    for (const auto& r : roots) {
      probes.push_back((left + r) / 2);
      probes.push_back(r);
      left = r;
    }
    probes.push_back((left + t_hi) / 2);
    const auto above_d = approx_points(pre), below_d = approx_points(suf);
    const Eigen::Vector2d& from = approx[edge - 1];
    const Eigen::Vector2d step = approx[edge] - from;
    for (const auto& t : probes) {
      if (surely_separable(from + to_double(t) * step, above_d, below_d)) continue;
      const ChainParam qi{edge, t};
      const Point2 pi = point_at(c, qi);
      const auto pci = anchor_cone(c, pi, pre);
      const auto sci = anchor_cone(c, pi, suf);
      if (!cones_separable(pci, sci)) return fail(qi, pci, sci);
    }
  }

  if (fwd_outcome == PassOutcome::Entered) {
    const ChainParam q = *fwd_entered;
    const Point2 p = point_at(c, q);
    return fail(q, anchor_cone(c, p, ft.at.back()), anchor_cone(c, p, bc.at(hi_bound)));
  }
  verdict.threadable = true;
  return verdict;
}

// ---------------------------------------------------------------------------

Verdict oracle_decide(const Chain2& c) {
  const std::size_t n = c.size();
  const auto all = c.vertices();
  Verdict verdict;
  auto fail = [&](const ChainParam& q) {
    verdict.threadable = false;
    verdict.witness = Witness{q, std::nullopt, std::nullopt};
    return verdict;
  };

  const std::vector<Point2> every(all.begin(), all.end());
  for (std::size_t edge = 1; edge < n; ++edge) {
    const ChainParam start{edge, Scalar(0)};
    if (!butterfly_at(c, start)) return fail(start);

    // For t in (0,1) the sides are the fixed vertex sets v_0..v_{edge-1} and v_edge..v_{n-1}.
    const auto upper = melkman_hull(all.subspan(0, edge));
    const auto lower = melkman_hull(all.subspan(edge));
    auto roots = collinearity_roots(c, edge, every, Scalar(0), Scalar(1));
    std::vector<Scalar> probes;
    Scalar left(0);
    for (auto& r : roots) {
      probes.push_back((left + r) / 2);
      probes.push_back(r);
      left = r;
    }
    probes.push_back((left + 1) / 2);
    for (auto& t : probes) {
      const ChainParam q{edge, t};
      if (!separating_normals(point_at(c, q), upper.vertices, lower.vertices)) return fail(q);
    }
  }
  const ChainParam last = vertex_param(n - 1, n);
  if (!butterfly_at(c, last)) return fail(last);
  verdict.threadable = true;
  return verdict;
}

}  // namespace threadkit
