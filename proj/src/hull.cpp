#include "threadkit/hull.hpp"

#include <algorithm>
#include <deque>

namespace threadkit {

namespace {

bool lex_less(const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); }

HullPolygon polygon_from(std::span<const Point2> pts, const std::vector<std::size_t>& idx) {
  HullPolygon h;
  h.indices = idx;
  for (auto i : idx) h.vertices.push_back(pts[i]);
  h.degenerate = idx.size() < 3;
  return h;
}

// Drops vertices whose neighbours make them collinear.
void strip_collinear(std::span<const Point2> pts, std::vector<std::size_t>& idx) {
  bool changed = true;
  while (changed && idx.size() >= 3) {
    changed = false;
    for (std::size_t k = 0; k < idx.size() && idx.size() >= 3; ++k) {
      std::size_t prev = idx[(k + idx.size() - 1) % idx.size()];
      std::size_t next = idx[(k + 1) % idx.size()];
      if (orient(pts[prev], pts[idx[k]], pts[next]) == 0) {
        idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(k));
        changed = true;
        break;
      }
    }
  }
}

}  // namespace

HullPolygon melkman_hull(std::span<const Point2> pts) {
  const std::size_t n = pts.size();
  if (n == 0) return {};
  if (n == 1) return polygon_from(pts, {0});

  std::size_t k = 2;
  while (k < n && orient(pts[0], pts[1], pts[k]) == 0) ++k;

  // Extremes of the leading collinear run.
  std::size_t s = 0, e = 0;
  for (std::size_t i = 1; i < std::min(k, n); ++i) {
    if (lex_less(pts[i], pts[s])) s = i;
    if (lex_less(pts[e], pts[i])) e = i;
  }
  if (k == n) return polygon_from(pts, {s, e});

  std::deque<std::size_t> d;
  if (orient(pts[s], pts[e], pts[k]) > 0)
    d = {k, s, e, k};
  else
    d = {k, e, s, k};

  for (std::size_t j = k + 1; j < n; ++j) {
    const Point2& q = pts[j];
    auto front_ok = [&] { return orient(pts[d[0]], pts[d[1]], q) > 0; };
    auto back_ok = [&] { return orient(pts[d[d.size() - 2]], pts[d.back()], q) > 0; };
    // Points on a hull edge are not hull vertices.
    auto closed_ok = [&](const Point2& a, const Point2& b) {
      const int o = orient(a, b, q);
      return o > 0 || (o == 0 && dot_sign(q - a, b - q) > 0);
    };
    if (closed_ok(pts[d[0]], pts[d[1]]) && closed_ok(pts[d[d.size() - 2]], pts[d.back()])) continue;
    while (!front_ok()) d.pop_front();
    d.push_front(j);
    while (!back_ok()) d.pop_back();
    d.push_back(j);
  }
  d.pop_back();
  return polygon_from(pts, std::vector<std::size_t>(d.begin(), d.end()));
}

HullPolygon melkman_hull(const Chain2& c) { return melkman_hull(c.vertices()); }

HullPolygon canonical_rotation(HullPolygon h) {
  if (h.vertices.empty()) return h;
  std::size_t best = 0;
  for (std::size_t i = 1; i < h.vertices.size(); ++i)
    if (lex_less(h.vertices[i], h.vertices[best])) best = i;
  std::rotate(h.vertices.begin(), h.vertices.begin() + static_cast<std::ptrdiff_t>(best), h.vertices.end());
  std::rotate(h.indices.begin(), h.indices.begin() + static_cast<std::ptrdiff_t>(best), h.indices.end());
  return h;
}

bool same_hull(const HullPolygon& a, const HullPolygon& b) {
  auto ca = canonical_rotation(a), cb = canonical_rotation(b);
  return ca.vertices == cb.vertices;
}

const char* to_string(HullEventKind k) {
  switch (k) {
    case HullEventKind::VertexArrival:
      return "VertexArrival";
    case HullEventKind::PopRight:
      return "PopRight";
    case HullEventKind::PopLeft:
      return "PopLeft";
    case HullEventKind::EntersHull:
      return "EntersHull";
  }
  return "?";
}

// ---------------------------------------------------------------------------

namespace {

// Sign of orient(v + eps*d, x, y) for infinitesimal eps > 0.
int orient_after(const Point2& v, const Dir2& d, const Point2& x, const Point2& y) {
  int s = orient(v, x, y);
  if (s != 0) return s;
  return -cross_sign(d, y - x);
}

class PassRunner {
 public:
  explicit PassRunner(std::span<const Point2> v) : v_(v) {}

  HullPass run() {
    HullPass pass;
    pass.vertex_count = v_.size();
    const std::size_t n = v_.size();
    d_.push_back(0);

    for (std::size_t i = 1; i < n; ++i) {
      traverse_edge(i, pass);
      const ChainParam at = vertex_param(i, n);

      // Pops that land exactly on the vertex come after the arrival.
      std::vector<HullEvent> pops;
      pop_exact(i, at, pops);
      const Anchors at_vertex = anchors();

      if (i + 1 < n) {
        const Dir2 next = v_[i + 1] - v_[i];
        if (d_.size() >= 2 && enters(i, next)) {
          pass.events.push_back({at, HullEventKind::VertexArrival, idx(i), at_vertex, at_vertex});
          for (auto& e : pops) pass.events.push_back(e);
          pass.events.push_back({at, HullEventKind::EntersHull, idx(i), at_vertex, at_vertex});
          pass.outcome = PassOutcome::Entered;
          pass.entered_at = at;
          pass.hull = current_hull(i);
          return pass;
        }
        step_off_vertex(i, next, at, pops);
      }

      const Anchors after = anchors();
      pass.events.push_back({at, HullEventKind::VertexArrival, idx(i), after, at_vertex});
      for (auto& e : pops) {
        e.anchors_after = after;
        pass.events.push_back(e);
      }
    }
    pass.hull = current_hull(n - 1);
    return pass;
  }

 private:
  static std::int32_t idx(std::size_t i) { return static_cast<std::int32_t>(i); }

  Anchors anchors() const {
    Anchors a;
    a.a1 = idx(d_.front());
    a.b1 = idx(d_.back());
    if (d_.size() >= 2) {
      a.a2 = idx(d_[1]);
      a.b2 = idx(d_[d_.size() - 2]);
    }
    return a;
  }

  // Moves p along edge i = (v[i-1], v[i]), emitting pops strictly before t = 1.
  void traverse_edge(std::size_t i, HullPass& pass) {
    const Point2& start = v_[i - 1];
    const Dir2 dir = v_[i] - start;
    while (d_.size() >= 2) {
      // orient(p(t), x, y) = cross(x - start, y - start) - t * cross(dir, y - x)
      auto root = [&](std::size_t x, std::size_t y) -> std::optional<Scalar> {
        Scalar slope = cross(dir, v_[y] - v_[x]);
        if (sgn(slope) <= 0) return std::nullopt;
        Scalar t = cross(v_[x] - start, v_[y] - start) / slope;
        if (t < 1) return t;
        return std::nullopt;
      };
      auto t_right = root(d_[0], d_[1]);
      auto t_left = root(d_[d_.size() - 2], d_.back());
      if (!t_right && !t_left) break;
      bool right = t_right && (!t_left || *t_right <= *t_left);
      ChainParam at{i, right ? *t_right : *t_left};
      std::int32_t popped;
      if (right) {
        popped = idx(d_.front());
        d_.pop_front();
      } else {
        popped = idx(d_.back());
        d_.pop_back();
      }
      at = canonical(at, v_.size());
      pass.events.push_back({at, right ? HullEventKind::PopRight : HullEventKind::PopLeft, popped, anchors(), {}});
    }
  }

  void pop_exact(std::size_t i, const ChainParam& at, std::vector<HullEvent>& pops) {
    const Point2& p = v_[i];
    while (d_.size() >= 2 && orient(p, v_[d_[0]], v_[d_[1]]) <= 0) {
      pops.push_back({at, HullEventKind::PopRight, idx(d_.front()), {}, {}});
      d_.pop_front();
    }
    while (d_.size() >= 2 && orient(p, v_[d_[d_.size() - 2]], v_[d_.back()]) <= 0) {
      pops.push_back({at, HullEventKind::PopLeft, idx(d_.back()), {}, {}});
      d_.pop_back();
    }
  }

  // The next edge points strictly into the hull's angle at v[i].
  bool enters(std::size_t i, const Dir2& next) const {
    const Dir2 u = v_[d_.front()] - v_[i];
    const Dir2 w = v_[d_.back()] - v_[i];
    return cross_sign(u, next) > 0 && cross_sign(next, w) > 0;
  }

  // v[i] joins the hull, then p leaves it along `next`.
  void step_off_vertex(std::size_t i, const Dir2& next, const ChainParam& at, std::vector<HullEvent>& pops) {
    const Point2& v = v_[i];
    d_.push_front(i);
    d_.push_back(i);
    while (d_.size() >= 2 && orient_after(v, next, v_[d_[0]], v_[d_[1]]) <= 0) {
      if (d_.front() != i) pops.push_back({at, HullEventKind::PopRight, idx(d_.front()), {}, {}});
      d_.pop_front();
    }
    while (d_.size() >= 2 && orient_after(v, next, v_[d_[d_.size() - 2]], v_[d_.back()]) <= 0) {
      if (d_.back() != i) pops.push_back({at, HullEventKind::PopLeft, idx(d_.back()), {}, {}});
      d_.pop_back();
    }
  }

  HullPolygon current_hull(std::size_t p) const {
    std::vector<std::size_t> idx_list;
    idx_list.reserve(d_.size() + 1);
    idx_list.push_back(p);
    for (auto k : d_)
      if (k != p) idx_list.push_back(k);
    strip_collinear(v_, idx_list);
    return polygon_from(v_, idx_list);
  }

  std::span<const Point2> v_;
  std::deque<std::size_t> d_;
};

std::int32_t flip(std::int32_t k, std::size_t n) {
  return k < 0 ? k : static_cast<std::int32_t>(n - 1) - k;
}

Anchors flip(const Anchors& a, std::size_t n) {
  return {flip(a.a1, n), flip(a.a2, n), flip(a.b1, n), flip(a.b2, n)};
}

Scalar local_position(const HullPass& pass, const ChainParam& p) {
  if (pass.direction == PassDirection::Forward) return param_position(p);
  return param_position(reverse_param(p, pass.vertex_count));
}

}  // namespace

HullPass growing_pass(const Chain2& c, PassDirection direction) {
  if (direction == PassDirection::Forward) {
    HullPass pass = PassRunner(c.vertices()).run();
    pass.direction = direction;
    return pass;
  }
  const Chain2 r = c.reversed();
  HullPass pass = PassRunner(r.vertices()).run();
  const std::size_t n = c.size();
  pass.direction = direction;
  for (auto& e : pass.events) {
    e.param = reverse_param(e.param, n);
    e.vertex = flip(e.vertex, n);
    e.anchors_after = flip(e.anchors_after, n);
    e.at_vertex = flip(e.at_vertex, n);
  }
  if (pass.entered_at) pass.entered_at = reverse_param(*pass.entered_at, n);
  for (auto& k : pass.hull.indices) k = n - 1 - k;
  return pass;
}

std::optional<Anchors> anchors_at(const HullPass& pass, const ChainParam& p) {
  const ChainParam q = canonical(p, pass.vertex_count);
  const Scalar pos = local_position(pass, q);
  if (sgn(pos) == 0) return std::nullopt;
  if (pass.entered_at && pos > local_position(pass, *pass.entered_at))
    throw OutOfRange("param " + format_param(q) + " lies beyond the point where the pass entered its hull");

  const auto& ev = pass.events;
  auto it = std::partition_point(ev.begin(), ev.end(),
                                 [&](const HullEvent& e) { return local_position(pass, e.param) <= pos; });
  for (auto j = it; j != ev.begin();) {
    --j;
    if (local_position(pass, j->param) != pos) break;
    if (j->kind == HullEventKind::VertexArrival || j->kind == HullEventKind::EntersHull) return j->at_vertex;
  }
  if (it != ev.begin()) return std::prev(it)->anchors_after;
  const std::int32_t start = pass.direction == PassDirection::Forward ? 0 : static_cast<std::int32_t>(pass.vertex_count - 1);
  return Anchors{start, -1, start, -1};
}

}  // namespace threadkit
