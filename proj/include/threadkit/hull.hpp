#ifndef THREADKIT_HULL_HPP
#define THREADKIT_HULL_HPP

#include "threadkit/geom.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace threadkit {

// Counterclockwise, strictly convex. `indices` refer to the input point list.
struct HullPolygon {
  std::vector<Point2> vertices;
  std::vector<std::size_t> indices;
  bool degenerate = false;  // fewer than three vertices
};

// Linear-time hull of a simple polyline (Melkman).
HullPolygon melkman_hull(std::span<const Point2> polyline);
HullPolygon melkman_hull(const Chain2& c);

// Rotated so the lexicographically smallest vertex comes first.
HullPolygon canonical_rotation(HullPolygon h);
bool same_hull(const HullPolygon& a, const HullPolygon& b);

// ---------------------------------------------------------------------------
// Growing-hull traversal

enum class PassDirection { Forward, Backward };

enum class HullEventKind { VertexArrival, PopRight, PopLeft, EntersHull };

const char* to_string(HullEventKind k);

// Hull neighbours of the moving point p. With the hull written counterclockwise
// as (p, a1, a2, ..., b2, b1), a-side vertices follow p and b-side vertices
// precede it. -1 marks an absent slot; a1 == b1 when the hull is a segment.
struct Anchors {
  std::int32_t a1 = -1, a2 = -1, b1 = -1, b2 = -1;
  bool empty() const { return a1 < 0; }
};

struct HullEvent {
  ChainParam param;  // original chain coordinates, canonical
  HullEventKind kind;
  std::int32_t vertex;  // arriving, popped, or turning vertex
  Anchors anchors_after;  // valid on the open interval following `param`
  Anchors at_vertex;      // VertexArrival / EntersHull only: neighbours with p exactly at the vertex
};

enum class PassOutcome { Completed, Entered };

struct HullPass {
  PassDirection direction = PassDirection::Forward;
  std::size_t vertex_count = 0;
  std::vector<HullEvent> events;  // in traversal order
  PassOutcome outcome = PassOutcome::Completed;
  std::optional<ChainParam> entered_at;
  // Final hull when completed; the hull at the turning vertex when entered.
  HullPolygon hull;
};

// Backward passes run on the reversed chain; params and vertex indices are
// reported in the original chain's coordinates.
HullPass growing_pass(const Chain2& c, PassDirection direction);

// Hull neighbours of p for this pass; nullopt at the pass's starting endpoint,
// where the hull is p alone. Throws OutOfRange beyond an Entered param.
std::optional<Anchors> anchors_at(const HullPass& pass, const ChainParam& p);

}  // namespace threadkit

#endif
