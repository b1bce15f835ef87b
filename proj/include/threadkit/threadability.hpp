#ifndef THREADKIT_THREADABILITY_HPP
#define THREADKIT_THREADABILITY_HPP

#include "threadkit/geom.hpp"
#include "threadkit/hull.hpp"

#include <optional>
#include <vector>

namespace threadkit {

// Open arc of normals n such that n . (q - p) > 0 for every point q before p
// on the chain and n . (q - p) < 0 for every point after it; nullopt when no
// such line exists. Computed from full prefix and suffix hulls.
std::optional<NormalArc> butterfly_at(const Chain2& c, const ChainParam& p);

// Butterfly arc from known hull neighbours of p on each side. An empty side
// (p is that side's endpoint) imposes nothing.
std::optional<NormalArc> butterfly_from_anchors(const Chain2& c, const Point2& p,
                                                const std::optional<Anchors>& prefix,
                                                const std::optional<Anchors>& suffix);

// Tangent cone at p spanned by its hull neighbours.
std::optional<Cone2> anchor_cone(const Chain2& c, const Point2& p, const std::optional<Anchors>& a);

struct Witness {
  ChainParam param;
  std::optional<Cone2> prefix_cone;
  std::optional<Cone2> suffix_cone;
};

// One stretch between consecutive combinatorial changes of either hull.
struct CertificateInterval {
  ChainParam start, end;
  Anchors prefix, suffix;                   // valid strictly inside (start, end)
  std::optional<Anchors> prefix_at_start;  // nullopt at the chain's first vertex
  std::optional<Anchors> suffix_at_start;
  std::optional<Anchors> prefix_at_end;
  std::optional<Anchors> suffix_at_end;  // nullopt at the chain's last vertex
  NormalArc arc_start, arc_end;
};

// Certificate intervals stored by their breakpoints. Neighbouring intervals
// share an endpoint, so each endpoint's parameter, anchors and arc are kept
// once; intervals are assembled on access.
class Certificate {
 public:
  class iterator {
   public:
    using value_type = CertificateInterval;
    using difference_type = std::ptrdiff_t;
    iterator(const Certificate* c, std::size_t k) : c_(c), k_(k) {}
    CertificateInterval operator*() const { return (*c_)[k_]; }
    iterator& operator++() {
      ++k_;
      return *this;
    }
    bool operator==(const iterator& o) const { return k_ == o.k_; }

   private:
    const Certificate* c_;
    std::size_t k_;
  };

  std::size_t size() const { return spans_.size(); }
  bool empty() const { return spans_.empty(); }
  CertificateInterval operator[](std::size_t k) const;
  CertificateInterval front() const { return (*this)[0]; }
  CertificateInterval back() const { return (*this)[size() - 1]; }
  iterator begin() const { return {this, 0}; }
  iterator end() const { return {this, size()}; }

  // Breakpoints and spans alternate, starting and ending with a breakpoint.
  void add_breakpoint(ChainParam param, std::optional<Anchors> prefix, std::optional<Anchors> suffix, NormalArc arc);
  void add_span(const Anchors& prefix, const Anchors& suffix);
  void clear();

 private:
  struct Breakpoint {
    ChainParam param;
    std::optional<Anchors> prefix, suffix;
    NormalArc arc;
  };
  std::vector<Breakpoint> points_;
  std::vector<std::pair<Anchors, Anchors>> spans_;
};

struct Verdict {
  bool threadable = false;
  std::optional<Witness> witness;  // first failure found, in chain order
  Certificate certificate;         // threadable chains only
};

// Linear-time decision from the two growing-hull passes plus tangent-cone
// separation on every merged interval.
Verdict decide(const Chain2& c);

// Exhaustive check of butterfly non-emptiness at every critical parameter.
// Cubic in the vertex count; meant for small chains.
Verdict oracle_decide(const Chain2& c);

std::optional<Dir2> is_strictly_monotone(const Chain2& c);

// Parameters in (lo, hi) on `edge` where p(t), x and y become collinear, for
// every pair x, y of `points`; sorted and deduplicated.
std::vector<Scalar> collinearity_roots(const Chain2& c, std::size_t edge, const std::vector<Point2>& points,
                                       const Scalar& lo, const Scalar& hi);

}  // namespace threadkit

#endif
