#pragma once

// Square-tiled translation and half-translation surfaces.
//
// Sides are indexed 4*cell + dir with dir right=0, top=1, left=2, bottom=3.
// Corners are BL=0, BR=1, TR=2, TL=3; side d runs counterclockwise from
// corner (d+1)%4 to corner (d+2)%4.  A gluing identifies the start of one
// side with the end of its partner, so a translation gluing pairs opposite
// sides and a half-turn gluing pairs sides of the same direction.

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ewloci/error.hpp"
#include "ewloci/perm.hpp"

namespace ewloci {

inline constexpr int side_start(int dir) { return (dir + 1) % 4; }
inline constexpr int side_end(int dir) { return (dir + 2) % 4; }
inline constexpr bool is_horizontal_dir(int dir) { return dir % 2 == 1; }

struct SideCouple {
  int a = 0;  // a < b after normalization
  int b = 0;
  bool flip = false;
  std::optional<int> weight;
};

struct CornerRef {
  int cell = 0;
  int corner = 0;
  friend auto operator<=>(const CornerRef&, const CornerRef&) = default;
};

struct VertexLabel {
  CornerRef at;
  int label = 0;  // 1-based
};

struct SingularityEntry {
  int vertex = 0;
  int angle = 0;  // cone angle in multiples of π
  int order = 0;  // quadratic order angle - 2
  bool marked = false;
  std::optional<int> label;
};

struct SingularityTable {
  std::vector<SingularityEntry> entries;  // κ != 0, marked or labelled vertices, by vertex id
  int genus = 0;
  bool translation = false;

  /// Nonzero orders in descending order; Abelian orders (κ/2) when translation.
  std::vector<int> stratum() const {
    std::vector<int> out;
    for (const auto& e : entries) {
      if (e.order != 0) out.push_back(translation ? e.order / 2 : e.order);
    }
    std::sort(out.rbegin(), out.rend());
    return out;
  }
  int marked_points() const {
    return static_cast<int>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.order == 0; }));
  }
  std::string stratum_name() const {
    std::string s = translation ? "H(" : "Q(";
    auto orders = stratum();
    for (std::size_t i = 0; i < orders.size();) {
      std::size_t j = i;
      while (j < orders.size() && orders[j] == orders[i]) ++j;
      if (i) s += ",";
      s += std::to_string(orders[i]);
      if (j - i > 1) s += "^" + std::to_string(j - i);
      i = j;
    }
    if (orders.empty()) s += "0";
    return s + ")";
  }
};

class CellComplexSurface {
 public:
  CellComplexSurface() = default;

  /// Validates and builds.  Marked corners and labels refer to vertices through
  /// any of their corners.
  static CellComplexSurface build(int n, std::vector<SideCouple> couples, const std::vector<CornerRef>& marked = {},
                                  const std::vector<VertexLabel>& labels = {}) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "a surface needs at least one cell");
    CellComplexSurface s;
    s.n_ = n;
    s.partner_.assign(4 * static_cast<std::size_t>(n), -1);
    for (auto& c : couples) {
      if (c.a < 0 || c.b < 0 || c.a >= 4 * n || c.b >= 4 * n) {
        throw Error(ErrorKind::NotInvolution, "side index out of range in pairing " + std::to_string(c.a) + "~" +
                                                  std::to_string(c.b));
      }
      if (c.a == c.b) throw Error(ErrorKind::FixedSide, "side " + std::to_string(c.a) + " is paired with itself");
      if (s.partner_[c.a] >= 0 || s.partner_[c.b] >= 0) {
        throw Error(ErrorKind::NotInvolution, "side paired twice in " + std::to_string(c.a) + "~" + std::to_string(c.b));
      }
      const int da = c.a % 4, db = c.b % 4;
      if (c.flip ? da != db : (da + 2) % 4 != db) {
        throw Error(ErrorKind::AxisMismatch, "sides " + std::to_string(c.a) + " and " + std::to_string(c.b) +
                                                 (c.flip ? " cannot be glued by a half-turn" : " cannot be glued by a translation"));
      }
      if (c.a > c.b) std::swap(c.a, c.b);
      s.partner_[c.a] = c.b;
      s.partner_[c.b] = c.a;
    }
    for (int side = 0; side < 4 * n; ++side) {
      if (s.partner_[side] < 0) throw Error(ErrorKind::NotInvolution, "side " + std::to_string(side) + " is unpaired");
    }
    std::sort(couples.begin(), couples.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
    s.couples_ = std::move(couples);
    s.couple_of_.assign(4 * static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < s.couples_.size(); ++i) {
      s.couple_of_[s.couples_[i].a] = static_cast<int>(i);
      s.couple_of_[s.couples_[i].b] = static_cast<int>(i);
    }
    s.check_connected();
    s.walk_vertices();
    s.compute_orientation();
    s.compute_genus();
    s.marked_.assign(s.orders_.size(), 0);
    s.labels_.assign(s.orders_.size(), 0);
    for (const auto& m : marked) s.marked_[s.vertex(s.checked(m))] = 1;
    for (const auto& l : labels) {
      int v = s.vertex(s.checked(l.at));
      if (l.label < 1) throw Error(ErrorKind::InvalidArgument, "labels are 1-based");
      if (s.labels_[v] != 0 && s.labels_[v] != l.label) {
        throw Error(ErrorKind::InvalidArgument, "vertex " + std::to_string(v) + " carries two labels");
      }
      s.labels_[v] = l.label;
    }
    return s;
  }

  int cells() const { return n_; }
  int partner(int side) const { return partner_[side]; }
  bool flip(int side) const { return couples_[couple_of_[side]].flip; }
  int couple_of(int side) const { return couple_of_[side]; }
  const std::vector<SideCouple>& couples() const { return couples_; }

  int vertex_count() const { return static_cast<int>(orders_.size()); }
  int vertex(int cell, int corner) const { return vertex_of_[4 * cell + corner]; }
  int vertex(CornerRef c) const { return vertex(c.cell, c.corner); }
  /// Corners (4*cell + corner) around a vertex in corner-walk order.
  const std::vector<int>& vertex_corners(int v) const { return corners_of_[v]; }
  int order(int v) const { return orders_[v]; }
  bool marked(int v) const { return marked_[v] != 0; }
  std::optional<int> label(int v) const {
    return labels_[v] ? std::optional<int>(labels_[v]) : std::nullopt;
  }
  /// Vertices that bound cylinders: cone points, marked points and labelled points.
  bool distinguished(int v) const { return orders_[v] != 0 || marked_[v] || labels_[v]; }

  /// Per-cell frame sign (+1 or -1) when the surface is a translation surface.
  const std::optional<std::vector<int>>& orientation() const { return orientation_; }
  bool is_translation() const { return orientation_.has_value(); }
  int genus() const { return genus_; }

  std::vector<CornerRef> marked_corners() const {
    std::vector<CornerRef> out;
    for (int v = 0; v < vertex_count(); ++v) {
      if (marked_[v]) out.push_back(corner_ref(corners_of_[v].front()));
    }
    return out;
  }
  std::vector<VertexLabel> vertex_labels() const {
    std::vector<VertexLabel> out;
    for (int v = 0; v < vertex_count(); ++v) {
      if (labels_[v]) out.push_back({corner_ref(corners_of_[v].front()), labels_[v]});
    }
    return out;
  }
  std::optional<int> vertex_with_label(int label) const {
    for (int v = 0; v < vertex_count(); ++v) {
      if (labels_[v] == label) return v;
    }
    return std::nullopt;
  }

  /// Same gluings and vertex data with the given weights attached (one per couple).
  CellComplexSurface with_weights(const std::vector<int>& w) const {
    ensure(w.size() == couples_.size(), "one weight per couple expected");
    CellComplexSurface s = *this;
    for (std::size_t i = 0; i < w.size(); ++i) s.couples_[i].weight = w[i];
    return s;
  }
  CellComplexSurface with_marks(const std::vector<CornerRef>& marked, const std::vector<VertexLabel>& labels) const {
    return build(n_, couples_, marked, labels);
  }

  static CornerRef corner_ref(int index) { return {index / 4, index % 4}; }

 private:
  CornerRef checked(CornerRef c) const {
    if (c.cell < 0 || c.cell >= n_ || c.corner < 0 || c.corner > 3) {
      throw Error(ErrorKind::InvalidArgument, "corner reference out of range");
    }
    return c;
  }

  void check_connected() const {
    std::vector<char> seen(static_cast<std::size_t>(n_), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int c = stack.back();
      stack.pop_back();
      for (int d = 0; d < 4; ++d) {
        int o = partner_[4 * c + d] / 4;
        if (!seen[o]) {
          seen[o] = 1;
          ++count;
          stack.push_back(o);
        }
      }
    }
    if (count != n_) throw Error(ErrorKind::Disconnected, "cell adjacency graph is disconnected");
  }

  // From corner k of a cell, cross the side starting there and land on the
  // matching corner of the neighbour.
  int next_corner(int index) const {
    int c = index / 4, k = index % 4;
    int t = partner_[4 * c + (k + 3) % 4];
    return 4 * (t / 4) + side_end(t % 4);
  }

  void walk_vertices() {
    vertex_of_.assign(4 * static_cast<std::size_t>(n_), -1);
    for (int start = 0; start < 4 * n_; ++start) {
      if (vertex_of_[start] >= 0) continue;
      int v = static_cast<int>(corners_of_.size());
      corners_of_.emplace_back();
      for (int x = start; vertex_of_[x] < 0; x = next_corner(x)) {
        vertex_of_[x] = v;
        corners_of_[v].push_back(x);
      }
      int count = static_cast<int>(corners_of_[v].size());
      if (count % 2 != 0) {
        throw Error(ErrorKind::OddHalfAngle,
                    "vertex at corner " + std::to_string(start) + " has cone angle " + std::to_string(count) + "π/2");
      }
      orders_.push_back(count / 2 - 2);
    }
  }

  void compute_orientation() {
    std::vector<int> o(static_cast<std::size_t>(n_), 0);
    o[0] = 1;
    std::vector<int> queue{0};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      int c = queue[head];
      for (int d = 0; d < 4; ++d) {
        int side = 4 * c + d;
        int other = partner_[side] / 4;
        int want = flip(side) ? -o[c] : o[c];
        if (o[other] == 0) {
          o[other] = want;
          queue.push_back(other);
        } else if (o[other] != want) {
          orientation_.reset();
          return;
        }
      }
    }
    orientation_ = std::move(o);
  }

  // Euler characteristic from an independent union-find over corners.
  void compute_genus() {
    std::vector<int> parent(4 * static_cast<std::size_t>(n_));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int side = 0; side < 4 * n_; ++side) {
      int t = partner_[side];
      int x = 4 * (side / 4) + side_start(side % 4);
      int y = 4 * (t / 4) + side_end(t % 4);
      parent[find(x)] = find(y);
    }
    int v = 0;
    for (int x = 0; x < 4 * n_; ++x) v += find(x) == x;
    int twice = 2 - v + n_;
    ensure(twice % 2 == 0, "Euler characteristic has the wrong parity");
    genus_ = twice / 2;
    ensure(v == vertex_count(), "vertex count disagrees between corner walk and union-find");
    int sum = std::accumulate(orders_.begin(), orders_.end(), 0);
    ensure(sum == 4 * genus_ - 4, "orders do not sum to 4g-4");
  }

  int n_ = 0;
  std::vector<int> partner_;
  std::vector<SideCouple> couples_;
  std::vector<int> couple_of_;
  std::vector<int> vertex_of_;
  std::vector<std::vector<int>> corners_of_;
  std::vector<int> orders_;
  std::vector<char> marked_;
  std::vector<int> labels_;
  std::optional<std::vector<int>> orientation_;
  int genus_ = 0;
};

inline SingularityTable singularities(const CellComplexSurface& s) {
  SingularityTable t;
  t.genus = s.genus();
  t.translation = s.is_translation();
  for (int v = 0; v < s.vertex_count(); ++v) {
    if (!s.distinguished(v)) continue;
    t.entries.push_back({v, s.order(v) + 2, s.order(v), s.marked(v), s.label(v)});
  }
  return t;
}

inline int genus(const CellComplexSurface& s) { return s.genus(); }

/// Square-tiled translation surface as a permutation pair: h is the right
/// neighbour, v the upper neighbour.  Marked points sit at the lower-left
/// corner of the listed cells.
struct Origami {
  Perm h;
  Perm v;
  std::vector<int> marked;

  int size() const { return static_cast<int>(h.size()); }

  /// v h v^-1 h^-1: the walk left, down, right, up around a lower-left corner.
  Perm commutator() const { return compose(v, compose(h, compose(inverse(v), inverse(h)))); }

  /// (representative cell, Abelian order) for every cone point and marked point.
  std::vector<std::pair<int, int>> abelian_orders() const {
    std::vector<std::pair<int, int>> out;
    std::vector<char> mark(h.size(), 0);
    for (int c : marked) mark[c] = 1;
    for (const auto& cyc : cycles(commutator())) {
      bool m = std::any_of(cyc.begin(), cyc.end(), [&](int x) { return mark[x] != 0; });
      if (cyc.size() > 1 || m) out.emplace_back(*std::min_element(cyc.begin(), cyc.end()), static_cast<int>(cyc.size()) - 1);
    }
    return out;
  }

  std::vector<int> stratum() const {
    std::vector<int> out;
    for (auto [c, o] : abelian_orders()) {
      if (o) out.push_back(o);
    }
    std::sort(out.rbegin(), out.rend());
    return out;
  }

  CellComplexSurface to_surface() const {
    const int n = size();
    if (!is_perm(h) || !is_perm(v) || h.size() != v.size()) throw Error(ErrorKind::InvalidArgument, "bad permutation pair");
    std::vector<SideCouple> couples;
    for (int c = 0; c < n; ++c) {
      couples.push_back({4 * c + 0, 4 * h[c] + 2, false, {}});
      couples.push_back({4 * c + 1, 4 * v[c] + 3, false, {}});
    }
    std::vector<CornerRef> m;
    for (int c : marked) m.push_back({c, 0});
    return CellComplexSurface::build(n, std::move(couples), m);
  }
};

/// Reads off (h, v) in the frame of the orientation; distinguished vertices of
/// order zero become marked points.
inline Origami to_origami(const CellComplexSurface& s) {
  if (!s.is_translation()) {
    throw Error(ErrorKind::NontrivialHolonomy, "surface has half-turn holonomy around some loop");
  }
  const auto& o = *s.orientation();
  const int n = s.cells();
  Origami og;
  og.h.resize(static_cast<std::size_t>(n));
  og.v.resize(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) {
    og.h[c] = s.partner(4 * c + (o[c] > 0 ? 0 : 2)) / 4;
    og.v[c] = s.partner(4 * c + (o[c] > 0 ? 1 : 3)) / 4;
  }
  for (int vtx = 0; vtx < s.vertex_count(); ++vtx) {
    if (s.order(vtx) != 0 || !s.distinguished(vtx)) continue;
    int best = n;
    for (int x : s.vertex_corners(vtx)) {
      int c = x / 4, k = x % 4;
      if ((o[c] > 0 ? k : (k + 2) % 4) == 0) best = std::min(best, c);
    }
    ensure(best < n, "regular vertex without a lower-left corner");
    og.marked.push_back(best);
  }
  std::sort(og.marked.begin(), og.marked.end());
  return og;
}

}  // namespace ewloci
