#pragma once

// Cylinder decompositions, core-curve homology and twin detection.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ewloci/affine.hpp"
#include "ewloci/error.hpp"
#include "ewloci/flat_surface.hpp"
#include "ewloci/perm.hpp"

namespace ewloci {

struct Row {
  std::vector<int> cells;   // rightward
  std::vector<int> frames;  // +1: cell upright in the cylinder frame, -1: turned
};

struct BoundaryCircle {
  std::vector<int> couples;            // one per cell of the adjacent row, rightward
  std::vector<int> vertices;           // vertex at the left end of each couple
  std::vector<int> saddle_connections; // ids (least couple index of each run)
};

struct Cylinder {
  int circumference = 0;
  int height = 0;
  std::vector<Row> rows;  // bottom to top
  bool closed_torus = false;
  BoundaryCircle bottom;
  BoundaryCircle top;

  std::vector<int> cells() const {
    std::vector<int> out;
    for (const auto& r : rows) out.insert(out.end(), r.cells.begin(), r.cells.end());
    std::sort(out.begin(), out.end());
    return out;
  }
  int area() const { return circumference * height; }
};

struct CylinderDecomposition {
  std::pair<long long, long long> direction{1, 0};
  std::vector<Cylinder> cylinders;
  bool covers_surface = false;

  int total_area() const {
    int a = 0;
    for (const auto& c : cylinders) a += c.area();
    return a;
  }
  /// Cylinder index of each cell.
  std::vector<int> cell_index(int n) const {
    std::vector<int> out(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < cylinders.size(); ++i) {
      for (const auto& r : cylinders[i].rows) {
        for (int c : r.cells) out[c] = static_cast<int>(i);
      }
    }
    return out;
  }
  std::vector<std::pair<int, int>> shapes() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& c : cylinders) out.emplace_back(c.circumference, c.height);
    std::sort(out.begin(), out.end());
    return out;
  }
};

namespace detail {

inline int local_dir(int global_dir, int frame) { return frame > 0 ? global_dir : (global_dir + 2) % 4; }
inline int local_corner(int global_corner, int frame) { return frame > 0 ? global_corner : (global_corner + 2) % 4; }

// Neighbour across the side facing global direction `dir`.
inline std::pair<int, int> step(const CellComplexSurface& s, int cell, int frame, int dir) {
  int side = 4 * cell + local_dir(dir, frame);
  return {s.partner(side) / 4, s.flip(side) ? -frame : frame};
}

inline Row trace_row(const CellComplexSurface& s, int cell, int frame) {
  Row r;
  int c = cell, o = frame;
  do {
    r.cells.push_back(c);
    r.frames.push_back(o);
    std::tie(c, o) = step(s, c, o, 0);
    ensure(static_cast<int>(r.cells.size()) <= s.cells(), "row does not close up");
  } while (c != cell);
  ensure(o == frame, "row returns with a turned frame");
  return r;
}

// A seam is open when no distinguished vertex sits on it.
inline bool seam_open(const CellComplexSurface& s, const Row& r, bool top) {
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    int corner = local_corner(top ? 3 : 0, r.frames[i]);
    if (s.distinguished(s.vertex(r.cells[i], corner))) return false;
  }
  return true;
}

inline BoundaryCircle boundary(const CellComplexSurface& s, const Row& r, bool top) {
  BoundaryCircle b;
  const std::size_t len = r.cells.size();
  for (std::size_t i = 0; i < len; ++i) {
    b.couples.push_back(s.couple_of(4 * r.cells[i] + local_dir(top ? 1 : 3, r.frames[i])));
    b.vertices.push_back(s.vertex(r.cells[i], local_corner(top ? 3 : 0, r.frames[i])));
  }
  std::size_t first = len;
  for (std::size_t i = 0; i < len; ++i) {
    if (s.distinguished(b.vertices[i])) {
      first = i;
      break;
    }
  }
  if (first == len) return b;
  int current = -1;
  for (std::size_t j = 0; j < len; ++j) {
    std::size_t i = (first + j) % len;
    if (s.distinguished(b.vertices[i])) {
      if (current >= 0) b.saddle_connections.push_back(current);
      current = b.couples[i];
    } else {
      current = std::min(current, b.couples[i]);
    }
  }
  b.saddle_connections.push_back(current);
  return b;
}

}  // namespace detail

inline CylinderDecomposition horizontal_cylinders(const CellComplexSurface& s) {
  CylinderDecomposition dec;
  const int n = s.cells();
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  const auto& orient = s.orientation();
  for (int seed = 0; seed < n; ++seed) {
    if (used[seed]) continue;
    Row first = detail::trace_row(s, seed, orient ? (*orient)[seed] : 1);
    std::vector<Row> rows{first};
    bool cyclic = false;
    // grow upward
    while (detail::seam_open(s, rows.back(), true)) {
      auto [c, o] = detail::step(s, rows.back().cells[0], rows.back().frames[0], 1);
      auto at = std::find(first.cells.begin(), first.cells.end(), c);
      if (at != first.cells.end()) {
        ensure(o == first.frames[at - first.cells.begin()], "cylinder closes with a turned frame");
        cyclic = true;
        break;
      }
      rows.push_back(detail::trace_row(s, c, o));
      ensure(static_cast<int>(rows.size()) <= n, "runaway cylinder");
    }
    if (!cyclic) {
      while (detail::seam_open(s, rows.front(), false)) {
        auto [c, o] = detail::step(s, rows.front().cells[0], rows.front().frames[0], 3);
        rows.insert(rows.begin(), detail::trace_row(s, c, o));
        ensure(static_cast<int>(rows.size()) <= n, "runaway cylinder");
      }
    }
    Cylinder cyl;
    cyl.rows = std::move(rows);
    cyl.closed_torus = cyclic;
    cyl.circumference = static_cast<int>(cyl.rows[0].cells.size());
    cyl.height = static_cast<int>(cyl.rows.size());
    for (const auto& r : cyl.rows) {
      ensure(static_cast<int>(r.cells.size()) == cyl.circumference, "rows of unequal length in a cylinder");
      for (int c : r.cells) {
        ensure(!used[c], "cell in two cylinders");
        used[c] = 1;
      }
    }
    if (!cyclic) {
      cyl.bottom = detail::boundary(s, cyl.rows.front(), false);
      cyl.top = detail::boundary(s, cyl.rows.back(), true);
    }
    dec.cylinders.push_back(std::move(cyl));
  }
  dec.covers_surface = dec.total_area() == n;
  return dec;
}

/// Surface after applying a word of moves, with the cell map from the original
/// cells to the new cells composed along the way (frames ignored).
struct MovedSurface {
  CellComplexSurface surface;
  std::vector<Recut> steps;
};

inline MovedSurface apply_word(const CellComplexSurface& s, const std::vector<Move>& word) {
  MovedSurface out{s, {}};
  for (Move m : word) {
    out.steps.push_back(recut(out.surface, m));
    out.surface = out.steps.back().surface;
  }
  return out;
}

inline CylinderDecomposition direction_cylinders(const CellComplexSurface& s, long long p, long long q) {
  auto word = straightening_word(p, q);
  auto moved = apply_word(s, word);
  auto dec = horizontal_cylinders(moved.surface);
  dec.direction = {p, q};
  return dec;
}

/// Primitive directions with 0 <= q <= B, |p| <= B, and (1,0) for q = 0, in
/// lexicographic order of (p, q).
inline std::vector<std::pair<long long, long long>> sweep_directions(int bound) {
  std::vector<std::pair<long long, long long>> out;
  for (long long p = -bound; p <= bound; ++p) {
    for (long long q = 0; q <= bound; ++q) {
      if (q == 0 && p != 1) continue;
      if (std::gcd(p, q) == 1) out.emplace_back(p, q);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Homology

/// Integral homology coordinates through a tree-cotree decomposition.
class HomologyBasis {
 public:
  explicit HomologyBasis(const CellComplexSurface& s) : s_(&s) {
    if (!s.is_translation()) {
      throw Error(ErrorKind::HalfTranslationUnsupported, "homology classes need a translation surface");
    }
    const auto& couples = s.couples();
    const int e = static_cast<int>(couples.size());
    const int v = s.vertex_count();
    const int f = s.cells();
    tail_.resize(static_cast<std::size_t>(e));
    head_.resize(static_cast<std::size_t>(e));
    for (int i = 0; i < e; ++i) {
      int a = couples[i].a;
      tail_[i] = s.vertex(a / 4, side_start(a % 4));
      head_[i] = s.vertex(a / 4, side_end(a % 4));
    }
    std::vector<char> in_tree(static_cast<std::size_t>(e), 0);
    // primal spanning tree by BFS over vertices
    std::vector<std::vector<int>> incident(static_cast<std::size_t>(v));
    for (int i = 0; i < e; ++i) {
      incident[tail_[i]].push_back(i);
      incident[head_[i]].push_back(i);
    }
    std::vector<char> seen(static_cast<std::size_t>(v), 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (int i : incident[queue[h]]) {
        int w = tail_[i] == queue[h] ? head_[i] : tail_[i];
        if (!seen[w]) {
          seen[w] = 1;
          in_tree[i] = 1;
          queue.push_back(w);
        }
      }
    }
    // dual spanning tree over cells through the remaining edges
    parent_edge_.assign(static_cast<std::size_t>(f), -1);
    face_order_.clear();
    std::vector<char> fseen(static_cast<std::size_t>(f), 0);
    fseen[0] = 1;
    face_order_.push_back(0);
    std::vector<char> cotree(static_cast<std::size_t>(e), 0);
    for (std::size_t h = 0; h < face_order_.size(); ++h) {
      int c = face_order_[h];
      for (int d = 0; d < 4; ++d) {
        int side = 4 * c + d;
        int i = s.couple_of(side);
        if (in_tree[i]) continue;
        int other = s.partner(side) / 4;
        if (!fseen[other]) {
          fseen[other] = 1;
          cotree[i] = 1;
          parent_edge_[other] = i;
          face_order_.push_back(other);
        }
      }
    }
    for (int i = 0; i < e; ++i) {
      if (!in_tree[i] && !cotree[i]) leftover_.push_back(i);
    }
    ensure(static_cast<int>(leftover_.size()) == 2 * s.genus(), "tree-cotree leftover count is not 2g");
  }

  int rank() const { return static_cast<int>(leftover_.size()); }

  /// Boundary check: the chain (indexed by couple) must be a cycle.
  bool is_cycle(const std::vector<long long>& z) const {
    std::vector<long long> d(static_cast<std::size_t>(s_->vertex_count()), 0);
    for (std::size_t i = 0; i < z.size(); ++i) {
      d[head_[i]] += z[i];
      d[tail_[i]] -= z[i];
    }
    return std::all_of(d.begin(), d.end(), [](long long x) { return x == 0; });
  }

  std::vector<long long> coordinates(const std::vector<long long>& z) const {
    ensure(is_cycle(z), "chain is not a cycle");
    const auto& couples = s_->couples();
    std::vector<long long> x(static_cast<std::size_t>(s_->cells()), 0);
    // sigma_cell(e): +1 in the cell of side a, -1 in the cell of side b
    auto sigma = [&](int cell, int i) {
      int r = 0;
      if (couples[i].a / 4 == cell) ++r;
      if (couples[i].b / 4 == cell) --r;
      return r;
    };
    for (std::size_t h = 1; h < face_order_.size(); ++h) {
      int fc = face_order_[h];
      int i = parent_edge_[fc];
      int other = couples[i].a / 4 == fc ? couples[i].b / 4 : couples[i].a / 4;
      x[fc] = (z[i] - x[other] * sigma(other, i)) * sigma(fc, i);
    }
    std::vector<long long> out;
    for (int i : leftover_) out.push_back(z[i] - x[couples[i].a / 4] + x[couples[i].b / 4]);
    return out;
  }

  int tail(int couple) const { return tail_[couple]; }
  int head(int couple) const { return head_[couple]; }

 private:
  const CellComplexSurface* s_;
  std::vector<int> tail_, head_;
  std::vector<int> parent_edge_;
  std::vector<int> face_order_;
  std::vector<int> leftover_;
};

/// Chain of the bottom boundary traversed rightward in the cylinder frame.
inline std::vector<long long> bottom_chain(const CellComplexSurface& s, const Cylinder& c) {
  std::vector<long long> z(s.couples().size(), 0);
  const auto& r = c.rows.front();
  for (std::size_t i = 0; i < r.cells.size(); ++i) {
    int side = 4 * r.cells[i] + detail::local_dir(3, r.frames[i]);
    int e = s.couple_of(side);
    z[e] += s.couples()[e].a == side ? 1 : -1;
  }
  return z;
}

inline std::vector<long long> core_homology(const CellComplexSurface& s, const HomologyBasis& basis, const Cylinder& c) {
  if (!s.is_translation()) throw Error(ErrorKind::HalfTranslationUnsupported, "core classes need a translation surface");
  return basis.coordinates(bottom_chain(s, c));
}

inline std::vector<long long> core_homology(const CellComplexSurface& s, const Cylinder& c) {
  HomologyBasis basis(s);
  return core_homology(s, basis, c);
}

// ---------------------------------------------------------------------------
// Twins

enum class HomologyRelation { equal, opposite, distinct, unavailable };

inline const char* to_string(HomologyRelation r) {
  switch (r) {
    case HomologyRelation::equal: return "homologous";
    case HomologyRelation::opposite: return "anti-aligned";
    case HomologyRelation::distinct: return "distinct";
    case HomologyRelation::unavailable: return "unavailable";
  }
  return "?";
}

struct TwinPair {
  int i = 0;
  int j = 0;
  bool isometric = false;
  bool deck = false;  // exchanged by the deck group
  HomologyRelation homology = HomologyRelation::unavailable;
};

enum class TwinStatus { free, twinned, ambiguous };

struct PairingReport {
  std::pair<long long, long long> direction{1, 0};
  std::vector<std::pair<int, int>> shapes;  // (c, h) per cylinder
  std::vector<TwinStatus> status;
  std::vector<int> partner;                 // -1 unless twinned
  std::vector<TwinPair> pairs;
  bool perfect_matching = false;
  bool pass = false;  // perfect matching, isometric, deck-exchanged (if a deck was given), homologous (if translation)
};

/// Image of each cylinder under a cell map, or -1 when the image is not a cylinder.
inline std::vector<int> cylinder_images(const CylinderDecomposition& dec, const CellMap& f) {
  const int n = f.size();
  auto index = dec.cell_index(n);
  std::vector<int> out;
  for (const auto& c : dec.cylinders) {
    auto cells = c.cells();
    int target = index[f.target[cells.front()]];
    std::vector<int> img;
    for (int x : cells) img.push_back(f.target[x]);
    std::sort(img.begin(), img.end());
    out.push_back(img == dec.cylinders[target].cells() ? target : -1);
  }
  return out;
}

inline PairingReport twin_report(const CellComplexSurface& s, const CylinderDecomposition& dec,
                                 const std::optional<CellMap>& deck = std::nullopt) {
  PairingReport rep;
  rep.direction = dec.direction;
  const int k = static_cast<int>(dec.cylinders.size());
  for (const auto& c : dec.cylinders) rep.shapes.emplace_back(c.circumference, c.height);
  rep.status.assign(static_cast<std::size_t>(k), TwinStatus::free);
  rep.partner.assign(static_cast<std::size_t>(k), -1);

  std::vector<std::vector<int>> groups;
  if (deck) {
    auto img = cylinder_images(dec, *deck);
    std::vector<char> seen(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i) {
      if (seen[i]) continue;
      std::vector<int> orbit;
      bool ok = true;
      for (int x = i; x >= 0 && !seen[x]; x = img[x]) {
        seen[x] = 1;
        orbit.push_back(x);
        if (img[x] < 0) ok = false;
      }
      if (!ok) orbit.push_back(-1);  // deck does not permute cylinders
      groups.push_back(std::move(orbit));
    }
  } else {
    std::map<std::pair<int, int>, std::vector<int>> by_shape;
    for (int i = 0; i < k; ++i) by_shape[rep.shapes[i]].push_back(i);
    for (auto& [shape, g] : by_shape) groups.push_back(std::move(g));
  }

  std::optional<HomologyBasis> basis;
  if (s.is_translation()) basis.emplace(s);
  bool all_ok = true;
  for (const auto& g : groups) {
    bool broken = std::find(g.begin(), g.end(), -1) != g.end();
    if (g.size() == 2 && !broken) {
      TwinPair p{std::min(g[0], g[1]), std::max(g[0], g[1]), false, deck.has_value(), HomologyRelation::unavailable};
      p.isometric = rep.shapes[p.i] == rep.shapes[p.j];
      if (basis) {
        auto a = core_homology(s, *basis, dec.cylinders[p.i]);
        auto b = core_homology(s, *basis, dec.cylinders[p.j]);
        auto neg = b;
        for (auto& x : neg) x = -x;
        p.homology = a == b ? HomologyRelation::equal : a == neg ? HomologyRelation::opposite : HomologyRelation::distinct;
      }
      rep.status[p.i] = rep.status[p.j] = TwinStatus::twinned;
      rep.partner[p.i] = p.j;
      rep.partner[p.j] = p.i;
      all_ok = all_ok && p.isometric && (!basis || p.homology == HomologyRelation::equal);
      rep.pairs.push_back(p);
    } else if (g.size() == 1 && !broken) {
      rep.status[g[0]] = TwinStatus::free;
    } else {
      for (int x : g) {
        if (x >= 0) rep.status[x] = TwinStatus::ambiguous;
      }
    }
  }
  std::sort(rep.pairs.begin(), rep.pairs.end(), [](const auto& a, const auto& b) { return a.i < b.i; });
  rep.perfect_matching = std::all_of(rep.status.begin(), rep.status.end(), [](auto t) { return t == TwinStatus::twinned; });
  rep.pass = rep.perfect_matching && all_ok;
  return rep;
}

/// Twin reports over all sweep directions; the deck map is carried through the recuts.
inline std::vector<PairingReport> sweep(const CellComplexSurface& s, int bound, const std::optional<CellMap>& deck) {
  std::vector<PairingReport> out;
  for (auto [p, q] : sweep_directions(bound)) {
    auto moved = apply_word(s, straightening_word(p, q));
    std::optional<CellMap> d = deck;
    if (d) {
      for (const auto& step : moved.steps) d = transport(*d, step, step);
    }
    auto dec = horizontal_cylinders(moved.surface);
    dec.direction = {p, q};
    out.push_back(twin_report(moved.surface, dec, d));
  }
  return out;
}

// ---------------------------------------------------------------------------
// SL(2,Z) on origamis

enum class Generator { T, S };

inline Origami sl2z_action(const Origami& o, Generator g) {
  Origami out;
  if (g == Generator::T) {
    out.h = o.h;
    out.v = compose(o.v, inverse(o.h));
  } else {
    out.h = inverse(o.v);
    out.v = o.h;
  }
  // a shear keeps lower-left corners; after a quarter turn the new lower-left
  // corner of cell c is its old upper-left corner, the lower-left one of v(c)
  auto vinv = inverse(o.v);
  for (int c : o.marked) out.marked.push_back(g == Generator::T ? c : vinv[c]);
  std::sort(out.marked.begin(), out.marked.end());
  return out;
}

struct OrbitResult {
  std::vector<PermPairValue> members;  // canonical (h, v), discovery order
  bool truncated = false;
};

inline OrbitResult sl2z_orbit(const Origami& o, std::size_t max_size) {
  OrbitResult res;
  std::set<PermPairValue> seen;
  auto start = canonical_pair(o.h, o.v);
  seen.insert(start);
  res.members.push_back(start);
  for (std::size_t head = 0; head < res.members.size(); ++head) {
    Origami cur{res.members[head].first, res.members[head].second, {}};
    for (auto g : {Generator::T, Generator::S}) {
      auto next = sl2z_action(cur, g);
      auto key = canonical_pair(next.h, next.v);
      if (seen.insert(key).second) {
        if (res.members.size() >= max_size) {
          res.truncated = true;
          return res;
        }
        res.members.push_back(std::move(key));
      }
    }
  }
  return res;
}

}  // namespace ewloci
