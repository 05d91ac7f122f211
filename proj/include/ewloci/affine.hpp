#pragma once

// SL(2,Z) acting on square-tiled (half-)translation surfaces by cut and paste.
//
// shear = [[1,1],[0,1]], unshear = its inverse, quarter_turn = [[0,-1],[1,0]].
// A shear cuts every cell into two triangles along a diagonal and reassembles
// one new square around every old vertical gluing.  The triangle holding the
// bottom side is the "bottom half" (half 0), the other is half 1.

#include <algorithm>
#include <array>
#include <numeric>
#include <tuple>
#include <utility>
#include <vector>

#include "ewloci/error.hpp"
#include "ewloci/flat_surface.hpp"

namespace ewloci {

enum class Move { shear, unshear, quarter_turn };

inline const char* to_string(Move m) {
  switch (m) {
    case Move::shear: return "T";
    case Move::unshear: return "T^-1";
    case Move::quarter_turn: return "S";
  }
  return "?";
}

/// Acts on a direction vector.
inline std::pair<long long, long long> apply_move(Move m, std::pair<long long, long long> d) {
  auto [p, q] = d;
  switch (m) {
    case Move::shear: return {p + q, q};
    case Move::unshear: return {p - q, q};
    case Move::quarter_turn: return {-q, p};
  }
  return d;
}

/// Cell-level map between surfaces: cell c goes to target[c], rotated by a
/// half-turn when rotated[c] is set (frames compared locally).
struct CellMap {
  std::vector<int> target;
  std::vector<char> rotated;

  static CellMap identity(int n) {
    CellMap m;
    m.target.resize(static_cast<std::size_t>(n));
    std::iota(m.target.begin(), m.target.end(), 0);
    m.rotated.assign(static_cast<std::size_t>(n), 0);
    return m;
  }
  int size() const { return static_cast<int>(target.size()); }
};

/// (g after f)
inline CellMap compose(const CellMap& g, const CellMap& f) {
  CellMap out;
  for (std::size_t c = 0; c < f.target.size(); ++c) {
    int t = f.target[c];
    out.target.push_back(g.target[t]);
    out.rotated.push_back(static_cast<char>(f.rotated[c] ^ g.rotated[t]));
  }
  return out;
}

inline CellMap power(const CellMap& f, int e) {
  CellMap out = CellMap::identity(f.size());
  for (int i = 0; i < e; ++i) out = compose(f, out);
  return out;
}

struct Recut {
  CellComplexSurface surface;
  Move move = Move::quarter_turn;
  // [old cell][half] -> new cell and frame sign of the triangle in it
  std::vector<std::array<int, 2>> piece_cell;
  std::vector<std::array<int, 2>> piece_rot;
  // per new cell: the anchoring triangle (old cell, half)
  std::vector<std::array<int, 2>> anchor;
};

namespace detail {

// Which half holds vertical side dir (0 or 2).
inline int half_of_vertical(Move m, int dir) {
  if (m == Move::shear) return dir == 2 ? 0 : 1;
  return dir == 0 ? 0 : 1;
}

inline bool corner_in_half(Move m, int half, int k) {
  // shear: bottom {0,1,3}, top {1,2,3}; unshear: bottom {0,1,2}, top {0,2,3}
  int missing = m == Move::shear ? (half == 0 ? 2 : 0) : (half == 0 ? 3 : 1);
  return k != missing;
}

// Old corner k of a triangle in `half` with frame sign r -> new corner.
inline int recut_corner(Move m, int half, int r, int k) {
  if (r < 0) {
    k = (k + 2) % 4;
    half = 1 - half;
  }
  static constexpr std::array<std::array<int, 4>, 4> table{{
      {0, 1, -1, 2},   // shear, lower
      {-1, 0, 2, 3},   // shear, upper
      {0, 1, 3, -1},   // unshear, lower
      {1, -1, 2, 3},   // unshear, upper
  }};
  int row = (m == Move::shear ? 0 : 2) + half;
  int out = table[row][k];
  ensure(out >= 0, "corner outside its triangle");
  return out;
}

}  // namespace detail

inline Recut recut(const CellComplexSurface& s, Move m) {
  const int n = s.cells();
  Recut r;
  r.move = m;
  r.piece_cell.assign(static_cast<std::size_t>(n), {-1, -1});
  r.piece_rot.assign(static_cast<std::size_t>(n), {1, 1});
  if (m == Move::quarter_turn) {
    std::vector<SideCouple> couples;
    for (const auto& c : s.couples()) {
      couples.push_back({4 * (c.a / 4) + (c.a + 1) % 4, 4 * (c.b / 4) + (c.b + 1) % 4, c.flip, {}});
    }
    auto turn = [](CornerRef x) { return CornerRef{x.cell, (x.corner + 1) % 4}; };
    std::vector<CornerRef> marked;
    for (auto x : s.marked_corners()) marked.push_back(turn(x));
    std::vector<VertexLabel> labels;
    for (auto l : s.vertex_labels()) labels.push_back({turn(l.at), l.label});
    r.surface = CellComplexSurface::build(n, std::move(couples), marked, labels);
    for (int c = 0; c < n; ++c) {
      r.piece_cell[c] = {c, c};
      r.anchor.push_back({c, 0});
    }
    return r;
  }

  // one new square per vertical couple
  struct Square {
    std::array<int, 3> anchor_key;  // (half, cell, side)
    std::array<int, 3> other_key;
    bool flip;
  };
  std::vector<Square> squares;
  for (const auto& c : s.couples()) {
    if (is_horizontal_dir(c.a % 4)) continue;
    std::array<int, 3> ka{detail::half_of_vertical(m, c.a % 4), c.a / 4, c.a};
    std::array<int, 3> kb{detail::half_of_vertical(m, c.b % 4), c.b / 4, c.b};
    if (kb < ka) std::swap(ka, kb);
    squares.push_back({ka, kb, c.flip});
  }
  ensure(static_cast<int>(squares.size()) == n, "expected one vertical couple per cell");
  std::sort(squares.begin(), squares.end(), [](const Square& x, const Square& y) {
    return std::tie(x.anchor_key[1], x.anchor_key[0]) < std::tie(y.anchor_key[1], y.anchor_key[0]);
  });
  for (int id = 0; id < n; ++id) {
    const auto& sq = squares[id];
    int ra = sq.anchor_key[0] == 0 ? 1 : -1;
    int rb = sq.flip ? -ra : ra;
    for (auto [key, rot] : {std::pair{sq.anchor_key, ra}, std::pair{sq.other_key, rb}}) {
      ensure(r.piece_cell[key[1]][key[0]] < 0, "triangle used twice");
      r.piece_cell[key[1]][key[0]] = id;
      r.piece_rot[key[1]][key[0]] = rot;
    }
    r.anchor.push_back({sq.anchor_key[1], sq.anchor_key[0]});
  }
  auto lower = [&](int cell, int half) { return (half == 0) == (r.piece_rot[cell][half] > 0); };
  std::vector<SideCouple> couples;
  auto horizontal_image = [&](int side) {
    int cell = side / 4, dir = side % 4;
    int half = dir == 3 ? 0 : 1;
    int id = r.piece_cell[cell][half];
    return 4 * id + (lower(cell, half) ? 3 : 1);
  };
  for (const auto& c : s.couples()) {
    if (!is_horizontal_dir(c.a % 4)) continue;
    int a = horizontal_image(c.a), b = horizontal_image(c.b);
    couples.push_back({a, b, a % 4 == b % 4, {}});
  }
  const int low_dir = m == Move::shear ? 0 : 2;
  for (int cell = 0; cell < n; ++cell) {
    int sides[2];
    for (int half = 0; half < 2; ++half) {
      sides[half] = 4 * r.piece_cell[cell][half] + (lower(cell, half) ? low_dir : 2 - low_dir);
    }
    couples.push_back({sides[0], sides[1], sides[0] % 4 == sides[1] % 4, {}});
  }
  auto move_corner = [&](CornerRef x) {
    int half = detail::corner_in_half(m, 0, x.corner) ? 0 : 1;
    int rot = r.piece_rot[x.cell][half];
    return CornerRef{r.piece_cell[x.cell][half], detail::recut_corner(m, half, rot, x.corner)};
  };
  std::vector<CornerRef> marked;
  for (auto x : s.marked_corners()) marked.push_back(move_corner(x));
  std::vector<VertexLabel> labels;
  for (auto l : s.vertex_labels()) labels.push_back({move_corner(l.at), l.label});
  r.surface = CellComplexSurface::build(n, std::move(couples), marked, labels);
  return r;
}

/// New corner of an old corner through a recut (used by tests to check that
/// vertices are carried consistently).
inline CornerRef recut_corner(const Recut& r, CornerRef x, int half) {
  if (r.move == Move::quarter_turn) return {x.cell, (x.corner + 1) % 4};
  ensure(detail::corner_in_half(r.move, half, x.corner), "corner not in the requested half");
  return {r.piece_cell[x.cell][half], detail::recut_corner(r.move, half, r.piece_rot[x.cell][half], x.corner)};
}

/// Carries a cell map f: X -> Y through the same move applied to both sides.
inline CellMap transport(const CellMap& f, const Recut& src, const Recut& dst) {
  if (src.move == Move::quarter_turn) return f;
  CellMap out;
  for (const auto& [cell, half] : src.anchor) {
    int ra = src.piece_rot[cell][half];
    int t = f.target[cell];
    int rho = f.rotated[cell] ? -1 : 1;
    int img_half = rho < 0 ? 1 - half : half;
    out.target.push_back(dst.piece_cell[t][img_half]);
    int total = ra * rho * dst.piece_rot[t][img_half];
    out.rotated.push_back(static_cast<char>(total < 0));
  }
  return out;
}

/// Word w (applied left to right) with w(p,q) = (1,0).
inline std::vector<Move> straightening_word(long long p, long long q) {
  if (std::gcd(p, q) != 1) throw Error(ErrorKind::NotCoprime, "direction must be primitive");
  std::vector<Move> word;
  while (q != 0) {
    // T^-k with |p - kq| < |q|
    long long k = p / q;
    for (long long i = 0; i < (k < 0 ? -k : k); ++i) word.push_back(k > 0 ? Move::unshear : Move::shear);
    p -= k * q;
    word.push_back(Move::quarter_turn);
    std::tie(p, q) = std::pair{-q, p};
  }
  if (p == -1) {
    word.push_back(Move::quarter_turn);
    word.push_back(Move::quarter_turn);
  }
  return word;
}

}  // namespace ewloci
