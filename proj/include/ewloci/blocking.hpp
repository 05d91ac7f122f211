#pragma once

// Exact straight-line tracing for finite blocking checks.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "ewloci/affine.hpp"
#include "ewloci/error.hpp"
#include "ewloci/flat_surface.hpp"

namespace ewloci {

using Rational = boost::rational<std::int64_t>;

/// Point in local cell coordinates, (x, y) in [0,1]^2.
struct SurfacePoint {
  int cell = 0;
  Rational x{0};
  Rational y{0};
  friend bool operator==(const SurfacePoint&, const SurfacePoint&) = default;
};

inline bool operator<(const SurfacePoint& a, const SurfacePoint& b) {
  if (a.cell != b.cell) return a.cell < b.cell;
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

namespace detail {

inline bool is_int(const Rational& r) { return r.denominator() == 1; }

inline const Rational kZero{0};
inline const Rational kOne{1};

// position along side d, counterclockwise from its start
inline Rational side_param(int d, const Rational& x, const Rational& y) {
  switch (d) {
    case 0: return y;
    case 1: return 1 - x;
    case 2: return 1 - y;
    default: return x;
  }
}

inline std::pair<Rational, Rational> side_point(int d, const Rational& t) {
  switch (d) {
    case 0: return {kOne, t};
    case 1: return {1 - t, kOne};
    case 2: return {kZero, 1 - t};
    default: return {t, kZero};
  }
}

inline bool on_corner(const SurfacePoint& p) {
  return (p.x == kZero || p.x == kOne) && (p.y == kZero || p.y == kOne);
}

inline bool on_edge(const SurfacePoint& p) {
  return p.x == kZero || p.x == kOne || p.y == kZero || p.y == kOne;
}

// Edge points have two descriptions; keep the smaller one.
inline SurfacePoint canonical_point(const CellComplexSurface& s, SurfacePoint p) {
  if (!on_edge(p)) return p;
  int d = p.x == kOne ? 0 : p.y == kOne ? 1 : p.x == kZero ? 2 : 3;
  int t = s.partner(4 * p.cell + d);
  auto [x, y] = side_point(t % 4, 1 - side_param(d, p.x, p.y));
  SurfacePoint q{t / 4, x, y};
  return q < p ? q : p;
}

}  // namespace detail

/// Orbit of p under the group generated by a cell map (typically the deck generator).
inline std::vector<SurfacePoint> fiber(const CellComplexSurface& s, const CellMap& deck, const SurfacePoint& p) {
  if (p.cell < 0 || p.cell >= s.cells() || p.x < detail::kZero || p.x > detail::kOne ||
      p.y < detail::kZero || p.y > detail::kOne) {
    throw Error(ErrorKind::InvalidArgument, "point outside its cell");
  }
  if (detail::on_corner(p)) throw Error(ErrorKind::PointOnSingularity, "fibers through cell corners are refused");
  std::vector<SurfacePoint> out;
  SurfacePoint q = p;
  for (int i = 0; i <= s.cells(); ++i) {
    SurfacePoint c = detail::canonical_point(s, q);
    if (std::find(out.begin(), out.end(), c) != out.end()) break;
    out.push_back(c);
    bool rot = deck.rotated[q.cell] != 0;
    q = {deck.target[q.cell], rot ? 1 - q.x : q.x, rot ? 1 - q.y : q.y};
  }
  return out;
}

struct BlockingTrace {
  SurfacePoint start;
  std::pair<long long, long long> direction{1, 0};
  std::vector<int> crossings;             // sides crossed, in order
  std::vector<SurfacePoint> fiber_hits;   // blocking points met before the stop point
  bool reached = false;                   // the stop point was reached
  bool blocked = false;
};

/// Traces from p in direction (dx, dy) (global frame on translation surfaces,
/// the start cell's frame otherwise) until the first arrival at `stop`
/// or the first return to p, whichever comes first.
inline BlockingTrace trace_between(const CellComplexSurface& s, const SurfacePoint& p, const SurfacePoint& stop,
                                   const std::vector<SurfacePoint>& blockers, long long dx, long long dy) {
  if (detail::on_edge(p) || detail::on_edge(stop)) {
    throw Error(ErrorKind::InvalidArgument, "tracing starts and stops at interior points");
  }
  if (dx == 0 && dy == 0) throw Error(ErrorKind::InvalidArgument, "zero direction");
  BlockingTrace tr;
  tr.start = p;
  tr.direction = {dx, dy};
  std::vector<std::vector<SurfacePoint>> by_cell(static_cast<std::size_t>(s.cells()));
  for (const auto& b : blockers) {
    if (detail::on_corner(b)) throw Error(ErrorKind::PointOnSingularity, "blocking point at a corner");
    if (!(b == p) && !(b == stop)) by_cell[b.cell].push_back(b);
  }
  int frame = s.is_translation() ? (*s.orientation())[p.cell] : 1;
  Rational ux(dx * frame), uy(dy * frame);
  int cell = p.cell;
  Rational x = p.x, y = p.y;
  const long long limit = 8LL * s.cells() * (std::abs(dx) + std::abs(dy) + 1);
  for (long long it = 0; it < limit; ++it) {
    // exit time from the current cell
    std::optional<Rational> tx, ty;
    if (ux > detail::kZero) tx = (1 - x) / ux;
    if (ux < detail::kZero) tx = -x / ux;
    if (uy > detail::kZero) ty = (1 - y) / uy;
    if (uy < detail::kZero) ty = -y / uy;
    if (tx && ty && *tx == *ty) throw Error(ErrorKind::HitsSingularity, "trajectory runs into a cell corner");
    Rational texit = tx && (!ty || *tx < *ty) ? *tx : *ty;
    // events strictly inside (0, texit): blockers, the stop point, the start
    struct Event {
      Rational t;
      int kind;  // 0 blocker, 1 stop, 2 start
      SurfacePoint at;
    };
    std::vector<Event> events;
    auto param = [&](const SurfacePoint& q) -> std::optional<Rational> {
      Rational ax = q.x - x, ay = q.y - y;
      if (ax * uy != ay * ux) return std::nullopt;
      Rational t = ux != detail::kZero ? ax / ux : ay / uy;
      if (t <= detail::kZero || t >= texit) return std::nullopt;
      return t;
    };
    for (const auto& b : by_cell[cell]) {
      if (auto t = param(b)) events.push_back({*t, 0, b});
    }
    if (stop.cell == cell) {
      if (auto t = param(stop)) events.push_back({*t, 1, stop});
    }
    if (p.cell == cell && !(stop == p)) {
      if (auto t = param(p)) events.push_back({*t, 2, p});
    }
    std::sort(events.begin(), events.end(), [](const Event& a, const Event& b) { return a.t < b.t; });
    for (const auto& e : events) {
      if (e.kind == 0) {
        tr.fiber_hits.push_back(e.at);
      } else {
        tr.reached = e.kind == 1;
        tr.blocked = tr.reached && !tr.fiber_hits.empty();
        return tr;
      }
    }
    int d = tx && (!ty || *tx < *ty) ? (ux > detail::kZero ? 0 : 2) : (uy > detail::kZero ? 1 : 3);
    Rational nx = x + ux * texit, ny = y + uy * texit;
    Rational t = detail::side_param(d, nx, ny);
    int side = 4 * cell + d;
    int other = s.partner(side);
    tr.crossings.push_back(side);
    std::tie(x, y) = detail::side_point(other % 4, 1 - t);
    if (s.flip(side)) {
      ux = -ux;
      uy = -uy;
    }
    cell = other / 4;
  }
  throw Error(ErrorKind::Defect, "trajectory did not close within its bound");
}

/// Self-blocking: trace until the first return to p and collect the other fiber points met.
inline BlockingTrace is_self_blocked(const CellComplexSurface& s, const CellMap& deck, const SurfacePoint& p, long long dx,
                                     long long dy) {
  auto f = fiber(s, deck, p);
  return trace_between(s, p, p, f, dx, dy);
}

/// True when the line through p meets no lattice point (and hence no vertex).
inline bool avoids_lattice(const SurfacePoint& p, long long dx, long long dy) {
  return !detail::is_int(Rational(dy) * p.x - Rational(dx) * p.y);
}

struct BlockingSample {
  SurfacePoint point;
  long long dx = 1;
  long long dy = 0;
};

/// Seeded sampler of regular interior rational points and primitive directions
/// whose lines avoid every vertex.
inline std::vector<BlockingSample> sample_blocking_inputs(const CellComplexSurface& s, int count, std::uint64_t seed,
                                                         int max_den = 12, int max_dir = 5) {
  std::mt19937_64 rng(seed);
  std::vector<BlockingSample> out;
  auto uniform = [&](long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(rng); };
  while (static_cast<int>(out.size()) < count) {
    BlockingSample b;
    b.point.cell = static_cast<int>(uniform(0, s.cells() - 1));
    long long den = uniform(2, max_den);
    b.point.x = Rational(uniform(1, den - 1), den);
    den = uniform(2, max_den);
    b.point.y = Rational(uniform(1, den - 1), den);
    b.dx = uniform(-max_dir, max_dir);
    b.dy = uniform(-max_dir, max_dir);
    if ((b.dx == 0 && b.dy == 0) || std::gcd(b.dx, b.dy) != 1) continue;
    if (!avoids_lattice(b.point, b.dx, b.dy)) continue;
    out.push_back(b);
  }
  return out;
}

}  // namespace ewloci
