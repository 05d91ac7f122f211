#pragma once

// Shared fixtures and random generators for the test binaries.

#include <algorithm>
#include <random>
#include <vector>

#include "ewloci/ewloci.hpp"

namespace ewtest {

using namespace ewloci;

inline CellComplexSurface torus() { return Origami{{0}, {0}, {}}.to_surface(); }

inline Perm random_perm(int n, std::mt19937_64& rng) {
  Perm p = identity_perm(n);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline Origami random_origami(int n, std::mt19937_64& rng) {
  while (true) {
    Origami o{random_perm(n, rng), random_perm(n, rng), {}};
    if (is_transitive({o.h, o.v}, n)) return o;
  }
}

/// Connected square-tiled surface with random side pairings.  With
/// allow_flip, half-turn gluings appear as well.
inline CellComplexSurface random_surface(int n, std::mt19937_64& rng, bool allow_flip) {
  while (true) {
    std::vector<SideCouple> couples;
    for (int axis = 0; axis < 2; ++axis) {
      if (!allow_flip) {
        std::vector<int> low, high;
        for (int c = 0; c < n; ++c) {
          low.push_back(4 * c + axis);
          high.push_back(4 * c + axis + 2);
        }
        std::shuffle(high.begin(), high.end(), rng);
        for (int i = 0; i < n; ++i) couples.push_back({low[i], high[i], false, {}});
        continue;
      }
      std::vector<int> sides;
      for (int c = 0; c < n; ++c) {
        sides.push_back(4 * c + axis);
        sides.push_back(4 * c + axis + 2);
      }
      std::shuffle(sides.begin(), sides.end(), rng);
      for (std::size_t i = 0; i < sides.size(); i += 2) {
        couples.push_back({sides[i], sides[i + 1], sides[i] % 4 == sides[i + 1] % 4, {}});
      }
    }
    try {
      return CellComplexSurface::build(n, couples);
    } catch (const Error&) {
    }
  }
}

inline CoverSurface catalog_cover(const std::string& base, int k, std::vector<int> a, int m) {
  return build_from_descriptor({base, k, std::move(a), m});
}

inline CoverSurface ew_cover() { return catalog_cover("pillowcase", 4, {1, 1, 1, 1}, 4); }
inline CoverSurface ornithorynque_cover() { return catalog_cover("pillowcase", 6, {3, 1, 1, 1}, 6); }
inline CoverSurface q1m15_cover(int m) { return catalog_cover("q1m15", 6, {1, 1, 1, 1, 1, 1}, m); }

/// (circumference, height) multiset.
inline std::vector<std::pair<int, int>> shapes(const CylinderDecomposition& d) {
  auto s = d.shapes();
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace ewtest
