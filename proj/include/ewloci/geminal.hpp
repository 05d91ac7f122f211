#pragma once

// Representations F2 -> Sym(4d) sending every primitive element to a
// (2d,2d)-cycle, and the subgroup K = ker(F2 -> (Z/2)^2).

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "ewloci/error.hpp"
#include "ewloci/perm.hpp"

namespace ewloci {

struct PermPair {
  int d = 1;
  Perm sigma;
  Perm tau;
};

inline bool is_2d2d(const Perm& p, int d) {
  if (static_cast<int>(p.size()) != 4 * d) return false;
  return cycle_type(p) == std::vector<int>{2 * d, 2 * d};
}

inline void require_transitive(const Perm& a, const Perm& b) {
  if (a.size() != b.size() || !is_perm(a) || !is_perm(b)) throw Error(ErrorKind::InvalidArgument, "not a permutation pair");
  if (!is_transitive({a, b}, static_cast<int>(a.size()))) {
    throw Error(ErrorKind::NotTransitive, "the pair generates an intransitive group");
  }
}

namespace detail {

inline std::array<PermPairValue, 3> nielsen_moves(const Perm& a, const Perm& b) {
  return {PermPairValue{b, a}, PermPairValue{inverse(a), b}, PermPairValue{compose(a, b), b}};
}

}  // namespace detail

/// Closure of {(a,b)} under (a,b) -> (b,a), (a^-1,b), (ab,b), as raw pairs.
inline std::set<PermPairValue> nielsen_closure(const Perm& a, const Perm& b, std::size_t budget = 1'000'000) {
  std::set<PermPairValue> seen{{a, b}};
  std::deque<PermPairValue> queue{{a, b}};
  while (!queue.empty()) {
    auto [x, y] = queue.front();
    queue.pop_front();
    for (auto& next : detail::nielsen_moves(x, y)) {
      if (seen.insert(next).second) {
        if (seen.size() > budget) throw Error(ErrorKind::BudgetExceeded, "Nielsen closure exceeds its budget");
        queue.push_back(std::move(next));
      }
    }
  }
  return seen;
}

struct GeminalVerdict {
  bool is_geminal = false;
  std::optional<PermPairValue> witness;  // class whose first component is not a (2d,2d)-cycle
  std::size_t orbit_size = 0;            // Nielsen classes visited (all of them when geminal)
  bool orbit_complete = false;
};

/// Walks the Nielsen orbit on classes up to simultaneous conjugation and
/// stops at the first first component of the wrong cycle type.
inline GeminalVerdict is_geminal_rep(const PermPair& pr, std::size_t budget = 2'000'000) {
  require_transitive(pr.sigma, pr.tau);
  GeminalVerdict v;
  auto start = canonical_pair(pr.sigma, pr.tau);
  std::set<PermPairValue> seen{start};
  std::deque<PermPairValue> queue{start};
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    if (!is_2d2d(cur.first, pr.d)) {
      v.witness = cur;
      v.orbit_size = seen.size();
      return v;
    }
    for (auto& next : detail::nielsen_moves(cur.first, cur.second)) {
      auto key = canonical_pair(next.first, next.second);
      if (seen.insert(key).second) {
        if (seen.size() > budget) throw Error(ErrorKind::BudgetExceeded, "Nielsen orbit exceeds its budget");
        queue.push_back(std::move(key));
      }
    }
  }
  v.is_geminal = true;
  v.orbit_size = seen.size();
  v.orbit_complete = true;
  return v;
}

struct SubgroupAnalysis {
  std::size_t image_order = 0;
  std::size_t rho_K_order = 0;
  std::size_t stab_order = 0;
  bool stab_contained_in_K = false;
  bool stab_normal_in_rhoK = false;
  std::optional<bool> quotient_cyclic;
  std::optional<std::size_t> quotient_order;
};

namespace detail {

inline std::string group_key(const Perm& p, int v) {
  std::string k(p.size() + 1, '\0');
  for (std::size_t i = 0; i < p.size(); ++i) k[i] = static_cast<char>(p[i]);
  k.back() = static_cast<char>(v);
  return k;
}

}  // namespace detail

/// Elements of ρ(K) computed through the combined image in Sym x (Z/2)^2.
struct CombinedImage {
  std::vector<std::pair<Perm, int>> elements;  // v encoded as 2 bits: x-parity | y-parity << 1
};

inline CombinedImage combined_image(const Perm& sigma, const Perm& tau, std::size_t budget) {
  CombinedImage g;
  std::unordered_set<std::string> seen;
  const int n = static_cast<int>(sigma.size());
  g.elements.push_back({identity_perm(n), 0});
  seen.insert(detail::group_key(g.elements[0].first, 0));
  const std::pair<const Perm*, int> gens[2] = {{&sigma, 1}, {&tau, 2}};
  for (std::size_t head = 0; head < g.elements.size(); ++head) {
    for (const auto& [p, bit] : gens) {
      Perm next = compose(*p, g.elements[head].first);
      int v = g.elements[head].second ^ bit;
      if (seen.insert(detail::group_key(next, v)).second) {
        if (g.elements.size() >= budget) throw Error(ErrorKind::BudgetExceeded, "image group exceeds its budget");
        g.elements.push_back({std::move(next), v});
      }
    }
  }
  return g;
}

inline SubgroupAnalysis analyze_K(const PermPair& pr, std::size_t budget = 4'000'000) {
  require_transitive(pr.sigma, pr.tau);
  auto g = combined_image(pr.sigma, pr.tau, budget);
  SubgroupAnalysis a;
  std::unordered_set<std::string> image;
  std::vector<const Perm*> rho_k;
  a.stab_contained_in_K = true;
  for (const auto& [p, v] : g.elements) {
    image.insert(detail::group_key(p, 0));
    if (v == 0) rho_k.push_back(&p);
    if (p[0] == 0 && v != 0) a.stab_contained_in_K = false;
  }
  a.image_order = image.size();
  a.rho_K_order = rho_k.size();
  std::vector<int> orbit;
  std::vector<char> in_orbit(pr.sigma.size(), 0);
  for (const Perm* p : rho_k) {
    if (!in_orbit[(*p)[0]]) {
      in_orbit[(*p)[0]] = 1;
      orbit.push_back((*p)[0]);
    }
  }
  std::sort(orbit.begin(), orbit.end());
  a.stab_normal_in_rhoK = true;
  for (const Perm* p : rho_k) {
    if ((*p)[0] != 0) continue;
    ++a.stab_order;
    for (int x : orbit) a.stab_normal_in_rhoK = a.stab_normal_in_rhoK && (*p)[x] == x;
  }
  if (a.stab_normal_in_rhoK) {
    a.quotient_order = orbit.size();
    bool cyclic = false;
    for (const Perm* p : rho_k) {
      // length of the cycle through 0 restricted to the orbit
      std::size_t len = 1;
      for (int x = (*p)[0]; x != 0; x = (*p)[x]) ++len;
      if (len == orbit.size()) {
        cyclic = true;
        break;
      }
    }
    a.quotient_cyclic = cyclic;
  }
  return a;
}

// ---------------------------------------------------------------------------
// Search

struct SearchLimits {
  std::size_t max_candidates = 5'000'000;  // τ values examined
  std::size_t max_orbit = 2'000'000;       // Nielsen classes per pair
  std::size_t max_group = 4'000'000;       // elements of the combined image
};

struct GeminalClass {
  int d = 1;
  Perm sigma;
  Perm tau;
  GeminalVerdict verdict;
  std::optional<SubgroupAnalysis> analysis;
};

struct SearchReport {
  int d = 1;
  std::size_t candidates = 0;   // (2d,2d)-cycles τ examined
  std::size_t transitive = 0;
  std::vector<GeminalClass> classes;  // every transitive class, canonical order
  bool complete = true;
  std::string note;
};

inline Perm canonical_2d2d(int d) {
  Perm p(static_cast<std::size_t>(4 * d));
  for (int i = 0; i < 2 * d; ++i) {
    p[i] = (i + 1) % (2 * d);
    p[2 * d + i] = 2 * d + (i + 1) % (2 * d);
  }
  return p;
}

/// Calls f on every (2d,2d)-cycle of {0..4d-1}; f returns false to stop.
template <class F>
void for_each_2d2d(int d, F&& f) {
  const int n = 4 * d, half = 2 * d;
  std::vector<int> rest;
  for (int i = 1; i < n; ++i) rest.push_back(i);
  // choose the other 2d-1 members of the block containing 0
  std::vector<char> pick(rest.size(), 0);
  std::fill(pick.begin(), pick.begin() + (half - 1), 1);
  do {
    std::vector<int> a{0}, b;
    for (std::size_t i = 0; i < rest.size(); ++i) (pick[i] ? a : b).push_back(rest[i]);
    std::vector<int> ta(a.begin() + 1, a.end()), tb(b.begin() + 1, b.end());
    std::sort(ta.begin(), ta.end());
    do {
      std::sort(tb.begin(), tb.end());
      do {
        Perm p(static_cast<std::size_t>(n));
        int prev = a[0];
        for (int x : ta) {
          p[prev] = x;
          prev = x;
        }
        p[prev] = a[0];
        prev = b[0];
        for (int x : tb) {
          p[prev] = x;
          prev = x;
        }
        p[prev] = b[0];
        if (!f(p)) return;
      } while (std::next_permutation(tb.begin(), tb.end()));
    } while (std::next_permutation(ta.begin(), ta.end()));
  } while (std::prev_permutation(pick.begin(), pick.end()));
}

inline SearchReport search(int d, const SearchLimits& limits = {}) {
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "d must be positive");
  SearchReport rep;
  rep.d = d;
  const Perm sigma = canonical_2d2d(d);
  std::set<PermPairValue> seen;
  for_each_2d2d(d, [&](const Perm& tau) {
    if (rep.candidates >= limits.max_candidates) {
      rep.complete = false;
      rep.note = "candidate budget exhausted after " + std::to_string(rep.candidates) + " τ values";
      return false;
    }
    ++rep.candidates;
    if (!is_transitive({sigma, tau}, 4 * d)) return true;
    ++rep.transitive;
    seen.insert(canonical_pair(sigma, tau));
    return true;
  });
  for (const auto& [s, t] : seen) {
    GeminalClass c{d, s, t, {}, std::nullopt};
    try {
      c.verdict = is_geminal_rep({d, s, t}, limits.max_orbit);
      c.analysis = analyze_K({d, s, t}, limits.max_group);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      rep.complete = false;
      rep.note = e.what();
    }
    rep.classes.push_back(std::move(c));
  }
  return rep;
}

}  // namespace ewloci
