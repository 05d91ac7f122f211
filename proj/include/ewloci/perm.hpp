#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ewloci/error.hpp"

namespace ewloci {

/// A permutation of {0, ..., n-1} stored as its image table.
using Perm = std::vector<int>;

inline Perm identity_perm(int n) {
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline bool is_perm(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  for (int x : p) {
    if (x < 0 || static_cast<std::size_t>(x) >= p.size() || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

inline Perm inverse(const Perm& p) {
  Perm q(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

/// (a * b)(x) = a(b(x)): b acts first.
inline Perm compose(const Perm& a, const Perm& b) {
  Perm c(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

inline std::vector<std::vector<int>> cycles(const Perm& p) {
  std::vector<std::vector<int>> out;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::vector<int> cyc;
    for (int x = static_cast<int>(i); !seen[x]; x = p[x]) {
      seen[x] = 1;
      cyc.push_back(x);
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

/// Cycle lengths in non-increasing order, fixed points included.
inline std::vector<int> cycle_type(const Perm& p) {
  std::vector<int> t;
  for (const auto& c : cycles(p)) t.push_back(static_cast<int>(c.size()));
  std::sort(t.rbegin(), t.rend());
  return t;
}

inline bool is_transitive(const std::vector<Perm>& gens, int n) {
  if (n <= 0) return false;
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int count = 1;
  while (!stack.empty()) {
    int x = stack.back();
    stack.pop_back();
    for (const auto& g : gens) {
      int y = g[x];
      if (!seen[y]) {
        seen[y] = 1;
        ++count;
        stack.push_back(y);
      }
    }
  }
  return count == n;
}

using PermPairValue = std::pair<Perm, Perm>;

/// Canonical representative of a transitive pair under simultaneous conjugation:
/// the lexicographically least relabelling obtained by breadth-first numbering
/// (first generator before second) from each possible start point.
inline PermPairValue canonical_pair(const Perm& a, const Perm& b) {
  const int n = static_cast<int>(a.size());
  PermPairValue best;
  bool have = false;
  std::vector<int> label(static_cast<std::size_t>(n));
  std::vector<int> order;
  order.reserve(static_cast<std::size_t>(n));
  for (int start = 0; start < n; ++start) {
    std::fill(label.begin(), label.end(), -1);
    order.clear();
    label[start] = 0;
    order.push_back(start);
    for (std::size_t head = 0; head < order.size(); ++head) {
      int x = order[head];
      for (int y : {a[x], b[x]}) {
        if (label[y] < 0) {
          label[y] = static_cast<int>(order.size());
          order.push_back(y);
        }
      }
    }
    ensure(static_cast<int>(order.size()) == n, "canonical_pair requires a transitive pair");
    Perm ca(static_cast<std::size_t>(n)), cb(static_cast<std::size_t>(n));
    bool better = !have;
    bool decided = !have;
    for (int i = 0; i < n; ++i) {
      ca[i] = label[a[order[i]]];
      if (!decided && ca[i] != best.first[i]) {
        better = ca[i] < best.first[i];
        decided = true;
      }
    }
    for (int i = 0; i < n; ++i) {
      cb[i] = label[b[order[i]]];
      if (!decided && cb[i] != best.second[i]) {
        better = cb[i] < best.second[i];
        decided = true;
      }
    }
    if (better) {
      best = {std::move(ca), std::move(cb)};
      have = true;
    }
  }
  return best;
}

/// Parses 1-based cycle notation such as "(1 2)(3 4)" or "(1,2,3)"; "()" or "id" is the identity.
inline Perm parse_cycles(std::string_view text, int n) {
  Perm p = identity_perm(n);
  std::vector<int> current;
  bool open = false;
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  auto close_cycle = [&] {
    for (std::size_t i = 0; i < current.size(); ++i) {
      p[current[i]] = current[(i + 1) % current.size()];
    }
    current.clear();
  };
  std::string trimmed(text);
  if (trimmed == "id" || trimmed.empty()) return p;
  for (std::size_t i = 0; i < text.size();) {
    char c = text[i];
    if (c == '(') {
      if (open) throw Error(ErrorKind::ParseError, "nested cycle in '" + trimmed + "'");
      open = true;
      ++i;
    } else if (c == ')') {
      if (!open) throw Error(ErrorKind::ParseError, "unbalanced ')' in '" + trimmed + "'");
      open = false;
      close_cycle();
      ++i;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      if (!open) throw Error(ErrorKind::ParseError, "point outside a cycle in '" + trimmed + "'");
      int v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + (text[i] - '0');
        ++i;
      }
      if (v < 1 || v > n || used[v - 1]) {
        throw Error(ErrorKind::ParseError, "bad or repeated point " + std::to_string(v));
      }
      used[v - 1] = 1;
      current.push_back(v - 1);
    } else if (c == ' ' || c == ',') {
      ++i;
    } else {
      throw Error(ErrorKind::ParseError, std::string("unexpected character '") + c + "'");
    }
  }
  if (open) throw Error(ErrorKind::ParseError, "unterminated cycle in '" + trimmed + "'");
  return p;
}

/// 1-based cycle notation, fixed points omitted; the identity prints as "()".
inline std::string format_cycles(const Perm& p) {
  std::ostringstream out;
  bool any = false;
  for (const auto& c : cycles(p)) {
    if (c.size() < 2) continue;
    any = true;
    out << '(';
    for (std::size_t i = 0; i < c.size(); ++i) out << (i ? " " : "") << c[i] + 1;
    out << ')';
  }
  if (!any) return "()";
  return out.str();
}

}  // namespace ewloci
