#pragma once

// Arithmetic layer: genus-zero quadratic strata, cyclic cover data and the
// admissibility predicates for generalized Eierlegende-Wollmilchsau loci.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ewloci/error.hpp"

namespace ewloci {

inline int mod(long long x, int k) {
  long long r = x % k;
  return static_cast<int>(r < 0 ? r + k : r);
}

/// Order of x in Z/k.
inline int additive_order(long long x, int k) { return k / std::gcd(mod(x, k), k); }

/// Orders of zeros and poles of a genus-zero quadratic stratum, in label order:
/// ascending, ties broken by the position in the caller's list.
struct StratumSignature {
  std::vector<int> orders;
  std::vector<std::size_t> input_position;  // label i (0-based) came from input_position[i]

  std::size_t size() const { return orders.size(); }
  int odd_count() const {
    return static_cast<int>(std::count_if(orders.begin(), orders.end(), [](int o) { return o % 2 != 0; }));
  }
  int genus() const { return 0; }
  /// Hyperelliptic case: every order but at most one equals -1.
  bool hyperelliptic() const {
    return std::count(orders.begin(), orders.end(), -1) + 1 >= static_cast<long>(orders.size());
  }
};

inline StratumSignature validate_signature(std::span<const int> orders) {
  if (orders.empty()) throw Error(ErrorKind::EmptySignature, "a stratum needs at least one point");
  int sum = 0;
  for (int o : orders) {
    if (o < -1) throw Error(ErrorKind::EntryBelowPole, "order " + std::to_string(o) + " is below -1");
    sum += o;
  }
  if (sum != -4) {
    throw Error(ErrorKind::SumNotMinusFour, "orders sum to " + std::to_string(sum) + ", genus zero needs -4");
  }
  StratumSignature sig;
  sig.input_position.resize(orders.size());
  std::iota(sig.input_position.begin(), sig.input_position.end(), std::size_t{0});
  std::stable_sort(sig.input_position.begin(), sig.input_position.end(),
                   [&](std::size_t x, std::size_t y) { return orders[x] < orders[y]; });
  for (std::size_t i : sig.input_position) sig.orders.push_back(orders[i]);
  return sig;
}

/// Reorders values given alongside the caller's κ list into label order.
inline std::vector<int> to_label_order(const StratumSignature& sig, std::span<const int> values) {
  if (values.size() != sig.size()) {
    throw Error(ErrorKind::LengthMismatch, "expected " + std::to_string(sig.size()) + " values, got " +
                                               std::to_string(values.size()));
  }
  std::vector<int> out;
  out.reserve(values.size());
  for (std::size_t i : sig.input_position) out.push_back(values[i]);
  return out;
}

/// Modulus k and local monodromies a (label order, reduced into [0, k)).
struct CoverDatum {
  int k = 0;
  std::optional<int> ell;
  std::vector<int> a;
};

/// `a` is in label order (see to_label_order).
inline CoverDatum validate_cover_datum(const StratumSignature& sig, int k, std::span<const int> a) {
  if (k < 2) throw Error(ErrorKind::ModulusTooSmall, "modulus must be at least 2");
  if (a.size() != sig.size()) {
    throw Error(ErrorKind::LengthMismatch,
                "expected " + std::to_string(sig.size()) + " residues, got " + std::to_string(a.size()));
  }
  CoverDatum d;
  d.k = k;
  if (k % 2 == 0) d.ell = k / 2;
  long long sum = 0;
  int g = k;
  for (int x : a) {
    d.a.push_back(mod(x, k));
    sum += d.a.back();
    g = std::gcd(g, d.a.back());
  }
  if (mod(sum, k) != 0) throw Error(ErrorKind::SumNonzero, "residues sum to " + std::to_string(mod(sum, k)) + " mod k");
  if (g != 1) throw Error(ErrorKind::NotGenerating, "residues generate a subgroup of index " + std::to_string(g));
  return d;
}

/// Quadratic differentials in E(κ,a) are squares of Abelian differentials.
inline bool is_square_of_abelian(const StratumSignature& sig, const CoverDatum& d) {
  if (d.k % 2 != 0) return false;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (mod(sig.orders[i] - d.a[i], 2) != 0) return false;
  }
  return true;
}

enum class EwFailureKind { none, modulus_odd, ell_not_gt_1, parity_mismatch, bad_subset };

inline const char* to_string(EwFailureKind k) {
  switch (k) {
    case EwFailureKind::none: return "none";
    case EwFailureKind::modulus_odd: return "modulus_odd";
    case EwFailureKind::ell_not_gt_1: return "ell_not_gt_1";
    case EwFailureKind::parity_mismatch: return "parity_mismatch";
    case EwFailureKind::bad_subset: return "bad_subset";
  }
  return "?";
}

struct EwVerdict {
  bool pass = false;
  EwFailureKind failure = EwFailureKind::none;
  int parity_index = 0;          // 1-based label, parity_mismatch only
  std::vector<int> subset;       // 1-based labels, bad_subset only
  int subset_sum = 0;            // Σ a_I mod k, bad_subset only
  int rank = 0;
  int dim = 0;
};

inline std::pair<int, int> rank_dim(const StratumSignature& sig) {
  return {sig.odd_count() / 2 - 1, static_cast<int>(sig.size()) - 2};
}

/// Subsets I (as bitmasks over labels) whose orders sum to -2.
inline std::vector<std::uint32_t> half_sphere_subsets(const StratumSignature& sig) {
  const std::size_t s = sig.size();
  ensure(s < 31, "signature too long for subset enumeration");
  std::vector<std::uint32_t> out;
  for (std::uint32_t mask = 1; mask < (1u << s); ++mask) {
    int sum = 0;
    for (std::size_t i = 0; i < s; ++i) {
      if (mask & (1u << i)) sum += sig.orders[i];
    }
    if (sum == -2) out.push_back(mask);
  }
  return out;
}

inline EwVerdict is_generalized_ew(const StratumSignature& sig, const CoverDatum& d) {
  EwVerdict v;
  std::tie(v.rank, v.dim) = rank_dim(sig);
  if (d.k % 2 != 0) {
    v.failure = EwFailureKind::modulus_odd;
    return v;
  }
  if (d.k / 2 <= 1) {
    v.failure = EwFailureKind::ell_not_gt_1;
    return v;
  }
  for (std::size_t i = 0; i < sig.size(); ++i) {
    if (mod(sig.orders[i] - d.a[i], 2) != 0) {
      v.failure = EwFailureKind::parity_mismatch;
      v.parity_index = static_cast<int>(i) + 1;
      return v;
    }
  }
  for (std::uint32_t mask : half_sphere_subsets(sig)) {
    long long x = 0;
    for (std::size_t i = 0; i < sig.size(); ++i) {
      if (mask & (1u << i)) x += d.a[i];
    }
    // generator of Z/ℓ ⊂ Z/2ℓ  <=>  gcd(x, 2ℓ) = 2
    if (std::gcd(mod(x, d.k), d.k) != 2) {
      v.failure = EwFailureKind::bad_subset;
      for (std::size_t i = 0; i < sig.size(); ++i) {
        if (mask & (1u << i)) v.subset.push_back(static_cast<int>(i) + 1);
      }
      v.subset_sum = mod(x, d.k);
      return v;
    }
  }
  v.pass = true;
  return v;
}

/// One equivalence class of passing data: unit scaling and permutations among equal orders.
struct CoverDataClass {
  int k = 0;
  std::vector<int> representative;            // canonical (least) member
  std::vector<std::vector<int>> members;       // every passing tuple in the class, sorted
  EwVerdict verdict;
};

inline std::vector<int> canonical_residues(const StratumSignature& sig, int k, const std::vector<int>& a) {
  std::vector<int> best;
  for (int u = 1; u < k; ++u) {
    if (std::gcd(u, k) != 1) continue;
    std::vector<int> b(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) b[i] = mod(static_cast<long long>(u) * a[i], k);
    // labels with equal order form contiguous blocks
    for (std::size_t lo = 0; lo < b.size();) {
      std::size_t hi = lo;
      while (hi < b.size() && sig.orders[hi] == sig.orders[lo]) ++hi;
      std::sort(b.begin() + static_cast<long>(lo), b.begin() + static_cast<long>(hi));
      lo = hi;
    }
    if (best.empty() || b < best) best = std::move(b);
  }
  return best;
}

inline std::vector<CoverDataClass> enumerate_cover_data(const StratumSignature& sig, int k_max) {
  std::vector<CoverDataClass> out;
  const std::size_t s = sig.size();
  for (int k = 4; k <= k_max; k += 2) {
    std::map<std::vector<int>, CoverDataClass> classes;
    std::vector<int> a(s, 0);
    // residues carry the parity of their order; the last one is forced by Σa = 0
    for (std::size_t i = 0; i < s; ++i) a[i] = mod(sig.orders[i], 2);
    while (true) {
      long long partial = 0;
      for (std::size_t i = 0; i + 1 < s; ++i) partial += a[i];
      a[s - 1] = mod(-partial, k);
      if (mod(a[s - 1] - sig.orders[s - 1], 2) == 0) {
        int g = k;
        for (int x : a) g = std::gcd(g, x);
        if (g == 1) {
          CoverDatum d{k, k / 2, a};
          EwVerdict v = is_generalized_ew(sig, d);
          if (v.pass) {
            auto key = canonical_residues(sig, k, a);
            auto& cls = classes[key];
            cls.k = k;
            cls.representative = key;
            cls.verdict = v;
            cls.members.push_back(a);
          }
        }
      }
      // odometer over the first s-1 coordinates in steps of 2
      std::size_t i = 0;
      for (; i + 1 < s; ++i) {
        a[i] += 2;
        if (a[i] < k) break;
        a[i] = mod(sig.orders[i], 2);
      }
      if (i + 1 >= s) break;
    }
    for (auto& [key, cls] : classes) {
      std::sort(cls.members.begin(), cls.members.end());
      out.push_back(std::move(cls));
    }
  }
  return out;
}

}  // namespace ewloci
