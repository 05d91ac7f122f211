#pragma once

// Cyclic branched covers of square-tiled genus-zero bases.
//
// The slit construction is replaced by a weight 1-chain on the couples of the
// base whose simplicial boundary is the prescribed local monodromy.  On the
// sphere every such chain induces the same cover up to isomorphism.  Cover
// cell (i, c) (base cell i, sheet c) has index i*m + c.

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ewloci/affine.hpp"
#include "ewloci/cyclic_data.hpp"
#include "ewloci/cylinders.hpp"
#include "ewloci/error.hpp"
#include "ewloci/flat_surface.hpp"
#include "ewloci/surface_io.hpp"

#ifndef EWLOCI_FIXTURE_DIR
#define EWLOCI_FIXTURE_DIR "data"
#endif

namespace ewloci {

/// Genus-zero base whose distinguished vertices carry labels 1..s in label order.
struct BranchedBase {
  std::string name;
  CellComplexSurface surface;
  StratumSignature signature;

  int label_count() const { return static_cast<int>(signature.size()); }
  /// Label per vertex, 0 when unlabelled.
  std::vector<int> vertex_labels() const {
    std::vector<int> out;
    for (int v = 0; v < surface.vertex_count(); ++v) out.push_back(surface.label(v).value_or(0));
    return out;
  }
};

/// Labels the distinguished vertices by (order, vertex id) unless the surface
/// already carries labels, which are then validated.
inline BranchedBase make_branched_base(std::string name, const CellComplexSurface& s) {
  if (s.genus() != 0) throw Error(ErrorKind::InvalidArgument, name + ": base must have genus 0");
  auto existing = s.vertex_labels();
  CellComplexSurface labelled = s;
  if (existing.empty()) {
    std::vector<std::pair<int, int>> keyed;
    for (int v = 0; v < s.vertex_count(); ++v) {
      if (s.distinguished(v)) keyed.emplace_back(s.order(v), v);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<VertexLabel> labels;
    for (std::size_t i = 0; i < keyed.size(); ++i) {
      int corner = s.vertex_corners(keyed[i].second).front();
      labels.push_back({CellComplexSurface::corner_ref(corner), static_cast<int>(i) + 1});
    }
    labelled = s.with_marks(s.marked_corners(), labels);
  }
  std::map<int, int> order_of_label;
  for (int v = 0; v < labelled.vertex_count(); ++v) {
    auto l = labelled.label(v);
    if (!l) {
      if (labelled.order(v) != 0 || labelled.marked(v)) {
        throw Error(ErrorKind::InvalidArgument, name + ": singular or marked vertex " + std::to_string(v) + " is unlabelled");
      }
      continue;
    }
    if (!order_of_label.emplace(*l, labelled.order(v)).second) {
      throw Error(ErrorKind::InvalidArgument, name + ": label " + std::to_string(*l) + " used twice");
    }
  }
  std::vector<int> orders;
  int expect = 1;
  for (auto [l, o] : order_of_label) {
    if (l != expect++) throw Error(ErrorKind::InvalidArgument, name + ": labels must be 1..s");
    orders.push_back(o);
  }
  if (!std::is_sorted(orders.begin(), orders.end())) {
    throw Error(ErrorKind::InvalidArgument, name + ": labels must follow ascending order");
  }
  BranchedBase b{std::move(name), labelled, validate_signature(orders)};
  return b;
}

inline CellComplexSurface pillowcase_surface() {
  return CellComplexSurface::build(2, {{0, 6, false, {}}, {4, 2, false, {}}, {1, 5, true, {}}, {3, 7, true, {}}});
}

/// One row of 2(s-3) cells: tops folded in adjacent pairs, bottoms folded by
/// the reflection j <-> N-1-j.  Realizes (s-5, -1^{s-1}).
inline CellComplexSurface hyperelliptic_surface(int s) {
  const int n = 2 * (s - 3);
  std::vector<SideCouple> couples;
  for (int j = 0; j < n; ++j) couples.push_back({4 * j + 0, 4 * ((j + 1) % n) + 2, false, {}});
  for (int i = 0; i < n / 2; ++i) couples.push_back({4 * (2 * i) + 1, 4 * (2 * i + 1) + 1, true, {}});
  for (int j = 0; j < n / 2; ++j) couples.push_back({4 * j + 3, 4 * (n - 1 - j) + 3, true, {}});
  // for s = 5 the fold centre of the top is a regular point; mark it
  std::vector<CornerRef> marked;
  if (s == 5) marked.push_back({0, 3});
  return CellComplexSurface::build(n, std::move(couples), marked);
}

inline std::optional<int> parse_hyperelliptic(const std::string& name) {
  const std::string prefix = "hyperelliptic(";
  if (name.rfind(prefix, 0) != 0 || name.back() != ')') return std::nullopt;
  std::string digits = name.substr(prefix.size(), name.size() - prefix.size() - 1);
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return std::nullopt;
  }
  return std::stoi(digits);
}

inline BranchedBase base_catalog(const std::string& name, const std::string& fixture_dir = EWLOCI_FIXTURE_DIR) {
  CellComplexSurface s;
  std::vector<int> target;
  if (name == "pillowcase") {
    s = pillowcase_surface();
    target = {-1, -1, -1, -1};
  } else if (auto hs = parse_hyperelliptic(name)) {
    if (*hs < 5) {
      throw Error(ErrorKind::CatalogValidationFailed, name + ": hyperelliptic models need s >= 5 (s = 4 is the pillowcase)");
    }
    if (*hs > 40) throw Error(ErrorKind::InvalidArgument, name + ": s too large");
    s = hyperelliptic_surface(*hs);
    target.assign(static_cast<std::size_t>(*hs - 1), -1);
    target.push_back(*hs - 5);
  } else if (name == "q1m15") {
    s = surface_from_json(read_json_file((std::filesystem::path(fixture_dir) / "q1m15.json").string()));
    target = {-1, -1, -1, -1, -1, 1};
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown base '" + name + "'");
  }
  BranchedBase b = make_branched_base(name, s);
  if (b.signature.orders != target) {
    throw Error(ErrorKind::CatalogValidationFailed, name + ": model does not realize its target stratum");
  }
  return b;
}

// ---------------------------------------------------------------------------
// Monodromy chain

/// (∂w)(v) = Σ w_e ([head e = v] - [tail e = v]) mod k, with tail/head the
/// start/end of the first side of each couple.
inline std::vector<int> chain_boundary(const CellComplexSurface& s, const std::vector<int>& w, int k) {
  std::vector<long long> d(static_cast<std::size_t>(s.vertex_count()), 0);
  const auto& couples = s.couples();
  for (std::size_t i = 0; i < couples.size(); ++i) {
    int a = couples[i].a;
    d[s.vertex(a / 4, side_end(a % 4))] += w[i];
    d[s.vertex(a / 4, side_start(a % 4))] -= w[i];
  }
  std::vector<int> out;
  for (long long x : d) out.push_back(mod(x, k));
  return out;
}

inline std::vector<int> chain_targets(const BranchedBase& base, const CoverDatum& d) {
  std::vector<int> t;
  for (int l : base.vertex_labels()) t.push_back(l ? d.a[l - 1] : 0);
  return t;
}

/// Weights per couple of the base; non-tree couples carry 0.
inline std::vector<int> solve_monodromy_chain(const BranchedBase& base, const CoverDatum& d) {
  if (static_cast<int>(d.a.size()) != base.label_count()) {
    throw Error(ErrorKind::LengthMismatch, "datum has " + std::to_string(d.a.size()) + " residues for " +
                                               std::to_string(base.label_count()) + " labels");
  }
  const auto& s = base.surface;
  const auto& couples = s.couples();
  const int nv = s.vertex_count();
  std::vector<int> tail, head;
  for (const auto& c : couples) {
    tail.push_back(s.vertex(c.a / 4, side_start(c.a % 4)));
    head.push_back(s.vertex(c.a / 4, side_end(c.a % 4)));
  }
  std::vector<std::vector<int>> incident(static_cast<std::size_t>(nv));
  for (std::size_t i = 0; i < couples.size(); ++i) {
    incident[tail[i]].push_back(static_cast<int>(i));
    incident[head[i]].push_back(static_cast<int>(i));
  }
  std::vector<int> parent(static_cast<std::size_t>(nv), -1);
  std::vector<char> seen(static_cast<std::size_t>(nv), 0);
  std::vector<int> order{0};
  seen[0] = 1;
  for (std::size_t h = 0; h < order.size(); ++h) {
    int u = order[h];
    for (int e : incident[u]) {
      int x = tail[e] == u ? head[e] : tail[e];
      if (!seen[x]) {
        seen[x] = 1;
        parent[x] = e;
        order.push_back(x);
      }
    }
  }
  ensure(static_cast<int>(order.size()) == nv, "vertex graph is disconnected");
  auto target = chain_targets(base, d);
  std::vector<long long> acc(static_cast<std::size_t>(nv), 0);
  std::vector<int> w(couples.size(), 0);
  for (std::size_t h = order.size(); h-- > 1;) {
    int u = order[h];
    int e = parent[u];
    int coef = head[e] == u ? 1 : -1;
    w[e] = mod(static_cast<long long>(target[u] - acc[u]) * coef, d.k);
    acc[head[e]] += w[e];
    acc[tail[e]] -= w[e];
  }
  auto got = chain_boundary(s, w, d.k);
  for (int v = 0; v < nv; ++v) {
    ensure(got[v] == mod(target[v], d.k), "monodromy chain misses its target at vertex " + std::to_string(v));
  }
  return w;
}

// ---------------------------------------------------------------------------
// Covers

struct CoverSurface {
  BranchedBase base;  // base surface carries the chain weights
  CoverDatum datum;
  int m = 0;
  CellComplexSurface total;
  CellMap projection;
  CellMap deck;

  int sheet(int cell) const { return cell % m; }
  int base_cell(int cell) const { return cell / m; }
};

inline CellMap deck_generator(int base_cells, int m) {
  CellMap f;
  for (int i = 0; i < base_cells; ++i) {
    for (int c = 0; c < m; ++c) {
      f.target.push_back(i * m + (c + 1) % m);
      f.rotated.push_back(0);
    }
  }
  return f;
}

inline CellMap deck_generator(const CoverSurface& cover) { return deck_generator(cover.base.surface.cells(), cover.m); }

struct RHEntry {
  int label = 0;
  int base_order = 0;
  int residue = 0;  // a mod m
  int ord = 1;      // order of the residue in Z/m
  int expected_points = 0;
  int expected_order = 0;
  std::vector<int> found_orders;
};

/// Compares the cover's vertices over each base vertex with the Riemann-Hurwitz prediction.
inline std::vector<RHEntry> riemann_hurwitz(const CoverSurface& cv) {
  const auto& b = cv.base.surface;
  auto labels = cv.base.vertex_labels();
  std::vector<RHEntry> out(static_cast<std::size_t>(b.vertex_count()));
  for (int v = 0; v < b.vertex_count(); ++v) {
    auto& e = out[v];
    e.label = labels[v];
    e.base_order = b.order(v);
    e.residue = e.label ? mod(cv.datum.a[e.label - 1], cv.m) : 0;
    e.ord = additive_order(e.residue, cv.m);
    e.expected_points = cv.m / e.ord;
    e.expected_order = e.ord * (e.base_order + 2) - 2;
  }
  for (int u = 0; u < cv.total.vertex_count(); ++u) {
    int x = cv.total.vertex_corners(u).front();
    int v = b.vertex(cv.base_cell(x / 4), x % 4);
    out[v].found_orders.push_back(cv.total.order(u));
  }
  return out;
}

inline bool rh_matches(const std::vector<RHEntry>& rh) {
  for (const auto& e : rh) {
    if (static_cast<int>(e.found_orders.size()) != e.expected_points) return false;
    for (int o : e.found_orders) {
      if (o != e.expected_order) return false;
    }
  }
  return true;
}

inline CoverSurface build_cover(const BranchedBase& base, const CoverDatum& d, int m) {
  if (m < 1 || d.k % m != 0) throw Error(ErrorKind::InvalidArgument, "sheet count m must divide k");
  if (static_cast<int>(d.a.size()) != base.label_count()) {
    throw Error(ErrorKind::LengthMismatch, "datum length does not match the base labels");
  }
  int g = m;
  for (int x : d.a) g = std::gcd(g, mod(x, m));
  if (g != 1) throw Error(ErrorKind::DisconnectedCover, "residues mod " + std::to_string(m) + " generate a proper subgroup");
  auto w = solve_monodromy_chain(base, d);
  CoverSurface cv{base, d, m, {}, {}, {}};
  cv.base.surface = base.surface.with_weights(w);
  const auto& bs = cv.base.surface;
  const int n = bs.cells();
  std::vector<SideCouple> couples;
  for (const auto& c : bs.couples()) {
    for (int sheet = 0; sheet < m; ++sheet) {
      int other = mod(sheet + *c.weight, m);
      couples.push_back({4 * ((c.a / 4) * m + sheet) + c.a % 4, 4 * ((c.b / 4) * m + other) + c.b % 4, c.flip, {}});
    }
  }
  std::vector<CornerRef> marked;
  for (int v = 0; v < bs.vertex_count(); ++v) {
    if (!bs.label(v)) continue;
    for (int x : bs.vertex_corners(v)) {
      for (int sheet = 0; sheet < m; ++sheet) marked.push_back({(x / 4) * m + sheet, x % 4});
    }
  }
  cv.total = CellComplexSurface::build(n * m, std::move(couples), marked);
  cv.deck = deck_generator(n, m);
  for (int i = 0; i < n * m; ++i) {
    cv.projection.target.push_back(i / m);
    cv.projection.rotated.push_back(0);
  }
  if (!rh_matches(riemann_hurwitz(cv))) {
    throw Error(ErrorKind::RHMismatch, "cover singularities disagree with the Riemann-Hurwitz prediction");
  }
  return cv;
}

inline Origami to_translation(const CoverSurface& cv) {
  StratumSignature sig = cv.base.signature;
  if (cv.m != cv.datum.k || !is_square_of_abelian(sig, cv.datum)) {
    throw Error(ErrorKind::InvalidArgument, "only full covers of square type are translation surfaces");
  }
  try {
    return to_origami(cv.total);
  } catch (const Error& e) {
    throw Error(ErrorKind::Defect, std::string("square-type cover has nontrivial holonomy: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Certification in periodic directions

/// Cover and base moved together by a word, with projection and deck carried along.
struct CoverFrame {
  CellComplexSurface total;
  CellComplexSurface base;
  CellMap projection;
  CellMap deck;
};

inline CoverFrame move_frame(const CoverSurface& cv, const std::vector<Move>& word) {
  CoverFrame f{cv.total, cv.base.surface, cv.projection, cv.deck};
  for (Move m : word) {
    Recut rt = recut(f.total, m);
    Recut rb = recut(f.base, m);
    f.projection = transport(f.projection, rt, rb);
    f.deck = transport(f.deck, rt, rt);
    f.total = rt.surface;
    f.base = rb.surface;
  }
  return f;
}

struct BaseCylinderLift {
  int circumference = 0;
  int height = 0;
  std::vector<int> labels_below;  // label set I on the bottom side
  std::vector<int> labels_above;
  bool separating = false;  // I and its complement partition the labels, Σκ_I = -2
  int residue = 0;          // Σ a_I mod m
  int ord = 1;
  int expected_lifts = 0;
  int found_lifts = 0;
  bool shapes_ok = false;  // every lift has circumference c*ord and height h
};

namespace detail {

inline std::vector<int> side_labels(const CellComplexSurface& s, const Cylinder& cyl, const std::vector<char>& in_cyl,
                                    bool top) {
  std::set<int> labels;
  const Row& row = top ? cyl.rows.back() : cyl.rows.front();
  std::vector<char> seen(in_cyl.size(), 0);
  std::vector<int> stack;
  for (std::size_t i = 0; i < row.cells.size(); ++i) {
    int side = 4 * row.cells[i] + local_dir(top ? 1 : 3, row.frames[i]);
    int x = s.partner(side) / 4;
    if (!in_cyl[x] && !seen[x]) {
      seen[x] = 1;
      stack.push_back(x);
    }
  }
  while (!stack.empty()) {
    int c = stack.back();
    stack.pop_back();
    for (int k = 0; k < 4; ++k) {
      if (auto l = s.label(s.vertex(c, k))) labels.insert(*l);
      int x = s.partner(4 * c + k) / 4;
      if (!in_cyl[x] && !seen[x]) {
        seen[x] = 1;
        stack.push_back(x);
      }
    }
  }
  for (int v : (top ? cyl.top : cyl.bottom).vertices) {
    if (auto l = s.label(v)) labels.insert(*l);
  }
  return {labels.begin(), labels.end()};
}

}  // namespace detail

struct DirectionCertificate {
  std::pair<long long, long long> direction{1, 0};
  int base_cylinders = 0;
  int cover_cylinders = 0;
  bool area_ok = false;
  bool lifts_ok = false;     // every base cylinder lifts as the arithmetic oracle predicts
  bool doubled = false;      // cover count = 2 x base count
  std::vector<BaseCylinderLift> lifts;
  PairingReport twins;
  std::optional<bool> involution_ok;     // odd ℓ, full cover
  std::optional<bool> shared_boundary;   // hyperelliptic base
  std::optional<bool> true_zero;         // hyperelliptic base
};

struct CertifyOptions {
  bool involution = false;
  bool hyperelliptic = false;
};

inline DirectionCertificate certify_direction(const CoverSurface& cv, long long p, long long q, const CertifyOptions& opt) {
  DirectionCertificate cert;
  cert.direction = {p, q};
  CoverFrame f = move_frame(cv, straightening_word(p, q));
  auto bdec = horizontal_cylinders(f.base);
  auto cdec = horizontal_cylinders(f.total);
  bdec.direction = cdec.direction = {p, q};
  cert.base_cylinders = static_cast<int>(bdec.cylinders.size());
  cert.cover_cylinders = static_cast<int>(cdec.cylinders.size());
  cert.area_ok = bdec.total_area() == f.base.cells() && cdec.total_area() == f.total.cells();
  cert.doubled = cert.cover_cylinders == 2 * cert.base_cylinders;

  auto base_index = bdec.cell_index(f.base.cells());
  std::vector<int> lift_of(cdec.cylinders.size(), -1);
  bool projection_ok = true;
  for (std::size_t j = 0; j < cdec.cylinders.size(); ++j) {
    auto cells = cdec.cylinders[j].cells();
    int b = base_index[f.projection.target[cells.front()]];
    for (int x : cells) projection_ok = projection_ok && base_index[f.projection.target[x]] == b;
    lift_of[j] = b;
  }
  const int s_labels = cv.base.label_count();
  cert.lifts_ok = projection_ok;
  for (std::size_t b = 0; b < bdec.cylinders.size(); ++b) {
    const auto& cyl = bdec.cylinders[b];
    BaseCylinderLift L;
    L.circumference = cyl.circumference;
    L.height = cyl.height;
    std::vector<char> in_cyl(static_cast<std::size_t>(f.base.cells()), 0);
    for (int x : cyl.cells()) in_cyl[x] = 1;
    L.labels_below = detail::side_labels(f.base, cyl, in_cyl, false);
    L.labels_above = detail::side_labels(f.base, cyl, in_cyl, true);
    std::vector<int> both;
    std::set_intersection(L.labels_below.begin(), L.labels_below.end(), L.labels_above.begin(), L.labels_above.end(),
                          std::back_inserter(both));
    int kappa = 0;
    long long sum = 0;
    for (int l : L.labels_below) {
      kappa += cv.base.signature.orders[l - 1];
      sum += cv.datum.a[l - 1];
    }
    L.separating = !cyl.closed_torus && both.empty() &&
                   static_cast<int>(L.labels_below.size() + L.labels_above.size()) == s_labels && kappa == -2;
    L.residue = mod(sum, cv.m);
    L.ord = additive_order(L.residue, cv.m);
    L.expected_lifts = cv.m / L.ord;
    L.shapes_ok = true;
    for (std::size_t j = 0; j < cdec.cylinders.size(); ++j) {
      if (lift_of[j] != static_cast<int>(b)) continue;
      ++L.found_lifts;
      const auto& up = cdec.cylinders[j];
      L.shapes_ok = L.shapes_ok && up.circumference == cyl.circumference * L.ord && up.height == cyl.height;
    }
    cert.lifts_ok = cert.lifts_ok && L.separating && L.shapes_ok && L.found_lifts == L.expected_lifts;
    cert.lifts.push_back(std::move(L));
  }

  cert.twins = twin_report(f.total, cdec, f.deck);

  if (opt.involution) {
    ensure(cv.m == cv.datum.k && (cv.m / 2) % 2 == 1, "involution check needs a full cover with odd ℓ");
    CellMap iota = power(f.deck, cv.m / 2);
    bool ok = f.total.is_translation();
    if (ok) {
      const auto& o = *f.total.orientation();
      for (int x = 0; x < f.total.cells(); ++x) {
        int sign = o[iota.target[x]] * o[x] * (iota.rotated[x] ? -1 : 1);
        ok = ok && sign == -1;
      }
    }
    auto img = cylinder_images(cdec, iota);
    for (std::size_t j = 0; j < img.size(); ++j) {
      ok = ok && img[j] >= 0 && img[j] != static_cast<int>(j) && cert.twins.partner[j] == img[j];
    }
    cert.involution_ok = ok;
  }

  if (opt.hyperelliptic) {
    bool shared = !cert.twins.pairs.empty() || cdec.cylinders.empty();
    for (const auto& pr : cert.twins.pairs) {
      std::set<int> a, b;
      for (const auto* bc : {&cdec.cylinders[pr.i].bottom, &cdec.cylinders[pr.i].top}) {
        a.insert(bc->saddle_connections.begin(), bc->saddle_connections.end());
      }
      for (const auto* bc : {&cdec.cylinders[pr.j].bottom, &cdec.cylinders[pr.j].top}) {
        b.insert(bc->saddle_connections.begin(), bc->saddle_connections.end());
      }
      bool any = std::any_of(a.begin(), a.end(), [&](int x) { return b.count(x) > 0; });
      shared = shared && any;
    }
    cert.shared_boundary = shared;
    bool tz = true;
    for (const auto& cyl : cdec.cylinders) {
      for (const auto* bc : {&cyl.bottom, &cyl.top}) {
        tz = tz && std::any_of(bc->vertices.begin(), bc->vertices.end(), [&](int v) { return f.total.order(v) > 0; });
      }
    }
    cert.true_zero = tz;
  }
  return cert;
}

inline bool is_hyperelliptic_signature(const StratumSignature& sig) { return sig.hyperelliptic(); }

inline CertifyOptions default_options(const CoverSurface& cv) {
  CertifyOptions o;
  bool full = cv.m == cv.datum.k && cv.m % 2 == 0 && cv.total.is_translation();
  o.involution = full && (cv.m / 2) % 2 == 1;
  o.hyperelliptic = full && cv.base.signature.hyperelliptic();
  return o;
}

/// Involution report over a sweep; raises EllEven when ℓ is even.
inline std::vector<DirectionCertificate> involution_check(const CoverSurface& cv, int bound) {
  if (cv.datum.k % 2 != 0 || cv.m != cv.datum.k) {
    throw Error(ErrorKind::InvalidArgument, "involution check needs the full cover of even modulus");
  }
  if ((cv.datum.k / 2) % 2 == 0) throw Error(ErrorKind::EllEven, "ℓ = " + std::to_string(cv.datum.k / 2) + " is even");
  CertifyOptions opt;
  opt.involution = true;
  std::vector<DirectionCertificate> out;
  for (auto [p, q] : sweep_directions(bound)) out.push_back(certify_direction(cv, p, q, opt));
  return out;
}

// ---------------------------------------------------------------------------
// Descriptor and cover files

struct CoverDescriptor {
  std::string base;  // catalog name or path to a labelled surface file
  int k = 0;
  std::vector<int> a;
  int m = 0;
};

inline CoverDescriptor descriptor_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "descriptor must be an object");
  for (const auto& [key, value] : j.items()) {
    if (key != "base" && key != "k" && key != "a" && key != "m") throw Error(ErrorKind::ParseError, "unknown key '" + key + "'");
  }
  if (!j.contains("base") || !j.at("base").is_string() || !j.contains("k") || !j.contains("a") || !j.contains("m")) {
    throw Error(ErrorKind::ParseError, "descriptor needs base (string), k, a, m");
  }
  CoverDescriptor d;
  d.base = j.at("base").get<std::string>();
  d.k = detail::json_int(j.at("k"), "k");
  d.m = detail::json_int(j.at("m"), "m");
  for (const auto& x : detail::json_array(j.at("a"), "a")) d.a.push_back(detail::json_int(x, "a"));
  return d;
}

inline BranchedBase resolve_base(const std::string& name, const std::string& fixture_dir = EWLOCI_FIXTURE_DIR) {
  if (name == "pillowcase" || name == "q1m15" || name.rfind("hyperelliptic(", 0) == 0) return base_catalog(name, fixture_dir);
  return make_branched_base(name, surface_from_json(read_json_file(name)));
}

inline CoverSurface build_from_descriptor(const CoverDescriptor& d, const std::string& fixture_dir = EWLOCI_FIXTURE_DIR) {
  BranchedBase base = resolve_base(d.base, fixture_dir);
  CoverDatum datum = validate_cover_datum(base.signature, d.k, d.a);
  return build_cover(base, datum, d.m);
}

inline json cover_to_json(const CoverSurface& cv) {
  json j = surface_to_json(cv.total);
  json names = json::array();
  for (int x = 0; x < cv.total.cells(); ++x) names.push_back(std::to_string(cv.base_cell(x)) + ":" + std::to_string(cv.sheet(x)));
  j["cover"] = {{"base_name", cv.base.name}, {"base", surface_to_json(cv.base.surface)}, {"k", cv.datum.k},
                {"a", cv.datum.a},           {"m", cv.m},                                 {"cell_names", names}};
  return j;
}

/// Rebuilds the cover from the recorded base and datum and checks that the
/// stored total surface is the same gluing.
inline CoverSurface cover_from_json(const json& j) {
  if (!j.is_object() || !j.contains("cover")) throw Error(ErrorKind::ParseError, "not a cover file");
  const json& c = j.at("cover");
  if (!c.is_object()) throw Error(ErrorKind::ParseError, "'cover' must be an object");
  for (const auto& [key, value] : c.items()) {
    if (key != "base_name" && key != "base" && key != "k" && key != "a" && key != "m" && key != "cell_names") {
      throw Error(ErrorKind::ParseError, "unknown cover key '" + key + "'");
    }
  }
  auto total = surface_from_json(j, {"cover"});
  std::string name = c.contains("base_name") && c.at("base_name").is_string() ? c.at("base_name").get<std::string>() : "file";
  if (!c.contains("base")) throw Error(ErrorKind::ParseError, "cover needs 'base'");
  auto base_surface = surface_from_json(c.at("base"));
  for (const auto& cp : base_surface.couples()) {
    if (!cp.weight) throw Error(ErrorKind::ParseError, "cover base pairings must carry weights");
  }
  BranchedBase base = make_branched_base(name, base_surface);
  std::vector<int> a;
  for (const auto& x : detail::json_array(c.at("a"), "a")) a.push_back(detail::json_int(x, "a"));
  CoverDatum datum = validate_cover_datum(base.signature, detail::json_int(c.at("k"), "k"), a);
  CoverSurface cv = build_cover(base, datum, detail::json_int(c.at("m"), "m"));
  // the stored gluing must agree with the stored chain
  const auto& bs = base_surface;
  auto expect = chain_boundary(bs, [&] {
    std::vector<int> w;
    for (const auto& cp : bs.couples()) w.push_back(*cp.weight);
    return w;
  }(), datum.k);
  auto target = chain_targets(base, datum);
  for (std::size_t v = 0; v < expect.size(); ++v) {
    if (expect[v] != mod(target[v], datum.k)) throw Error(ErrorKind::ParseError, "stored weights miss the monodromy");
  }
  std::vector<SideCouple> couples;
  const int m = cv.m;
  for (const auto& cp : bs.couples()) {
    for (int sheet = 0; sheet < m; ++sheet) {
      couples.push_back({4 * ((cp.a / 4) * m + sheet) + cp.a % 4, 4 * ((cp.b / 4) * m + mod(sheet + *cp.weight, m)) + cp.b % 4,
                         cp.flip, {}});
    }
  }
  auto rebuilt = CellComplexSurface::build(bs.cells() * m, couples, total.marked_corners());
  for (int side = 0; side < 4 * total.cells(); ++side) {
    if (rebuilt.partner(side) != total.partner(side)) throw Error(ErrorKind::ParseError, "stored gluing disagrees with the stored chain");
  }
  cv.base.surface = bs;
  cv.total = total;
  if (!rh_matches(riemann_hurwitz(cv))) throw Error(ErrorKind::RHMismatch, "stored cover fails Riemann-Hurwitz");
  return cv;
}

}  // namespace ewloci
