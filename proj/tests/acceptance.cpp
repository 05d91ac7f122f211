// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "support.hpp"

using namespace ewloci;

namespace {

struct Result {
  bool pass = true;
  std::string detail;
};

void need(Result& r, bool ok, const std::string& what) {
  if (ok) return;
  if (r.pass) r.detail = what;
  r.pass = false;
}

EwVerdict ew(const std::vector<int>& kappa, int k, const std::vector<int>& a) {
  auto sig = validate_signature(kappa);
  return is_generalized_ew(sig, validate_cover_datum(sig, k, to_label_order(sig, a)));
}

struct Entry {
  std::string base;
  int k;
  std::vector<int> a;  // label order
};

const std::vector<Entry> kCatalog{{"pillowcase", 4, {1, 1, 1, 1}},        {"pillowcase", 6, {3, 1, 1, 1}},
                                  {"pillowcase", 10, {3, 1, 1, 5}},       {"q1m15", 6, {1, 1, 1, 1, 1, 1}},
                                  {"hyperelliptic(5)", 6, {1, 1, 1, 1, 2}}, {"hyperelliptic(6)", 4, {1, 1, 1, 1, 1, 3}},
                                  {"hyperelliptic(7)", 6, {1, 1, 1, 1, 1, 1, 0}}};

Result catalog_arithmetic() {
  Result r;
  const std::vector<int> p{-1, -1, -1, -1}, q{1, -1, -1, -1, -1, -1};
  need(r, ew(p, 4, {1, 1, 1, 1}).pass, "EW");
  need(r, ew(p, 6, {3, 1, 1, 1}).pass, "Ornithorynque");
  for (int l : {3, 5}) need(r, ew(p, 2 * l, {l - 2, 1, 1, l}).pass, "l = " + std::to_string(l));
  need(r, ew(q, 6, {1, 1, 1, 1, 1, 1}).pass, "Q(1,-1^5)");
  auto bad = ew(p, 4, {1, 1, 3, 3});
  need(r, !bad.pass && bad.subset == std::vector<int>{1, 3}, "(1,1,3,3) witness");
  if (r.pass) r.detail = "6 data pass, (1,1,3,3) fails on I = {1,3}";
  return r;
}

Result rank_dim_anchor() {
  Result r;
  auto v = ew({1, -1, -1, -1, -1, -1}, 6, {1, 1, 1, 1, 1, 1});
  need(r, v.rank == 2 && v.dim == 4, "rank " + std::to_string(v.rank) + ", dim " + std::to_string(v.dim));
  if (r.pass) r.detail = "rank 2, dim 4";
  return r;
}

Result stratum_anchors() {
  Result r;
  auto e = ewtest::ew_cover();
  need(r, e.total.is_translation(), "EW cover not a translation surface");
  need(r, e.total.genus() == 3, "EW genus");
  need(r, e.total.cells() == 8, "EW cell count");
  need(r, singularities(e.total).stratum_name() == "H(1^4)", "EW stratum");
  auto q = ewtest::q1m15_cover(3);
  auto name = singularities(q.total).stratum_name();
  need(r, name == "Q(7,1^5)", "q1m15 m=3 stratum " + name);
  if (r.pass) r.detail = "H(1^4) genus 3 with 8 cells; " + name;
  return r;
}

Result two_lifts() {
  Result r;
  int dirs = 0, cyl = 0;
  for (const auto& e : kCatalog) {
    auto cv = ewtest::catalog_cover(e.base, e.k, e.a, e.k);
    need(r, is_generalized_ew(cv.base.signature, cv.datum).pass, e.base + " datum not generalized EW");
    for (auto [p, q] : sweep_directions(5)) {
      auto c = certify_direction(cv, p, q, {});
      ++dirs;
      cyl += c.cover_cylinders;
      std::ostringstream where;
      where << e.base << " k=" << e.k << " (" << p << "," << q << ")";
      need(r, c.doubled, where.str() + ": count not doubled");
      need(r, c.lifts_ok, where.str() + ": lift count differs from m/ord");
      for (const auto& l : c.lifts) need(r, l.found_lifts == l.expected_lifts, where.str());
    }
  }
  if (r.pass) r.detail = std::to_string(kCatalog.size()) + " covers, " + std::to_string(dirs) + " directions, " +
                         std::to_string(cyl) + " cylinders";
  return r;
}

Result twins() {
  Result r;
  int pairs = 0;
  for (const auto& cv : {ewtest::ew_cover(), ewtest::ornithorynque_cover()}) {
    for (auto [p, q] : sweep_directions(5)) {
      auto c = certify_direction(cv, p, q, {});
      need(r, c.twins.perfect_matching && c.twins.pass, "no twin matching at (" + std::to_string(p) + "," + std::to_string(q) + ")");
      for (const auto& t : c.twins.pairs) {
        ++pairs;
        need(r, t.isometric && t.deck && t.homology == HomologyRelation::equal, "pair not isometric/deck/homologous");
      }
    }
  }
  if (r.pass) r.detail = std::to_string(pairs) + " twin pairs, all isometric, deck-exchanged, homologous";
  return r;
}

Result involution() {
  Result r;
  int dirs = 0;
  for (const auto& cv : {ewtest::ornithorynque_cover(), ewtest::q1m15_cover(6)}) {
    for (const auto& c : involution_check(cv, 5)) {
      ++dirs;
      need(r, c.involution_ok == true, "involution fails");
    }
  }
  if (r.pass) r.detail = std::to_string(dirs) + " directions";
  return r;
}

Result hyperelliptic() {
  Result r;
  CertifyOptions opt;
  opt.hyperelliptic = true;
  int dirs = 0;
  for (auto [p, q] : sweep_directions(5)) {
    auto c = certify_direction(ewtest::ew_cover(), p, q, opt);
    ++dirs;
    need(r, c.shared_boundary == true, "twins without a shared saddle connection");
    need(r, c.true_zero == true, "boundary circle without a true zero");
  }
  if (r.pass) r.detail = std::to_string(dirs) + " directions on EW";
  return r;
}

Result blocking() {
  Result r;
  int blocked = 0;
  for (const auto& cv : {ewtest::ew_cover(), ewtest::ornithorynque_cover()}) {
    for (const auto& s : sample_blocking_inputs(cv.total, 20, 20240601)) {
      bool b = is_self_blocked(cv.total, cv.deck, s.point, s.dx, s.dy).blocked;
      blocked += b;
      need(r, b, "unblocked sample");
    }
  }
  auto t = ewtest::torus();
  int open = 0;
  for (const auto& s : sample_blocking_inputs(t, 20, 20240601)) {
    open += !is_self_blocked(t, CellMap::identity(1), s.point, s.dx, s.dy).blocked;
  }
  need(r, open == 20, "torus sample blocked");
  if (r.pass) r.detail = std::to_string(blocked) + "/40 blocked on covers, 20/20 open on the torus";
  return r;
}

Result negative_control() {
  Result r;
  auto bad = ewtest::catalog_cover("pillowcase", 4, {1, 1, 3, 3}, 4);
  std::string witness;
  for (auto [p, q] : sweep_directions(3)) {
    auto c = certify_direction(bad, p, q, {});
    for (const auto& l : c.lifts) {
      bool i13 = l.labels_below == std::vector<int>{1, 3} || l.labels_below == std::vector<int>{2, 4};
      if (i13 && l.found_lifts == 4 && l.shapes_ok && !c.twins.pass && witness.empty()) {
        witness = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
      }
    }
  }
  need(r, !witness.empty(), "no witness direction");
  if (r.pass) r.detail = "4 equal lifts and failed matching at " + witness;
  return r;
}

Result geminal(double& d2_seconds) {
  Result r;
  auto t0 = std::chrono::steady_clock::now();
  auto r1 = search(1);
  double d1 = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  auto klein = canonical_pair(parse_cycles("(1 2)(3 4)", 4), parse_cycles("(1 3)(2 4)", 4));
  bool found = false;
  int geminal = 0;
  need(r, r1.complete, "d=1 incomplete");
  auto t1 = std::chrono::steady_clock::now();
  auto r2 = search(2);
  d2_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
  need(r, r2.complete, "d=2 incomplete");
  for (const auto* rep : {&r1, &r2}) {
    for (const auto& c : rep->classes) {
      if (!c.verdict.is_geminal) continue;
      ++geminal;
      if (c.d == 1 && PermPairValue{c.sigma, c.tau} == klein) found = true;
      need(r, c.analysis.has_value(), "missing analysis");
      if (!c.analysis) continue;
      need(r, c.analysis->stab_contained_in_K, "rho^-1(Fix(1)) not inside K");
      need(r, c.analysis->stab_normal_in_rhoK, "not normal in K");
      need(r, c.analysis->quotient_cyclic == true, "quotient not cyclic");
    }
  }
  need(r, found, "Klein class missing");
  need(r, d1 < 1.0, "d=1 over 1 s");
  need(r, d2_seconds < 60.0, "d=2 over 60 s");
  if (r.pass) {
    std::ostringstream out;
    out << geminal << " geminal classes (d=1,2), all normal with cyclic quotient; d=1 " << d1 << " s, d=2 " << d2_seconds
        << " s";
    r.detail = out.str();
  }
  return r;
}

bool words_ok(const Perm& s, const Perm& t, int d, int len) {
  const Perm si = inverse(s), ti = inverse(t);
  for (int p = 0; p <= len; ++p) {
    for (int q = 0; p + q <= len; ++q) {
      if (std::gcd(p, q) != 1) continue;
      for (int sx : {1, -1}) {
        for (int sy : {1, -1}) {
          Perm g = identity_perm(4 * d);
          for (int i = 1; i <= p + q; ++i) {
            bool y = (i * q) / (p + q) != ((i - 1) * q) / (p + q);
            g = compose(g, y ? (sy > 0 ? t : ti) : (sx > 0 ? s : si));
          }
          if (!is_2d2d(g, d)) return false;
        }
      }
    }
  }
  return true;
}

Result properties() {
  Result r;
  std::mt19937_64 rng(20240601);
  int checks = 0;
  // area conservation and matrix independence
  std::vector<CellComplexSurface> surfaces{ewtest::ew_cover().total, ewtest::ornithorynque_cover().total,
                                           ewtest::q1m15_cover(3).total};
  for (int i = 0; i < 4; ++i) surfaces.push_back(ewtest::random_surface(4 + i, rng, true));
  for (const auto& s : surfaces) {
    for (auto [p, q] : sweep_directions(5)) {
      auto ref = direction_cylinders(s, p, q);
      need(r, ref.total_area() == s.cells(), "area not conserved");
      auto word = straightening_word(p, q);
      word.push_back(Move::shear);
      word.push_back(Move::shear);
      auto alt = horizontal_cylinders(apply_word(s, word).surface);
      need(r, ewtest::shapes(alt) == ewtest::shapes(ref), "decomposition depends on the matrix");
      checks += 2;
    }
  }
  // Riemann-Hurwitz on every build
  for (const auto& e : kCatalog) {
    for (int m = 2; m <= e.k; ++m) {
      if (e.k % m) continue;
      need(r, rh_matches(riemann_hurwitz(ewtest::catalog_cover(e.base, e.k, e.a, m))), "RH fails");
      ++checks;
    }
  }
  // Nielsen closure equivariance
  for (int trial = 0; trial < 20; ++trial) {
    Perm s = ewtest::random_perm(5, rng), t = ewtest::random_perm(5, rng), g = ewtest::random_perm(5, rng);
    auto gi = inverse(g);
    auto lhs = nielsen_closure(s, t);
    auto rhs = nielsen_closure(compose(compose(g, s), gi), compose(compose(g, t), gi));
    bool same = lhs.size() == rhs.size();
    for (const auto& [x, y] : lhs) same = same && rhs.count({compose(compose(g, x), gi), compose(compose(g, y), gi)});
    need(r, same, "closure not equivariant");
    ++checks;
  }
  // short primitive words against the orbit test
  for (int d = 1; d <= 2; ++d) {
    int done = 0;
    while (done < 50) {
      Perm s = ewtest::random_perm(4 * d, rng), t = ewtest::random_perm(4 * d, rng);
      if (!is_2d2d(s, d) || !is_2d2d(t, d) || !is_transitive({s, t}, 4 * d)) continue;
      ++done;
      auto v = is_geminal_rep({d, s, t});
      bool w = words_ok(s, t, d, 6);
      need(r, !v.is_geminal || w, "geminal pair fails a short primitive word");
      ++checks;
    }
  }
  if (r.pass) r.detail = std::to_string(checks) + " property checks";
  return r;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit;  // seconds
    std::function<Result()> run;
  };
  double d2 = 0;
  const std::vector<Criterion> all{
      {"catalog arithmetic", 1, catalog_arithmetic},
      {"rank and dimension", 1, rank_dim_anchor},
      {"stratum anchors", 2, stratum_anchors},
      {"two lifts per cylinder", 10, two_lifts},
      {"twin certification", 10, twins},
      {"involution for odd l", 10, involution},
      {"hyperelliptic gluing", 5, hyperelliptic},
      {"finite blocking", 10, blocking},
      {"negative control", 5, negative_control},
      {"geminal representations", 61, [&] { return geminal(d2); }},
      {"property suites", 60, properties},
  };
  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto& c = all[i];
    auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (r.pass && secs >= c.limit) r = {false, "took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit) + " s"};
    failed += !r.pass;
    std::printf("criterion %2zu %s  %-26s %8.3f s  %s\n", i + 1, r.pass ? "PASS" : "FAIL", c.name, secs, r.detail.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, all.size());
  return failed ? 1 : 0;
}
