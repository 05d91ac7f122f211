#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "ewloci/geminal.hpp"

using namespace ewloci;

namespace {

Perm cyc(std::string_view s, int n) { return parse_cycles(s, n); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Defect;
}

// Lower Christoffel word of slope q/p: p letters 0 (x) and q letters 1 (y).
std::vector<int> christoffel(int p, int q) {
  std::vector<int> w;
  const int n = p + q;
  for (int i = 1; i <= n; ++i) w.push_back((i * q) / n != ((i - 1) * q) / n ? 1 : 0);
  return w;
}

// Images of all primitive classes with |p| + |q| <= len (signs included);
// returns false at the first one that is not a (2d,2d)-cycle.
bool short_primitive_words_ok(const Perm& s, const Perm& t, int d, int len) {
  const int n = 4 * d;
  const Perm si = inverse(s), ti = inverse(t);
  for (int p = 0; p <= len; ++p) {
    for (int q = 0; p + q <= len; ++q) {
      if (std::gcd(p, q) != 1) continue;
      auto w = christoffel(p, q);
      for (int sx : {1, -1}) {
        for (int sy : {1, -1}) {
          Perm g = identity_perm(n);
          for (int letter : w) g = compose(g, letter == 0 ? (sx > 0 ? s : si) : (sy > 0 ? t : ti));
          if (!is_2d2d(g, d)) return false;
        }
      }
    }
  }
  return true;
}

std::set<Perm> generate(const std::vector<Perm>& gens, int n) {
  std::set<Perm> seen{identity_perm(n)};
  std::vector<Perm> queue{identity_perm(n)};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const auto& g : gens) {
      Perm x = compose(g, queue[head]);
      if (seen.insert(x).second) queue.push_back(x);
    }
  }
  return seen;
}

// rho(K) as the normal closure of sigma^2, tau^2, (sigma tau)^2 in the image:
// grow the generating set until it is closed under conjugation by sigma, tau.
std::set<Perm> rho_K_normal_closure(const Perm& s, const Perm& t) {
  const int n = static_cast<int>(s.size());
  auto st = compose(s, t);
  std::vector<Perm> gens{compose(s, s), compose(t, t), compose(st, st)};
  auto h = generate(gens, n);
  for (bool grew = true; grew;) {
    grew = false;
    for (std::size_t i = 0; i < gens.size() && !grew; ++i) {
      for (const Perm* c : {&s, &t}) {
        Perm x = compose(compose(*c, gens[i]), inverse(*c));
        if (h.count(x)) continue;
        gens.push_back(x);
        h = generate(gens, n);
        grew = true;
        break;
      }
    }
  }
  return h;
}

// rho(K) through Schreier generators on the transversal {1, x, y, xy}.
std::set<Perm> rho_K_schreier(const Perm& s, const Perm& t) {
  const int n = static_cast<int>(s.size());
  // coset of a word = parity pair; transversal rep for (a, b) is x^a y^b
  auto rep = [&](int a, int b) {
    Perm r = identity_perm(n);
    if (a) r = compose(r, s);
    if (b) r = compose(r, t);
    return r;
  };
  std::vector<Perm> gens;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      // rep * x, rep * y, and back to the transversal
      gens.push_back(compose(compose(rep(a, b), s), inverse(rep(1 - a, b))));
      gens.push_back(compose(compose(rep(a, b), t), inverse(rep(a, 1 - b))));
    }
  }
  return generate(gens, n);
}

// rho^-1(Fix(1)) inside K, decided through the action on (point, parity) pairs.
bool containment_oracle(const Perm& s, const Perm& t) {
  const int n = static_cast<int>(s.size());
  std::vector<char> seen(4 * static_cast<std::size_t>(n), 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    int x = queue[head] / 4, v = queue[head] % 4;
    for (int next : {4 * s[x] + (v ^ 1), 4 * t[x] + (v ^ 2)}) {
      if (!seen[next]) {
        seen[next] = 1;
        queue.push_back(next);
      }
    }
  }
  return !seen[1] && !seen[2] && !seen[3];
}

Perm random_2d2d(int d, std::mt19937_64& rng) {
  Perm order = identity_perm(4 * d);
  std::shuffle(order.begin(), order.end(), rng);
  Perm c = canonical_2d2d(d), p(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) p[order[i]] = order[c[i]];
  return p;
}

}  // namespace

TEST_CASE("(2d,2d)-cycles") {
  CHECK(is_2d2d(cyc("(1 2)(3 4)", 4), 1));
  CHECK_FALSE(is_2d2d(cyc("(1 2 3 4)", 4), 1));
  CHECK_FALSE(is_2d2d(cyc("(1 2)", 4), 1));
  CHECK(is_2d2d(cyc("(1 2 3 4)(5 6 7 8)", 8), 2));
  CHECK_FALSE(is_2d2d(cyc("(1 2 3 4)(5 6 7 8)", 8), 1));
  CHECK(is_2d2d(canonical_2d2d(3), 3));
}

TEST_CASE("Nielsen closure") {
  auto id = identity_perm(4);
  auto c = nielsen_closure(id, id);
  CHECK(c.size() == 1);

  auto a = cyc("(1 2)(3 4)", 4), b = cyc("(1 3)(2 4)", 4);
  std::set<Perm> v{identity_perm(4), a, b, cyc("(1 4)(2 3)", 4)};
  std::set<Perm> firsts;
  for (const auto& [x, y] : nielsen_closure(a, b)) {
    CHECK(v.count(x) == 1);
    CHECK(v.count(y) == 1);
    firsts.insert(x);
  }
  CHECK(firsts == std::set<Perm>{a, b, cyc("(1 4)(2 3)", 4)});

  // equivariance under simultaneous conjugation
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    Perm s = identity_perm(5), t = identity_perm(5), g = identity_perm(5);
    std::shuffle(s.begin(), s.end(), rng);
    std::shuffle(t.begin(), t.end(), rng);
    std::shuffle(g.begin(), g.end(), rng);
    auto gi = inverse(g);
    auto lhs = nielsen_closure(s, t);
    auto rhs = nielsen_closure(compose(compose(g, s), gi), compose(compose(g, t), gi));
    CHECK(lhs.size() == rhs.size());
    for (const auto& [x, y] : lhs) CHECK(rhs.count({compose(compose(g, x), gi), compose(compose(g, y), gi)}) == 1);
  }
}

TEST_CASE("geminal verdicts on small pairs") {
  auto klein = is_geminal_rep({1, cyc("(1 2)(3 4)", 4), cyc("(1 3)(2 4)", 4)});
  CHECK(klein.is_geminal);
  CHECK(klein.orbit_complete);
  CHECK_FALSE(klein.witness.has_value());

  CHECK(kind_of([] { is_geminal_rep({1, cyc("(1 2)(3 4)", 4), cyc("(1 2)(3 4)", 4)}); }) == ErrorKind::NotTransitive);

  auto bad = is_geminal_rep({1, cyc("(1 2 3 4)", 4), cyc("(1 3)", 4)});
  CHECK_FALSE(bad.is_geminal);
  REQUIRE(bad.witness.has_value());
  CHECK(cycle_type(bad.witness->first) == std::vector<int>{4});
  CHECK(bad.orbit_size == 1);
}

TEST_CASE("analysis of the Klein pair") {
  auto a = analyze_K({1, cyc("(1 2)(3 4)", 4), cyc("(1 3)(2 4)", 4)});
  CHECK(a.image_order == 4);
  CHECK(a.rho_K_order == 1);
  CHECK(a.stab_order == 1);
  CHECK(a.stab_contained_in_K);
  CHECK(a.stab_normal_in_rhoK);
  CHECK(a.quotient_cyclic == true);
  CHECK(a.quotient_order == 1u);

  // non-geminal pairs are analysed all the same
  auto b = analyze_K({1, cyc("(1 2 3 4)", 4), cyc("(1 3)", 4)});
  CHECK(b.image_order == 8);
  CHECK(kind_of([] { analyze_K({1, cyc("(1 2)", 4), cyc("(3 4)", 4)}); }) == ErrorKind::NotTransitive);
}

TEST_CASE("exhaustive d = 1 against the word oracle") {
  std::vector<Perm> all;
  Perm p = identity_perm(4);
  do all.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  REQUIRE(all.size() == 24);
  int pairs = 0, transitive = 0, geminal = 0;
  std::set<PermPairValue> geminal_classes;
  for (const auto& s : all) {
    for (const auto& t : all) {
      ++pairs;
      if (!is_transitive({s, t}, 4)) {
        CHECK(kind_of([&] { is_geminal_rep({1, s, t}); }) == ErrorKind::NotTransitive);
        continue;
      }
      ++transitive;
      auto v = is_geminal_rep({1, s, t});
      CHECK(v.is_geminal == short_primitive_words_ok(s, t, 1, 16));
      if (!v.is_geminal) continue;
      ++geminal;
      geminal_classes.insert(canonical_pair(s, t));
      auto an = analyze_K({1, s, t});
      CHECK(an.stab_normal_in_rhoK);
      CHECK(an.quotient_cyclic == true);
    }
  }
  CHECK(pairs == 576);
  CHECK(geminal > 0);
  // the Klein four group is the only d = 1 class
  CHECK(geminal_classes.size() == 1);
  CHECK(geminal_classes.count(canonical_pair(cyc("(1 2)(3 4)", 4), cyc("(1 3)(2 4)", 4))) == 1);
}

TEST_CASE("rho(K) three ways") {
  std::mt19937_64 rng(21);
  for (int d = 1; d <= 2; ++d) {
    int done = 0;
    while (done < (d == 1 ? 25 : 8)) {
      auto s = random_2d2d(d, rng), t = random_2d2d(d, rng);
      if (!is_transitive({s, t}, 4 * d)) continue;
      ++done;
      auto nc = rho_K_normal_closure(s, t);
      auto sc = rho_K_schreier(s, t);
      CHECK(nc == sc);
      auto img = combined_image(s, t, 1'000'000);
      std::set<Perm> lib;
      for (const auto& [g, v] : img.elements) {
        if (v == 0) lib.insert(g);
      }
      CHECK(lib == sc);

      auto a = analyze_K({d, s, t});
      CHECK(a.rho_K_order == sc.size());
      CHECK(a.image_order == generate({s, t}, 4 * d).size());
      CHECK(a.stab_contained_in_K == containment_oracle(s, t));
      std::set<Perm> stab;
      for (const auto& g : sc) {
        if (g[0] == 0) stab.insert(g);
      }
      CHECK(a.stab_order == stab.size());
      bool normal = true;
      for (const auto& g : sc) {
        for (const auto& h : stab) normal = normal && stab.count(compose(compose(g, h), inverse(g)));
      }
      CHECK(a.stab_normal_in_rhoK == normal);
      if (!normal) {
        CHECK_FALSE(a.quotient_cyclic.has_value());
        continue;
      }
      std::size_t index = sc.size() / stab.size();
      CHECK(a.quotient_order == index);
      // cyclic iff some element has order equal to the index modulo stab
      bool cyclic = false;
      for (const auto& g : sc) {
        std::size_t ord = 1;
        for (Perm x = g; !stab.count(x); x = compose(g, x)) ++ord;
        cyclic = cyclic || ord == index;
      }
      CHECK(a.quotient_cyclic == cyclic);
    }
  }
}

TEST_CASE("geminal verdict agrees with short primitive words") {
  std::mt19937_64 rng(4);
  for (int d = 1; d <= 2; ++d) {
    int done = 0, geminal = 0;
    while (done < 50) {
      auto s = random_2d2d(d, rng), t = random_2d2d(d, rng);
      if (!is_transitive({s, t}, 4 * d)) continue;
      ++done;
      auto v = is_geminal_rep({d, s, t});
      bool words = short_primitive_words_ok(s, t, d, 6);
      // the orbit test is exact; short words only ever miss failures
      if (v.is_geminal) {
        ++geminal;
        CHECK(words);
      }
      if (!words) CHECK_FALSE(v.is_geminal);
      if (!v.is_geminal) {
        REQUIRE(v.witness.has_value());
        CHECK_FALSE(is_2d2d(v.witness->first, d));
      }
    }
    if (d == 1) CHECK(geminal > 0);
  }
}

TEST_CASE("search") {
  auto r1 = search(1);
  CHECK(r1.complete);
  CHECK(r1.candidates == 3);
  int g1 = 0;
  for (const auto& c : r1.classes) {
    CHECK(is_2d2d(c.sigma, 1));
    CHECK(is_2d2d(c.tau, 1));
    REQUIRE(c.analysis.has_value());
    if (!c.verdict.is_geminal) continue;
    ++g1;
    CHECK(c.analysis->stab_normal_in_rhoK);
    CHECK(c.analysis->quotient_cyclic == true);
  }
  CHECK(g1 == 1);

  auto r2 = search(2);
  CHECK(r2.complete);
  // (4,4)-cycles on 8 points: 8! / (4 * 4 * 2)
  CHECK(r2.candidates == 1260);
  std::set<PermPairValue> keys;
  for (const auto& c : r2.classes) {
    CHECK(keys.insert({c.sigma, c.tau}).second);
    CHECK(canonical_pair(c.sigma, c.tau) == PermPairValue{c.sigma, c.tau});
    REQUIRE(c.analysis.has_value());
    if (c.verdict.is_geminal) CHECK(short_primitive_words_ok(c.sigma, c.tau, 2, 8));
  }

  SearchLimits tight;
  tight.max_candidates = 10;
  auto partial = search(2, tight);
  CHECK_FALSE(partial.complete);
  CHECK(partial.candidates == 10);
  CHECK_FALSE(partial.note.empty());
  CHECK(kind_of([] { search(0); }) == ErrorKind::InvalidArgument);
}
