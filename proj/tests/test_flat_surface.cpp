#include <catch_amalgamated.hpp>

#include "support.hpp"

using namespace ewloci;
using ewtest::torus;

namespace {

CellComplexSurface pillowcase_model() {
  // cells 0 and 1 side by side, tops and bottoms folded by half-turns
  return CellComplexSurface::build(2, {{0, 6, false, {}}, {4, 2, false, {}}, {1, 5, true, {}}, {3, 7, true, {}}});
}

ErrorKind build_error(int n, std::vector<SideCouple> c) {
  try {
    CellComplexSurface::build(n, c);
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::Defect;
}

// 2 - 2g = V - E + F with V counted from the commutator cycles
int origami_genus(const Origami& o) {
  int v = static_cast<int>(cycles(o.commutator()).size());
  return (2 - v + o.size()) / 2;
}

}  // namespace

TEST_CASE("unit torus") {
  auto t = torus();
  CHECK(t.genus() == 1);
  CHECK(t.is_translation());
  auto table = singularities(t);
  CHECK(table.entries.empty());
  CHECK(table.genus == 1);
  CHECK(table.stratum_name() == "H(0)");
  auto o = to_origami(t);
  CHECK(o.h == Perm{0});
  CHECK(o.v == Perm{0});
}

TEST_CASE("pillowcase model") {
  auto p = pillowcase_model();
  CHECK(p.genus() == 0);
  CHECK_FALSE(p.is_translation());
  auto table = singularities(p);
  REQUIRE(table.entries.size() == 4);
  for (const auto& e : table.entries) {
    CHECK(e.order == -1);
    CHECK(e.angle == 1);
  }
  CHECK(table.stratum_name() == "Q(-1^4)");
  CHECK_THROWS_MATCHES(to_origami(p), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::NontrivialHolonomy; }));
}

TEST_CASE("malformed pairing tables") {
  CHECK(build_error(1, {{0, 1, false, {}}, {2, 3, false, {}}}) == ErrorKind::AxisMismatch);
  CHECK(build_error(1, {{0, 0, false, {}}, {1, 3, false, {}}}) == ErrorKind::FixedSide);
  CHECK(build_error(1, {{0, 2, false, {}}}) == ErrorKind::NotInvolution);
  CHECK(build_error(1, {{0, 2, false, {}}, {0, 2, false, {}}, {1, 3, false, {}}}) == ErrorKind::NotInvolution);
  CHECK(build_error(2, {{0, 2, false, {}}, {1, 3, false, {}}, {4, 6, false, {}}, {5, 7, false, {}}}) ==
        ErrorKind::Disconnected);
  CHECK(build_error(1, {{0, 0 + 2, true, {}}, {1, 3, false, {}}}) == ErrorKind::AxisMismatch);
}

TEST_CASE("shipped Q(1,-1^5) fixture") {
  auto s = surface_from_json(read_json_file(std::string(EWLOCI_FIXTURE_DIR) + "/q1m15.json"));
  auto table = singularities(s);
  CHECK(table.genus == 0);
  CHECK(table.stratum_name() == "Q(1,-1^5)");
  auto orders = table.stratum();
  std::sort(orders.begin(), orders.end());
  CHECK(orders == std::vector<int>{-1, -1, -1, -1, -1, 1});
}

TEST_CASE("origami genus and stratum agree with the commutator") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 9; ++n) {
    for (int trial = 0; trial < 25; ++trial) {
      auto o = ewtest::random_origami(n, rng);
      auto s = o.to_surface();
      CHECK(s.is_translation());
      CHECK(s.genus() == origami_genus(o));
      auto expect = o.stratum();
      auto got = singularities(s).stratum();
      CHECK(got == expect);
      auto back = to_origami(s);
      CHECK(canonical_pair(back.h, back.v) == canonical_pair(o.h, o.v));
    }
  }
}

TEST_CASE("genus from Gauss-Bonnet on random half-translation surfaces") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto s = ewtest::random_surface(1 + trial % 7, rng, true);
    int sum = 0;
    for (int v = 0; v < s.vertex_count(); ++v) sum += s.order(v);
    CHECK(sum == 4 * s.genus() - 4);
    int corners = 0;
    for (int v = 0; v < s.vertex_count(); ++v) corners += static_cast<int>(s.vertex_corners(v).size());
    CHECK(corners == 4 * s.cells());
  }
}

TEST_CASE("marked points and labels") {
  auto s = torus().with_marks({{0, 0}}, {});
  auto table = singularities(s);
  REQUIRE(table.entries.size() == 1);
  CHECK(table.entries[0].marked);
  CHECK(table.marked_points() == 1);
  CHECK(to_origami(s).marked == std::vector<int>{0});

  auto p = pillowcase_model().with_marks({}, {{{0, 0}, 2}});
  int v = p.vertex(0, 0);
  CHECK(p.label(v) == 2);
  CHECK(p.vertex_with_label(2) == v);
}

TEST_CASE("surface JSON round trip") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    auto s = ewtest::random_surface(1 + trial % 6, rng, trial % 2 == 1);
    std::vector<int> w;
    for (std::size_t i = 0; i < s.couples().size(); ++i) w.push_back(static_cast<int>(rng() % 5));
    if (trial % 3 == 0) s = s.with_weights(w);
    if (trial % 4 == 0) s = s.with_marks({{0, 2}}, {{{0, 0}, 1}});
    auto j = surface_to_json(s);
    auto r = surface_from_json(json::parse(j.dump()));
    CHECK(surface_to_json(r) == j);
    CHECK(r.genus() == s.genus());
    CHECK(r.vertex_count() == s.vertex_count());
  }
}

TEST_CASE("surface JSON parsing is strict") {
  auto kind = [](const std::string& text) {
    try {
      surface_from_json(json::parse(text));
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Defect;
  };
  CHECK(kind(R"({"cells":1,"pairings":[[0,2,false],[1,3,false]],"colour":1})") == ErrorKind::ParseError);
  CHECK(kind(R"({"cells":1})") == ErrorKind::ParseError);
  CHECK(kind(R"({"cells":1,"pairings":[[0,2],[1,3,false]]})") == ErrorKind::ParseError);
  CHECK(kind(R"({"cells":1,"pairings":[[0,2,0],[1,3,false]]})") == ErrorKind::ParseError);
  CHECK(kind(R"({"cells":"1","pairings":[[0,2,false],[1,3,false]]})") == ErrorKind::ParseError);
  CHECK(kind(R"({"cells":1,"pairings":[[0,1,false],[2,3,false]]})") == ErrorKind::AxisMismatch);
  CHECK(kind(R"([1,2])") == ErrorKind::ParseError);
  auto ok = surface_from_json(json::parse(R"({"cells":1,"pairings":[[0,2,false,3],[1,3,false]]})"));
  CHECK(ok.couples()[0].weight == 3);
}
