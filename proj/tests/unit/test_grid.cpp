#include "helpers.hpp"
#include "oracles.hpp"

#include "rgl/grid.hpp"

#include <doctest.h>

#include <random>
#include <map>
#include <set>

using namespace rgl;
using testing::ints;

namespace {

GridSpec spec(std::size_t n, IntVector x, IntVector y, IntVector b, IntVector c, IntVector d) {
  return GridSpec{n, std::move(x), std::move(y), std::move(b), std::move(c), std::move(d)};
}

/// Two levels, wide enough at level 1 to keep every point ordered.
GridSpec proper_two_level() { return spec(2, ints({1, 1}), ints({100, 2}), ints({0, 2}), ints({0, 4, 0}), ints({1, 10})); }

std::set<std::pair<Integer, Integer>> pair_set(const std::vector<GridPoint>& pts) {
  std::set<std::pair<Integer, Integer>> out;
  for (const auto& p : pts) out.emplace(p.u, p.v);
  return out;
}

}  // namespace

TEST_CASE("grid points") {
  const auto single = grid_points(spec(1, ints({1}), ints({2}), ints({0}), ints({0, 0}), ints({1})));
  REQUIRE(single.size() == 1);
  CHECK(single[0].u == 1);
  CHECK(single[0].v == 2);

  const GridSpec two = spec(2, ints({1, 1}), ints({2, 2}), ints({0, 1}), ints({0, 2, 0}), ints({1, 10}));
  const auto pts = grid_points(two);
  CHECK(pts.size() == 25 + 2);
  const auto pairs = pair_set(pts);
  for (int i = -2; i <= 2; ++i)
    for (int j = -2; j <= 2; ++j) CHECK(pairs.count({Integer(1 + 10 * i), Integer(2 + 10 * j)}));
  for (int h : {1, 2}) CHECK(pairs.count({Integer(h + 10), Integer(h + 20)}));
  CHECK(pts.back().level == 2);
  CHECK(pts.back().history == std::vector<bool>{true});
}

TEST_CASE("point count per level") {
  for (int c1 : {0, 1, 3})
    for (int c2 : {0, 2}) {
      const GridSpec s = spec(3, ints({1, 1, 1}), ints({2, 2, 2}), ints({0, 0, 0}), ints({0, c1, c2, 0}),
                              ints({1, 2, 4}));
      std::map<std::size_t, std::size_t> per_level;
      for (const auto& p : grid_points(s)) ++per_level[p.level];
      CHECK(per_level[1] == static_cast<std::size_t>((2 * c1 + 1) * (2 * c1 + 1)));
      CHECK(per_level[2] == static_cast<std::size_t>(2 * (2 * c2 + 1) * (2 * c2 + 1)));
      CHECK(per_level[3] == 4);
    }
}

TEST_CASE("validation names the failed constraint") {
  auto s = proper_two_level();
  validate(s);
  auto bad_d = s;
  bad_d.d = ints({3, 10});
  CHECK_THROWS_WITH_AS(validate(bad_d), doctest::Contains("divisibility"), GridError);
  auto bad_cap = s;
  bad_cap.b = ints({0, 3});
  CHECK_THROWS_WITH_AS(validate(bad_cap), doctest::Contains("capacity"), GridError);
  auto bad_x = s;
  bad_x.x[0] = 0;
  CHECK_THROWS_WITH_AS(validate(bad_x), doctest::Contains("x(1)"), GridError);
  auto bad_shape = s;
  bad_shape.c.pop_back();
  CHECK_THROWS_AS(validate(bad_shape), GridError);
  CHECK(default_c0(s) == 0);
}

TEST_CASE("properness") {
  CHECK(is_proper(proper_two_level()));
  // Points such as (1 + 20, 2 - 20) are out of order.
  CHECK_FALSE(is_proper(spec(2, ints({1, 1}), ints({2, 2}), ints({0, 1}), ints({0, 2, 0}), ints({1, 10}))));
  auto same = proper_two_level();
  same.y[1] = 1;
  CHECK_FALSE(is_proper(same));
  // Wide offsets at level 1 overlap the level-2 range.
  CHECK_FALSE(is_proper(spec(2, ints({1, 1}), ints({30, 2}), ints({0, 0}), ints({0, 10, 0}), ints({1, 2}))));
  CHECK(is_proper(spec(2, ints({1, 1}), ints({30, 2}), ints({0, 0}), ints({0, 2, 0}), ints({1, 7}))));
  // 1 + 3*2 = 5 + 1*2: two histories reach the same coordinate.
  CHECK_FALSE(is_proper(spec(2, ints({1, 1}), ints({5, 3}), ints({0, 0}), ints({0, 0, 0}), ints({1, 2}))));
}

TEST_CASE("property: proper grids give injective representations and ordered points") {
  std::mt19937 rng(5);
  int proper = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const long x1 = 1 + rng() % 5, y1 = x1 + 1 + rng() % 60, x2 = 1 + rng() % 3, y2 = x2 + 1 + rng() % 3;
    const long m = 1 + rng() % 12, c1 = rng() % 4;
    const GridSpec s = spec(2, ints({x1, x2}), ints({y1, y2}), ints({0, 0}), ints({0, c1, 0}), ints({1, m}));
    if (!is_proper(s)) continue;
    ++proper;
    std::set<long long> depth1, depth2;
    bool injective = true;
    for (long h : {x1, y1})
      for (long i = -c1; i <= c1; ++i) injective &= depth1.insert(h + i * m).second;
    for (long h : {x1, y1})
      for (long g : {x2, y2}) injective &= depth2.insert(h + g * m).second;
    CHECK(injective);
    for (const auto& p : grid_points(s)) CHECK(p.u < p.v);
  }
  CHECK(proper > 20);
}

TEST_CASE("locate round-trips with grid_points") {
  const GridSpec s = proper_two_level();
  const auto pts = grid_points(s);
  const auto members = pair_set(pts);
  for (const auto& p : pts) CHECK(locate(s, p.u, p.v) == p.level);
  for (long u = -50; u <= 150; u += 3)
    for (long v = -50; v <= 150; v += 7)
      if (!members.count({Integer(u), Integer(v)})) CHECK_FALSE(locate(s, u, v));
  CHECK_FALSE(locate(s, Integer(1'000'000'000), Integer(1'000'000'001)));
  CHECK(locate(spec(1, ints({1}), ints({2}), ints({0}), ints({0, 0}), ints({1})), 1, 2) == std::size_t{1});
}

TEST_CASE("property: enlarging c keeps every point") {
  const GridSpec s = proper_two_level();
  auto wider = s;
  wider.c[1] = 9;
  const auto small = pair_set(grid_points(s));
  const auto big = pair_set(grid_points(wider));
  for (const auto& p : small) CHECK(big.count(p));
}

TEST_CASE("required capacities") {
  const auto cert = testing::ex6_cert();
  const IntVector y = ints({2, 2, 2}), d = ints({1, 10, 100});
  const IntVector c = ints({0, 7, 5, 4});
  const auto b = required_b(cert, y, c, d);
  CHECK(b[2] == 4);
  CHECK(b[1] == 2 * 2 + 5 * 10);
  CHECK(b[0] == 2 * 2 + 7 * 10);

  GCCCertificate one;
  one.n = 2;
  one.z = {testing::rat({1, 1}), testing::rat({0, 5})};
  one.R = {Graph::complete(2), Graph(2)};
  CHECK(required_b(one, ints({3}), ints({0, 0}), ints({1})) == ints({6}));

  const GridSpec fit = fit_grid(cert, ints({1, 1, 1}), y, d);
  CHECK(fit.b == ints({1684, 84, 4}));
  CHECK(fit.c == ints({3368, 168, 8, 4}));
}

TEST_CASE("solutions built inside a grid") {
  const auto cert = testing::ex6_cert();
  const GridSpec g = fit_grid(cert, ints({1, 1, 1}), ints({2, 2, 2}), ints({1, 10, 100}));
  const IntVector w = solve_in_grid(testing::ex6(), cert, g);
  CHECK(w == ints({422, 112, 221, 121, 111, 211}));
  CHECK(multiply(testing::ex6(), w) == ints({0, 0}));
  CHECK(locate(g, w[1], w[0]) == std::size_t{2});
  CHECK(unrestriction_time(cert, 0, 1) == 2);

  const auto four = testing::wxyz_cert();
  const GridSpec g4 = fit_grid(four, ints({1, 1}), ints({2, 2}), ints({1, 10}));
  CHECK(solve_in_grid(testing::wxyz(), four, g4) == ints({22, 12, 11, 21}));

  auto starved = g;
  starved.b[0] -= 1;
  CHECK_THROWS_WITH_AS(solve_in_grid(testing::ex6(), cert, starved), doctest::Contains("capacity"), GridError);

  auto weak = cert;
  weak.z[3][0] = Rational(5, 2);
  CHECK_THROWS_AS(solve_in_grid(testing::ex6(), weak, g), GridError);
}

TEST_CASE("property: solve_in_grid postconditions on random parameters") {
  std::mt19937 rng(11);
  std::vector<std::pair<IntMatrix, GCCCertificate>> cases{{testing::ex6(), testing::ex6_cert()},
                                                          {testing::wxyz(), testing::wxyz_cert()}};
  for (const IntMatrix& a : {IntMatrix{{2, -2, 3, -3}}, IntMatrix{{1, -1, 1, -1, 1, -1}}}) {
    auto s = search_gcc(a, Flavor::strong, {.max_steps = 3});
    if (s.certificate) cases.emplace_back(a, *s.certificate);
  }
  int built = 0;
  for (const auto& [a, cert] : cases)
    for (int trial = 0; trial < 25; ++trial) {
      const std::size_t T = cert.T();
      IntVector x, y, d;
      Integer step = 1;
      for (std::size_t t = 0; t < T; ++t) {
        x.emplace_back(1 + static_cast<long>(rng() % 3));
        y.push_back(x.back() + 1 + static_cast<long>(rng() % 3));
        d.push_back(step);
        step *= 2 + static_cast<long>(rng() % 20);
      }
      GridSpec g;
      try {
        g = fit_grid(cert, x, y, d);
      } catch (const GridError&) {
        continue;
      }
      IntVector w;
      try {
        w = solve_in_grid(a, cert, g);
      } catch (const GridError& e) {
        // Only an improper grid can fold a pair onto a lower level.
        CHECK_MESSAGE(!is_proper(g), e.what());
        continue;
      }
      ++built;
      CHECK(in_nullspace(a, to_rational(w)));
      for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) {
          CHECK(w[i] != w[j]);
          const auto t = unrestriction_time(cert, i, j);
          const auto level = cert.z[t][i] == 0 ? locate(g, w[i], w[j]) : locate(g, w[j], w[i]);
          CHECK(level == t);
        }
    }
  CHECK(built > 40);
}

TEST_CASE("monochromatic grid search") {
  const auto constant = edge_coloring(parse_coloring("const"));
  const auto one = find_mono_grid(constant, 3, 1, ints({1}));
  REQUIRE(one.grid);
  CHECK(one.nodes < 100);

  const EdgeColoring rainbow = [](std::int64_t u, std::int64_t v) {
    return Color::numeric(std::min(u, v) * 1'000'000 + std::max(u, v));
  };
  const auto none = find_mono_grid(rainbow, 80, 2, ints({1, 1}));
  CHECK_FALSE(none.grid);
  CHECK(none.reason.find("budget") == std::string::npos);

  const auto phi = edge_coloring(parse_coloring("phi:p=3"));
  const auto found = find_mono_grid(phi, 10'000, 2, ints({1, 1}), Budget::from_millis(60'000));
  REQUIRE(found.grid);
  const GridSpec& g = *found.grid;
  validate(g);
  CHECK(is_proper(g));
  CHECK(g.B(1) >= 1);
  CHECK(g.B(2) >= 1);
  for (const auto& p : grid_points(g)) {
    CHECK(p.u >= 1);
    CHECK(p.v <= 10'000);
    CHECK(phi(p.u.get_si(), p.v.get_si()) == found.color);
  }
}

TEST_CASE("pipeline") {
  const auto c = pipeline_witness(testing::wxyz(), parse_coloring("const"), 100);
  REQUIRE(c.witness);
  CHECK(verify_witness(testing::wxyz(), edge_coloring(parse_coloring("const")), c.witness->x, c.witness->color));

  const auto phi = pipeline_witness(testing::wxyz(), parse_coloring("phi:p=3"), 10'000, Budget::from_millis(60'000));
  REQUIRE(phi.witness);
  REQUIRE(phi.grid);
  REQUIRE(phi.certificate);
  const auto& x = phi.witness->x;
  CHECK(oracle::solves({{1, -1, 1, -1}}, {x.begin(), x.end()}));
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      CHECK(x[i] != x[j]);
      CHECK(Color::numeric(oracle::last_digit(3, std::abs(x[i] - x[j]))) == phi.witness->color);
    }

  const auto amean = pipeline_witness(IntMatrix{{1, 1, -2}}, parse_coloring("const"), 100);
  CHECK_FALSE(amean.witness);
  CHECK(amean.stage == "certificate");

  CHECK_THROWS(pipeline_witness(testing::wxyz(), parse_coloring("h:p=5"), 100));
}
