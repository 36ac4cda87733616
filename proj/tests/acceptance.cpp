// One PASS/FAIL line per acceptance criterion. Each criterion has a pinned
// wall-clock limit; exceeding it counts as a failure.

#include "oracles.hpp"

#include "rgl/certs.hpp"
#include "rgl/colorings.hpp"
#include "rgl/grid.hpp"
#include "rgl/reduction.hpp"
#include "rgl/screens.hpp"
#include "rgl/search.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace rgl;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream notes;

  void expect(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      notes << " [failed: " << what << "]";
    }
  }
};

RatVector rat(std::initializer_list<long> v) {
  RatVector out;
  for (long e : v) out.emplace_back(e);
  return out;
}

IntVector ints(std::initializer_list<long> v) {
  IntVector out;
  for (long e : v) out.emplace_back(e);
  return out;
}

const IntMatrix kEx6{{1, -1, 0, -1, 4, -3}, {0, 0, 1, -1, 1, -1}};
const IntMatrix kEx8{{1, -1, 0, 0, 0, 0, -1, 1}, {0, 0, 1, -1, 0, 0, -1, 1}, {0, 0, 0, 0, 1, -1, -1, 1}};
const IntMatrix kWxyz{{1, -1, 1, -1}};

GCCCertificate ex6_cert() {
  GCCCertificate c;
  c.n = 6;
  c.flavor = Flavor::strong;
  c.z = {rat({1, 1, 1, 1, 1, 1}), rat({1, 1, 0, 0, 0, 0}), rat({1, 0, 1, 1, 0, 0}), rat({3, 0, 1, 0, 0, 1})};
  Graph r2(6);
  r2.add(2, 3);
  r2.add(4, 5);
  c.R = {Graph::complete(6), Graph::from_blocks({0, 0, 1, 1, 1, 1}), r2, Graph(6)};
  return c;
}

GCCCertificate ex8_cert() {
  GCCCertificate c;
  c.n = 8;
  c.flavor = Flavor::weak;
  c.z = {rat({1, 1, 1, 1, 1, 1, 1, 1}), rat({1, 1, 1, 1, 0, 0, 0, 0}), rat({1, 1, 0, 0, 1, 1, 0, 0}),
         rat({1, 0, 1, 0, 1, 0, 3, 2})};
  c.R = {Graph::complete(8), Graph::from_blocks({0, 0, 0, 0, 1, 1, 1, 1}),
         Graph::from_blocks({0, 0, 1, 1, 2, 2, 3, 3}), Graph(8)};
  return c;
}

void c1(Outcome& o) {
  const auto cert = ex6_cert();
  o.expect(verify_gcc(kEx6, cert, Flavor::weak).accepted(), "weak verification");
  o.expect(verify_gcc(kEx6, cert, Flavor::strong).accepted(), "strong verification");
}

void c2(Outcome& o) {
  const auto cert = ex8_cert();
  o.expect(verify_gcc(kEx8, cert, Flavor::weak).accepted(), "weak accepted");
  const auto strong = verify_gcc(kEx8, cert, Flavor::strong);
  o.expect(!strong.accepted(), "strong rejected");
  if (strong.accepted()) return;
  const auto& v = strong.violations.front();
  o.expect(v.i == std::optional<std::size_t>(6) && v.j == std::optional<std::size_t>(7), "violation at pair {7,8}");
  o.notes << " first violation: " << describe(v);
}

void c3(Outcome& o) {
  o.expect(search_cc(IntMatrix{{1, 1, -1}}).has_value(), "[[1,1,-1]] has a certificate");
  o.expect(!search_cc(IntMatrix{{1, 1, -3}}).has_value(), "[[1,1,-3]] has none");
  int checked = 0, agree = 0;
  for (int n : {3, 4}) {
    std::vector<long long> a(n, -3);
    for (;;) {
      IntMatrix m(1, n);
      for (int i = 0; i < n; ++i) m(0, i) = static_cast<long>(a[i]);
      const auto got = search_cc(m);
      const bool ok = got.has_value() == oracle::columns_condition_1row(a) && (!got || verify_cc(m, *got).accepted());
      ++checked;
      agree += ok;
      int i = 0;
      while (i < n) {
        a[i] = a[i] == -1 ? 1 : a[i] + 1;
        if (a[i] <= 3) break;
        a[i++] = -3;
      }
      if (i == n) break;
    }
  }
  o.expect(checked == 6 * 6 * 6 + 6 * 6 * 6 * 6, "matrix count");
  o.expect(agree == checked, "agreement with oracle");
  o.notes << " " << agree << "/" << checked << " verdicts agree";
}

void c4(Outcome& o) {
  o.expect(!column_sum_zero(IntMatrix{{1, 1, -1}}), "[[1,1,-1]] rejected");
  const auto alt = zero_sum_partition(ints({1, -1, 1, -1}));
  const auto alt_splits = oracle::zero_sum_splits({{1, -1, 1, -1}});
  o.expect(alt.has_value(), "(1,-1,1,-1) has a partition");
  if (alt) {
    unsigned mask = 0;
    for (auto i : *alt) mask |= 1u << i;
    o.expect(std::find(alt_splits.begin(), alt_splits.end(), mask) != alt_splits.end(), "partition is valid");
  }
  o.expect(!zero_sum_partition(ints({1, 1, -2})).has_value(), "(1,1,-2) has none");
  o.expect(oracle::zero_sum_splits({{1, 1, -2}}).empty(), "oracle agrees on (1,1,-2)");
}

void c5(Outcome& o) {
  for (std::int64_t p : {3, 5, 7}) {
    const auto g = edge_coloring(parse_coloring("g:p=" + std::to_string(p)));
    std::set<Color> used;
    bool triangles = true;
    for (std::int64_t x = 1; x <= 60; ++x)
      for (std::int64_t y = x + 1; y <= 60; ++y) {
        const Color c = g(x, y);
        used.insert(c);
        for (std::int64_t z = y + 1; z <= 60; ++z)
          if (g(x, z) == c && g(y, z) == c) triangles &= c == Color::red() || c == Color::blue();
      }
    o.expect(triangles, "g_" + std::to_string(p) + " triangles red or blue");
    o.expect(used.size() <= static_cast<std::size_t>(p), "g_" + std::to_string(p) + " color count");
    o.notes << " g_" << p << " uses " << used.size() << " colors;";
  }
  const auto f = edge_coloring(parse_coloring("f:n=3"));
  bool blue = true;
  for (std::int64_t x = 1; x <= 27; ++x)
    for (std::int64_t y = x + 1; y <= 27; ++y)
      for (std::int64_t z = y + 1; z <= 27; ++z) {
        const Color c = f(x, y);
        if (f(x, z) == c && f(y, z) == c) blue &= c == Color::blue();
      }
  o.expect(blue, "f_3 triangles blue");
  const auto f3 = parse_coloring("f3:n=3");
  bool tetra = true;
  for (std::int64_t a = 1; a <= 30; ++a)
    for (std::int64_t b = a + 1; b <= 30; ++b)
      for (std::int64_t c = b + 1; c <= 30; ++c) {
        const std::array<std::int64_t, 3> abc{a, b, c};
        const Color col = hyper_color(f3, abc);
        for (std::int64_t d = c + 1; d <= 30; ++d) {
          const std::array<std::int64_t, 3> abd{a, b, d}, acd{a, c, d}, bcd{b, c, d};
          if (hyper_color(f3, abd) == col && hyper_color(f3, acd) == col && hyper_color(f3, bcd) == col)
            tetra &= col == Color::blue();
        }
      }
  o.expect(tetra, "f3_3 4-sets blue");
}

void c6(Outcome& o) {
  const auto timed = [&](const std::string& what, const std::function<bool()>& check) {
    const auto start = std::chrono::steady_clock::now();
    o.expect(check(), what);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.expect(secs < 120, what + " within 120 s");
    char buf[64];
    std::snprintf(buf, sizeof buf, " %.2fs;", secs);
    o.notes << " " << what << buf;
  };
  timed("phi_5 avoids [[1,1,-2]] to 500",
        [] { return verify_avoidance(IntMatrix{{1, 1, -2}}, parse_coloring("phi:p=5"), 500); });
  timed("chi avoids [[1,-1,2,-2]] to 300",
        [] { return verify_avoidance(IntMatrix{{1, -1, 2, -2}}, parse_coloring("chi:q=2,m=2"), 300); });
  timed("h_5 avoids [[1,-1,1,-1]] to 200", [] { return !find_mono_hyper(kWxyz, parse_coloring("h:p=5"), 200); });
  timed("g3_5 avoids [[1,1,1,-1]] to 150",
        [] { return !find_mono_hyper(IntMatrix{{1, 1, 1, -1}}, parse_coloring("g3:p=5"), 150); });
}

void c7(Outcome& o) {
  const auto phi = parse_coloring("phi:p=3");
  const auto w = find_mono_solution(kWxyz, phi, 200);
  o.expect(w.has_value(), "witness found");
  if (w) {
    const auto& x = w->x;
    bool ok = oracle::solves({{1, -1, 1, -1}}, {x.begin(), x.end()});
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = i + 1; j < x.size(); ++j)
        ok &= x[i] != x[j] && Color::numeric(oracle::last_digit(3, std::abs(x[i] - x[j]))) == w->color;
    o.expect(ok, "witness re-verified");
    o.notes << " witness (" << x[0] << "," << x[1] << "," << x[2] << "," << x[3] << ")";
  }

  // (p^{k+2} + 1) z_1 + (p^{k+1} + p) z_2 + p^2 z_3 with p = 3, k = 2.
  const auto cert = ex8_cert();
  const long p = 3, k = 2;
  long pk = 1;
  for (long i = 0; i < k; ++i) pk *= p;
  const std::array<long, 3> coef{pk * p * p + 1, pk * p + p, p * p};
  std::vector<long long> v(8, 0);
  for (std::size_t t = 0; t < 3; ++t)
    for (std::size_t i = 0; i < 8; ++i) v[i] += coef[t] * cert.z[t + 1][i].get_num().get_si();
  o.expect(v == std::vector<long long>{121, 112, 91, 82, 39, 30, 27, 18}, "explicit vector");
  o.expect(std::is_sorted(v.rbegin(), v.rend()) && std::adjacent_find(v.begin(), v.end()) == v.end(),
           "strictly decreasing");
  o.expect(oracle::solves({{1, -1, 0, 0, 0, 0, -1, 1}, {0, 0, 1, -1, 0, 0, -1, 1}, {0, 0, 0, 0, 1, -1, -1, 1}}, v),
           "solves rows 1-3");
  int ones = 0;
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = i + 1; j < 8; ++j) ones += edge_color(phi, v[i], v[j]) == Color::numeric(1);
  o.expect(ones == 28, "all 28 edges colored 1");
}

RatVector sample(std::mt19937& rng, const std::vector<RatVector>& basis) {
  std::uniform_int_distribution<int> coef(-20, 20);
  RatVector v(basis.front().size());
  for (const auto& b : basis) {
    const Rational kq(coef(rng), 1 + rng() % 5);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += kq * b[i];
  }
  for (auto& q : v) q.canonicalize();
  return v;
}

void c8(Outcome& o) {
  std::mt19937 rng(8);
  for (const IntMatrix* a : {&kEx6, &kWxyz}) {
    const auto pm = build_c(*a);
    const auto basis_a = nullspace_basis(*a), basis_c = nullspace_basis(pm.c);
    int forward = 0, backward = 0;
    for (int s = 0; s < 20; ++s) {
      const RatVector x = sample(rng, basis_a);
      const RatVector y = pair_vector(x);
      forward += in_nullspace(pm.c, y) && point_vector(pm, y, x[0]) == x;
      const RatVector y2 = sample(rng, basis_c);
      const RatVector x2 = point_vector(pm, y2, Rational(s));
      backward += in_nullspace(*a, x2) && pair_vector(x2) == y2;
    }
    o.expect(forward == 20 && backward == 20, "nullspace correspondence, n = " + std::to_string(a->cols()));
  }
  for (const IntMatrix* a : {&kWxyz, &kEx6}) {
    const auto r = wgcc_via_reduction(*a);
    o.expect(r.has_value(), "reduction certificate, n = " + std::to_string(a->cols()));
    if (!r) continue;
    o.expect(verify_gcc(*a, r->weak, Flavor::weak).accepted(), "transferred certificate verifies weak");
    o.expect(satisfies_difference_identity(build_c_sigma(*a, r->sigma), r->sigma, r->cc, r->weak),
             "difference identity");
  }
}

void c9(Outcome& o) {
  const auto cert = ex6_cert();
  const GridSpec g = fit_grid(cert, ints({1, 1, 1}), ints({2, 2, 2}), ints({1, 10, 100}));
  IntVector w;
  try {
    w = solve_in_grid(kEx6, cert, g);
  } catch (const std::exception& e) {
    o.expect(false, std::string("solve_in_grid: ") + e.what());
    return;
  }
  o.expect(w == ints({422, 112, 221, 121, 111, 211}), "w = (422,112,221,121,111,211)");
  o.expect(multiply(kEx6, w) == ints({0, 0}), "A w = 0");
  bool levels = true;
  for (std::size_t i = 0; i < 6; ++i)
    for (std::size_t j = i + 1; j < 6; ++j) {
      levels &= w[i] != w[j];
      const auto t = unrestriction_time(cert, i, j);
      const auto level = cert.z[t][i] == 0 ? locate(g, w[i], w[j]) : locate(g, w[j], w[i]);
      levels &= level == t;
    }
  o.expect(levels, "distinct entries at their unrestriction levels");

  const auto r = pipeline_witness(kWxyz, parse_coloring("phi:p=3"), 10'000, Budget::from_millis(90'000));
  o.expect(r.witness.has_value(), "pipeline witness at Q = 10^4");
  if (!r.witness) {
    o.notes << " stage " << r.stage << ": " << r.reason;
    return;
  }
  const auto& x = r.witness->x;
  bool ok = oracle::solves({{1, -1, 1, -1}}, {x.begin(), x.end()});
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      ok &= x[i] != x[j] && x[i] >= 1 && x[i] <= 10'000 &&
            Color::numeric(oracle::last_digit(3, std::abs(x[i] - x[j]))) == r.witness->color;
  o.expect(ok, "pipeline witness re-verified");
  o.notes << " pipeline witness (" << x[0] << "," << x[1] << "," << x[2] << "," << x[3] << ")";
}

void c10(Outcome& o) {
  const auto one = exhaustive_threshold(kWxyz, 1, 4);
  o.expect(one.first_forced == std::optional<std::int64_t>(4), "r = 1 first forced N is 4");
  const auto two = exhaustive_threshold(kWxyz, 2, 6);
  o.expect(!two.first_forced, "r = 2 not forced up to 6");
  for (const auto& v : two.verdicts) {
    o.expect(v.avoiding.has_value(), "avoiding coloring at N = " + std::to_string(v.N));
    if (!v.avoiding) continue;
    const auto table = *v.avoiding;
    const auto color = [&](long long a, long long b) { return static_cast<long long>(table.at(std::min(a, b), std::max(a, b))); };
    o.expect(oracle::mono_solutions({{1, -1, 1, -1}}, v.N, color).empty(), "re-verified at N = " + std::to_string(v.N));
    o.expect(table_avoids(kWxyz, table), "table_avoids at N = " + std::to_string(v.N));
  }
  if (!two.verdicts.empty() && two.verdicts.back().avoiding) {
    const auto& t = *two.verdicts.back().avoiding;
    o.notes << " N=6 avoiding coloring:";
    for (std::size_t e = 0; e < t.edge_count(); ++e) o.notes << t[e];
  }
}

struct Criterion {
  int id;
  const char* title;
  double limit_s;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "six-variable certificate accepted weak and strong", 1, c1},
      {2, "eight-variable certificate weak-only, violation at {7,8}", 1, c2},
      {3, "columns condition search matches ordered-partition oracle", 60, c3},
      {4, "sum-to-zero and zero-sum partition screens", 1, c4},
      {5, "coloring triangle and tetrahedron structure", 60, c5},
      {6, "avoidance at desk scale", 4 * 120, c6},
      {7, "positive witnesses under phi_3", 1, c7},
      {8, "reduction correspondence and transfer", 30, c8},
      {9, "grid solution and constructive pipeline", 120, c9},
      {10, "tiny exact thresholds", 300, c10},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_s) o.expect(false, "time limit");
    failures += !o.ok;
    std::printf("%s criterion %d: %s (%.3f s, limit %.0f s)%s\n", o.ok ? "PASS" : "FAIL", c.id, c.title, secs,
                c.limit_s, o.notes.str().c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
