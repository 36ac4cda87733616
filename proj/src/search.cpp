#include "rgl/search.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <stdexcept>

namespace rgl {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

struct SmallSystem {
  std::size_t rows = 0, cols = 0;
  std::vector<std::int64_t> coef;  // row-major
  std::vector<std::int64_t> lo, hi;  // suffix bounds, (cols + 1) per row

  std::int64_t at(std::size_t r, std::size_t c) const { return coef[r * cols + c]; }
};

SmallSystem narrow(const IntMatrix& a, std::int64_t N) {
  if (N < 1) throw std::invalid_argument("search bound N must be at least 1");
  SmallSystem s;
  s.rows = a.rows();
  s.cols = a.cols();
  s.coef.resize(s.rows * s.cols);
  const Integer limit = Integer(1) << 62;
  for (std::size_t r = 0; r < s.rows; ++r) {
    Integer row_mass = 0;
    for (std::size_t c = 0; c < s.cols; ++c) {
      row_mass += abs(a(r, c)) * N;
      if (row_mass >= limit) throw std::overflow_error("coefficients too large for the enumeration bound");
      s.coef[r * s.cols + c] = a(r, c).get_si();
    }
  }
  s.lo.assign(s.rows * (s.cols + 1), 0);
  s.hi.assign(s.rows * (s.cols + 1), 0);
  for (std::size_t r = 0; r < s.rows; ++r) {
    for (std::size_t c = s.cols; c-- > 0;) {
      const std::int64_t v1 = s.at(r, c), vN = s.at(r, c) * N;
      s.lo[r * (s.cols + 1) + c] = s.lo[r * (s.cols + 1) + c + 1] + std::min(v1, vN);
      s.hi[r * (s.cols + 1) + c] = s.hi[r * (s.cols + 1) + c + 1] + std::max(v1, vN);
    }
  }
  return s;
}

class Enumerator {
 public:
  Enumerator(const SmallSystem& sys, std::int64_t N, bool distinct, const SolutionVisitor& visit,
             const PrefixFilter& filter)
      : sys_(sys), N_(N), distinct_(distinct), visit_(visit), filter_(filter),
        x_(sys.cols), partial_(sys.rows, 0) {}

  void run() { dfs(0); }

 private:
  bool dfs(std::size_t k) {
    if (k == sys_.cols) return visit_(std::span<const std::int64_t>(x_.data(), x_.size()));

    std::int64_t lo = 1, hi = N_;
    for (std::size_t r = 0; r < sys_.rows && lo <= hi; ++r) {
      const std::int64_t a = sys_.at(r, k);
      const std::int64_t rest_lo = sys_.lo[r * (sys_.cols + 1) + k + 1];
      const std::int64_t rest_hi = sys_.hi[r * (sys_.cols + 1) + k + 1];
      const std::int64_t s = partial_[r];
      if (a == 0) {
        if (s + rest_lo > 0 || s + rest_hi < 0) return true;
        continue;
      }
      // a * x must lie in [-s - rest_hi, -s - rest_lo]
      std::int64_t from = -s - rest_hi, to = -s - rest_lo;
      if (a > 0) {
        lo = std::max(lo, ceil_div(from, a));
        hi = std::min(hi, floor_div(to, a));
      } else {
        lo = std::max(lo, ceil_div(to, a));
        hi = std::min(hi, floor_div(from, a));
      }
    }

    for (std::int64_t v = lo; v <= hi; ++v) {
      if (distinct_ && std::find(x_.begin(), x_.begin() + static_cast<std::ptrdiff_t>(k), v) !=
                           x_.begin() + static_cast<std::ptrdiff_t>(k))
        continue;
      x_[k] = v;
      if (filter_ && !filter_(std::span<const std::int64_t>(x_.data(), k + 1))) continue;
      for (std::size_t r = 0; r < sys_.rows; ++r) partial_[r] += sys_.at(r, k) * v;
      const bool go_on = dfs(k + 1);
      for (std::size_t r = 0; r < sys_.rows; ++r) partial_[r] -= sys_.at(r, k) * v;
      if (!go_on) return false;
    }
    return true;
  }

  const SmallSystem& sys_;
  std::int64_t N_;
  bool distinct_;
  const SolutionVisitor& visit_;
  const PrefixFilter& filter_;
  Point x_;
  std::vector<std::int64_t> partial_;
};

template <class Fn>
void for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!fn(idx)) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool solves_exactly(const IntMatrix& a, std::span<const std::int64_t> x) {
  if (x.size() != a.cols()) return false;
  IntVector v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = static_cast<long>(x[i]);
  for (const auto& e : multiply(a, v))
    if (e != 0) return false;
  return true;
}

bool pairwise_distinct(std::span<const std::int64_t> x) {
  std::set<std::int64_t> seen(x.begin(), x.end());
  return seen.size() == x.size();
}

}  // namespace

void enumerate_solutions(const IntMatrix& a, std::int64_t N, bool distinct, const SolutionVisitor& visit,
                         const PrefixFilter& filter) {
  if (a.empty()) throw std::invalid_argument("enumerate_solutions on an empty matrix");
  const SmallSystem sys = narrow(a, N);
  Enumerator(sys, N, distinct, visit, filter).run();
}

std::vector<Point> solutions(const IntMatrix& a, std::int64_t N, bool distinct) {
  std::vector<Point> out;
  enumerate_solutions(a, N, distinct, [&](std::span<const std::int64_t> x) {
    out.emplace_back(x.begin(), x.end());
    return true;
  });
  return out;
}

bool verify_witness(const IntMatrix& a, const EdgeColoring& coloring, std::span<const std::int64_t> x,
                    const Color& color) {
  if (x.size() < 2 || !pairwise_distinct(x) || !solves_exactly(a, x)) return false;
  for (auto v : x)
    if (v < 1) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j)
      if (!(coloring(x[i], x[j]) == color)) return false;
  return true;
}

bool verify_hyper_witness(const IntMatrix& a, const ColoringSpec& spec, std::span<const std::int64_t> x,
                          const Color& color) {
  const std::size_t r = spec.uniformity();
  if (x.size() < r + 1 || !pairwise_distinct(x) || !solves_exactly(a, x)) return false;
  bool ok = true;
  for_each_subset(x.size(), r, [&](const std::vector<std::size_t>& idx) {
    Point pts;
    for (auto i : idx) pts.push_back(x[i]);
    std::sort(pts.begin(), pts.end());
    ok = hyper_color(spec, pts) == color;
    return ok;
  });
  return ok;
}

std::optional<Witness> find_mono_solution(const IntMatrix& a, const EdgeColoring& coloring,
                                          const std::string& label, std::int64_t N) {
  if (a.cols() < 2) throw std::invalid_argument("need at least two variables");
  Color reference;
  std::optional<Witness> found;
  PrefixFilter filter = [&](std::span<const std::int64_t> p) {
    const std::size_t k = p.size();
    if (k < 2) return true;
    if (k == 2) {
      reference = coloring(p[0], p[1]);
      return true;
    }
    for (std::size_t i = 0; i + 1 < k; ++i)
      if (!(coloring(p[i], p[k - 1]) == reference)) return false;
    return true;
  };
  enumerate_solutions(
      a, N, true,
      [&](std::span<const std::int64_t> x) {
        found = Witness{Point(x.begin(), x.end()), reference, label, N};
        return false;
      },
      filter);
  if (found && !verify_witness(a, coloring, found->x, found->color))
    throw std::logic_error("witness failed re-verification");
  return found;
}

std::optional<Witness> find_mono_solution(const IntMatrix& a, const ColoringSpec& spec, std::int64_t N) {
  if (spec.arity() != Arity::edge) throw std::invalid_argument(to_string(spec) + " is not an edge coloring");
  return find_mono_solution(a, edge_coloring(spec), to_string(spec), N);
}

bool verify_avoidance(const IntMatrix& a, const ColoringSpec& spec, std::int64_t N) {
  return !find_mono_solution(a, spec, N).has_value();
}

std::optional<Witness> find_mono_hyper(const IntMatrix& a, const ColoringSpec& spec, std::int64_t N) {
  if (spec.arity() == Arity::vertex) throw std::invalid_argument(to_string(spec) + " is a vertex coloring");
  if (spec.arity() == Arity::edge && spec.family != Family::constant)
    throw std::invalid_argument(to_string(spec) + " is an edge coloring; use find_mono_solution");
  const std::size_t r = spec.uniformity();
  if (a.cols() < r + 1)
    throw std::invalid_argument("an r-set coloring needs at least r + 1 = " + std::to_string(r + 1) + " variables");

  Color reference;
  std::optional<Witness> found;
  Point pts(r);
  PrefixFilter filter = [&](std::span<const std::int64_t> p) {
    const std::size_t k = p.size();
    if (k < r) return true;
    bool ok = true;
    for_each_subset(k - 1, r - 1, [&](const std::vector<std::size_t>& idx) {
      for (std::size_t q = 0; q + 1 < r; ++q) pts[q] = p[idx[q]];
      pts[r - 1] = p[k - 1];
      std::sort(pts.begin(), pts.end());
      const Color c = hyper_color(spec, pts);
      if (k == r) reference = c;
      ok = c == reference;
      return ok;
    });
    return ok;
  };
  enumerate_solutions(
      a, N, true,
      [&](std::span<const std::int64_t> x) {
        found = Witness{Point(x.begin(), x.end()), reference, to_string(spec), N};
        return false;
      },
      filter);
  if (found && !verify_hyper_witness(a, spec, found->x, found->color))
    throw std::logic_error("hyper witness failed re-verification");
  return found;
}

// ---------------------------------------------------------------- thresholds

std::size_t EdgeTable::index(std::int64_t u, std::int64_t v) const {
  if (u > v) std::swap(u, v);
  if (u < 1 || v > n_ || u == v) throw std::out_of_range("edge outside K_N");
  return static_cast<std::size_t>((u - 1) * n_ - (u - 1) * u / 2 + (v - u - 1));
}

EdgeColoring EdgeTable::as_coloring() const {
  return [table = *this](std::int64_t u, std::int64_t v) { return Color::numeric(table.at(u, v)); };
}

bool table_avoids(const IntMatrix& a, const EdgeTable& table) {
  bool avoids = true;
  enumerate_solutions(a, table.order(), true, [&](std::span<const std::int64_t> x) {
    const int c = table.at(x[0], x[1]);
    bool mono = true;
    for (std::size_t i = 0; i < x.size() && mono; ++i)
      for (std::size_t j = i + 1; j < x.size() && mono; ++j) mono = table.at(x[i], x[j]) == c;
    if (mono) avoids = false;
    return avoids;
  });
  return avoids;
}

namespace {

class AvoidingColoringSearch {
 public:
  AvoidingColoringSearch(const IntMatrix& a, std::int64_t N, int colors) : table_(N), colors_(colors) {
    std::set<std::vector<std::int64_t>> sets;
    enumerate_solutions(a, N, true, [&](std::span<const std::int64_t> x) {
      std::vector<std::int64_t> s(x.begin(), x.end());
      std::sort(s.begin(), s.end());
      sets.insert(std::move(s));
      return true;
    });
    closing_.resize(table_.edge_count());
    for (const auto& s : sets) {
      std::vector<std::size_t> edges;
      for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j) edges.push_back(table_.index(s[i], s[j]));
      const std::size_t last = *std::max_element(edges.begin(), edges.end());
      closing_[last].push_back(std::move(edges));
    }
  }

  std::optional<EdgeTable> run() {
    if (dfs(0, -1)) return table_;
    return std::nullopt;
  }

 private:
  // Colors are interchangeable, so a new edge may use at most one fresh color.
  bool dfs(std::size_t e, int max_used) {
    if (e == table_.edge_count()) return true;
    const int limit = std::min(colors_ - 1, max_used + 1);
    for (int c = 0; c <= limit; ++c) {
      table_[e] = c;
      bool clash = false;
      for (const auto& edges : closing_[e]) {
        clash = std::all_of(edges.begin(), edges.end(), [&](std::size_t f) { return table_[f] == c; });
        if (clash) break;
      }
      if (!clash && dfs(e + 1, std::max(max_used, c))) return true;
    }
    table_[e] = 0;
    return false;
  }

  EdgeTable table_;
  int colors_;
  std::vector<std::vector<std::vector<std::size_t>>> closing_;
};

}  // namespace

ThresholdReport exhaustive_threshold(const IntMatrix& a, int colors, std::int64_t N_max,
                                     const ThresholdOptions& opts) {
  if (colors < 1) throw std::invalid_argument("need at least one color");
  if (N_max < 1) throw std::invalid_argument("N_max must be at least 1");
  if (N_max > opts.max_N)
    throw std::length_error("budget exceeded: N_max " + std::to_string(N_max) + " above cap " +
                            std::to_string(opts.max_N));
  {
    const std::int64_t edges = N_max * (N_max - 1) / 2;
    std::uint64_t count = 1;
    for (std::int64_t e = 0; e < edges; ++e) {
      count *= static_cast<std::uint64_t>(colors);
      if (count > opts.max_colorings)
        throw std::length_error("budget exceeded: r^C(N,2) above " + std::to_string(opts.max_colorings));
    }
  }

  ThresholdReport rep;
  for (std::int64_t N = 1; N <= N_max; ++N) {
    ThresholdVerdict v;
    v.N = N;
    v.avoiding = AvoidingColoringSearch(a, N, colors).run();
    v.forced = !v.avoiding.has_value();
    if (v.avoiding && !table_avoids(a, *v.avoiding)) throw std::logic_error("avoiding coloring failed re-check");
    if (v.forced && !rep.first_forced) rep.first_forced = N;
    rep.verdicts.push_back(std::move(v));
  }
  return rep;
}

}  // namespace rgl
