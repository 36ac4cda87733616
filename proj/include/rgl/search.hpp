#pragma once

#include "rgl/budget.hpp"
#include "rgl/colorings.hpp"
#include "rgl/ratmath.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rgl {

using Point = std::vector<std::int64_t>;

/// A verified monochromatic solution.
struct Witness {
  Point x;
  Color color;
  std::string coloring;  // canonical coloring string, or a label for explicit tables
  std::int64_t N = 0;
};

/// Called on every full solution in lexicographic order; return false to stop.
using SolutionVisitor = std::function<bool(std::span<const std::int64_t>)>;
/// Called after each new coordinate is fixed (prefix includes it); return
/// false to prune the subtree.
using PrefixFilter = std::function<bool(std::span<const std::int64_t>)>;

/// Backtracking enumeration of x in [1..N]^n with A x = 0, pruned by per-row
/// interval bounds. Throws std::overflow_error if the coefficients times N do
/// not fit comfortably in 64 bits.
void enumerate_solutions(const IntMatrix& a, std::int64_t N, bool distinct, const SolutionVisitor& visit,
                         const PrefixFilter& filter = {});

std::vector<Point> solutions(const IntMatrix& a, std::int64_t N, bool distinct);

/// Exact re-check of a candidate witness: A x = 0, entries distinct and in
/// [1..N], every edge colored `color`.
bool verify_witness(const IntMatrix& a, const EdgeColoring& coloring, std::span<const std::int64_t> x,
                    const Color& color);
bool verify_hyper_witness(const IntMatrix& a, const ColoringSpec& spec, std::span<const std::int64_t> x,
                          const Color& color);

/// Lexicographically least monochromatic distinct-valued solution in [1..N].
std::optional<Witness> find_mono_solution(const IntMatrix& a, const ColoringSpec& spec, std::int64_t N);
std::optional<Witness> find_mono_solution(const IntMatrix& a, const EdgeColoring& coloring,
                                          const std::string& label, std::int64_t N);

/// True iff no monochromatic distinct-valued solution exists in [1..N].
bool verify_avoidance(const IntMatrix& a, const ColoringSpec& spec, std::int64_t N);

/// Same as find_mono_solution, but every r-subset of the solution values must
/// share one color under an r-set coloring. Needs at least r + 1 columns.
std::optional<Witness> find_mono_hyper(const IntMatrix& a, const ColoringSpec& spec, std::int64_t N);

/// Explicit coloring of the edges of K_N on vertices 1..N.
class EdgeTable {
 public:
  EdgeTable() = default;
  explicit EdgeTable(std::int64_t n) : n_(n), colors_(static_cast<std::size_t>(n * (n - 1) / 2), 0) {}

  std::int64_t order() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return colors_.size(); }
  /// Index of edge {u, v}, 1 <= u < v <= N, in lexicographic pair order.
  std::size_t index(std::int64_t u, std::int64_t v) const;
  int at(std::int64_t u, std::int64_t v) const { return colors_[index(u, v)]; }
  void set(std::int64_t u, std::int64_t v, int c) { colors_[index(u, v)] = c; }
  int& operator[](std::size_t e) { return colors_[e]; }
  int operator[](std::size_t e) const { return colors_[e]; }

  EdgeColoring as_coloring() const;

 private:
  std::int64_t n_ = 0;
  std::vector<int> colors_;
};

struct ThresholdVerdict {
  std::int64_t N = 0;
  bool forced = false;                 // every coloring has a monochromatic solution
  std::optional<EdgeTable> avoiding;   // counterexample when not forced
};

struct ThresholdReport {
  std::vector<ThresholdVerdict> verdicts;
  std::optional<std::int64_t> first_forced;
};

struct ThresholdOptions {
  std::int64_t max_N = 7;
  std::uint64_t max_colorings = std::uint64_t{1} << 24;  // cap on r^C(N,2)
};

/// For each N <= N_max decides whether every r-coloring of the edges of K_N
/// admits a monochromatic distinct-valued solution. Complete search with
/// color-symmetry breaking. Throws std::length_error when r^C(N,2) exceeds
/// the configured cap.
ThresholdReport exhaustive_threshold(const IntMatrix& a, int colors, std::int64_t N_max,
                                     const ThresholdOptions& opts = {});

/// Independent check that `table` leaves no distinct-valued solution in
/// [1..N] monochromatic.
bool table_avoids(const IntMatrix& a, const EdgeTable& table);

}  // namespace rgl
