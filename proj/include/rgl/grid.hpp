#pragma once

#include "rgl/budget.hpp"
#include "rgl/certs.hpp"
#include "rgl/colorings.hpp"
#include "rgl/ratmath.hpp"
#include "rgl/search.hpp"

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rgl {

class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Hierarchical grid of depth n. Vectors x, y, b, d hold levels 1..n at
/// positions 0..n-1; c holds c(0)..c(n). d(n+1) is taken to be 0.
struct GridSpec {
  std::size_t n = 0;
  IntVector x, y, b, c, d;

  const Integer& X(std::size_t k) const { return x[k - 1]; }
  const Integer& Y(std::size_t k) const { return y[k - 1]; }
  const Integer& B(std::size_t k) const { return b[k - 1]; }
  const Integer& C(std::size_t k) const { return c[k]; }
  Integer D(std::size_t k) const { return k > n ? Integer(0) : d[k - 1]; }
  /// Offsets at level k range over [-r, r]; r = c(k) below the top, 0 at level n.
  Integer offset_radius(std::size_t k) const { return k == n ? Integer(0) : c[k]; }

  bool operator==(const GridSpec&) const = default;
};

/// Throws GridError naming the first violated constraint: shape, positivity,
/// d(k) | d(k+1), or x(k)b(k), y(k)b(k) <= c(k-1) for k >= 2.
void validate(const GridSpec& spec);

/// c(0) value that makes the k = 1 capacity constraint vacuous.
Integer default_c0(const GridSpec& spec);

struct GridPoint {
  Integer u, v;
  std::size_t level = 0;
  std::vector<bool> history;  // history[l-1] true when h(l) = y(l)
  Integer i, j;
};

/// Every point of every level, ordered by level, history, then offsets.
/// Throws std::length_error past max_points.
std::vector<GridPoint> grid_points(const GridSpec& spec, std::size_t max_points = 5'000'000);

/// Points are ordered pairs, and for each depth k the representations
/// sum_{l<=k} h(l)d(l) + i d(k+1) are pairwise distinct.
bool is_proper(const GridSpec& spec, std::size_t max_representations = 5'000'000);

/// Least level at which (u, v) is a point of the grid.
std::optional<std::size_t> locate(const GridSpec& spec, const Integer& u, const Integer& v);

/// Componentwise least b with b(T) >= |z_T| + 1 and
/// b(t) >= (|z_t| + 1) y(t) + c(t) d(t+1) / d(t), computed back to front.
IntVector required_b(const GCCCertificate& cert, const IntVector& y, const IntVector& c, const IntVector& d);

/// Smallest capacities that carry the certificate: b from the recursion and
/// c(k-1) = max(x(k), y(k)) b(k), with c(n) = b(n).
GridSpec fit_grid(const GCCCertificate& cert, const IntVector& x, const IntVector& y, const IntVector& d);

/// w = sum_t d(t) (x(t) 1 + (y(t) - x(t)) z_t). Checks the certificate, the
/// capacities, integrality, distinctness, and that each pair of entries sits
/// at its unrestriction level. Throws GridError when any of these fail.
IntVector solve_in_grid(const IntMatrix& a, const GCCCertificate& cert, const GridSpec& spec);

struct GridSearchResult {
  std::optional<GridSpec> grid;
  Color color;
  std::string reason;
  std::uint64_t nodes = 0;
};

/// Bounded search for a proper grid with all coordinates in [1..Q] whose
/// points share one color, using c(k) = max(b(k), x(k+1)b(k+1), y(k+1)b(k+1)).
GridSearchResult find_mono_grid(const EdgeColoring& coloring, std::int64_t Q, std::size_t n, const IntVector& b,
                                const Budget& budget = {});

/// Same search with capacities fitted to a strong certificate, d(1) a
/// multiple of d1_step, and an extra acceptance test on each candidate.
GridSearchResult find_mono_grid_for(const GCCCertificate& cert, const EdgeColoring& coloring, std::int64_t Q,
                                    std::int64_t d1_step, const Budget& budget,
                                    const std::function<bool(const GridSpec&)>& accept = {});

class PipelineError : public std::runtime_error {
 public:
  PipelineError(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

struct PipelineResult {
  std::optional<Witness> witness;
  std::optional<GCCCertificate> certificate;
  std::optional<GridSpec> grid;
  std::string stage;   // "certificate", "grid" or "solve" when nothing was produced
  std::string reason;
};

/// classify -> strong certificate -> monochromatic grid -> solve_in_grid,
/// with the final witness re-verified independently. Errors raised inside a
/// stage are rethrown as PipelineError carrying the stage name.
PipelineResult pipeline_witness(const IntMatrix& a, const ColoringSpec& spec, std::int64_t Q,
                                const Budget& budget = {});

}  // namespace rgl
