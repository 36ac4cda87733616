#pragma once

#include "rgl/budget.hpp"
#include "rgl/ratmath.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rgl {

enum class Flavor { cc, weak, strong };

std::string to_string(Flavor f);
Flavor parse_flavor(const std::string& s);

/// Simple undirected graph on vertices 0..n-1 stored as an upper triangle.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), adj_(n * (n > 0 ? n - 1 : 0) / 2, false) {}

  static Graph complete(std::size_t n);
  /// Union of cliques, one per block; labels[i] is the block of vertex i.
  static Graph from_blocks(const std::vector<std::size_t>& labels);

  std::size_t order() const noexcept { return n_; }
  bool has(std::size_t i, std::size_t j) const { return i != j && adj_[index(i, j)]; }
  void add(std::size_t i, std::size_t j);
  void remove(std::size_t i, std::size_t j);

  bool edgeless() const;
  bool is_complete() const;
  bool subgraph_of(const Graph& other) const;
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;

  bool operator==(const Graph&) const = default;

 private:
  std::size_t index(std::size_t i, std::size_t j) const;
  std::size_t n_ = 0;
  std::vector<bool> adj_;
};

/// Classical columns condition certificate. z[t-1] and R[t-1] hold step t.
struct CCCertificate {
  std::size_t n = 0;
  std::vector<RatVector> z;
  std::vector<std::vector<bool>> R;

  std::size_t T() const noexcept { return z.size(); }
};

/// Graph columns condition certificate. z[t] and R[t] hold step t = 0..T,
/// with z[0] the all-ones vector and R[0] complete.
struct GCCCertificate {
  std::size_t n = 0;
  std::vector<RatVector> z;
  std::vector<Graph> R;
  Flavor flavor = Flavor::weak;

  std::size_t T() const noexcept { return z.empty() ? 0 : z.size() - 1; }
  /// max over t of the sup norm of z_t.
  Rational max_norm() const;
};

struct Violation {
  std::string condition;  // "1", "2", "3", "4", "1*", "2*", "nullspace", "monotone", "R0", "shape"
  std::size_t time = 0;
  std::optional<std::size_t> i;  // 0-based column indices
  std::optional<std::size_t> j;
  std::string detail;
};

struct VerificationReport {
  Flavor flavor = Flavor::cc;
  std::vector<Violation> violations;

  bool accepted() const noexcept { return violations.empty(); }
};

std::string describe(const Violation& v);

VerificationReport verify_cc(const IntMatrix& a, const CCCertificate& cert);
VerificationReport verify_gcc(const IntMatrix& a, const GCCCertificate& cert, Flavor flavor);
inline VerificationReport verify_gcc(const IntMatrix& a, const GCCCertificate& cert) {
  return verify_gcc(a, cert, cert.flavor);
}

/// First time t at which the pair {i, j} leaves the restriction graphs.
std::size_t unrestriction_time(const GCCCertificate& cert, std::size_t i, std::size_t j);

struct CcSearchOptions {
  std::size_t max_columns = 10;
};

/// Complete decision of the columns condition. Throws std::length_error
/// ("instance too large") beyond the column limit.
std::optional<CCCertificate> search_cc(const IntMatrix& a, const CcSearchOptions& opts = {});

struct GccSearchBounds {
  std::size_t max_steps = 4;  // T_max
  Budget budget{};
};

struct GccSearchResult {
  std::optional<GCCCertificate> certificate;
  std::string reason;  // why nothing was returned
  std::size_t nodes = 0;
};

/// Bounded search for a weak or strong graph columns certificate. A missing
/// certificate means none exists within the bounds, not that none exists.
GccSearchResult search_gcc(const IntMatrix& a, Flavor flavor, const GccSearchBounds& bounds = {});

}  // namespace rgl
