#include "rgl/screens.hpp"

#include <functional>
#include <stdexcept>

namespace rgl {

std::string to_string(Classification c) {
  switch (c) {
    case Classification::not_graph_regular: return "not-graph-regular";
    case Classification::graph_regular: return "graph-regular";
    case Classification::unknown: return "unknown";
  }
  return "?";
}

bool column_sum_zero(const IntMatrix& a) {
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Integer s = 0;
    for (std::size_t c = 0; c < a.cols(); ++c) s += a(r, c);
    if (s != 0) return false;
  }
  return true;
}

std::optional<std::vector<std::size_t>> zero_sum_partition(const IntMatrix& a) {
  const std::size_t n = a.cols();
  const std::size_t m = a.rows();
  if (n < 2) return std::nullopt;

  IntVector total(m);
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < n; ++c) total[r] += a(r, c);

  // Depth-first over increasing index tuples visits subsets in lexicographic order.
  std::vector<std::size_t> chosen;
  IntVector sum(m);
  std::optional<std::vector<std::size_t>> found;
  std::function<bool(std::size_t)> dfs = [&](std::size_t from) {
    for (std::size_t c = from; c < n; ++c) {
      chosen.push_back(c);
      for (std::size_t r = 0; r < m; ++r) sum[r] += a(r, c);
      bool ok = chosen.size() < n;
      for (std::size_t r = 0; r < m && ok; ++r) ok = sum[r] == 0 && total[r] == 0;
      if (ok) {
        found = chosen;
        return true;
      }
      if (dfs(c + 1)) return true;
      for (std::size_t r = 0; r < m; ++r) sum[r] -= a(r, c);
      chosen.pop_back();
    }
    return false;
  };
  dfs(0);
  return found;
}

std::optional<std::vector<std::size_t>> zero_sum_partition(const IntVector& coefficients) {
  return zero_sum_partition(IntMatrix::from_rows({coefficients}));
}

ScreenReport classify(const IntMatrix& a, const ClassifyBounds& bounds) {
  if (a.cols() < 3)
    throw std::invalid_argument("a regularity instance needs at least three variables, got " +
                                std::to_string(a.cols()));
  for (std::size_t c = 0; c < a.cols(); ++c) {
    bool zero = true;
    for (std::size_t r = 0; r < a.rows(); ++r) zero = zero && a(r, c) == 0;
    if (zero) throw std::invalid_argument("column " + std::to_string(c + 1) + " is zero");
  }

  ScreenReport rep;
  rep.sum_to_zero = column_sum_zero(a);
  rep.zero_sum_partition = zero_sum_partition(a);
  if (!rep.sum_to_zero) {
    rep.classification = Classification::not_graph_regular;
    rep.evidence = "sum-to-zero: the columns of A do not sum to the zero vector";
    return rep;
  }
  if (a.rows() == 1 && !rep.zero_sum_partition) {
    rep.classification = Classification::not_graph_regular;
    rep.evidence = "zero-sum-partition: no proper subset I with both I and its complement summing to zero";
    return rep;
  }

  auto strong = search_gcc(a, Flavor::strong, bounds.gcc);
  if (strong.certificate) {
    rep.classification = Classification::graph_regular;
    rep.evidence = "strong graph columns certificate with T = " + std::to_string(strong.certificate->T());
    rep.strong_certificate = std::move(strong.certificate);
    return rep;
  }

  rep.classification = Classification::unknown;
  rep.evidence = "screens passed; strong certificate search: " + strong.reason;
  if (bounds.annotate_weak) {
    auto weak = search_gcc(a, Flavor::weak, bounds.gcc);
    if (weak.certificate) {
      rep.evidence += "; weak certificate found";
      rep.weak_certificate = std::move(weak.certificate);
    }
  }
  return rep;
}

}  // namespace rgl
