#include "rgl/reduction.hpp"

#include "rgl/screens.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace rgl {

std::size_t PairMatrix::index(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  if (i == j || j >= n) throw std::out_of_range("pair outside [n]");
  // pairs (i', *) with i' < i come first: sum_{i' < i} (n - 1 - i')
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

PairMatrix build_c(const IntMatrix& a) {
  if (a.empty()) throw std::invalid_argument("empty matrix");
  if (!column_sum_zero(a)) throw std::invalid_argument("columns of A must sum to zero");
  const std::size_t n = a.cols();
  if (n < 2) throw std::invalid_argument("need at least two columns");

  PairMatrix pm;
  pm.n = n;
  pm.top_rows = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pm.pairs.emplace_back(i, j);

  const std::size_t constraints = (n - 1) * (n - 2) / 2;
  pm.c = IntMatrix(a.rows() + constraints, pm.pairs.size());
  for (std::size_t r = 0; r < a.rows(); ++r)
    for (std::size_t j = 1; j < n; ++j) pm.c(r, pm.index(0, j)) = a(r, j);

  std::size_t row = a.rows();
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t l = k + 1; l < n; ++l, ++row) {
      pm.c(row, pm.index(0, l)) = 1;
      pm.c(row, pm.index(0, k)) = -1;
      pm.c(row, pm.index(k, l)) = -1;
    }
  return pm;
}

namespace {

void check_permutation(const std::vector<std::size_t>& sigma, std::size_t n) {
  if (sigma.size() != n) throw std::invalid_argument("permutation has the wrong length");
  std::vector<bool> seen(n, false);
  for (auto s : sigma) {
    if (s >= n || seen[s]) throw std::invalid_argument("not a permutation of the columns");
    seen[s] = true;
  }
}

}  // namespace

PairMatrix build_c_sigma(const IntMatrix& a, const std::vector<std::size_t>& sigma) {
  check_permutation(sigma, a.cols());
  return build_c(a.permute_columns(sigma));
}

RatVector pair_vector(const RatVector& x) {
  RatVector y;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = i + 1; j < x.size(); ++j) y.push_back(x[j] - x[i]);
  return y;
}

RatVector point_vector(const PairMatrix& pm, const RatVector& y, const Rational& anchor) {
  if (y.size() != pm.pairs.size()) throw DimensionError("pair vector has the wrong length");
  RatVector x(pm.n, anchor);
  for (std::size_t j = 1; j < pm.n; ++j) x[j] = anchor + y[pm.index(0, j)];
  return x;
}

GCCCertificate transfer_certificate(const IntMatrix& a, const std::vector<std::size_t>& sigma,
                                    const CCCertificate& cert) {
  const PairMatrix pm = build_c_sigma(a, sigma);
  if (!verify_cc(pm.c, cert).accepted())
    throw std::invalid_argument("certificate does not satisfy the columns condition for C(sigma)");

  const std::size_t n = pm.n;
  GCCCertificate out;
  out.n = n;
  out.flavor = Flavor::weak;
  out.z.push_back(RatVector(n, 1));
  out.R.push_back(Graph::complete(n));
  for (std::size_t t = 0; t < cert.T(); ++t) {
    RatVector z(n);
    Graph g(n);
    for (std::size_t p = 1; p < n; ++p) z[sigma[p]] = cert.z[t][pm.index(0, p)];
    z[sigma[0]] = 0;
    for (std::size_t e = 0; e < pm.pairs.size(); ++e)
      if (cert.R[t][e]) g.add(sigma[pm.pairs[e].first], sigma[pm.pairs[e].second]);
    out.z.push_back(std::move(z));
    out.R.push_back(std::move(g));
  }
  return out;
}

bool satisfies_difference_identity(const PairMatrix& pm, const std::vector<std::size_t>& sigma,
                                   const CCCertificate& w, const GCCCertificate& z) {
  if (z.T() != w.T()) return false;
  for (std::size_t t = 0; t < w.T(); ++t)
    for (std::size_t e = 0; e < pm.pairs.size(); ++e) {
      const auto [k, l] = pm.pairs[e];
      if (z.z[t + 1][sigma[l]] - z.z[t + 1][sigma[k]] != w.z[t][e]) return false;
    }
  return true;
}

std::optional<ReductionResult> wgcc_via_reduction(const IntMatrix& a) {
  if (a.cols() > 6) throw std::length_error("reduction is limited to six columns");
  if (!column_sum_zero(a)) throw std::invalid_argument("columns of A must sum to zero");

  std::vector<std::size_t> sigma(a.cols());
  std::iota(sigma.begin(), sigma.end(), 0);
  do {
    const PairMatrix pm = build_c_sigma(a, sigma);
    auto cc = search_cc(pm.c, CcSearchOptions{15});
    if (!cc) continue;
    GCCCertificate weak = transfer_certificate(a, sigma, *cc);
    if (!verify_gcc(a, weak, Flavor::weak).accepted() || !satisfies_difference_identity(pm, sigma, *cc, weak))
      throw std::logic_error("transferred certificate failed verification");
    return ReductionResult{sigma, std::move(*cc), std::move(weak)};
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return std::nullopt;
}

}  // namespace rgl
