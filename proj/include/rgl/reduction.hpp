#pragma once

#include "rgl/certs.hpp"
#include "rgl/ratmath.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace rgl {

/// Matrix whose columns are indexed by the pairs (i, j), i < j, of [n] in
/// lexicographic order. The top rows are A glued onto the pairs (1, j); the
/// remaining rows tie y(1, l) - y(1, k) = y(k, l) for 2 <= k < l.
struct PairMatrix {
  std::size_t n = 0;
  std::size_t top_rows = 0;
  IntMatrix c;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // 0-based (i, j)

  std::size_t index(std::size_t i, std::size_t j) const;
};

/// Throws std::invalid_argument when the columns of A do not sum to zero.
PairMatrix build_c(const IntMatrix& a);
/// build_c of A with columns reordered so that position p holds column sigma[p].
PairMatrix build_c_sigma(const IntMatrix& a, const std::vector<std::size_t>& sigma);

/// y(i, j) = x(j) - x(i).
RatVector pair_vector(const RatVector& x);
/// Inverse of pair_vector up to the additive constant: x(1) = anchor.
RatVector point_vector(const PairMatrix& pm, const RatVector& y, const Rational& anchor = 0);

/// Turns a verified columns condition certificate of C(sigma) into a weak
/// graph columns certificate of A, indexed in A's original column order.
/// Throws std::invalid_argument if the input does not verify.
GCCCertificate transfer_certificate(const IntMatrix& a, const std::vector<std::size_t>& sigma,
                                    const CCCertificate& cert);

/// z_t(sigma(l)) - z_t(sigma(k)) = w_t(k, l) for every t >= 1 and k < l.
bool satisfies_difference_identity(const PairMatrix& pm, const std::vector<std::size_t>& sigma,
                                   const CCCertificate& w, const GCCCertificate& z);

struct ReductionResult {
  std::vector<std::size_t> sigma;
  CCCertificate cc;
  GCCCertificate weak;
};

/// Tries every sigma in lexicographic order and transfers the first columns
/// condition certificate found. Throws std::length_error above six columns.
std::optional<ReductionResult> wgcc_via_reduction(const IntMatrix& a);

}  // namespace rgl
