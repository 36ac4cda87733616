#pragma once

#include "rgl/certs.hpp"
#include "rgl/ratmath.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rgl {

enum class Classification { not_graph_regular, graph_regular, unknown };

std::string to_string(Classification c);

struct ScreenReport {
  bool sum_to_zero = false;
  std::optional<std::vector<std::size_t>> zero_sum_partition;  // 0-based indices of I
  Classification classification = Classification::unknown;
  std::string evidence;
  std::optional<GCCCertificate> strong_certificate;  // present iff graph_regular
  std::optional<GCCCertificate> weak_certificate;    // optional annotation for unknown
};

/// Every row of A sums to zero, i.e. the columns sum to the zero vector.
bool column_sum_zero(const IntMatrix& a);

/// Lexicographically first nonempty proper I (sorted index tuples) such that
/// the columns indexed by I and by its complement both sum to zero.
std::optional<std::vector<std::size_t>> zero_sum_partition(const IntMatrix& a);
std::optional<std::vector<std::size_t>> zero_sum_partition(const IntVector& coefficients);

struct ClassifyBounds {
  GccSearchBounds gcc{};
  bool annotate_weak = true;
};

/// Necessary-condition screens followed by a bounded strong certificate
/// search. Throws std::invalid_argument for fewer than three columns or a
/// zero column.
ScreenReport classify(const IntMatrix& a, const ClassifyBounds& bounds = {});

}  // namespace rgl
