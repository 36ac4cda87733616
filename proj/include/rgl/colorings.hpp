#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>

namespace rgl {

/// A color class: one of the named tags, or a numeric class.
struct Color {
  enum class Tag { blue, red, green, numeric };
  Tag tag = Tag::numeric;
  std::int64_t value = 0;

  static Color blue() { return {Tag::blue, 0}; }
  static Color red() { return {Tag::red, 0}; }
  static Color green() { return {Tag::green, 0}; }
  static Color numeric(std::int64_t v) { return {Tag::numeric, v}; }

  bool operator==(const Color&) const = default;
  auto operator<=>(const Color&) const = default;
};

std::string to_string(const Color& c);
Color parse_color(const std::string& s);

enum class Family { psi, f, g, phi, chi, f3, g3, h, gr, constant };
enum class Arity { vertex, edge, hyper };

/// A member of one of the coloring families, e.g. "phi:p=5" or "gr:p=5,r=4".
struct ColoringSpec {
  Family family = Family::constant;
  std::int64_t p = 0;  // psi, g, phi, g3, h, gr
  std::int64_t n = 0;  // f, f3
  std::int64_t q = 0;  // chi
  std::int64_t m = 0;  // chi
  std::int64_t r = 0;  // gr (and the uniformity of const when used on r-sets)

  Arity arity() const;
  /// Size of the colored sets for hyper families (3 for f3/g3/h, r for gr).
  std::size_t uniformity() const;

  bool operator==(const ColoringSpec&) const = default;
};

/// Parses the CLI syntax. Throws std::invalid_argument on bad strings or
/// parameters (non-prime p, n < 2, m < 1, r < 3).
ColoringSpec parse_coloring(const std::string& text);
std::string to_string(const ColoringSpec& spec);

bool is_prime(std::int64_t p);
/// Exponent of p in x; x >= 1.
int valuation(std::int64_t p, std::int64_t x);
/// x with every factor p removed.
std::int64_t strip(std::int64_t p, std::int64_t x);

/// Super mod p coloring: x = p^r (b p + s) is colored s in [1, p-1].
std::int64_t psi(std::int64_t p, std::int64_t x);

Color vertex_color(const ColoringSpec& spec, std::int64_t x);
/// Edge {x, y}; symmetric in its arguments. Throws on x == y or x, y < 1.
Color edge_color(const ColoringSpec& spec, std::int64_t x, std::int64_t y);
/// Sorted tuple of distinct positive integers. Throws otherwise.
Color hyper_color(const ColoringSpec& spec, std::span<const std::int64_t> points);

using EdgeColoring = std::function<Color(std::int64_t, std::int64_t)>;
EdgeColoring edge_coloring(const ColoringSpec& spec);

}  // namespace rgl
