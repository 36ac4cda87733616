#include "rgl/colorings.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <stdexcept>
#include <vector>

namespace rgl {

std::string to_string(const Color& c) {
  switch (c.tag) {
    case Color::Tag::blue: return "blue";
    case Color::Tag::red: return "red";
    case Color::Tag::green: return "green";
    case Color::Tag::numeric: return std::to_string(c.value);
  }
  return "?";
}

Color parse_color(const std::string& s) {
  if (s == "blue") return Color::blue();
  if (s == "red") return Color::red();
  if (s == "green") return Color::green();
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) throw std::invalid_argument("bad color '" + s + "'");
  return Color::numeric(v);
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int valuation(std::int64_t p, std::int64_t x) {
  if (x < 1) throw std::invalid_argument("valuation needs a positive integer");
  int k = 0;
  while (x % p == 0) {
    x /= p;
    ++k;
  }
  return k;
}

std::int64_t strip(std::int64_t p, std::int64_t x) {
  if (x < 1) throw std::invalid_argument("strip needs a positive integer");
  while (x % p == 0) x /= p;
  return x;
}

std::int64_t psi(std::int64_t p, std::int64_t x) {
  if (x < 1) throw std::invalid_argument("psi is defined on positive integers only");
  return strip(p, x) % p;
}

// ---------------------------------------------------------------- specs

Arity ColoringSpec::arity() const {
  switch (family) {
    case Family::psi: return Arity::vertex;
    case Family::f:
    case Family::g:
    case Family::phi:
    case Family::chi:
    case Family::constant: return Arity::edge;
    case Family::f3:
    case Family::g3:
    case Family::h:
    case Family::gr: return Arity::hyper;
  }
  return Arity::edge;
}

std::size_t ColoringSpec::uniformity() const {
  switch (family) {
    case Family::f3:
    case Family::g3:
    case Family::h: return 3;
    case Family::gr:
    case Family::constant: return r > 0 ? static_cast<std::size_t>(r) : 3;
    default: return 2;
  }
}

namespace {

const std::map<std::string, Family>& family_names() {
  static const std::map<std::string, Family> names{
      {"psi", Family::psi}, {"f", Family::f},   {"g", Family::g},   {"phi", Family::phi},
      {"chi", Family::chi}, {"f3", Family::f3}, {"g3", Family::g3}, {"h", Family::h},
      {"gr", Family::gr},   {"const", Family::constant}};
  return names;
}

std::int64_t parse_param(const std::string& key, const std::string& value) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc{} || ptr != value.data() + value.size())
    throw std::invalid_argument("parameter " + key + " is not an integer: '" + value + "'");
  return v;
}

}  // namespace

ColoringSpec parse_coloring(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const auto it = family_names().find(name);
  if (it == family_names().end()) throw std::invalid_argument("unknown coloring family '" + name + "'");

  ColoringSpec spec;
  spec.family = it->second;
  std::map<std::string, std::int64_t> params;
  if (colon != std::string::npos) {
    std::size_t pos = colon + 1;
    while (pos <= text.size()) {
      const auto comma = text.find(',', pos);
      const std::string item = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      const auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0) throw std::invalid_argument("malformed parameter '" + item + "'");
      const std::string key = item.substr(0, eq);
      if (params.count(key)) throw std::invalid_argument("duplicate parameter " + key);
      params[key] = parse_param(key, item.substr(eq + 1));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }

  auto take = [&](const char* key) -> std::int64_t {
    auto p = params.find(key);
    if (p == params.end()) throw std::invalid_argument(name + " needs parameter " + key);
    const auto v = p->second;
    params.erase(p);
    return v;
  };

  switch (spec.family) {
    case Family::psi:
    case Family::g:
    case Family::phi:
    case Family::g3:
    case Family::h: spec.p = take("p"); break;
    case Family::gr:
      spec.p = take("p");
      spec.r = take("r");
      break;
    case Family::f:
    case Family::f3: spec.n = take("n"); break;
    case Family::chi:
      spec.q = take("q");
      spec.m = take("m");
      break;
    case Family::constant:
      if (params.count("r")) spec.r = take("r");
      break;
  }
  if (!params.empty()) throw std::invalid_argument("unexpected parameter " + params.begin()->first + " for " + name);

  const bool needs_p = spec.family == Family::psi || spec.family == Family::g || spec.family == Family::phi ||
                       spec.family == Family::g3 || spec.family == Family::h || spec.family == Family::gr;
  if (needs_p && !is_prime(spec.p)) throw std::invalid_argument("p must be prime, got " + std::to_string(spec.p));
  if ((spec.family == Family::f || spec.family == Family::f3) && spec.n < 2)
    throw std::invalid_argument("n must be at least 2");
  if (spec.family == Family::chi) {
    if (!is_prime(spec.q)) throw std::invalid_argument("q must be prime, got " + std::to_string(spec.q));
    if (spec.m < 1) throw std::invalid_argument("m must be at least 1");
  }
  if (spec.family == Family::gr && spec.r < 3) throw std::invalid_argument("r must be at least 3");
  if (spec.family == Family::constant && spec.r != 0 && spec.r < 2)
    throw std::invalid_argument("r must be at least 2");
  return spec;
}

std::string to_string(const ColoringSpec& s) {
  switch (s.family) {
    case Family::psi: return "psi:p=" + std::to_string(s.p);
    case Family::f: return "f:n=" + std::to_string(s.n);
    case Family::g: return "g:p=" + std::to_string(s.p);
    case Family::phi: return "phi:p=" + std::to_string(s.p);
    case Family::chi: return "chi:q=" + std::to_string(s.q) + ",m=" + std::to_string(s.m);
    case Family::f3: return "f3:n=" + std::to_string(s.n);
    case Family::g3: return "g3:p=" + std::to_string(s.p);
    case Family::h: return "h:p=" + std::to_string(s.p);
    case Family::gr: return "gr:p=" + std::to_string(s.p) + ",r=" + std::to_string(s.r);
    case Family::constant: return s.r ? "const:r=" + std::to_string(s.r) : "const";
  }
  return "?";
}

// ---------------------------------------------------------------- evaluation

namespace {

// Residue-pattern coloring on a set: blue if all residues agree, the minimum
// residue if it is attained exactly once, otherwise the maximum residue.
Color residue_pattern(std::int64_t modulus, std::span<const std::int64_t> values) {
  std::vector<std::int64_t> res(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) res[i] = values[i] % modulus;
  const auto [lo, hi] = std::minmax_element(res.begin(), res.end());
  if (*lo == *hi) return Color::blue();
  if (std::count(res.begin(), res.end(), *lo) == 1) return Color::numeric(*lo);
  return Color::numeric(*hi);
}

// Valuation-pattern coloring: all valuations equal -> residue pattern mod p-1
// of the p-free parts taken as residues in [1, p-1]; unique minimum valuation
// -> red; otherwise green.
Color valuation_pattern(std::int64_t p, std::span<const std::int64_t> values) {
  std::vector<int> val(values.size());
  std::vector<std::int64_t> parts(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    val[i] = valuation(p, values[i]);
    parts[i] = psi(p, values[i]);
  }
  const auto [lo, hi] = std::minmax_element(val.begin(), val.end());
  if (*lo == *hi) return residue_pattern(p - 1, parts);
  if (std::count(val.begin(), val.end(), *lo) == 1) return Color::red();
  return Color::green();
}

void require_positive(std::int64_t x) {
  if (x < 1) throw std::invalid_argument("colorings are defined on positive integers");
}

}  // namespace

Color vertex_color(const ColoringSpec& spec, std::int64_t x) {
  require_positive(x);
  if (spec.family == Family::constant) return Color::numeric(0);
  if (spec.family != Family::psi) throw std::invalid_argument(to_string(spec) + " is not a vertex coloring");
  return Color::numeric(psi(spec.p, x));
}

Color edge_color(const ColoringSpec& spec, std::int64_t x, std::int64_t y) {
  require_positive(x);
  require_positive(y);
  if (x == y) throw std::invalid_argument("edge requires distinct endpoints");
  if (x > y) std::swap(x, y);
  switch (spec.family) {
    case Family::constant: return Color::numeric(0);
    case Family::f: {
      const std::int64_t pair[2] = {x, y};
      return residue_pattern(spec.n, pair);
    }
    case Family::g: {
      if (valuation(spec.p, x) != valuation(spec.p, y)) return Color::red();
      const std::int64_t parts[2] = {psi(spec.p, x), psi(spec.p, y)};
      return residue_pattern(spec.p - 1, parts);
    }
    case Family::phi: return Color::numeric(psi(spec.p, y - x));
    case Family::chi: return Color::numeric(valuation(spec.q, y - x) % spec.m);
    default: throw std::invalid_argument(to_string(spec) + " is not an edge coloring");
  }
}

Color hyper_color(const ColoringSpec& spec, std::span<const std::int64_t> points) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    require_positive(points[i]);
    if (i > 0 && points[i - 1] >= points[i])
      throw std::invalid_argument("hyperedge points must be distinct and ascending");
  }
  if (spec.family != Family::constant && points.size() != spec.uniformity())
    throw std::invalid_argument(to_string(spec) + " colors " + std::to_string(spec.uniformity()) + "-sets, got " +
                                std::to_string(points.size()) + " points");
  switch (spec.family) {
    case Family::constant: return Color::numeric(0);
    case Family::f3: return residue_pattern(spec.n, points);
    case Family::g3:
    case Family::gr: return valuation_pattern(spec.p, points);
    case Family::h: {
      ColoringSpec g{Family::g, spec.p};
      return edge_color(g, points[1] - points[0], points[2] - points[0]);
    }
    default: throw std::invalid_argument(to_string(spec) + " is not an r-set coloring");
  }
}

EdgeColoring edge_coloring(const ColoringSpec& spec) {
  if (spec.arity() != Arity::edge) throw std::invalid_argument(to_string(spec) + " is not an edge coloring");
  return [spec](std::int64_t x, std::int64_t y) { return edge_color(spec, x, y); };
}

}  // namespace rgl
