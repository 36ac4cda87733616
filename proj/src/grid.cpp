#include "rgl/grid.hpp"

#include "rgl/screens.hpp"

#include <algorithm>
#include <set>

namespace rgl {

namespace {

void need(bool ok, const std::string& what) {
  if (!ok) throw GridError(what);
}

std::string level_name(const char* name, std::size_t k) { return std::string(name) + "(" + std::to_string(k) + ")"; }

Integer history_prefix(const GridSpec& s, std::size_t bits, std::size_t len) {
  // bit l-1 of `bits` selects y(l) over x(l)
  Integer p = 0;
  for (std::size_t l = 1; l <= len; ++l) p += ((bits >> (l - 1)) & 1u ? s.Y(l) : s.X(l)) * s.D(l);
  return p;
}

}  // namespace

Integer default_c0(const GridSpec& s) {
  if (s.n == 0 || s.b.empty()) return 0;
  return std::max(s.X(1) * s.B(1), s.Y(1) * s.B(1));
}

void validate(const GridSpec& s) {
  need(s.n >= 1, "depth n must be at least 1");
  need(s.x.size() == s.n && s.y.size() == s.n && s.b.size() == s.n && s.d.size() == s.n,
       "x, y, b and d must have length n");
  need(s.c.size() == s.n + 1, "c must have length n + 1 (indices 0..n)");
  for (std::size_t k = 1; k <= s.n; ++k) {
    need(s.X(k) >= 1, level_name("x", k) + " must be positive");
    need(s.Y(k) >= 1, level_name("y", k) + " must be positive");
    need(s.D(k) >= 1, level_name("d", k) + " must be positive");
    need(s.B(k) >= 0, level_name("b", k) + " must be nonnegative");
    need(s.C(k) >= 0, level_name("c", k) + " must be nonnegative");
  }
  for (std::size_t k = 1; k < s.n; ++k)
    need(s.D(k + 1) % s.D(k) == 0, "divisibility d(k) | d(k+1) fails at k = " + std::to_string(k));
  for (std::size_t k = 2; k <= s.n; ++k)
    need(s.X(k) * s.B(k) <= s.C(k - 1) && s.Y(k) * s.B(k) <= s.C(k - 1),
         "capacity x(k)b(k), y(k)b(k) <= c(k-1) fails at k = " + std::to_string(k));
}

std::vector<GridPoint> grid_points(const GridSpec& s, std::size_t max_points) {
  validate(s);
  Integer total = 0;
  for (std::size_t k = 1; k <= s.n; ++k) {
    const Integer side = 2 * s.offset_radius(k) + 1;
    total += (Integer(1) << static_cast<mp_bitcnt_t>(k - 1)) * side * side;
  }
  if (total > max_points) throw std::length_error("grid has too many points to enumerate");

  std::vector<GridPoint> out;
  for (std::size_t k = 1; k <= s.n; ++k) {
    const Integer r = s.offset_radius(k);
    for (std::size_t bits = 0; bits < (std::size_t{1} << (k - 1)); ++bits) {
      const Integer p = history_prefix(s, bits, k - 1);
      std::vector<bool> hist(k - 1);
      for (std::size_t l = 0; l + 1 < k; ++l) hist[l] = (bits >> l) & 1u;
      for (Integer i = -r; i <= r; ++i)
        for (Integer j = -r; j <= r; ++j)
          out.push_back(GridPoint{p + s.X(k) * s.D(k) + i * s.D(k + 1), p + s.Y(k) * s.D(k) + j * s.D(k + 1), k,
                                  hist, i, j});
    }
  }
  return out;
}

bool is_proper(const GridSpec& s, std::size_t max_representations) {
  validate(s);
  for (std::size_t k = 1; k <= s.n; ++k)
    if ((s.Y(k) - s.X(k)) * s.D(k) - 2 * s.offset_radius(k) * s.D(k + 1) <= 0) return false;

  Integer total = 0;
  for (std::size_t k = 1; k <= s.n; ++k)
    total += (Integer(1) << static_cast<mp_bitcnt_t>(k)) * (2 * s.offset_radius(k) + 1);
  if (total > max_representations) throw std::length_error("grid has too many representations to check");

  for (std::size_t k = 1; k <= s.n; ++k) {
    std::set<Integer> seen;
    const Integer r = s.offset_radius(k);
    for (std::size_t bits = 0; bits < (std::size_t{1} << k); ++bits) {
      const Integer p = history_prefix(s, bits, k);
      for (Integer i = -r; i <= r; ++i)
        if (!seen.insert(p + i * s.D(k + 1)).second) return false;
    }
  }
  return true;
}

std::optional<std::size_t> locate(const GridSpec& s, const Integer& u, const Integer& v) {
  validate(s);
  for (std::size_t k = 1; k <= s.n; ++k) {
    const Integer r = s.offset_radius(k);
    const Integer step = s.D(k + 1);
    for (std::size_t bits = 0; bits < (std::size_t{1} << (k - 1)); ++bits) {
      const Integer p = history_prefix(s, bits, k - 1);
      const Integer du = u - p - s.X(k) * s.D(k);
      const Integer dv = v - p - s.Y(k) * s.D(k);
      if (k == s.n) {
        if (du == 0 && dv == 0) return k;
        continue;
      }
      if (du % step != 0 || dv % step != 0) continue;
      if (abs(du / step) <= r && abs(dv / step) <= r) return k;
    }
  }
  return std::nullopt;
}

IntVector required_b(const GCCCertificate& cert, const IntVector& y, const IntVector& c, const IntVector& d) {
  const std::size_t T = cert.T();
  if (T == 0) throw std::invalid_argument("certificate has no steps");
  if (y.size() < T || d.size() < T || c.size() < T + 1) throw DimensionError("grid vectors shorter than T");
  IntVector b(T);
  b[T - 1] = ceil(max_norm(cert.z[T])) + 1;
  for (std::size_t t = T - 1; t >= 1; --t) {
    if (d[t - 1] == 0 || d[t] % d[t - 1] != 0)
      throw GridError("divisibility d(t) | d(t+1) fails at t = " + std::to_string(t));
    b[t - 1] = (ceil(max_norm(cert.z[t])) + 1) * y[t - 1] + c[t] * (d[t] / d[t - 1]);
  }
  return b;
}

GridSpec fit_grid(const GCCCertificate& cert, const IntVector& x, const IntVector& y, const IntVector& d) {
  const std::size_t T = cert.T();
  if (x.size() != T || y.size() != T || d.size() != T) throw DimensionError("grid vectors must have length T");
  GridSpec s;
  s.n = T;
  s.x = x;
  s.y = y;
  s.d = d;
  s.b.assign(T, 0);
  s.c.assign(T + 1, 0);
  s.b[T - 1] = ceil(max_norm(cert.z[T])) + 1;
  s.c[T] = s.b[T - 1];
  for (std::size_t k = T - 1; k >= 1; --k) {
    if (d[k - 1] == 0 || d[k] % d[k - 1] != 0)
      throw GridError("divisibility d(k) | d(k+1) fails at k = " + std::to_string(k));
    s.c[k] = std::max(x[k], y[k]) * s.b[k];
    s.b[k - 1] = (ceil(max_norm(cert.z[k])) + 1) * y[k - 1] + s.c[k] * (d[k] / d[k - 1]);
  }
  s.c[0] = default_c0(s);
  validate(s);
  return s;
}

IntVector solve_in_grid(const IntMatrix& a, const GCCCertificate& cert, const GridSpec& spec) {
  validate(spec);
  const std::size_t T = cert.T();
  need(spec.n == T, "grid depth must equal the certificate length T");
  need(verify_gcc(a, cert, Flavor::strong).accepted(), "certificate is not a strong graph columns certificate");

  const IntVector need_b = required_b(cert, spec.y, spec.c, spec.d);
  for (std::size_t k = 1; k <= T; ++k)
    need(spec.B(k) >= need_b[k - 1], "grid capacity below certificate demand at level " + std::to_string(k));

  const std::size_t n = cert.n;
  RatVector w(n, 0);
  for (std::size_t t = 1; t <= T; ++t)
    for (std::size_t i = 0; i < n; ++i)
      w[i] += Rational(spec.D(t)) * (Rational(spec.X(t)) + Rational(spec.Y(t) - spec.X(t)) * cert.z[t][i]);

  IntVector out(n);
  for (std::size_t i = 0; i < n; ++i) {
    need(w[i].get_den() == 1, "solution is not integral; d(1) must clear the certificate denominators");
    out[i] = w[i].get_num();
  }
  if (!in_nullspace(a, w)) throw std::logic_error("grid solution left the nullspace");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      need(out[i] != out[j], "solution entries are not distinct");
      const std::size_t t = unrestriction_time(cert, i, j);
      const bool i_low = cert.z[t][i] == 0;
      const auto level = i_low ? locate(spec, out[i], out[j]) : locate(spec, out[j], out[i]);
      need(level == t, "pair {" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                           "} does not sit at its unrestriction level " + std::to_string(t));
    }
  return out;
}

// ---------------------------------------------------------------- search

namespace {

using i128 = __int128;

std::int64_t clamp_to(i128 v, std::int64_t cap) { return v > cap ? cap + 1 : static_cast<std::int64_t>(v); }

struct Level {
  std::int64_t x = 0, y = 0, m = 1, c = 0, b = 0, extent = 0;
};

class GridSearch {
 public:
  GridSearch(const EdgeColoring& coloring, std::int64_t Q, std::size_t n, const Budget& budget)
      : coloring_(coloring), Q_(Q), n_(n), meter_(budget), levels_(n + 2) {}

  std::vector<std::int64_t> user_b;       // fixed capacities (1-based levels at 0..n-1)
  std::vector<std::int64_t> norm_plus1;   // certificate mode: ceil|z_k| + 1
  std::int64_t d1_step = 1;
  std::function<bool(const GridSpec&)> accept;

  GridSearchResult run() {
    if (Q_ < 2) return fail("Q must be at least 2");
    if (Q_ > (std::int64_t{1} << 40)) throw std::length_error("Q too large for grid search");
    std::int64_t prev = 0;
    for (std::int64_t bound = std::min<std::int64_t>(Q_, 64);; bound = std::min(Q_, bound * 2)) {
      bound_ = bound;
      prev_bound_ = prev;
      dfs(n_);
      if (result_.grid) return finish();
      if (meter_.exhausted()) return fail("budget exhausted");
      if (bound == Q_) break;
      prev = bound;
    }
    return fail("no proper monochromatic grid with coordinates in [1.." + std::to_string(Q_) + "]");
  }

 private:
  bool cert_mode() const { return !norm_plus1.empty(); }

  std::int64_t b_of(std::size_t k) const { return cert_mode() ? levels_[k].b : user_b[k - 1]; }

  std::int64_t capacity(std::size_t k) const {
    if (k == n_) return cert_mode() ? norm_plus1[n_ - 1] : user_b[n_ - 1];
    const Level& up = levels_[k + 1];
    const i128 above = static_cast<i128>(std::max(up.x, up.y)) * b_of(k + 1);
    i128 c = above;
    if (!cert_mode()) c = std::max<i128>(c, user_b[k - 1]);
    return clamp_to(c, Q_);
  }

  // Demands on lower levels only grow with the choices made above them, so
  // once a choice leaves no room below, every larger choice fails too.
  enum class Step { abort, no_room, fits };

  Step dfs(std::size_t k) {
    if (!meter_.tick()) return Step::abort;
    Level& L = levels_[k];
    L.c = capacity(k);
    bool any = false;
    if (k == n_) {
      if (cert_mode()) L.b = norm_plus1[n_ - 1];
      for (L.x = 1; L.x + 1 <= bound_; ++L.x) {
        bool row = false;
        for (L.y = L.x + 1; L.y <= bound_; ++L.y) {
          L.extent = L.y;
          const Step s = descend(k);
          if (s == Step::abort) return s;
          if (s == Step::no_room) break;
          row = true;
        }
        if (!row) break;
        any = true;
      }
      return any ? Step::fits : Step::no_room;
    }
    if (L.c > Q_) return Step::no_room;
    const std::int64_t above = levels_[k + 1].extent;
    const std::int64_t r = L.c;
    for (L.m = 1;; ++L.m) {
      const i128 rm = static_cast<i128>(r) * L.m;
      const i128 min_y = 3 * rm + 2;
      if (std::max(min_y + rm, min_y + static_cast<i128>(L.m) * above) > bound_) break;
      bool block = false;
      for (L.x = static_cast<std::int64_t>(rm) + 1;; ++L.x) {
        const i128 y0 = L.x + 2 * rm + 1;
        if (std::max(y0 + rm, y0 + static_cast<i128>(L.m) * above) > bound_) break;
        bool row = false;
        for (L.y = static_cast<std::int64_t>(y0);; ++L.y) {
          const i128 e = std::max(L.y + rm, L.y + static_cast<i128>(L.m) * above);
          if (e > bound_) break;
          L.extent = static_cast<std::int64_t>(e);
          if (cert_mode()) L.b = clamp_to(static_cast<i128>(norm_plus1[k - 1]) * L.y + rm, std::int64_t{1} << 61);
          const Step s = descend(k);
          if (s == Step::abort) return s;
          if (s == Step::no_room) break;
          row = true;
        }
        if (!row) break;
        block = true;
      }
      if (!block) break;
      any = true;
    }
    return any ? Step::fits : Step::no_room;
  }

  Step descend(std::size_t k) {
    if (k > 1) return dfs(k - 1);
    if (levels_[1].extent <= prev_bound_) return Step::fits;
    return finalize() ? Step::fits : Step::abort;
  }

  GridSpec unit_spec() const {
    GridSpec s;
    s.n = n_;
    std::int64_t d = 1;
    s.c.assign(n_ + 1, 0);
    for (std::size_t k = 1; k <= n_; ++k) {
      const Level& L = levels_[k];
      s.x.push_back(L.x);
      s.y.push_back(L.y);
      s.b.push_back(b_of(k));
      s.d.push_back(d);
      s.c[k] = L.c;
      if (k < n_) d *= L.m;
    }
    s.c[0] = default_c0(s);
    return s;
  }

  bool finalize() {
    const GridSpec unit = unit_spec();
    std::optional<bool> proper;  // scale invariant, so decided once per shape
    const std::int64_t extent = levels_[1].extent;
    for (std::int64_t D = d1_step; D <= Q_ / extent; D += d1_step) {
      if (!meter_.tick()) return false;
      auto color = monochromatic(unit, D);
      if (!color) continue;
      if (!proper) {
        try {
          validate(unit);
          proper = is_proper(unit);
        } catch (const std::length_error&) {
          proper = false;
        }
      }
      if (!*proper) return true;
      GridSpec scaled = unit;
      for (auto& d : scaled.d) d *= D;
      if (accept && !accept(scaled)) continue;
      result_.grid = std::move(scaled);
      result_.color = *color;
      return false;
    }
    return true;
  }

  std::optional<Color> monochromatic(const GridSpec& unit, std::int64_t D) {
    std::vector<std::int64_t> d(n_ + 2, 0);
    for (std::size_t k = 1; k <= n_; ++k) d[k] = unit.D(k).get_si() * D;
    std::optional<Color> ref;
    for (std::size_t k = 1; k <= n_; ++k) {
      const Level& L = levels_[k];
      const std::int64_t r = k == n_ ? 0 : L.c;
      for (std::size_t bits = 0; bits < (std::size_t{1} << (k - 1)); ++bits) {
        std::int64_t p = 0;
        for (std::size_t l = 1; l < k; ++l) p += ((bits >> (l - 1)) & 1u ? levels_[l].y : levels_[l].x) * d[l];
        for (std::int64_t i = -r; i <= r; ++i)
          for (std::int64_t j = -r; j <= r; ++j) {
            const Color c = coloring_(p + L.x * d[k] + i * d[k + 1], p + L.y * d[k] + j * d[k + 1]);
            if (!ref) ref = c;
            else if (!(c == *ref)) return std::nullopt;
          }
      }
    }
    return ref;
  }

  GridSearchResult finish() {
    result_.nodes = meter_.nodes();
    return std::move(result_);
  }

  GridSearchResult fail(const std::string& why) {
    GridSearchResult r;
    r.reason = why;
    r.nodes = meter_.nodes();
    return r;
  }

  const EdgeColoring& coloring_;
  std::int64_t Q_;
  std::size_t n_;
  BudgetMeter meter_;
  std::vector<Level> levels_;
  std::int64_t bound_ = 0, prev_bound_ = 0;
  GridSearchResult result_;
};

}  // namespace

GridSearchResult find_mono_grid(const EdgeColoring& coloring, std::int64_t Q, std::size_t n, const IntVector& b,
                                const Budget& budget) {
  if (n < 1) throw std::invalid_argument("grid depth must be at least 1");
  if (b.size() != n) throw DimensionError("b must have length n");
  GridSearch s(coloring, Q, n, budget);
  for (const auto& v : b) {
    if (v < 0) throw std::invalid_argument("b must be nonnegative");
    s.user_b.push_back(v > Q ? Q + 1 : v.get_si());
  }
  return s.run();
}

GridSearchResult find_mono_grid_for(const GCCCertificate& cert, const EdgeColoring& coloring, std::int64_t Q,
                                    std::int64_t d1_step, const Budget& budget,
                                    const std::function<bool(const GridSpec&)>& accept) {
  if (cert.T() < 1) throw std::invalid_argument("certificate has no steps");
  if (d1_step < 1) throw std::invalid_argument("d(1) step must be positive");
  GridSearch s(coloring, Q, cert.T(), budget);
  for (std::size_t t = 1; t <= cert.T(); ++t) {
    const Integer v = ceil(max_norm(cert.z[t])) + 1;
    s.norm_plus1.push_back(v > Q ? Q + 1 : v.get_si());
  }
  s.d1_step = d1_step;
  s.accept = accept;
  return s.run();
}

// ---------------------------------------------------------------- pipeline

PipelineResult pipeline_witness(const IntMatrix& a, const ColoringSpec& spec, std::int64_t Q, const Budget& budget) {
  if (spec.arity() != Arity::edge) throw std::invalid_argument(to_string(spec) + " is not an edge coloring");
  PipelineResult out;

  ScreenReport rep;
  try {
    ClassifyBounds cb;
    cb.gcc.budget = budget;
    cb.annotate_weak = false;
    rep = classify(a, cb);
  } catch (const std::exception& e) {
    throw PipelineError("certificate", e.what());
  }
  if (!rep.strong_certificate) {
    out.stage = "certificate";
    out.reason = to_string(rep.classification) + ": " + rep.evidence;
    return out;
  }
  const GCCCertificate cert = *rep.strong_certificate;
  out.certificate = cert;

  Integer lcm = 1;
  for (const auto& z : cert.z)
    for (const auto& q : z) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  if (lcm > Q) {
    out.stage = "grid";
    out.reason = "certificate denominators exceed Q";
    return out;
  }

  const EdgeColoring coloring = edge_coloring(spec);
  IntVector solved;
  GridSearchResult gr;
  try {
    gr = find_mono_grid_for(cert, coloring, Q, lcm.get_si(), budget, [&](const GridSpec& g) {
      try {
        solved = solve_in_grid(a, cert, g);
        return true;
      } catch (const GridError&) {
        return false;
      }
    });
  } catch (const std::exception& e) {
    throw PipelineError("grid", e.what());
  }
  if (!gr.grid) {
    out.stage = "grid";
    out.reason = gr.reason;
    return out;
  }
  out.grid = gr.grid;

  Witness w;
  for (const auto& v : solved) w.x.push_back(v.get_si());
  w.color = gr.color;
  w.coloring = to_string(spec);
  w.N = Q;
  for (auto v : w.x)
    if (v > Q) throw PipelineError("solve", "solution entry exceeds Q");
  if (!verify_witness(a, coloring, w.x, w.color))
    throw PipelineError("solve", "witness failed independent re-verification");
  out.witness = std::move(w);
  return out;
}

}  // namespace rgl
