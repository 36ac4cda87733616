#include "rgl/certs.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rgl {

std::string to_string(Flavor f) {
  switch (f) {
    case Flavor::cc: return "cc";
    case Flavor::weak: return "weak";
    case Flavor::strong: return "strong";
  }
  return "?";
}

Flavor parse_flavor(const std::string& s) {
  if (s == "cc") return Flavor::cc;
  if (s == "weak") return Flavor::weak;
  if (s == "strong") return Flavor::strong;
  throw std::invalid_argument("unknown flavor '" + s + "' (expected cc, weak or strong)");
}

// ---------------------------------------------------------------- Graph

std::size_t Graph::index(std::size_t i, std::size_t j) const {
  if (i == j || i >= n_ || j >= n_) throw std::out_of_range("graph vertex pair out of range");
  if (i > j) std::swap(i, j);
  // row-major upper triangle
  return i * n_ - i * (i + 1) / 2 + (j - i - 1);
}

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  std::fill(g.adj_.begin(), g.adj_.end(), true);
  return g;
}

Graph Graph::from_blocks(const std::vector<std::size_t>& labels) {
  Graph g(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i)
    for (std::size_t j = i + 1; j < labels.size(); ++j)
      if (labels[i] == labels[j]) g.add(i, j);
  return g;
}

void Graph::add(std::size_t i, std::size_t j) { adj_[index(i, j)] = true; }
void Graph::remove(std::size_t i, std::size_t j) { adj_[index(i, j)] = false; }

bool Graph::edgeless() const { return std::none_of(adj_.begin(), adj_.end(), [](bool b) { return b; }); }
bool Graph::is_complete() const { return std::all_of(adj_.begin(), adj_.end(), [](bool b) { return b; }); }

bool Graph::subgraph_of(const Graph& other) const {
  if (other.n_ != n_) return false;
  for (std::size_t k = 0; k < adj_.size(); ++k)
    if (adj_[k] && !other.adj_[k]) return false;
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> Graph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      if (has(i, j)) out.emplace_back(i, j);
  return out;
}

Rational GCCCertificate::max_norm() const {
  Rational m = 0;
  for (const auto& v : z) m = std::max(m, rgl::max_norm(v));
  return m;
}

std::string describe(const Violation& v) {
  std::ostringstream out;
  out << "condition " << v.condition << " at t=" << v.time;
  if (v.i && v.j)
    out << " pair {" << *v.i + 1 << "," << *v.j + 1 << "}";
  else if (v.i)
    out << " index " << *v.i + 1;
  if (!v.detail.empty()) out << ": " << v.detail;
  return out.str();
}

// ---------------------------------------------------------------- verification

namespace {

void check_vectors(const IntMatrix& a, std::size_t n, const std::vector<RatVector>& z) {
  if (n != a.cols())
    throw DimensionError("certificate has n=" + std::to_string(n) + " but matrix has " +
                         std::to_string(a.cols()) + " columns");
  for (const auto& v : z)
    if (v.size() != n) throw DimensionError("certificate vector length differs from n");
}

}  // namespace

VerificationReport verify_cc(const IntMatrix& a, const CCCertificate& cert) {
  check_vectors(a, cert.n, cert.z);
  if (cert.R.size() != cert.z.size()) throw DimensionError("certificate has unequal z and R counts");
  for (const auto& r : cert.R)
    if (r.size() != cert.n) throw DimensionError("restriction set size differs from n");

  VerificationReport rep;
  rep.flavor = Flavor::cc;
  const std::size_t T = cert.T();
  if (T == 0) {
    rep.violations.push_back({"shape", 0, {}, {}, "T must be at least 1"});
    return rep;
  }

  for (std::size_t t = 1; t <= T; ++t)
    if (!in_nullspace(a, cert.z[t - 1])) rep.violations.push_back({"nullspace", t, {}, {}, "A z_t != 0"});

  for (std::size_t t = 2; t <= T; ++t)
    for (std::size_t i = 0; i < cert.n; ++i)
      if (cert.R[t - 1][i] && !cert.R[t - 2][i])
        rep.violations.push_back({"monotone", t, i, {}, "R_t not contained in R_{t-1}"});

  std::set<std::pair<int, std::size_t>> reported;
  for (std::size_t t = 1; t <= T; ++t) {
    for (std::size_t i = 0; i < cert.n; ++i) {
      if (cert.R[t - 1][i]) {
        if (reported.count({1, i})) continue;
        for (std::size_t s = 1; s <= t; ++s)
          if (cert.z[s - 1][i] != 0) {
            rep.violations.push_back({"1", t, i, {}, "restricted index has z_" + std::to_string(s) + " != 0"});
            reported.insert({1, i});
            break;
          }
      } else {
        if (reported.count({2, i})) continue;
        bool hit = false;
        for (std::size_t s = 1; s <= t && !hit; ++s) hit = cert.z[s - 1][i] == 1;
        if (!hit) {
          rep.violations.push_back({"2", t, i, {}, "unrestricted index never took value 1"});
          reported.insert({2, i});
        }
      }
    }
  }

  const auto& last = cert.R[T - 1];
  if (std::any_of(last.begin(), last.end(), [](bool b) { return b; }))
    rep.violations.push_back({"3", T, {}, {}, "R_T is not empty"});
  return rep;
}

VerificationReport verify_gcc(const IntMatrix& a, const GCCCertificate& cert, Flavor flavor) {
  if (flavor == Flavor::cc) throw std::invalid_argument("verify_gcc needs the weak or strong flavor");
  check_vectors(a, cert.n, cert.z);
  if (cert.R.size() != cert.z.size()) throw DimensionError("certificate has unequal z and R counts");
  for (const auto& g : cert.R)
    if (g.order() != cert.n) throw DimensionError("restriction graph order differs from n");

  VerificationReport rep;
  rep.flavor = flavor;
  if (cert.z.size() < 2) {
    rep.violations.push_back({"shape", 0, {}, {}, "T must be at least 1"});
    return rep;
  }
  const std::size_t T = cert.T();
  const std::size_t n = cert.n;
  const bool strong = flavor == Flavor::strong;

  for (std::size_t i = 0; i < n; ++i)
    if (cert.z[0][i] != 1) {
      rep.violations.push_back({"4", 0, i, {}, "z_0 is not the all-ones vector"});
      break;
    }
  if (!cert.R[0].is_complete()) rep.violations.push_back({"R0", 0, {}, {}, "R_0 is not complete"});

  for (std::size_t t = 0; t <= T; ++t)
    if (!in_nullspace(a, cert.z[t])) rep.violations.push_back({"nullspace", t, {}, {}, "A z_t != 0"});
  for (std::size_t t = 1; t <= T; ++t)
    if (!cert.R[t].subgraph_of(cert.R[t - 1]))
      rep.violations.push_back({"monotone", t, {}, {}, "R_t not contained in R_{t-1}"});

  const std::string c1 = strong ? "1*" : "1";
  const std::string c2 = strong ? "2*" : "2";
  auto is01 = [](const Rational& q) { return q == 0 || q == 1; };
  auto separated = [&](const Rational& u, const Rational& v) {
    if (strong) return (u == 0 && v == 1) || (u == 1 && v == 0);
    return abs(Rational(v - u)) == 1;
  };

  std::set<std::tuple<int, std::size_t, std::size_t>> reported;
  for (std::size_t t = 0; t <= T; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (cert.R[t].has(i, j)) {
          if (reported.count({1, i, j})) continue;
          for (std::size_t s = 0; s < t; ++s) {
            const auto& zi = cert.z[s][i];
            const auto& zj = cert.z[s][j];
            if (zi != zj || (strong && !is01(zi))) {
              rep.violations.push_back({c1, t, i, j,
                                        "restricted pair differs at s=" + std::to_string(s) +
                                            " (" + zi.get_str() + ", " + zj.get_str() + ")"});
              reported.insert({1, i, j});
              break;
            }
          }
        } else {
          if (reported.count({2, i, j})) continue;
          bool hit = false;
          for (std::size_t s = 0; s <= t && !hit; ++s) hit = separated(cert.z[s][i], cert.z[s][j]);
          if (!hit) {
            rep.violations.push_back({c2, t, i, j,
                                      strong ? "unrestricted pair never split as {0,1}"
                                             : "unrestricted pair never had a unit gap"});
            reported.insert({2, i, j});
          }
        }
      }
    }
  }

  if (!cert.R[T].edgeless()) rep.violations.push_back({"3", T, {}, {}, "R_T has edges"});
  return rep;
}

std::size_t unrestriction_time(const GCCCertificate& cert, std::size_t i, std::size_t j) {
  if (i == j) throw std::invalid_argument("unrestriction_time needs two distinct columns");
  if (i >= cert.n || j >= cert.n) throw std::out_of_range("column index out of range");
  for (std::size_t t = 0; t < cert.R.size(); ++t)
    if (!cert.R[t].has(i, j)) return t;
  throw std::logic_error("pair restricted through R_T; certificate is not valid");
}

// ---------------------------------------------------------------- search_cc

namespace {

// Residues of each column modulo span(used), scaled to a common integer
// lattice. sum over S lies in span(used) iff the residues over S sum to 0.
std::vector<IntVector> residues_mod_span(const IntMatrix& a, const std::vector<bool>& used,
                                         const std::vector<std::size_t>& targets) {
  const std::size_t m = a.rows();
  std::vector<std::size_t> basis_cols;
  for (std::size_t c = 0; c < a.cols(); ++c)
    if (used[c]) basis_cols.push_back(c);

  // Rows of `ech` are the used columns; rref gives an echelon basis of their span.
  RatMatrix ech(basis_cols.size(), m);
  for (std::size_t r = 0; r < basis_cols.size(); ++r)
    for (std::size_t k = 0; k < m; ++k) ech(r, k) = a(k, basis_cols[r]);
  const auto pivots = rref(ech);

  std::vector<RatVector> res;
  Integer lcm = 1;
  for (std::size_t c : targets) {
    RatVector v(m);
    for (std::size_t k = 0; k < m; ++k) v[k] = a(k, c);
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      const Rational f = v[pivots[r]];
      if (f == 0) continue;
      for (std::size_t k = 0; k < m; ++k) v[k] -= f * ech(r, k);
    }
    for (const auto& q : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    res.push_back(std::move(v));
  }

  std::vector<IntVector> out;
  for (const auto& v : res) {
    IntVector iv(m);
    for (std::size_t k = 0; k < m; ++k) iv[k] = v[k].get_num() * (lcm / v[k].get_den());
    out.push_back(std::move(iv));
  }
  return out;
}

template <class Scalar>
std::optional<std::uint64_t> first_zero_subset(const std::vector<std::vector<Scalar>>& vecs, std::size_t m) {
  const std::size_t k = vecs.size();
  const std::uint64_t total = std::uint64_t{1} << k;
  std::vector<Scalar> sums(total * m);
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    const std::size_t low = static_cast<std::size_t>(__builtin_ctzll(mask));
    const std::uint64_t rest = mask & (mask - 1);
    bool zero = true;
    for (std::size_t r = 0; r < m; ++r) {
      Scalar s = sums[rest * m + r] + vecs[low][r];
      zero = zero && s == 0;
      sums[mask * m + r] = s;
    }
    if (zero) return mask;
  }
  return std::nullopt;
}

// Lowest mask (in increasing binary order, bit k = k-th vector) whose sum vanishes.
std::optional<std::uint64_t> first_zero_subset(const std::vector<IntVector>& vecs, std::size_t m) {
  if (vecs.empty()) return std::nullopt;
  if (vecs.size() > 26) throw std::length_error("instance too large");
  Integer bound = 0;
  for (std::size_t r = 0; r < m; ++r) {
    Integer col = 0;
    for (const auto& v : vecs) col += abs(v[r]);
    bound = std::max(bound, col);
  }
  if (bound < Integer(1) << 62) {
    std::vector<std::vector<std::int64_t>> small;
    for (const auto& v : vecs) {
      std::vector<std::int64_t> s(m);
      for (std::size_t r = 0; r < m; ++r) s[r] = v[r].get_si();
      small.push_back(std::move(s));
    }
    return first_zero_subset<std::int64_t>(small, m);
  }
  return first_zero_subset<Integer>(vecs, m);
}

}  // namespace

std::optional<CCCertificate> search_cc(const IntMatrix& a, const CcSearchOptions& opts) {
  if (a.empty()) throw std::invalid_argument("search_cc on an empty matrix");
  const std::size_t n = a.cols();
  if (n > opts.max_columns)
    throw std::length_error("instance too large: " + std::to_string(n) + " columns exceeds limit " +
                            std::to_string(opts.max_columns));

  // Any valid next block stays valid (minus what is already used) after other
  // blocks are taken, so greedily taking the first valid block never loses a
  // certificate: the search is complete.
  std::vector<bool> used(n, false);
  std::vector<std::vector<std::size_t>> blocks;
  std::size_t used_count = 0;
  while (used_count < n) {
    std::vector<std::size_t> remaining;
    for (std::size_t c = 0; c < n; ++c)
      if (!used[c]) remaining.push_back(c);
    const auto res = residues_mod_span(a, used, remaining);
    const auto mask = first_zero_subset(res, a.rows());
    if (!mask) return std::nullopt;
    std::vector<std::size_t> block;
    for (std::size_t k = 0; k < remaining.size(); ++k)
      if ((*mask >> k) & 1) block.push_back(remaining[k]);
    blocks.push_back(block);
    for (std::size_t c : block) used[c] = true;
    used_count += block.size();
  }

  CCCertificate cert;
  cert.n = n;
  std::vector<bool> covered(n, false);
  for (std::size_t t = 0; t < blocks.size(); ++t) {
    RatVector z(n);
    if (t > 0) {
      std::vector<std::size_t> prior;
      for (std::size_t c = 0; c < n; ++c)
        if (covered[c]) prior.push_back(c);
      RatMatrix m(a.rows(), prior.size());
      for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t k = 0; k < prior.size(); ++k) m(r, k) = a(r, prior[k]);
      RatVector rhs(a.rows());
      for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c : blocks[t]) rhs[r] += a(r, c);
      const auto lambda = solve(m, rhs);
      if (!lambda) throw std::logic_error("search_cc: block sum left the span");
      for (std::size_t k = 0; k < prior.size(); ++k) z[prior[k]] = -(*lambda)[k];
    }
    for (std::size_t c : blocks[t]) {
      z[c] = 1;
      covered[c] = true;
    }
    std::vector<bool> r(n);
    for (std::size_t c = 0; c < n; ++c) r[c] = !covered[c];
    cert.z.push_back(std::move(z));
    cert.R.push_back(std::move(r));
  }

  if (!verify_cc(a, cert).accepted()) throw std::logic_error("search_cc produced an invalid certificate");
  return cert;
}

// ---------------------------------------------------------------- search_gcc

namespace {

using Labels = std::vector<std::size_t>;

Labels normalize(const Labels& raw) {
  std::map<std::size_t, std::size_t> remap;
  Labels out(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    auto it = remap.find(raw[i]);
    if (it == remap.end()) it = remap.emplace(raw[i], remap.size()).first;
    out[i] = it->second;
  }
  return out;
}

class GccSearch {
 public:
  GccSearch(const IntMatrix& a, Flavor flavor, const GccSearchBounds& bounds)
      : a_(a), n_(a.cols()), strong_(flavor == Flavor::strong), bounds_(bounds), meter_(bounds.budget) {}

  std::optional<std::vector<RatVector>> run() {
    Labels all(n_, 0);
    std::vector<RatVector> history;
    std::vector<Labels> parts{all};
    if (step(1, all, history, parts)) {
      partitions_ = std::move(parts);
      return history;
    }
    return std::nullopt;
  }

  const std::vector<Labels>& partitions() const { return partitions_; }
  bool exhausted() const { return meter_.exhausted(); }
  std::uint64_t nodes() const { return meter_.nodes(); }

 private:
  // Chooses z_t given the partition P_{t-1}; on success the history holds z_1..z_T.
  bool step(std::size_t t, const Labels& part, std::vector<RatVector>& history, std::vector<Labels>& parts) {
    const std::size_t remaining = bounds_.max_steps - t + 1;
    if (auto it = failed_.find(part); it != failed_.end() && it->second >= remaining) return false;

    std::vector<std::size_t> block_size(n_, 0);
    for (std::size_t l : part) ++block_size[l];
    std::vector<std::size_t> restricted, free_cols;
    for (std::size_t i = 0; i < n_; ++i) (block_size[part[i]] > 1 ? restricted : free_cols).push_back(i);

    // Weak: the first column of each block carries bit 0, the block offset is solved for.
    std::vector<std::size_t> block_first(n_, n_);
    for (std::size_t i : restricted)
      if (block_first[part[i]] == n_) block_first[part[i]] = i;
    std::vector<std::size_t> enumerated;
    for (std::size_t i : restricted)
      if (strong_ || block_first[part[i]] != i) enumerated.push_back(i);
    std::vector<std::size_t> offsets;  // block labels carrying an unknown offset
    if (!strong_)
      for (std::size_t l = 0; l < n_; ++l)
        if (block_first[l] != n_) offsets.push_back(l);

    const std::size_t k = enumerated.size();
    if (k >= 63) throw std::length_error("instance too large");
    const std::uint64_t total = std::uint64_t{1} << k;
    for (std::uint64_t code = 0; code < total; ++code) {
      // Lexicographic over enumerated columns, first column most significant, 0 before 1.
      std::vector<int> bit(n_, 0);
      for (std::size_t q = 0; q < k; ++q) bit[enumerated[q]] = (code >> (k - 1 - q)) & 1;

      Labels next(n_);
      bool split = false;
      for (std::size_t i = 0; i < n_; ++i) next[i] = part[i] * 2 + static_cast<std::size_t>(bit[i]);
      for (std::size_t i : restricted)
        if (bit[i] != bit[block_first[part[i]]]) split = true;
      if (!split) continue;

      if (!meter_.tick()) return false;
      auto z = complete(bit, free_cols, offsets, part);
      if (!z) continue;

      next = normalize(next);
      history.push_back(*z);
      parts.push_back(next);
      bool singletons = true;
      for (std::size_t i = 0; i < n_ && singletons; ++i)
        for (std::size_t j = i + 1; j < n_; ++j)
          if (next[i] == next[j]) {
            singletons = false;
            break;
          }
      if (singletons) return true;
      if (remaining > 1 && step(t + 1, next, history, parts)) return true;
      history.pop_back();
      parts.pop_back();
      if (meter_.exhausted()) return false;
    }
    auto& f = failed_[part];
    f = std::max(f, remaining);
    return false;
  }

  // Solves for the free columns (and weak block offsets) so that A z = 0.
  std::optional<RatVector> complete(const std::vector<int>& bit, const std::vector<std::size_t>& free_cols,
                                    const std::vector<std::size_t>& offsets, const Labels& part) {
    const std::size_t m = a_.rows();
    const std::size_t u = free_cols.size() + offsets.size();
    RatMatrix sys(m, u);
    RatVector rhs(m);
    for (std::size_t r = 0; r < m; ++r) {
      Rational fixed = 0;
      for (std::size_t i = 0; i < n_; ++i)
        if (bit[i]) fixed += a_(r, i);
      rhs[r] = -fixed;
      for (std::size_t q = 0; q < free_cols.size(); ++q) sys(r, q) = a_(r, free_cols[q]);
      for (std::size_t q = 0; q < offsets.size(); ++q) {
        Rational s = 0;
        for (std::size_t i = 0; i < n_; ++i)
          if (part[i] == offsets[q]) s += a_(r, i);
        sys(r, free_cols.size() + q) = s;
      }
    }
    const auto sol = solve(sys, rhs);
    if (!sol) return std::nullopt;
    RatVector z(n_);
    for (std::size_t i = 0; i < n_; ++i) z[i] = bit[i];
    for (std::size_t q = 0; q < free_cols.size(); ++q) z[free_cols[q]] = (*sol)[q];
    for (std::size_t q = 0; q < offsets.size(); ++q)
      for (std::size_t i = 0; i < n_; ++i)
        if (part[i] == offsets[q]) z[i] += (*sol)[free_cols.size() + q];
    return z;
  }

  const IntMatrix& a_;
  std::size_t n_;
  bool strong_;
  GccSearchBounds bounds_;
  BudgetMeter meter_;
  std::map<Labels, std::size_t> failed_;
  std::vector<Labels> partitions_;
};

}  // namespace

GccSearchResult search_gcc(const IntMatrix& a, Flavor flavor, const GccSearchBounds& bounds) {
  if (flavor == Flavor::cc) throw std::invalid_argument("search_gcc needs the weak or strong flavor");
  if (bounds.max_steps < 1) throw std::invalid_argument("T_max must be at least 1");
  if (a.empty()) throw std::invalid_argument("search_gcc on an empty matrix");
  for (std::size_t c = 0; c < a.cols(); ++c) {
    bool zero = true;
    for (std::size_t r = 0; r < a.rows(); ++r) zero = zero && a(r, c) == 0;
    if (zero) throw std::invalid_argument("degenerate matrix: column " + std::to_string(c + 1) + " is zero");
  }

  GccSearchResult out;
  const RatVector ones(a.cols(), Rational(1));
  if (!in_nullspace(a, ones)) {
    out.reason = "column sums are not zero, so z_0 = 1 is not in the nullspace";
    return out;
  }
  if (a.cols() < 2) {
    out.reason = "fewer than two columns";
    return out;
  }

  GccSearch search(a, flavor, bounds);
  auto zs = search.run();
  out.nodes = search.nodes();
  if (!zs) {
    out.reason = search.exhausted() ? "search budget exhausted"
                                    : "no certificate within T_max = " + std::to_string(bounds.max_steps);
    return out;
  }

  GCCCertificate cert;
  cert.n = a.cols();
  cert.flavor = flavor;
  cert.z.push_back(ones);
  for (auto& z : *zs) cert.z.push_back(std::move(z));
  for (const auto& labels : search.partitions()) cert.R.push_back(Graph::from_blocks(labels));
  if (!verify_gcc(a, cert, flavor).accepted()) throw std::logic_error("search_gcc produced an invalid certificate");
  out.certificate = std::move(cert);
  return out;
}

}  // namespace rgl
