#include "rgl/ratmath.hpp"

#include <fstream>
#include <sstream>

namespace rgl {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw DimensionError("ragged matrix rows");
    for (long v : r) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw DimensionError("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols_; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_);
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

IntMatrix IntMatrix::permute_columns(const std::vector<std::size_t>& perm) const {
  if (perm.size() != cols_) throw DimensionError("permutation length differs from column count");
  std::vector<bool> seen(cols_, false);
  for (std::size_t p : perm) {
    if (p >= cols_ || seen[p]) throw std::invalid_argument("not a permutation");
    seen[p] = true;
  }
  IntMatrix out(rows_, cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, perm[c]);
  return out;
}

RatMatrix::RatMatrix(const IntMatrix& m) : RatMatrix(m.rows(), m.cols()) {
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = m(r, c);
}

std::vector<std::size_t> rref(RatMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    if (sel != row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(sel, c), m(row, c));
    const Rational inv = 1 / m(row, col);
    for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Rational f = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(RatMatrix m) { return rref(m).size(); }
std::size_t rank(const IntMatrix& a) { return rank(RatMatrix(a)); }

std::vector<RatVector> nullspace_basis(const RatMatrix& a) {
  RatMatrix m = a;
  const auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : pivots) is_pivot[p] = true;

  std::vector<RatVector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    RatVector v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<RatVector> nullspace_basis(const IntMatrix& a) {
  if (a.empty()) throw std::invalid_argument("nullspace of an empty matrix");
  return nullspace_basis(RatMatrix(a));
}

RatVector multiply(const IntMatrix& a, const RatVector& v) {
  if (v.size() != a.cols())
    throw DimensionError("vector length " + std::to_string(v.size()) + " != column count " +
                         std::to_string(a.cols()));
  RatVector out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Rational acc = 0;
    for (std::size_t c = 0; c < a.cols(); ++c)
      if (a(r, c) != 0) acc += a(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

IntVector multiply(const IntMatrix& a, const IntVector& v) {
  if (v.size() != a.cols())
    throw DimensionError("vector length " + std::to_string(v.size()) + " != column count " +
                         std::to_string(a.cols()));
  IntVector out(a.rows());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    Integer acc = 0;
    for (std::size_t c = 0; c < a.cols(); ++c) acc += a(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

bool in_nullspace(const IntMatrix& a, const RatVector& v) { return is_zero(multiply(a, v)); }

std::optional<RatVector> solve(const RatMatrix& m, const RatVector& rhs) {
  if (rhs.size() != m.rows()) throw DimensionError("right-hand side length differs from row count");
  RatMatrix aug(m.rows(), m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) aug(r, c) = m(r, c);
    aug(r, m.cols()) = rhs[r];
  }
  const auto pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;
  RatVector u(m.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r) u[pivots[r]] = aug(r, m.cols());
  return u;
}

IntVector integerize(const RatVector& v) {
  if (is_zero(v)) throw std::invalid_argument("cannot integerize the zero vector");
  Integer lcm = 1;
  for (const auto& q : v) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
  IntVector out(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = v[i].get_num() * (lcm / v[i].get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[i].get_mpz_t());
  }
  bool negate = false;
  for (const auto& e : out)
    if (e != 0) {
      negate = e < 0;
      break;
    }
  for (auto& e : out) {
    e /= g;
    if (negate) e = -e;
  }
  return out;
}

RatVector to_rational(const IntVector& v) {
  RatVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

bool is_zero(const RatVector& v) {
  for (const auto& q : v)
    if (q != 0) return false;
  return true;
}

Rational max_norm(const RatVector& v) {
  Rational m = 0;
  for (const auto& q : v) {
    Rational a = abs(q);
    if (a > m) m = a;
  }
  return m;
}

Integer ceil(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return out;
}

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  auto parse_int = [&](const std::string& t) {
    if (t.empty()) throw std::invalid_argument("malformed rational '" + s + "'");
    Integer z;
    std::size_t start = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (start == t.size()) throw std::invalid_argument("malformed rational '" + s + "'");
    for (std::size_t i = start; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') throw std::invalid_argument("malformed rational '" + s + "'");
    z.set_str(t[0] == '+' ? t.substr(1) : t, 10);
    return z;
  };
  if (slash == std::string::npos) return Rational(parse_int(s));
  Integer num = parse_int(s.substr(0, slash));
  Integer den = parse_int(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

Integer parse_integer_token(const std::string& tok, std::size_t line) {
  Integer z;
  const std::string body = (!tok.empty() && tok[0] == '+') ? tok.substr(1) : tok;
  if (body.empty() || z.set_str(body, 10) != 0) throw ParseError("not an integer: '" + tok + "'", line);
  return z;
}

std::size_t parse_count(const std::string& tok, std::size_t line) {
  Integer z = parse_integer_token(tok, line);
  if (z < 1 || z > 1'000'000) throw ParseError("dimension out of range: '" + tok + "'", line);
  return z.get_ui();
}

}  // namespace

IntMatrix parse_matrix(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  auto next_content = [&](std::vector<std::string>& toks) {
    while (std::getline(in, line)) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      toks = split_ws(line);
      if (!toks.empty()) return true;
    }
    return false;
  };

  std::vector<std::string> toks;
  if (!next_content(toks)) throw ParseError("missing header '<rows> <cols>'", lineno + 1);
  if (toks.size() != 2) throw ParseError("header must be '<rows> <cols>'", lineno);
  const std::size_t rows = parse_count(toks[0], lineno);
  const std::size_t cols = parse_count(toks[1], lineno);

  IntMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!next_content(toks)) throw ParseError("expected " + std::to_string(rows) + " rows", lineno + 1);
    if (toks.size() != cols)
      throw ParseError("row has " + std::to_string(toks.size()) + " entries, expected " +
                           std::to_string(cols),
                       lineno);
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = parse_integer_token(toks[c], lineno);
  }
  if (next_content(toks)) throw ParseError("trailing content after last row", lineno);
  return m;
}

IntMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix(in);
}

IntMatrix load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_matrix(in);
}

std::string format_matrix(const IntMatrix& a) {
  std::ostringstream out;
  out << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out << (c ? " " : "") << a(r, c).get_str();
    out << '\n';
  }
  return out.str();
}

}  // namespace rgl
