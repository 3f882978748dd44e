#include "macring/linalg.hpp"

#include <algorithm>
#include <set>

#include "macring/errors.hpp"
#include "macring/sparse.hpp"

namespace mac {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Coefficients Coefficients::mod(std::int64_t p) {
  if (!is_prime(p)) throw InputError("coefficient modulus " + std::to_string(p) + " is not prime");
  if (p > (std::int64_t{1} << 31)) throw InputError("coefficient modulus too large");
  return Coefficients(p);
}

Coefficients Coefficients::parse(std::string_view text) {
  if (text == "Z") return integers();
  std::string_view rest;
  if (text.starts_with("Zp:")) rest = text.substr(3);
  else if (text.starts_with("Z/")) rest = text.substr(2);
  else throw InputError("unknown coefficient ring '" + std::string(text) + "' (use Z or Zp:<p>)");
  std::int64_t p = 0;
  for (char c : rest) {
    if (c < '0' || c > '9' || p > (std::int64_t{1} << 40)) throw InputError("bad modulus in '" + std::string(text) + "'");
    p = p * 10 + (c - '0');
  }
  if (rest.empty()) throw InputError("missing modulus in '" + std::string(text) + "'");
  return mod(p);
}

Integer Coefficients::normalize(const Integer& x) const {
  if (p_ == 0) return x;
  Integer r = x % p_;
  if (r < 0) r += p_;
  return r;
}

std::string Coefficients::name() const { return p_ == 0 ? "Z" : "Z/" + std::to_string(p_); }

void xgcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
  Integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Integer q = r0 / r1;
    Integer r2 = r0 - q * r1;
    r0 = std::move(r1);
    r1 = std::move(r2);
    Integer s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    Integer t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  g = r0;
  s = s0;
  t = t0;
}

// --------------------------------------------------------------- IntMatrix

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_.emplace(Position{i, i}, 1);
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long long>>& rows) {
  IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) throw InputError("ragged matrix rows");
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      if (rows[r][c] != 0) m.entries_.emplace(Position{r, c}, rows[r][c]);
  }
  return m;
}

Integer IntMatrix::at(std::size_t r, std::size_t c) const {
  auto it = entries_.find({r, c});
  return it == entries_.end() ? Integer(0) : it->second;
}

void IntMatrix::set(std::size_t r, std::size_t c, const Integer& value) {
  if (r >= rows_ || c >= cols_) throw InputError("matrix position out of bounds");
  if (value == 0) entries_.erase({r, c});
  else entries_[{r, c}] = value;
}

void IntMatrix::add(std::size_t r, std::size_t c, const Integer& value) {
  if (r >= rows_ || c >= cols_) throw InputError("matrix position out of bounds");
  if (value == 0) return;
  auto [it, fresh] = entries_.try_emplace({r, c}, value);
  if (!fresh) {
    it->second += value;
    if (it->second == 0) entries_.erase(it);
  }
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw InputError("matrix product dimension mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (const auto& [pos, a] : entries_) {
    auto it = rhs.entries_.lower_bound({pos.second, 0});
    for (; it != rhs.entries_.end() && it->first.first == pos.second; ++it) out.add(pos.first, it->first.second, a * it->second);
  }
  return out;
}

std::vector<Integer> IntMatrix::operator*(const std::vector<Integer>& x) const {
  if (x.size() != cols_) throw InputError("matrix-vector dimension mismatch");
  std::vector<Integer> y(rows_);
  for (const auto& [pos, a] : entries_) y[pos.first] += a * x[pos.second];
  return y;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix out(cols_, rows_);
  for (const auto& [pos, a] : entries_) out.entries_.emplace(Position{pos.second, pos.first}, a);
  return out;
}

IntMatrix IntMatrix::permuted(const std::vector<std::size_t>& row_perm, const std::vector<std::size_t>& col_perm) const {
  IntMatrix out(rows_, cols_);
  for (const auto& [pos, a] : entries_) out.entries_.emplace(Position{row_perm[pos.first], col_perm[pos.second]}, a);
  return out;
}

Integer IntMatrix::determinant() const {
  if (rows_ != cols_) throw InputError("determinant of a non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  for (const auto& [pos, v] : entries_) a[pos.first][pos.second] = v;
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

IntMatrix SmithDecomposition::diagonal_matrix(std::size_t rows, std::size_t cols) const {
  IntMatrix d(rows, cols);
  for (std::size_t i = 0; i < diagonal.size(); ++i) d.set(i, i, diagonal[i]);
  return d;
}

// ------------------------------------------------------ Smith normal form

namespace {

/// Working matrix for elimination: sparse rows with column occupancy sets,
/// switched to dense storage once the fill exceeds 30%.
class SnfWork {
 public:
  SnfWork(std::size_t rows, std::size_t cols) : nr_(rows), nc_(cols), rows_(rows), colrows_(cols) {}

  std::size_t rows() const { return nr_; }
  std::size_t cols() const { return nc_; }
  bool dense() const { return dense_; }

  Integer get(std::size_t r, std::size_t c) const {
    if (dense_) return d_[r][c];
    auto it = rows_[r].find(static_cast<std::uint32_t>(c));
    return it == rows_[r].end() ? Integer(0) : it->second;
  }

  void set(std::size_t r, std::size_t c, Integer v) {
    if (dense_) {
      if ((d_[r][c] == 0) != (v == 0)) nnz_ += v == 0 ? -1 : 1;
      d_[r][c] = std::move(v);
      return;
    }
    auto key = static_cast<std::uint32_t>(c);
    auto it = rows_[r].find(key);
    if (v == 0) {
      if (it != rows_[r].end()) {
        rows_[r].erase(it);
        colrows_[c].erase(static_cast<std::uint32_t>(r));
        --nnz_;
      }
    } else if (it != rows_[r].end()) {
      it->second = std::move(v);
    } else {
      rows_[r].emplace(key, std::move(v));
      colrows_[c].insert(static_cast<std::uint32_t>(r));
      ++nnz_;
    }
  }

  std::vector<std::size_t> row_support(std::size_t r) const {
    std::vector<std::size_t> out;
    if (dense_) {
      for (std::size_t c = 0; c < nc_; ++c)
        if (d_[r][c] != 0) out.push_back(c);
    } else {
      for (const auto& [c, v] : rows_[r]) out.push_back(c);
    }
    return out;
  }

  std::vector<std::size_t> col_support(std::size_t c) const {
    std::vector<std::size_t> out;
    if (dense_) {
      for (std::size_t r = 0; r < nr_; ++r)
        if (d_[r][c] != 0) out.push_back(r);
    } else {
      for (auto r : colrows_[c]) out.push_back(r);
    }
    return out;
  }

  std::size_t row_count(std::size_t r) const { return dense_ ? row_support(r).size() : rows_[r].size(); }
  std::size_t col_count(std::size_t c) const { return dense_ ? col_support(c).size() : colrows_[c].size(); }

  /// (row i, row j) <- (a·row i + b·row j, c·row i + d·row j)
  void combine_rows(std::size_t i, std::size_t j, const Integer& a, const Integer& b, const Integer& c,
                    const Integer& d) {
    std::vector<std::size_t> support = row_support(i);
    auto sj = row_support(j);
    support.insert(support.end(), sj.begin(), sj.end());
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    for (std::size_t col : support) {
      Integer x = get(i, col), y = get(j, col);
      set(i, col, a * x + b * y);
      set(j, col, c * x + d * y);
    }
    maybe_densify();
  }

  void combine_cols(std::size_t i, std::size_t j, const Integer& a, const Integer& b, const Integer& c,
                    const Integer& d) {
    std::vector<std::size_t> support = col_support(i);
    auto sj = col_support(j);
    support.insert(support.end(), sj.begin(), sj.end());
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    for (std::size_t row : support) {
      Integer x = get(row, i), y = get(row, j);
      set(row, i, a * x + b * y);
      set(row, j, c * x + d * y);
    }
    maybe_densify();
  }

  void negate_row(std::size_t r) {
    for (std::size_t c : row_support(r)) set(r, c, -get(r, c));
  }

  IntMatrix to_matrix() const {
    IntMatrix m(nr_, nc_);
    for (std::size_t r = 0; r < nr_; ++r)
      for (std::size_t c : row_support(r)) m.set(r, c, get(r, c));
    return m;
  }

  static SnfWork from(const IntMatrix& m) {
    SnfWork w(m.rows(), m.cols());
    for (const auto& [pos, v] : m.entries()) w.set(pos.first, pos.second, v);
    w.maybe_densify();
    return w;
  }

  static SnfWork identity(std::size_t n) {
    SnfWork w(n, n);
    for (std::size_t i = 0; i < n; ++i) w.set(i, i, 1);
    return w;
  }

 private:
  void maybe_densify() {
    if (dense_ || nr_ * nc_ < 64 || nnz_ * 10 <= nr_ * nc_ * 3) return;
    d_.assign(nr_, std::vector<Integer>(nc_));
    for (std::size_t r = 0; r < nr_; ++r)
      for (auto& [c, v] : rows_[r]) d_[r][c] = std::move(v);
    rows_.clear();
    colrows_.clear();
    dense_ = true;
  }

  std::size_t nr_, nc_;
  std::size_t nnz_ = 0;
  bool dense_ = false;
  std::vector<std::map<std::uint32_t, Integer>> rows_;
  std::vector<std::set<std::uint32_t>> colrows_;
  std::vector<std::vector<Integer>> d_;
};

class SmithReducer {
 public:
  explicit SmithReducer(const IntMatrix& m)
      : w_(SnfWork::from(m)), u_(SnfWork::identity(m.rows())), vt_(SnfWork::identity(m.cols())) {}

  SmithDecomposition run() {
    const std::size_t limit = std::min(w_.rows(), w_.cols());
    std::size_t t = 0;
    for (; t < limit; ++t) {
      auto pivot = choose_pivot(t);
      if (!pivot) break;
      if (pivot->first != t) row_op(t, pivot->first, 0, 1, 1, 0);
      if (pivot->second != t) col_op(t, pivot->second, 0, 1, 1, 0);
      clear(t);
    }
    const std::size_t rank = t;
    for (std::size_t i = 0; i < rank; ++i)
      for (std::size_t j = i + 1; j < rank; ++j) {
        Integer a = w_.get(i, i), b = w_.get(j, j);
        if (b % a == 0) continue;
        col_op(i, j, 1, 1, 0, 1);
        clear(i);
      }
    SmithDecomposition out;
    for (std::size_t i = 0; i < rank; ++i) {
      if (w_.get(i, i) < 0) {
        w_.negate_row(i);
        u_.negate_row(i);
      }
      out.diagonal.push_back(w_.get(i, i));
    }
    out.rank = rank;
    out.U = u_.to_matrix();
    out.V = vt_.to_matrix().transposed();
    return out;
  }

 private:
  std::optional<std::pair<std::size_t, std::size_t>> choose_pivot(std::size_t t) const {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Integer best_abs;
    std::size_t best_weight = 0;
    std::vector<std::size_t> col_counts(w_.cols());
    for (std::size_t c = t; c < w_.cols(); ++c) col_counts[c] = w_.col_count(c);
    for (std::size_t r = t; r < w_.rows(); ++r) {
      auto support = w_.row_support(r);
      for (std::size_t c : support) {
        if (c < t) continue;
        Integer v = abs(w_.get(r, c));
        std::size_t weight = support.size() + col_counts[c];
        if (!best || v < best_abs || (v == best_abs && weight < best_weight)) {
          best = {r, c};
          best_abs = v;
          best_weight = weight;
        }
      }
    }
    return best;
  }

  void row_op(std::size_t i, std::size_t j, const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
    w_.combine_rows(i, j, a, b, c, d);
    u_.combine_rows(i, j, a, b, c, d);
  }

  void col_op(std::size_t i, std::size_t j, const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
    w_.combine_cols(i, j, a, b, c, d);
    vt_.combine_rows(i, j, a, b, c, d);
  }

  // Makes (t,t) the only nonzero entry of row t and column t.
  void clear(std::size_t t) {
    for (;;) {
      for (std::size_t r : w_.col_support(t)) {
        if (r == t) continue;
        Integer p = w_.get(t, t), e = w_.get(r, t);
        if (e % p == 0) {
          row_op(t, r, 1, 0, -(e / p), 1);
        } else {
          Integer g, s, u;
          xgcd(p, e, g, s, u);
          row_op(t, r, s, u, -(e / g), p / g);
        }
      }
      bool dirty = false;
      for (std::size_t c : w_.row_support(t)) {
        if (c == t) continue;
        Integer p = w_.get(t, t), e = w_.get(t, c);
        if (e % p == 0) {
          col_op(t, c, 1, 0, -(e / p), 1);
        } else {
          Integer g, s, u;
          xgcd(p, e, g, s, u);
          col_op(t, c, s, u, -(e / g), p / g);
          dirty = true;
        }
      }
      if (!dirty) return;
    }
  }

  SnfWork w_, u_, vt_;
};

}  // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
  SmithDecomposition d = SmithReducer(m).run();
#ifdef MACRING_SELF_CHECK
  if (!(d.U * m * d.V == d.diagonal_matrix(m.rows(), m.cols())))
    throw InvariantViolation("Smith normal form reconstruction failed");
  for (std::size_t i = 1; i < d.diagonal.size(); ++i)
    if (d.diagonal[i] % d.diagonal[i - 1] != 0) throw InvariantViolation("Smith normal form divisibility failed");
#endif
  return d;
}

std::size_t rank_mod_p(const IntMatrix& m, std::int64_t p) {
  if (!is_prime(p)) throw InputError("rank_mod_p: " + std::to_string(p) + " is not prime");
  sparse::PrimeField f{p};
  std::vector<sparse::Vec<std::int64_t>> cols(m.cols());
  for (const auto& [pos, v] : m.entries()) {
    auto x = f.from_integer(v);
    if (x != 0) cols[pos.second].emplace_back(static_cast<std::uint32_t>(pos.first), x);
  }
  sparse::Echelon<sparse::PrimeField> ech(f, m.rows(), false);
  for (auto& c : cols) {
    std::sort(c.begin(), c.end());
    ech.insert(std::move(c));
  }
  return ech.size();
}

std::optional<std::vector<Integer>> solve_in_image(const IntMatrix& m, const std::vector<Integer>& b,
                                                   const Coefficients& ring) {
  if (b.size() != m.rows()) throw InputError("solve_in_image: right-hand side has the wrong length");
  if (!ring.is_field()) {
    SmithDecomposition snf = smith_normal_form(m);
    std::vector<Integer> c = snf.U * b;
    std::vector<Integer> y(m.cols());
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i < snf.rank) {
        if (c[i] % snf.diagonal[i] != 0) return std::nullopt;
        y[i] = c[i] / snf.diagonal[i];
      } else if (c[i] != 0) {
        return std::nullopt;
      }
    }
    return snf.V * y;
  }
  sparse::PrimeField f{ring.modulus()};
  using V = sparse::Vec<std::int64_t>;
  std::vector<V> cols(m.cols());
  for (const auto& [pos, v] : m.entries()) {
    auto x = f.from_integer(v);
    if (x != 0) cols[pos.second].emplace_back(static_cast<std::uint32_t>(pos.first), x);
  }
  sparse::Echelon<sparse::PrimeField> ech(f, m.rows(), true);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    std::sort(cols[j].begin(), cols[j].end());
    ech.insert(std::move(cols[j]), V{{static_cast<std::uint32_t>(j), 1}});
  }
  V target;
  for (std::size_t i = 0; i < b.size(); ++i) {
    auto x = f.from_integer(b[i]);
    if (x != 0) target.emplace_back(static_cast<std::uint32_t>(i), x);
  }
  V acc;
  if (!ech.reduce(target, &acc)) return std::nullopt;
  std::vector<Integer> x(m.cols());
  for (const auto& [j, v] : acc) x[j] = v;
  return x;
}

}  // namespace mac
