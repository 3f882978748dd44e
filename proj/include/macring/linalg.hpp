#pragma once

// Exact linear algebra over the integers and prime fields.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mac {

using Integer = boost::multiprecision::cpp_int;

bool is_prime(std::int64_t p);

/// Coefficient ring chosen at run time: the integers or Z/p for a prime p.
class Coefficients {
 public:
  static Coefficients integers() { return Coefficients(0); }
  static Coefficients mod(std::int64_t p);
  /// "Z", "Zp:<p>" (also "Z/<p>").
  static Coefficients parse(std::string_view text);

  bool is_field() const { return p_ != 0; }
  /// 0 for the integers.
  std::int64_t modulus() const { return p_; }
  /// Canonical representative: unchanged over Z, in [0, p) over Z/p.
  Integer normalize(const Integer& x) const;
  std::string name() const;

  friend bool operator==(const Coefficients&, const Coefficients&) = default;

 private:
  explicit Coefficients(std::int64_t p) : p_(p) {}
  std::int64_t p_ = 0;
};

/// Sparse integer matrix (row-major map of nonzero entries).
class IntMatrix {
 public:
  using Position = std::pair<std::size_t, std::size_t>;

  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}
  static IntMatrix identity(std::size_t n);
  static IntMatrix from_rows(const std::vector<std::vector<long long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const { return entries_.size(); }
  const std::map<Position, Integer>& entries() const { return entries_; }

  Integer at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const Integer& value);
  void add(std::size_t r, std::size_t c, const Integer& value);

  IntMatrix operator*(const IntMatrix& rhs) const;
  std::vector<Integer> operator*(const std::vector<Integer>& x) const;
  IntMatrix transposed() const;
  IntMatrix permuted(const std::vector<std::size_t>& row_perm, const std::vector<std::size_t>& col_perm) const;
  bool is_zero() const { return entries_.empty(); }
  /// Fraction-free (Bareiss) determinant of a square matrix.
  Integer determinant() const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::map<Position, Integer> entries_;
};

/// U·M·V = diag(d₁, …, d_r, 0, …) with d₁ | d₂ | … | d_r, all positive.
struct SmithDecomposition {
  IntMatrix U;
  IntMatrix V;
  std::vector<Integer> diagonal;  // the nonzero invariant factors
  std::size_t rank = 0;

  /// The full rows×cols diagonal matrix D.
  IntMatrix diagonal_matrix(std::size_t rows, std::size_t cols) const;
};

SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Throws InputError if p is not prime.
std::size_t rank_mod_p(const IntMatrix& m, std::int64_t p);

/// Some x with M·x = b over the ring, or nullopt. Throws InputError on a
/// dimension mismatch.
std::optional<std::vector<Integer>> solve_in_image(const IntMatrix& m, const std::vector<Integer>& b,
                                                   const Coefficients& ring);

/// Extended gcd: g = s·a + t·b, g ≥ 0.
void xgcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t);

}  // namespace mac
