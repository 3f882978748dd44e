#pragma once

// Sparse column echelon machinery shared by the cohomology code. Templated on
// a ring policy so the prime-field and small-integer paths run on int64 and
// only fall back to arbitrary precision when a checked operation overflows.

#include <cstdint>
#include <exception>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "macring/linalg.hpp"

namespace mac::sparse {

/// Thrown by CheckedInt64 when a result leaves the int64 range.
struct Overflow : std::exception {
  const char* what() const noexcept override { return "int64 overflow"; }
};

struct PrimeField {
  using Scalar = std::int64_t;
  static constexpr bool is_field = true;
  std::int64_t p = 2;

  Scalar from_integer(const Integer& x) const {
    Integer r = x % p;
    if (r < 0) r += p;
    return r.convert_to<std::int64_t>();
  }
  Scalar from_int(long long x) const {
    x %= p;
    return x < 0 ? x + p : x;
  }
  Integer to_integer(Scalar x) const { return Integer(x); }
  bool is_zero(Scalar a) const { return a == 0; }
  bool is_unit(Scalar a) const { return a != 0; }
  Scalar add(Scalar a, Scalar b) const {
    Scalar s = a + b;
    return s >= p ? s - p : s;
  }
  Scalar sub(Scalar a, Scalar b) const {
    Scalar s = a - b;
    return s < 0 ? s + p : s;
  }
  Scalar neg(Scalar a) const { return a == 0 ? 0 : p - a; }
  Scalar mul(Scalar a, Scalar b) const {
    return static_cast<Scalar>(static_cast<__int128>(a) * b % p);
  }
  Scalar inv(Scalar a) const {
    // a^(p-2)
    Scalar result = 1, base = a;
    for (std::int64_t e = p - 2; e > 0; e >>= 1) {
      if (e & 1) result = mul(result, base);
      base = mul(base, base);
    }
    return result;
  }
  bool divide(Scalar e, Scalar pivot, Scalar& q) const {
    q = mul(e, inv(pivot));
    return true;
  }
  void xgcd(Scalar, Scalar, Scalar&, Scalar&, Scalar&) const {}
};

struct CheckedInt64 {
  using Scalar = std::int64_t;
  static constexpr bool is_field = false;

  Scalar from_integer(const Integer& x) const {
    if (x > std::numeric_limits<std::int64_t>::max() || x < -std::numeric_limits<std::int64_t>::max()) throw Overflow();
    return x.convert_to<std::int64_t>();
  }
  Scalar from_int(long long x) const { return x; }
  Integer to_integer(Scalar x) const { return Integer(x); }
  bool is_zero(Scalar a) const { return a == 0; }
  bool is_unit(Scalar a) const { return a == 1 || a == -1; }
  Scalar add(Scalar a, Scalar b) const {
    Scalar r;
    if (__builtin_add_overflow(a, b, &r) || r == std::numeric_limits<Scalar>::min()) throw Overflow();
    return r;
  }
  Scalar sub(Scalar a, Scalar b) const {
    Scalar r;
    if (__builtin_sub_overflow(a, b, &r) || r == std::numeric_limits<Scalar>::min()) throw Overflow();
    return r;
  }
  Scalar neg(Scalar a) const { return -a; }
  Scalar mul(Scalar a, Scalar b) const {
    Scalar r;
    if (__builtin_mul_overflow(a, b, &r) || r == std::numeric_limits<Scalar>::min()) throw Overflow();
    return r;
  }
  bool divide(Scalar e, Scalar pivot, Scalar& q) const {
    if (e % pivot != 0) return false;
    q = e / pivot;
    return true;
  }
  /// g = s·a + t·b with g > 0; inputs never INT64_MIN.
  void xgcd(Scalar a, Scalar b, Scalar& g, Scalar& s, Scalar& t) const {
    Scalar r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
      Scalar q = r0 / r1;
      Scalar r2 = r0 - q * r1;
      r0 = r1;
      r1 = r2;
      Scalar s2 = sub(s0, mul(q, s1));
      s0 = s1;
      s1 = s2;
      Scalar t2 = sub(t0, mul(q, t1));
      t0 = t1;
      t1 = t2;
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
};

struct BigInt {
  using Scalar = Integer;
  static constexpr bool is_field = false;

  Scalar from_integer(const Integer& x) const { return x; }
  Scalar from_int(long long x) const { return Integer(x); }
  Integer to_integer(const Scalar& x) const { return x; }
  bool is_zero(const Scalar& a) const { return a == 0; }
  bool is_unit(const Scalar& a) const { return a == 1 || a == -1; }
  Scalar add(const Scalar& a, const Scalar& b) const { return a + b; }
  Scalar sub(const Scalar& a, const Scalar& b) const { return a - b; }
  Scalar neg(const Scalar& a) const { return -a; }
  Scalar mul(const Scalar& a, const Scalar& b) const { return a * b; }
  bool divide(const Scalar& e, const Scalar& pivot, Scalar& q) const {
    Scalar r;
    boost::multiprecision::divide_qr(e, pivot, q, r);
    return r == 0;
  }
  void xgcd(const Scalar& a, const Scalar& b, Scalar& g, Scalar& s, Scalar& t) const { mac::xgcd(a, b, g, s, t); }
};

template <class S>
using Vec = std::vector<std::pair<std::uint32_t, S>>;

/// a·x + b·y.
template <class R>
Vec<typename R::Scalar> lincomb(const R& ring, const typename R::Scalar& a, const Vec<typename R::Scalar>& x,
                                const typename R::Scalar& b, const Vec<typename R::Scalar>& y) {
  using S = typename R::Scalar;
  Vec<S> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      S v = ring.mul(a, x[i].second);
      if (!ring.is_zero(v)) out.emplace_back(x[i].first, std::move(v));
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      S v = ring.mul(b, y[j].second);
      if (!ring.is_zero(v)) out.emplace_back(y[j].first, std::move(v));
      ++j;
    } else {
      S v = ring.add(ring.mul(a, x[i].second), ring.mul(b, y[j].second));
      if (!ring.is_zero(v)) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

/// x - q·y.
template <class R>
Vec<typename R::Scalar> sub_multiple(const R& ring, const Vec<typename R::Scalar>& x, const typename R::Scalar& q,
                                     const Vec<typename R::Scalar>& y) {
  using S = typename R::Scalar;
  Vec<S> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.push_back(x[i]);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      S v = ring.neg(ring.mul(q, y[j].second));
      if (!ring.is_zero(v)) out.emplace_back(y[j].first, std::move(v));
      ++j;
    } else {
      S v = ring.sub(x[i].second, ring.mul(q, y[j].second));
      if (!ring.is_zero(v)) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

/// Column echelon basis of a submodule of R^rows. Every stored column has a
/// distinct low (largest nonzero row). Over the integers, a pivot that does not
/// divide an incoming entry is replaced through a unimodular 2-column gcd step,
/// so the stored columns always form a basis of the span of everything
/// inserted. Optional payloads record how each column was formed.
template <class R>
class Echelon {
 public:
  using S = typename R::Scalar;
  using V = Vec<S>;

  Echelon() = default;
  Echelon(R ring, std::size_t rows, bool track_payload)
      : ring_(ring), track_(track_payload), low_to_col_(rows, -1) {}

  const R& ring() const { return ring_; }
  std::size_t size() const { return cols_.size(); }
  std::size_t rows() const { return low_to_col_.size(); }
  const V& column(std::size_t j) const { return cols_[j]; }
  const V& payload(std::size_t j) const { return pays_[j]; }
  std::uint32_t low(std::size_t j) const { return cols_[j].back().first; }
  const S& pivot(std::size_t j) const { return cols_[j].back().second; }
  std::int32_t column_with_low(std::uint32_t row) const { return low_to_col_[row]; }

  /// Adds v to the span. Returns the payload of the zero remainder when v was
  /// already dependent (a relation among the inserted vectors).
  std::optional<V> insert(V v, V pay = {}) {
    while (!v.empty()) {
      const std::uint32_t r = v.back().first;
      const std::int32_t j = low_to_col_[r];
      if (j < 0) {
        low_to_col_[r] = static_cast<std::int32_t>(cols_.size());
        cols_.push_back(std::move(v));
        pays_.push_back(track_ ? std::move(pay) : V{});
        return std::nullopt;
      }
      const S e = v.back().second;
      const S p = cols_[j].back().second;
      S q;
      if (ring_.divide(e, p, q)) {
        v = sub_multiple(ring_, v, q, cols_[j]);
        if (track_) pay = sub_multiple(ring_, pay, q, pays_[j]);
      } else {
        S g{}, s{}, t{};
        ring_.xgcd(p, e, g, s, t);
        S pg{}, eg{};
        ring_.divide(p, g, pg);
        ring_.divide(e, g, eg);
        const S meg = ring_.neg(eg);
        V merged = lincomb(ring_, s, cols_[j], t, v);
        v = lincomb(ring_, meg, cols_[j], pg, v);
        cols_[j] = std::move(merged);
        if (track_) {
          V pm = lincomb(ring_, s, pays_[j], t, pay);
          pay = lincomb(ring_, meg, pays_[j], pg, pay);
          pays_[j] = std::move(pm);
        }
      }
    }
    return track_ ? std::move(pay) : V{};
  }

  /// Exact greedy reduction. On return v is the remainder and, when `acc` is
  /// given, original v = Σ q_j·column_j + remainder with acc += Σ q_j·payload_j.
  /// Returns true if the remainder is zero.
  bool reduce(V& v, V* acc = nullptr) const {
    while (!v.empty()) {
      const std::uint32_t r = v.back().first;
      const std::int32_t j = low_to_col_[r];
      if (j < 0) return false;
      S q;
      if (!ring_.divide(v.back().second, cols_[j].back().second, q)) return false;
      v = sub_multiple(ring_, v, q, cols_[j]);
      if (acc) *acc = sub_multiple(ring_, *acc, ring_.neg(q), pays_[j]);
    }
    return true;
  }

  /// Greedy reduction recording the multiple of each column that was used.
  bool reduce_terms(V& v, std::vector<std::pair<std::size_t, S>>& terms) const {
    while (!v.empty()) {
      const std::int32_t j = low_to_col_[v.back().first];
      if (j < 0) return false;
      S q;
      if (!ring_.divide(v.back().second, cols_[j].back().second, q)) return false;
      v = sub_multiple(ring_, v, q, cols_[j]);
      terms.emplace_back(static_cast<std::size_t>(j), std::move(q));
    }
    return true;
  }

  bool unit_pivot(std::size_t j) const { return ring_.is_unit(pivot(j)); }
  bool is_unit_low(std::uint32_t row) const {
    const std::int32_t j = low_to_col_[row];
    return j >= 0 && unit_pivot(static_cast<std::size_t>(j));
  }

  /// Reduction of x by the unit-pivot columns only, from the highest row
  /// down. The kernel of this map is the span of those columns and its image
  /// has no entries in their low rows.
  V reduce_by_units(const V& x) const {
    if (x.empty()) return {};
    const std::size_t top = x.back().first;
    std::vector<S> acc(top + 1, ring_.from_int(0));
    std::vector<char> live(top + 1, 0);
    for (const auto& [r, val] : x) {
      acc[r] = val;
      live[r] = 1;
    }
    for (std::size_t r = top + 1; r-- > 0;) {
      if (!live[r] || ring_.is_zero(acc[r])) continue;
      const std::int32_t j = low_to_col_[r];
      if (j < 0 || !unit_pivot(static_cast<std::size_t>(j))) continue;
      S q;
      ring_.divide(acc[r], pivot(static_cast<std::size_t>(j)), q);
      for (const auto& [row, val] : cols_[j]) {
        acc[row] = ring_.sub(acc[row], ring_.mul(q, val));
        live[row] = 1;
      }
    }
    V out;
    for (std::size_t r = 0; r <= top; ++r)
      if (live[r] && !ring_.is_zero(acc[r])) out.emplace_back(static_cast<std::uint32_t>(r), std::move(acc[r]));
    return out;
  }

 private:
  R ring_{};
  bool track_ = false;
  std::vector<V> cols_;
  std::vector<V> pays_;
  std::vector<std::int32_t> low_to_col_;
};

/// Runs `body(ring)` with the policy matching `coeffs`; over the integers the
/// int64 attempt is repeated with arbitrary precision on overflow.
template <class F>
decltype(auto) with_ring(const Coefficients& coeffs, F&& body) {
  if (coeffs.is_field()) return body(PrimeField{coeffs.modulus()});
  try {
    return body(CheckedInt64{});
  } catch (const Overflow&) {
    return body(BigInt{});
  }
}

}  // namespace mac::sparse
