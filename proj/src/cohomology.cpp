#include "macring/cohomology.hpp"

#include <algorithm>
#include <mutex>

#include "macring/errors.hpp"
#include "macring/sparse.hpp"

namespace mac {

bool Cochain::is_zero() const {
  return std::all_of(values.begin(), values.end(), [](const Integer& x) { return x == 0; });
}

// ------------------------------------------------------------ CochainComplex

CochainComplex CochainComplex::reduced(std::shared_ptr<const SimplicialComplex> k, const Coefficients& ring) {
  return relative(std::move(k), ring, {}, true);
}

CochainComplex CochainComplex::unreduced(std::shared_ptr<const SimplicialComplex> k, const Coefficients& ring) {
  return relative(std::move(k), ring, {}, false);
}

CochainComplex CochainComplex::relative(std::shared_ptr<const SimplicialComplex> k, const Coefficients& ring,
                                        std::vector<std::vector<char>> excluded, bool augmented) {
  CochainComplex c;
  c.complex_ = std::move(k);
  c.ring_ = ring;
  c.augmented_ = augmented;
  c.excluded_ = std::move(excluded);
  c.index();
  if (c.complex_->face_count() <= 20000) c.check_square_zero();
  return c;
}

void CochainComplex::index() {
  const int top = complex_->dimension();
  basis_.assign(static_cast<std::size_t>(top + 2), {});
  local_.assign(static_cast<std::size_t>(top + 2), {});
  for (int d = -1; d <= top; ++d) {
    const std::size_t slot = static_cast<std::size_t>(d + 1);
    const std::size_t n = complex_->count(d);
    local_[slot].assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
      bool out = (d == -1 && !augmented_) ||
                 (slot < excluded_.size() && !excluded_[slot].empty() && excluded_[slot][i]);
      if (out) continue;
      local_[slot][i] = static_cast<std::int32_t>(basis_[slot].size());
      basis_[slot].push_back(static_cast<std::uint32_t>(i));
    }
  }
}

std::size_t CochainComplex::rank(int q) const {
  if (q < -1 || q > complex_->dimension()) return 0;
  return basis_[static_cast<std::size_t>(q + 1)].size();
}

const std::vector<std::uint32_t>& CochainComplex::basis(int q) const {
  static const std::vector<std::uint32_t> none;
  if (q < -1 || q > complex_->dimension()) return none;
  return basis_[static_cast<std::size_t>(q + 1)];
}

std::int32_t CochainComplex::local(int q, std::size_t face) const {
  if (q < -1 || q > complex_->dimension()) return -1;
  return local_[static_cast<std::size_t>(q + 1)][face];
}

std::vector<std::vector<std::pair<std::uint32_t, int>>> CochainComplex::coboundary_columns(int q) const {
  std::vector<std::vector<std::pair<std::uint32_t, int>>> cols(rank(q));
  if (rank(q) == 0) return cols;
  const SimplicialComplex& k = *complex_;
  std::vector<Vertex> sub;
  for (std::size_t t = 0; t < k.count(q + 1); ++t) {
    const std::int32_t row = local(q + 1, t);
    if (row < 0) continue;
    auto tau = k.face(q + 1, t);
    for (std::size_t skip = 0; skip < tau.size(); ++skip) {
      sub.clear();
      for (std::size_t i = 0; i < tau.size(); ++i)
        if (i != skip) sub.push_back(tau[i]);
      const std::int32_t col = local(q, *k.index_of(sub));
      if (col >= 0) cols[static_cast<std::size_t>(col)].emplace_back(static_cast<std::uint32_t>(row), (skip & 1) ? -1 : 1);
    }
  }
  return cols;
}

IntMatrix CochainComplex::coboundary_matrix(int q) const {
  IntMatrix m(rank(q + 1), rank(q));
  auto cols = coboundary_columns(q);
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [r, s] : cols[j]) m.set(r, j, s);
  return m;
}

void CochainComplex::check_square_zero() const {
  for (int q = min_degree(); q + 2 <= max_degree(); ++q) {
    auto lower = coboundary_columns(q);
    auto upper = coboundary_columns(q + 1);
    for (const auto& col : lower) {
      std::map<std::uint32_t, long long> acc;
      for (const auto& [r, s] : col)
        for (const auto& [r2, s2] : upper[r]) acc[r2] += s * s2;
      for (const auto& [r, v] : acc)
        if (v != 0) throw InvariantViolation("coboundary does not square to zero");
    }
  }
}

Cochain CochainComplex::zero(int q) const { return Cochain{q, std::vector<Integer>(complex_->count(q))}; }

Cochain CochainComplex::coboundary(const Cochain& c) const {
  const int q = c.degree;
  Cochain out = zero(q + 1);
  const SimplicialComplex& k = *complex_;
  std::vector<Vertex> sub;
  for (std::size_t t = 0; t < k.count(q + 1); ++t) {
    if (local(q + 1, t) < 0) continue;
    auto tau = k.face(q + 1, t);
    Integer sum = 0;
    for (std::size_t skip = 0; skip < tau.size(); ++skip) {
      sub.clear();
      for (std::size_t i = 0; i < tau.size(); ++i)
        if (i != skip) sub.push_back(tau[i]);
      const std::size_t f = *k.index_of(sub);
      if (local(q, f) < 0) continue;
      if (skip & 1) sum -= c.values[f];
      else sum += c.values[f];
    }
    out.values[t] = ring_.normalize(sum);
  }
  return out;
}

bool CochainComplex::is_cocycle(const Cochain& c) const { return coboundary(c).is_zero(); }

bool CochainComplex::is_relative(const Cochain& c) const {
  for (std::size_t i = 0; i < c.values.size(); ++i)
    if (local(c.degree, i) < 0 && ring_.normalize(c.values[i]) != 0) return false;
  return true;
}

CochainComplex quotient_cohomology(std::shared_ptr<const SimplicialComplex> k, const SimplicialComplex& a,
                                   const Coefficients& ring) {
  if (a.vertex_count() != k->vertex_count()) throw InputError("subcomplex lives on a different vertex set");
  std::vector<std::vector<char>> excluded(static_cast<std::size_t>(k->dimension() + 2));
  for (int d = -1; d <= k->dimension(); ++d) excluded[static_cast<std::size_t>(d + 1)].assign(k->count(d), 0);
  bool nonempty = a.dimension() >= 0;
  for (int d = nonempty ? -1 : 0; d <= a.dimension(); ++d)
    for (std::size_t i = 0; i < a.count(d); ++i) {
      auto idx = k->index_of(a.face(d, i));
      if (!idx) throw InputError("A is not a subcomplex of K");
      excluded[static_cast<std::size_t>(d + 1)][*idx] = 1;
    }
  return CochainComplex::relative(std::move(k), ring, std::move(excluded), true);
}

// ---------------------------------------------------------------- engines

namespace detail {

template <class R>
using V = sparse::Vec<typename R::Scalar>;

template <class R>
V<R> to_vec(const R& ring, const CochainComplex& cc, const Cochain& c) {
  if (c.values.size() != cc.complex().count(c.degree)) throw InputError("cochain has the wrong number of values");
  V<R> out;
  for (std::size_t f = 0; f < c.values.size(); ++f) {
    if (c.values[f] == 0) continue;
    auto x = ring.from_integer(c.values[f]);
    if (ring.is_zero(x)) continue;
    const std::int32_t j = cc.local(c.degree, f);
    if (j < 0) throw InputError("cochain does not vanish on the excluded subcomplex");
    out.emplace_back(static_cast<std::uint32_t>(j), std::move(x));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

template <class R>
V<R> column_vec(const R& ring, const std::vector<std::pair<std::uint32_t, int>>& col) {
  V<R> out;
  out.reserve(col.size());
  for (const auto& [r, s] : col) out.emplace_back(r, ring.from_int(s));
  return out;
}

template <class R>
Cochain to_cochain(const R& ring, const CochainComplex& cc, int q, const V<R>& v) {
  Cochain c = cc.zero(q);
  const auto& basis = cc.basis(q);
  for (const auto& [j, x] : v) c.values[basis[j]] = cc.ring().normalize(ring.to_integer(x));
  return c;
}

inline Integer mod_floor(const Integer& x, const Integer& m) {
  Integer r = x % m;
  if (r < 0) r += m;
  return r;
}

/// Invariant factors of the lattice spanned by the given columns.
template <class R>
std::vector<Integer> lattice_factors(const R& ring, const std::vector<V<R>>& cols) {
  std::map<std::uint32_t, std::size_t> rows;
  for (const auto& c : cols)
    for (const auto& [r, x] : c) rows.emplace(r, 0);
  std::size_t next = 0;
  for (auto& [r, i] : rows) i = next++;
  IntMatrix m(rows.size(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (const auto& [r, x] : cols[j]) m.set(rows[r], j, ring.to_integer(x));
  return smith_normal_form(m).diagonal;
}

// ---- explicit bases

struct BasisImpl {
  int degree = 0;
  Coefficients ring = Coefficients::integers();
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;
  std::vector<Integer> orders;
  std::vector<Cochain> generators;

  virtual ~BasisImpl() = default;
  virtual std::vector<Integer> express(const Cochain& c) const = 0;
  virtual bool is_coboundary(const Cochain& c) const = 0;
};

template <class R>
struct BasisImplT final : BasisImpl {
  using S = typename R::Scalar;

  CochainComplex cc;
  R rg;
  sparse::Echelon<R> boundaries;  // B^q
  sparse::Echelon<R> cycles;      // reduce_by_units(Z^q), payload = lift
  IntMatrix u;                    // coordinate change (integers only)
  std::vector<std::size_t> kept;  // rows of u·c reported, in generator order

  mutable std::once_flag big_once;
  mutable std::shared_ptr<const BasisImpl> big;

  BasisImplT(const CochainComplex& complex, R ring_policy, int q) : cc(complex), rg(ring_policy) {
    degree = q;
    ring = cc.ring();
    boundaries = sparse::Echelon<R>(rg, cc.rank(q), false);
    cycles = sparse::Echelon<R>(rg, cc.rank(q), true);
    if (cc.rank(q) == 0) return;
    if (q - 1 >= cc.min_degree())
      for (const auto& col : cc.coboundary_columns(q - 1)) boundaries.insert(column_vec(rg, col));

    std::vector<V<R>> kernel;
    if (q == cc.max_degree()) {
      for (std::size_t j = 0; j < cc.rank(q); ++j) kernel.push_back({{static_cast<std::uint32_t>(j), rg.from_int(1)}});
    } else {
      sparse::Echelon<R> image(rg, cc.rank(q + 1), true);
      auto cols = cc.coboundary_columns(q);
      for (std::size_t j = 0; j < cols.size(); ++j) {
        auto rel = image.insert(column_vec(rg, cols[j]), V<R>{{static_cast<std::uint32_t>(j), rg.from_int(1)}});
        if (rel) kernel.push_back(std::move(*rel));
      }
    }
    for (auto& z : kernel) cycles.insert(boundaries.reduce_by_units(z), z);

    const std::size_t k = cycles.size();
    std::vector<V<R>> nonunit;
    for (std::size_t j = 0; j < boundaries.size(); ++j)
      if (!boundaries.unit_pivot(j)) nonunit.push_back(boundaries.column(j));

    std::vector<Integer> diag;
    IntMatrix uinv = IntMatrix::identity(k);
    u = IntMatrix::identity(k);
    if (!nonunit.empty()) {
      IntMatrix m(k, nonunit.size());
      for (std::size_t c = 0; c < nonunit.size(); ++c) {
        V<R> y = boundaries.reduce_by_units(nonunit[c]);
        std::vector<std::pair<std::size_t, S>> terms;
        if (!cycles.reduce_terms(y, terms)) throw InvariantViolation("coboundary outside the cocycle lattice");
        for (const auto& [j, x] : terms) m.add(j, c, rg.to_integer(x));
      }
      SmithDecomposition snf = smith_normal_form(m);
      diag = snf.diagonal;
      u = snf.U;
      SmithDecomposition inv = smith_normal_form(u);
      uinv = inv.V * inv.U;
    }
    for (std::size_t i = diag.size(); i < k; ++i) {
      kept.push_back(i);
      orders.push_back(0);
    }
    free_rank = kept.size();
    for (std::size_t i = 0; i < diag.size(); ++i)
      if (diag[i] != 1) {
        kept.push_back(i);
        orders.push_back(diag[i]);
        torsion.push_back(diag[i]);
      }
    for (std::size_t i : kept) {
      Cochain g = cc.zero(q);
      const auto& basis = cc.basis(q);
      for (std::size_t j = 0; j < k; ++j) {
        Integer coeff = uinv.at(j, i);
        if (coeff == 0) continue;
        for (const auto& [r, x] : cycles.payload(j)) g.values[basis[r]] += coeff * rg.to_integer(x);
      }
      for (auto& x : g.values) x = ring.normalize(x);
      generators.push_back(std::move(g));
    }
  }

  const BasisImpl& fallback() const {
    std::call_once(big_once, [&] { big = std::make_shared<BasisImplT<sparse::BigInt>>(cc, sparse::BigInt{}, degree); });
    return *big;
  }

  std::vector<Integer> express(const Cochain& c) const override {
    if (c.degree != degree) throw InputError("cochain degree does not match the basis");
    if (!cc.is_cocycle(c)) throw InputError("cannot express a cochain that is not a cocycle");
    try {
      V<R> y = boundaries.reduce_by_units(to_vec(rg, cc, c));
      std::vector<std::pair<std::size_t, S>> terms;
      if (!cycles.reduce_terms(y, terms)) throw InvariantViolation("cocycle outside the computed cocycle lattice");
      std::vector<Integer> coords(cycles.size());
      for (const auto& [j, x] : terms) coords[j] += rg.to_integer(x);
      std::vector<Integer> transformed = u * coords;
      std::vector<Integer> out;
      for (std::size_t g = 0; g < kept.size(); ++g) {
        Integer v = transformed[kept[g]];
        out.push_back(orders[g] != 0 ? mod_floor(v, orders[g]) : ring.normalize(v));
      }
      return out;
    } catch (const sparse::Overflow&) {
      return fallback().express(c);
    }
  }

  bool is_coboundary(const Cochain& c) const override {
    if (c.degree != degree) return c.is_zero();
    try {
      V<R> v = to_vec(rg, cc, c);
      return boundaries.reduce(v);
    } catch (const sparse::Overflow&) {
      return fallback().is_coboundary(c);
    }
  }
};

struct EmptyBasis final : BasisImpl {
  std::vector<Integer> express(const Cochain&) const override { return {}; }
  bool is_coboundary(const Cochain&) const override { return true; }
};

// ---- whole-complex groups

struct CoordinatesImpl {
  std::string failure;
  virtual ~CoordinatesImpl() = default;
  virtual std::vector<Integer> solve(const Cochain& c) const = 0;
};

struct GroupsImpl {
  CochainComplex cc;
  std::vector<std::size_t> betti;             // [q - min_degree]
  std::vector<std::vector<Integer>> torsion;  // [q - min_degree]

  explicit GroupsImpl(const CochainComplex& c) : cc(c) {}
  virtual ~GroupsImpl() = default;
  virtual bool is_coboundary(const Cochain& c) const = 0;
  virtual std::shared_ptr<const CoordinatesImpl> coordinates(int q, const std::vector<Cochain>& gens,
                                                             const std::vector<Integer>& orders) const = 0;
};

template <class R>
struct GroupsImplT;

template <class R>
struct CoordinatesImplT final : CoordinatesImpl {
  using S = typename R::Scalar;
  std::shared_ptr<const GroupsImplT<R>> groups;
  int degree = 0;
  std::vector<Cochain> gens;
  std::vector<Integer> orders;
  sparse::Echelon<R> span;

  mutable std::once_flag big_once;
  mutable std::shared_ptr<const CoordinatesImpl> big;

  std::vector<Integer> solve(const Cochain& c) const override;
};

template <class R>
struct GroupsImplT final : GroupsImpl, std::enable_shared_from_this<GroupsImplT<R>> {
  using S = typename R::Scalar;
  R rg;
  std::vector<sparse::Echelon<R>> b;  // [q - min_degree] : B^q

  mutable std::once_flag big_once;
  mutable std::shared_ptr<const GroupsImpl> big;

  GroupsImplT(const CochainComplex& c, R ring_policy) : GroupsImpl(c), rg(ring_policy) {
    const int lo = cc.min_degree(), hi = cc.max_degree();
    if (hi < lo) return;
    const std::size_t n = static_cast<std::size_t>(hi - lo + 1);
    b.reserve(n);
    b.emplace_back(rg, cc.rank(lo), false);
    for (int q = lo; q < hi; ++q) {
      const auto& prev = b.back();
      sparse::Echelon<R> next(rg, cc.rank(q + 1), false);
      auto cols = cc.coboundary_columns(q);
      for (std::size_t j = 0; j < cols.size(); ++j) {
        if (prev.is_unit_low(static_cast<std::uint32_t>(j))) continue;
        if (!cols[j].empty()) next.insert(column_vec(rg, cols[j]));
      }
      b.push_back(std::move(next));
    }
    betti.resize(n);
    torsion.resize(n);
    for (int q = lo; q <= hi; ++q) {
      const std::size_t i = static_cast<std::size_t>(q - lo);
      const std::size_t image_out = i + 1 < n ? b[i + 1].size() : 0;
      betti[i] = cc.rank(q) - image_out - b[i].size();
      if constexpr (!R::is_field) {
        std::vector<V<R>> nonunit;
        for (std::size_t j = 0; j < b[i].size(); ++j)
          if (!b[i].unit_pivot(j)) nonunit.push_back(b[i].reduce_by_units(b[i].column(j)));
        if (!nonunit.empty())
          for (const Integer& d : lattice_factors(rg, nonunit))
            if (d != 1) torsion[i].push_back(d);
      }
    }
  }

  const GroupsImpl& fallback() const {
    std::call_once(big_once, [&] { big = std::make_shared<GroupsImplT<sparse::BigInt>>(cc, sparse::BigInt{}); });
    return *big;
  }

  bool is_coboundary(const Cochain& c) const override {
    const int lo = cc.min_degree();
    if (c.degree < lo || c.degree > cc.max_degree()) return c.is_zero();
    try {
      V<R> v = to_vec(rg, cc, c);
      return b[static_cast<std::size_t>(c.degree - lo)].reduce(v);
    } catch (const sparse::Overflow&) {
      return fallback().is_coboundary(c);
    }
  }

  std::shared_ptr<const CoordinatesImpl> coordinates(int q, const std::vector<Cochain>& gens,
                                                     const std::vector<Integer>& orders) const override {
    try {
      return build_coordinates(q, gens, orders);
    } catch (const sparse::Overflow&) {
      return fallback().coordinates(q, gens, orders);
    }
  }

  std::shared_ptr<const CoordinatesImpl> build_coordinates(int q, const std::vector<Cochain>& gens,
                                                           const std::vector<Integer>& orders) const {
    auto out = std::make_shared<CoordinatesImplT<R>>();
    out->groups = this->shared_from_this();
    out->degree = q;
    out->gens = gens;
    out->orders = orders;
    if (gens.size() != orders.size()) throw InputError("one order per generator is required");
    const int lo = cc.min_degree();
    const bool in_range = q >= lo && q <= cc.max_degree();
    const std::size_t expected_free = in_range ? betti[static_cast<std::size_t>(q - lo)] : 0;
    if (!in_range) {
      if (!gens.empty()) out->failure = "degree " + std::to_string(q) + " carries no cochains";
      return out;
    }
    const auto& bq = b[static_cast<std::size_t>(q - lo)];
    out->span = sparse::Echelon<R>(rg, cc.rank(q), true);
    for (std::size_t j = 0; j < bq.size(); ++j)
      if (!bq.unit_pivot(j)) out->span.insert(bq.reduce_by_units(bq.column(j)));
    std::vector<V<R>> relations;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      if (gens[g].degree != q || !cc.is_cocycle(gens[g])) {
        out->failure = "generator " + std::to_string(g) + " is not a cocycle of degree " + std::to_string(q);
        return out;
      }
      auto rel = out->span.insert(bq.reduce_by_units(to_vec(rg, cc, gens[g])), V<R>{{static_cast<std::uint32_t>(g), rg.from_int(1)}});
      if (rel) relations.push_back(std::move(*rel));
    }
    std::size_t free_count = 0;
    for (const Integer& o : orders)
      if (o == 0) ++free_count;
    if constexpr (R::is_field) {
      if (free_count != gens.size()) out->failure = "torsion orders given over a field";
      else if (!relations.empty()) out->failure = "generators are dependent modulo coboundaries";
      else if (gens.size() != expected_free)
        out->failure = std::to_string(gens.size()) + " generators for a group of rank " + std::to_string(expected_free);
      return out;
    } else {
      if (free_count != expected_free) {
        out->failure = std::to_string(free_count) + " free generators for free rank " + std::to_string(expected_free);
        return out;
      }
      sparse::Echelon<R> rel_lattice(rg, gens.size(), false);
      for (const auto& rel : relations) {
        for (const auto& [g, x] : rel) {
          Integer v = rg.to_integer(x);
          if (orders[g] == 0 || v % orders[g] != 0) {
            out->failure = "unexpected relation involving generator " + std::to_string(g);
            return out;
          }
        }
        rel_lattice.insert(rel);
      }
      for (std::size_t g = 0; g < gens.size(); ++g) {
        if (orders[g] == 0) continue;
        V<R> target{{static_cast<std::uint32_t>(g), rg.from_integer(orders[g])}};
        if (!rel_lattice.reduce(target)) {
          out->failure = "generator " + std::to_string(g) + " does not have order " + orders[g].str();
          return out;
        }
      }
      bool saturated = true;
      for (std::size_t j = 0; j < out->span.size(); ++j)
        if (!out->span.unit_pivot(j)) saturated = false;
      if (!saturated) {
        std::vector<V<R>> cols;
        for (std::size_t j = 0; j < out->span.size(); ++j) cols.push_back(out->span.column(j));
        auto factors = lattice_factors(rg, cols);
        saturated = std::all_of(factors.begin(), factors.end(), [](const Integer& d) { return d == 1; });
      }
      if (!saturated) out->failure = "generators do not span the cohomology group";
      return out;
    }
  }
};

template <class R>
std::vector<Integer> CoordinatesImplT<R>::solve(const Cochain& c) const {
  if (c.degree != degree) throw InputError("cochain degree does not match the coordinate map");
  try {
    const auto& cc = groups->cc;
    const int lo = cc.min_degree();
    std::vector<Integer> out(gens.size());
    if (degree < lo || degree > cc.max_degree()) return out;
    const auto& bq = groups->b[static_cast<std::size_t>(degree - lo)];
    V<R> y = bq.reduce_by_units(to_vec(groups->rg, cc, c));
    V<R> acc;
    if (!span.reduce(y, &acc)) throw InputError("cochain is not a cocycle in the span of the basis");
    for (const auto& [g, x] : acc) out[g] = groups->rg.to_integer(x);
    for (std::size_t g = 0; g < out.size(); ++g)
      out[g] = orders[g] != 0 ? mod_floor(out[g], orders[g]) : cc.ring().normalize(out[g]);
    return out;
  } catch (const sparse::Overflow&) {
    std::call_once(big_once, [&] { big = groups->fallback().coordinates(degree, gens, orders); });
    return big->solve(c);
  }
}

}  // namespace detail

// --------------------------------------------------------- public wrappers

int CohomologyBasis::degree() const { return impl_->degree; }
const Coefficients& CohomologyBasis::ring() const { return impl_->ring; }
std::size_t CohomologyBasis::free_rank() const { return impl_->free_rank; }
const std::vector<Integer>& CohomologyBasis::torsion() const { return impl_->torsion; }
std::size_t CohomologyBasis::size() const { return impl_->generators.size(); }
const std::vector<Cochain>& CohomologyBasis::generators() const { return impl_->generators; }
const std::vector<Integer>& CohomologyBasis::orders() const { return impl_->orders; }
std::vector<Integer> CohomologyBasis::express(const Cochain& c) const { return impl_->express(c); }
bool CohomologyBasis::is_coboundary(const Cochain& c) const { return impl_->is_coboundary(c); }

CohomologyBasis cohomology_basis(const CochainComplex& complex, int q) {
  CohomologyBasis out;
  if (q < complex.min_degree() || q > complex.max_degree()) {
    auto empty = std::make_shared<detail::EmptyBasis>();
    empty->degree = q;
    empty->ring = complex.ring();
    out.impl_ = std::move(empty);
    return out;
  }
  out.impl_ = sparse::with_ring(complex.ring(), [&](auto ring) -> std::shared_ptr<const detail::BasisImpl> {
    return std::make_shared<detail::BasisImplT<decltype(ring)>>(complex, ring, q);
  });
  return out;
}

CohomologyBasis reduced_cohomology(const SimplicialComplex& k, const Coefficients& ring, int q) {
  if (q < -1) throw InputError("cohomological degree below -1");
  return cohomology_basis(CochainComplex::reduced(std::make_shared<const SimplicialComplex>(k), ring), q);
}

bool ClassCoordinates::valid() const { return impl_->failure.empty(); }
const std::string& ClassCoordinates::failure() const { return impl_->failure; }
std::vector<Integer> ClassCoordinates::operator()(const Cochain& c) const {
  if (!valid()) throw InputError("coordinates requested from an invalid basis: " + impl_->failure);
  return impl_->solve(c);
}

CohomologyGroups::CohomologyGroups(const CochainComplex& complex) {
  impl_ = sparse::with_ring(complex.ring(), [&](auto ring) -> std::shared_ptr<const detail::GroupsImpl> {
    return std::make_shared<detail::GroupsImplT<decltype(ring)>>(complex, ring);
  });
}

const CochainComplex& CohomologyGroups::complex() const { return impl_->cc; }

std::size_t CohomologyGroups::betti(int q) const {
  const int lo = impl_->cc.min_degree();
  if (q < lo || q > impl_->cc.max_degree()) return 0;
  return impl_->betti[static_cast<std::size_t>(q - lo)];
}

const std::vector<Integer>& CohomologyGroups::torsion(int q) const {
  static const std::vector<Integer> none;
  const int lo = impl_->cc.min_degree();
  if (q < lo || q > impl_->cc.max_degree()) return none;
  return impl_->torsion[static_cast<std::size_t>(q - lo)];
}

bool CohomologyGroups::is_coboundary(const Cochain& c) const { return impl_->is_coboundary(c); }

ClassCoordinates CohomologyGroups::coordinates(int q, const std::vector<Cochain>& gens,
                                               const std::vector<Integer>& orders) const {
  ClassCoordinates out;
  out.impl_ = impl_->coordinates(q, gens, orders);
  return out;
}

// ------------------------------------------------------- products and maps

Cochain cup_product(const SimplicialComplex& k, const Cochain& u, const Cochain& v, const Coefficients& ring) {
  const int p = u.degree, q = v.degree;
  if (p < 0 || q < 0) throw InputError("cup product needs nonnegative degrees");
  Cochain out{p + q, std::vector<Integer>(k.count(p + q))};
  if (u.is_zero() || v.is_zero()) return out;
  for (std::size_t i = 0; i < k.count(p + q); ++i) {
    auto s = k.face(p + q, i);
    const Integer& a = u.values[*k.index_of(s.subspan(0, static_cast<std::size_t>(p + 1)))];
    if (a == 0) continue;
    const Integer& b = v.values[*k.index_of(s.subspan(static_cast<std::size_t>(p)))];
    if (b == 0) continue;
    out.values[i] = ring.normalize(a * b);
  }
  return out;
}

Cochain pullback(const SimplicialMap& f, const Cochain& c, const Coefficients& ring) {
  const SimplicialComplex& src = f.source();
  Cochain out{c.degree, std::vector<Integer>(src.count(c.degree))};
  for (std::size_t i = 0; i < src.count(c.degree); ++i) {
    auto [img, sign] = f.oriented_image(src.face(c.degree, i));
    if (sign == 0) continue;
    auto idx = f.target().index_of(img);
    if (!idx) throw InvariantViolation("image of a face is not a face");
    out.values[i] = ring.normalize(sign * c.values[*idx]);
  }
  return out;
}

std::vector<Integer> induced_map(const SimplicialMap& f, const Cochain& c, const CohomologyBasis& source_basis) {
  return source_basis.express(pullback(f, c, source_basis.ring()));
}

}  // namespace mac
