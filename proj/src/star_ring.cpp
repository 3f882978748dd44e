#include "macring/star_ring.hpp"

#include <optional>

#include "macring/errors.hpp"
#include "macring/geometric_model.hpp"

namespace mac {

namespace {

Integer koszul(int exponent) { return exponent % 2 == 0 ? Integer(1) : Integer(-1); }

Cochain star_on(const SimplicialComplex& k_i, const SimplicialComplex& k_j, const SimplicialComplex& k_l,
                const IndexSet& i_set, const IndexSet& j, const IndexSet& l, const Cochain& a, const Cochain& b,
                const Coefficients& ring) {
  const int q = a.degree + b.degree + 1;
  Cochain out{q, std::vector<Integer>(k_i.count(q))};
  Face sj, sl, gj, gl;
  for (std::size_t f = 0; f < k_i.count(q); ++f) {
    sj.clear();
    sl.clear();
    gj.clear();
    gl.clear();
    for (Vertex v : k_i.face(q, f)) {
      int g = i_set.members()[static_cast<std::size_t>(v - 1)];
      if (j.contains(g)) {
        sj.push_back(j.position(g) + 1);
        gj.push_back(g);
      } else {
        sl.push_back(l.position(g) + 1);
        gl.push_back(g);
      }
    }
    if (static_cast<int>(sj.size()) != a.degree + 1) continue;
    auto ij = k_j.index_of(sj);
    auto il = k_l.index_of(sl);
    if (!ij || !il) throw InvariantViolation("face of K_I does not split into faces of K_J and K_L");
    if (a.values[*ij] == 0 || b.values[*il] == 0) continue;
    out.values[f] = ring.normalize(shuffle_sign(gj, gl) * a.values[*ij] * b.values[*il]);
  }
  return out;
}

// Caches total models of Z(K_I) keyed by I.
class Realizations {
 public:
  Realizations(const DecompositionModule& module, std::size_t budget) : module_(module), budget_(budget) {}
  const EtaRealization& get(const IndexSet& subset) {
    auto it = cache_.find(subset.mask());
    if (it == cache_.end()) it = cache_.emplace(subset.mask(), EtaRealization(module_, subset, budget_)).first;
    return it->second;
  }

 private:
  const DecompositionModule& module_;
  std::size_t budget_;
  std::map<std::uint64_t, EtaRealization> cache_;
};

// Product of two generators on the model of Z(K_{J∪L}); the result must lie
// in the J∪L summands.
RingElement geometric_product(const DecompositionModule& module, Realizations& models, std::size_t i,
                              std::size_t j) {
  const auto& gens = module.generators();
  const IndexSet& jset = module.summands()[gens[i].summand].index;
  const IndexSet& lset = module.summands()[gens[j].summand].index;
  const IndexSet target = jset.united(lset);
  const EtaRealization& eta = models.get(target);
  RingElement x = eta.express(cup_product(eta.model().complex(), eta.image(i), eta.image(j), module.ring()));
  for (std::size_t g = 0; g < x.size(); ++g)
    if (x[g] != 0 && !(module.summands()[gens[g].summand].index == target))
      throw InvariantViolation("product of " + module.generator_label(i) + " and " + module.generator_label(j) +
                               " leaves the summand of " + target.to_string());
  return x;
}

}  // namespace

std::string to_string(ProductRule rule) {
  switch (rule) {
    case ProductRule::Disjoint:
      return "disjoint";
    case ProductRule::Vanishing:
      return "vanishing";
    case ProductRule::Cone:
      return "cone";
    case ProductRule::Geometric:
      return "geometric";
  }
  return "?";
}

StarRing::StarRing(DecompositionModule module, std::vector<std::vector<RingElement>> table,
                   std::vector<std::vector<ProductRule>> rules)
    : module_(std::make_shared<const DecompositionModule>(std::move(module))),
      table_(std::move(table)),
      rules_(std::move(rules)) {
  const std::size_t n = size();
  if (table_.size() != n || rules_.size() != n) throw InputError("table size does not match the module");
  for (auto& row : table_) {
    if (row.size() != n) throw InputError("table size does not match the module");
    for (auto& cell : row) cell = normalize(std::move(cell));
  }
}

RingElement StarRing::generator(std::size_t i) const {
  RingElement e(size());
  e.at(i) = 1;
  return e;
}

RingElement StarRing::normalize(RingElement x) const {
  const auto& gens = module_->generators();
  if (x.size() != gens.size()) throw InputError("ring element has the wrong length");
  for (std::size_t g = 0; g < x.size(); ++g) {
    if (gens[g].order != 0) {
      x[g] %= gens[g].order;
      if (x[g] < 0) x[g] += gens[g].order;
    } else {
      x[g] = module_->ring().normalize(x[g]);
    }
  }
  return x;
}

Cochain star_disjoint(const SimplicialComplex& k, const IndexSet& j, const IndexSet& l, const Cochain& a,
                      const Cochain& b, const Coefficients& ring) {
  if (!j.disjoint(l)) throw InputError("star_disjoint needs disjoint index sets");
  IndexSet i_set = j.united(l);
  return star_on(full_subcomplex(k, i_set), full_subcomplex(k, j), full_subcomplex(k, l), i_set, j, l, a, b, ring);
}

std::vector<std::pair<std::vector<int>, Integer>> cone_pair_product(const PairFamily& pairs, const IndexSet& j,
                                                                    const std::vector<int>& x, const IndexSet& l,
                                                                    const std::vector<int>& y) {
  if (x.size() != j.size() || y.size() != l.size()) throw InputError("fiber choices do not match index sets");
  const IndexSet target = j.united(l);
  std::vector<GradedRing> rings;
  for (int v : target.members()) rings.push_back(pairs.fiber_ring(v - 1));
  auto deg = [&](int v, int gen) { return rings[static_cast<std::size_t>(target.position(v))].degree(static_cast<std::size_t>(gen)); };

  int exponent = 0;
  for (int a : j.members())
    for (int b : l.members())
      if (a > b) exponent += deg(a, x[static_cast<std::size_t>(j.position(a))]) * deg(b, y[static_cast<std::size_t>(l.position(b))]);

  // per coordinate, the possible generators with their coefficients
  std::vector<std::vector<std::pair<int, Integer>>> options;
  for (int v : target.members()) {
    const GradedRing& r = rings[static_cast<std::size_t>(target.position(v))];
    std::vector<std::pair<int, Integer>> opt;
    if (j.contains(v) && l.contains(v)) {
      const auto& p = r.product(static_cast<std::size_t>(x[static_cast<std::size_t>(j.position(v))]),
                                static_cast<std::size_t>(y[static_cast<std::size_t>(l.position(v))]));
      for (std::size_t g = 0; g < p.size(); ++g)
        if (p[g] != 0) opt.emplace_back(static_cast<int>(g), p[g]);
    } else if (j.contains(v)) {
      opt.emplace_back(x[static_cast<std::size_t>(j.position(v))], 1);
    } else {
      opt.emplace_back(y[static_cast<std::size_t>(l.position(v))], 1);
    }
    if (opt.empty()) return {};
    options.push_back(std::move(opt));
  }

  std::vector<std::pair<std::vector<int>, Integer>> out;
  std::vector<std::size_t> pick(options.size(), 0);
  while (true) {
    std::vector<int> z;
    Integer c = koszul(exponent);
    for (std::size_t a = 0; a < options.size(); ++a) {
      z.push_back(options[a][pick[a]].first);
      c *= options[a][pick[a]].second;
    }
    out.emplace_back(std::move(z), std::move(c));
    std::size_t a = options.size();
    bool wrapped = true;
    while (a > 0) {
      --a;
      if (pick[a] + 1 < options[a].size()) {
        ++pick[a];
        wrapped = false;
        break;
      }
      pick[a] = 0;
    }
    if (wrapped) break;
  }
  return out;
}

RingElement star_product(const StarRing& ring, const RingElement& u, const RingElement& v) {
  const std::size_t n = ring.size();
  if (u.size() != n || v.size() != n) throw InputError("ring elements have the wrong length");
  RingElement out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j] == 0) continue;
      const RingElement& p = ring.product(i, j);
      for (std::size_t k = 0; k < n; ++k)
        if (p[k] != 0) out[k] += u[i] * v[j] * p[k];
    }
  }
  return ring.normalize(std::move(out));
}

StarRing multiplication_table(const DecompositionModule& module, std::size_t budget) {
  const PairFamily& pairs = module.pairs();
  const auto& gens = module.generators();
  const auto& summands = module.summands();
  const std::size_t n = gens.size();
  std::vector<std::vector<RingElement>> table(n, std::vector<RingElement>(n, RingElement(n)));
  std::vector<std::vector<ProductRule>> rules(n, std::vector<ProductRule>(n, ProductRule::Disjoint));

  if (pairs.kind() == PairFamily::Kind::Simplicial) {
    if (module.geometry_stale()) throw InputError("regraded simplicial modules must be recomputed");
    Realizations models(module, budget);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        table[i][j] = geometric_product(module, models, i, j);
        rules[i][j] = ProductRule::Geometric;
      }
    return StarRing(module, std::move(table), std::move(rules));
  }

  // Overlapping products of the K_I classes come from the (D¹, S⁰) model.
  std::optional<DecompositionModule> interval;
  std::optional<Realizations> interval_models;
  auto overlap = [&](std::size_t i, std::size_t j, const IndexSet& target, int q) -> std::vector<Integer> {
    if (!interval) {
      interval = decompose(module.complex(), PairFamily::disk_sphere(pairs.size(), 1), module.ring(), budget);
      interval_models.emplace(*interval, budget);
    }
    auto lift = [&](std::size_t g) {
      const Summand& s = summands[gens[g].summand];
      auto at = interval->find_summand(s.index, s.internal_degree, std::vector<int>(s.index.size(), 0));
      if (!at) throw InvariantViolation("missing summand in the interval decomposition");
      return interval->first_generator(*at) + gens[g].index;
    };
    RingElement x = geometric_product(*interval, *interval_models, lift(i), lift(j));
    auto at = interval->find_summand(target, q, std::vector<int>(target.size(), 0));
    std::vector<Integer> w;
    if (!at) return w;
    for (std::size_t t = 0; t < (*interval).summands()[*at].basis.size(); ++t)
      w.push_back(x[interval->first_generator(*at) + t]);
    return w;
  };

  std::map<std::uint64_t, std::shared_ptr<const SimplicialComplex>> restrictions;
  auto restriction = [&](const IndexSet& s) -> const SimplicialComplex& {
    auto it = restrictions.find(s.mask());
    if (it == restrictions.end()) it = restrictions.emplace(s.mask(), module.restriction(s)).first;
    return *it->second;
  };

  const bool vanishing = pairs.is_suspension_pair();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Summand& s = summands[gens[i].summand];
      const Summand& t = summands[gens[j].summand];
      const IndexSet target = s.index.united(t.index);
      const int q = s.internal_degree + t.internal_degree + 1;
      const bool disjoint = s.index.disjoint(t.index);
      rules[i][j] = disjoint ? ProductRule::Disjoint : vanishing ? ProductRule::Vanishing : ProductRule::Cone;
      if (!disjoint && vanishing) continue;
      auto fibers = cone_pair_product(pairs, s.index, s.fiber, t.index, t.fiber);
      if (fibers.empty()) continue;

      std::vector<Integer> w;
      if (disjoint) {
        auto at = module.find_summand(target, q, fibers.front().first);
        if (!at) continue;
        const Cochain& a = s.basis.generators()[gens[i].index];
        const Cochain& b = t.basis.generators()[gens[j].index];
        Cochain c = star_on(restriction(target), restriction(s.index), restriction(t.index), target, s.index,
                            t.index, a, b, module.ring());
        w = summands[*at].basis.express(c);
      } else {
        w = overlap(i, j, target, q);
        rules[i][j] = ProductRule::Geometric;
      }
      const Integer sign = koszul(s.fiber_degree * (t.internal_degree + 1));
      for (const auto& [z, coeff] : fibers) {
        auto at = module.find_summand(target, q, z);
        if (!at) {
          for (const auto& x : w)
            if (x != 0) throw InvariantViolation("product lands in a missing summand");
          continue;
        }
        for (std::size_t k = 0; k < w.size(); ++k)
          if (w[k] != 0) table[i][j][module.first_generator(*at) + k] += sign * coeff * w[k];
      }
    }
  return StarRing(module, std::move(table), std::move(rules));
}

StarRing multiplication_table(const SimplicialComplex& k, const PairFamily& pairs, const Coefficients& ring,
                              std::size_t budget) {
  return multiplication_table(decompose(k, pairs, ring, budget), budget);
}

TableReport check_table(const StarRing& ring) {
  TableReport r;
  const DecompositionModule& module = ring.module();
  const auto& gens = module.generators();
  const std::size_t n = ring.size();
  auto fail = [&](std::string what) {
    if (r.failures.size() < 20) r.failures.push_back(std::move(what));
    r.ok = false;
  };
  if (n == 0 || gens[0].degree != 0 || !module.summands()[0].index.empty()) {
    fail("generator 0 is not the unit summand");
    return r;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (ring.product(0, i) != ring.generator(i) || ring.product(i, 0) != ring.generator(i))
      fail("unit law fails for " + module.generator_label(i));
    for (std::size_t j = 0; j < n; ++j) {
      const RingElement& p = ring.product(i, j);
      for (std::size_t k = 0; k < n; ++k)
        if (p[k] != 0 && gens[k].degree != gens[i].degree + gens[j].degree)
          fail("degree of " + module.generator_label(i) + " * " + module.generator_label(j));
      RingElement swapped = ring.product(j, i);
      for (auto& x : swapped) x *= koszul(gens[i].degree * gens[j].degree);
      if (ring.normalize(std::move(swapped)) != p)
        fail("graded commutativity of " + module.generator_label(i) + " and " + module.generator_label(j));
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const RingElement& ij = ring.product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        RingElement left = star_product(ring, ij, ring.generator(k));
        RingElement right = star_product(ring, ring.generator(i), ring.product(j, k));
        if (left != right)
          fail("associativity of " + module.generator_label(i) + ", " + module.generator_label(j) + ", " +
               module.generator_label(k));
      }
    }
  return r;
}

IsoReport compare_tables(const StarRing& a, const StarRing& b) {
  IsoReport r;
  const auto& ma = a.module();
  const auto& mb = b.module();
  if (a.size() != b.size()) {
    r.isomorphic = false;
    r.counterexample = "different numbers of generators (" + std::to_string(a.size()) + " and " +
                       std::to_string(b.size()) + ")";
    return r;
  }
  for (std::size_t g = 0; g < a.size(); ++g) {
    const Summand& sa = ma.summands()[ma.generators()[g].summand];
    const Summand& sb = mb.summands()[mb.generators()[g].summand];
    if (!(sa.index == sb.index) || sa.internal_degree != sb.internal_degree || sa.fiber != sb.fiber ||
        ma.generators()[g].index != mb.generators()[g].index || ma.generators()[g].order != mb.generators()[g].order) {
      r.isomorphic = false;
      r.counterexample = "generator " + std::to_string(g) + " does not correspond";
      return r;
    }
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a.product(i, j) != b.product(i, j)) {
        r.isomorphic = false;
        r.counterexample = "(" + ma.generator_label(i) + ") * (" + ma.generator_label(j) + ") differs";
        return r;
      }
  return r;
}

IsoReport ungraded_iso_check(const SimplicialComplex& k, const PairFamily& pairs, const std::vector<int>& t,
                             const std::vector<int>& t_prime, const Coefficients& ring, std::size_t budget) {
  if (t.size() != t_prime.size()) throw InputError("suspension vectors differ in length");
  for (std::size_t i = 0; i < t.size(); ++i)
    if ((t[i] - t_prime[i]) % 2 != 0) throw InputError("suspension vectors must agree modulo 2");
  StarRing a = multiplication_table(k, pairs.suspended(t), ring, budget);
  StarRing b = multiplication_table(k, pairs.suspended(t_prime), ring, budget);
  return compare_tables(a, b);
}

}  // namespace mac
