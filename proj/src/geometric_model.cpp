#include "macring/geometric_model.hpp"

#include <algorithm>

#include "macring/errors.hpp"

namespace mac {

namespace {

std::vector<int> positions_in(const IndexSet& inner, const IndexSet& outer) {
  std::vector<int> out;
  for (int v : inner.members()) out.push_back(outer.position(v));
  return out;
}

std::map<int, DegreeGroup> groups_by_degree(const CohomologyGroups& g, int top) {
  std::map<int, DegreeGroup> out;
  for (int n = 0; n <= top; ++n) {
    DegreeGroup dg{g.betti(n), g.torsion(n)};
    if (dg.free_rank > 0 || !dg.torsion.empty()) out[n] = std::move(dg);
  }
  return out;
}

void add_groups(std::map<int, DegreeGroup>& into, const std::map<int, DegreeGroup>& from) {
  for (const auto& [n, dg] : from) {
    DegreeGroup& t = into[n];
    t.free_rank += dg.free_rank;
    t.torsion.insert(t.torsion.end(), dg.torsion.begin(), dg.torsion.end());
    std::sort(t.torsion.begin(), t.torsion.end());
  }
}

std::string describe_groups(const std::map<int, DegreeGroup>& g) {
  std::string s;
  for (const auto& [n, dg] : g) {
    s += (s.empty() ? "" : " ") + std::to_string(n) + ":" + std::to_string(dg.free_rank);
    for (const auto& t : dg.torsion) s += "+Z/" + t.str();
  }
  return s.empty() ? "0" : s;
}

std::string element_string(const std::vector<Integer>& x) {
  std::string s;
  for (std::size_t g = 0; g < x.size(); ++g)
    if (x[g] != 0) s += (s.empty() ? "" : " + ") + x[g].str() + "·g" + std::to_string(g);
  return s.empty() ? "0" : s;
}

std::string face_string(const Face& f) {
  std::string s = "(";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + std::to_string(f[i]);
  return s + ")";
}

}  // namespace

EtaRealization::EtaRealization(const DecompositionModule& module, const IndexSet& subset, std::size_t budget)
    : module_(&module), subset_(subset) {
  const PairFamily& pairs = module.pairs();
  if (!pairs.has_geometric_model()) throw InputError("cone pairs have no geometric model");
  if (module.geometry_stale()) throw InputError("regraded simplicial modules must be recomputed");
  model_ = std::make_shared<TriangulatedModel>(
      build_model(full_subcomplex(module.complex(), subset), pairs.restricted(subset), budget));
  cochains_ = std::make_shared<CochainComplex>(model_->total_cochains(module.ring()));
  groups_ = std::make_shared<CohomologyGroups>(*cochains_);
  for (std::size_t g = 0; g < module.generators().size(); ++g)
    if (module.summands()[module.generators()[g].summand].index.subset_of(subset)) generators_.push_back(g);
}

const Cochain& EtaRealization::image(std::size_t generator) const {
  auto it = images_.find(generator);
  if (it != images_.end()) return it->second;
  const ModuleGenerator& gen = module_->generators().at(generator);
  const Summand& s = module_->summands()[gen.summand];
  if (!s.index.subset_of(subset_)) throw InputError("generator does not live over " + subset_.to_string());
  std::vector<int> positions = positions_in(s.index, subset_);
  const Cochain& c = s.basis.generators()[gen.index];
  Cochain image;
  if (module_->pairs().kind() == PairFamily::Kind::DiskSphere) {
    std::vector<int> disks;
    for (int v : s.index.members()) disks.push_back(module_->pairs().disk_dimension(v - 1));
    image = disk_sphere_image(*model_, positions, disks, *module_->restriction(s.index), c, module_->ring());
  } else {
    image = projection_pullback(*model_, *module_->smash_model(s.index), positions, c);
  }
  if (image.degree != gen.degree) throw InvariantViolation("image has the wrong degree");
  return images_.emplace(generator, std::move(image)).first->second;
}

const ClassCoordinates& EtaRealization::coordinates(int n) const {
  auto it = coordinates_.find(n);
  if (it != coordinates_.end()) return it->second;
  std::vector<Cochain> gens;
  std::vector<Integer> orders;
  for (std::size_t g : generators_)
    if (module_->generators()[g].degree == n) {
      gens.push_back(image(g));
      orders.push_back(module_->generators()[g].order);
    }
  return coordinates_.emplace(n, groups_->coordinates(n, gens, orders)).first->second;
}

std::vector<Integer> EtaRealization::express(const Cochain& x) const {
  std::vector<Integer> out(module_->generators().size());
  if (x.degree > model_->complex().dimension()) return out;
  const ClassCoordinates& coords = coordinates(x.degree);
  if (!coords.valid()) throw InvariantViolation("η is not a basis in degree " + std::to_string(x.degree) + ": " +
                                                coords.failure());
  std::vector<Integer> local = coords(x);
  std::size_t k = 0;
  for (std::size_t g : generators_)
    if (module_->generators()[g].degree == x.degree) out[g] = local[k++];
  return out;
}

SplittingReport verify_splitting(const SimplicialComplex& k, const PairFamily& pairs, const Coefficients& ring,
                                 std::size_t budget) {
  SplittingReport r;
  DecompositionModule module = decompose(k, pairs, ring, budget);
  r.decomposition = degree_groups(module);
  const IndexSet all = IndexSet::full(k.vertex_count());
  EtaRealization eta(module, all, budget);
  const int top = eta.model().complex().dimension();
  r.total = groups_by_degree(eta.groups(), top);
  for (const IndexSet& subset : IndexSet::all_subsets(k.vertex_count())) {
    TriangulatedModel smash = build_smash_model(k, pairs, subset, budget);
    add_groups(r.smash_sum, groups_by_degree(CohomologyGroups(smash.smash_cochains(ring)),
                                             smash.complex().dimension()));
  }
  if (r.decomposition != r.total)
    r.failures.push_back("summands give " + describe_groups(r.decomposition) + " but the model gives " +
                         describe_groups(r.total));
  if (r.smash_sum != r.total)
    r.failures.push_back("smash models give " + describe_groups(r.smash_sum) + " but the model gives " +
                         describe_groups(r.total));
  for (int n = 0; n <= top; ++n) {
    const ClassCoordinates& c = eta.coordinates(n);
    if (!c.valid()) r.failures.push_back("degree " + std::to_string(n) + ": " + c.failure());
  }
  r.ok = r.failures.empty();
  return r;
}

RingReport verify_eta_ring(const StarRing& table, std::size_t budget) {
  RingReport r;
  const DecompositionModule& module = table.module();
  const Coefficients& ring = module.ring();
  EtaRealization eta(module, IndexSet::full(module.complex().vertex_count()), budget);
  const SimplicialComplex& z = eta.model().complex();
  const auto& gens = module.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i; j < gens.size(); ++j) {
      ++r.pairs_checked;
      const int n = gens[i].degree + gens[j].degree;
      const RingElement& c = table.product(i, j);
      std::string where = "(" + module.generator_label(i) + ") * (" + module.generator_label(j) + ")";
      if (n > z.dimension()) {
        for (const auto& x : c)
          if (x != 0) {
            r.failures.push_back(where + ": nonzero above the model dimension");
            break;
          }
        continue;
      }
      const Cochain cup = cup_product(z, eta.image(i), eta.image(j), ring);
      Cochain diff = cup;
      for (std::size_t g = 0; g < c.size(); ++g) {
        if (c[g] == 0) continue;
        if (gens[g].degree != n) {
          r.failures.push_back(where + ": product has a term in the wrong degree");
          continue;
        }
        const Cochain& img = eta.image(g);
        for (std::size_t f = 0; f < diff.values.size(); ++f)
          if (img.values[f] != 0) diff.values[f] -= c[g] * img.values[f];
      }
      for (auto& x : diff.values) x = ring.normalize(x);
      if (eta.groups().is_coboundary(diff)) continue;
      std::string msg = where + ": table gives " + element_string(c) + ", cup product gives ";
      try {
        msg += element_string(eta.express(cup));
      } catch (const InvariantViolation&) {
        msg += "(no η coordinates)";
      }
      msg += "; difference cocycle is nonzero on";
      int shown = 0;
      for (std::size_t f = 0; f < diff.values.size() && shown < 3; ++f)
        if (diff.values[f] != 0) {
          msg += " " + face_string(z.face_vector(n, f)) + "=" + diff.values[f].str();
          ++shown;
        }
      r.failures.push_back(msg);
    }
  r.ok = r.failures.empty();
  return r;
}

RingReport verify_eta_ring(const SimplicialComplex& k, const PairFamily& pairs, const Coefficients& ring,
                           std::size_t budget) {
  return verify_eta_ring(multiplication_table(k, pairs, ring, budget), budget);
}

StarRing direct_ring(const SimplicialComplex& k, const PairFamily& pairs, const Coefficients& ring,
                     std::size_t budget) {
  DecompositionModule module = decompose(k, pairs, ring, budget);
  EtaRealization eta(module, IndexSet::full(k.vertex_count()), budget);
  const std::size_t n = module.generators().size();
  std::vector<std::vector<RingElement>> table(n, std::vector<RingElement>(n, RingElement(n)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      table[i][j] = eta.express(cup_product(eta.model().complex(), eta.image(i), eta.image(j), ring));
  std::vector<std::vector<ProductRule>> rules(n, std::vector<ProductRule>(n, ProductRule::Geometric));
  return StarRing(std::move(module), std::move(table), std::move(rules));
}

}  // namespace mac
