#include "macring/decomposition.hpp"

#include <algorithm>

#include "macring/errors.hpp"

namespace mac {

namespace {

// All choices of one generator per ring, last position fastest.
std::vector<std::vector<int>> fiber_choices(const std::vector<GradedRing>& rings) {
  std::vector<std::vector<int>> out;
  std::vector<int> pick(rings.size(), 0);
  for (const auto& r : rings)
    if (r.size() == 0) return out;
  while (true) {
    out.push_back(pick);
    std::size_t c = rings.size();
    bool wrapped = true;
    while (c > 0) {
      --c;
      if (static_cast<std::size_t>(pick[c]) + 1 < rings[c].size()) {
        ++pick[c];
        wrapped = false;
        break;
      }
      pick[c] = 0;
    }
    if (wrapped) return out;
  }
}

}  // namespace

std::optional<std::size_t> DecompositionModule::find_summand(const IndexSet& subset, int q,
                                                             const std::vector<int>& fiber) const {
  for (std::size_t s = 0; s < summands_.size(); ++s) {
    const Summand& x = summands_[s];
    if (x.index == subset && x.internal_degree == q && x.fiber == fiber) return s;
  }
  return std::nullopt;
}

std::vector<std::size_t> DecompositionModule::generators_in_degree(int n) const {
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < generators_.size(); ++g)
    if (generators_[g].degree == n) out.push_back(g);
  return out;
}

int DecompositionModule::max_degree() const {
  int top = 0;
  for (const auto& g : generators_) top = std::max(top, g.degree);
  return top;
}

std::shared_ptr<const SimplicialComplex> DecompositionModule::restriction(const IndexSet& subset) const {
  auto it = restrictions_.find(subset.mask());
  if (it != restrictions_.end()) return it->second;
  return std::make_shared<const SimplicialComplex>(full_subcomplex(*complex_, subset));
}

std::shared_ptr<const TriangulatedModel> DecompositionModule::smash_model(const IndexSet& subset) const {
  auto it = smash_models_.find(subset.mask());
  if (it == smash_models_.end()) throw InputError("no smash model stored for " + subset.to_string());
  return it->second;
}

std::string DecompositionModule::generator_label(std::size_t g) const {
  const ModuleGenerator& gen = generators_[g];
  const Summand& s = summands_[gen.summand];
  std::string label = s.index.to_string() + " q=" + std::to_string(s.internal_degree);
  if (pairs_.kind() == PairFamily::Kind::Cone) {
    label += " x=";
    for (std::size_t a = 0; a < s.fiber.size(); ++a) {
      GradedRing r = pairs_.fiber_ring(s.index.members()[a] - 1);
      label += (a ? "," : "") + r.generator(static_cast<std::size_t>(s.fiber[a])).name;
    }
  }
  label += " #" + std::to_string(gen.index);
  if (gen.order != 0) label += " (order " + gen.order.str() + ")";
  return label;
}

void DecompositionModule::index_generators() {
  generators_.clear();
  first_.clear();
  for (std::size_t s = 0; s < summands_.size(); ++s) {
    first_.push_back(generators_.size());
    const Summand& x = summands_[s];
    for (std::size_t i = 0; i < x.basis.size(); ++i)
      generators_.push_back({s, i, x.total_degree, x.basis.orders()[i]});
  }
}

DecompositionModule decompose(const SimplicialComplex& k, const PairFamily& pairs, const Coefficients& ring,
                              std::size_t budget) {
  if (pairs.size() != k.vertex_count())
    throw InputError("pair family has " + std::to_string(pairs.size()) + " entries for " +
                     std::to_string(k.vertex_count()) + " vertices");
  if (k.vertex_count() > 24) throw InputError("at most 24 vertices are supported");
  DecompositionModule d;
  d.complex_ = std::make_shared<const SimplicialComplex>(k);
  d.pairs_ = pairs;
  d.ring_ = ring;

  for (const IndexSet& subset : IndexSet::all_subsets(k.vertex_count())) {
    if (pairs.kind() == PairFamily::Kind::Simplicial) {
      auto model = std::make_shared<const TriangulatedModel>(build_smash_model(k, pairs, subset, budget));
      d.smash_models_.emplace(subset.mask(), model);
      CochainComplex cc = model->smash_cochains(ring);
      for (int n = 0; n <= model->complex().dimension(); ++n) {
        CohomologyBasis basis = cohomology_basis(cc, n);
        if (basis.size() == 0) continue;
        d.summands_.push_back({subset, n, {}, 0, n, std::move(basis)});
      }
      continue;
    }
    std::vector<GradedRing> rings;
    for (int v : subset.members()) rings.push_back(pairs.fiber_ring(v - 1));
    auto choices = fiber_choices(rings);
    if (choices.empty()) continue;
    auto k_i = std::make_shared<const SimplicialComplex>(full_subcomplex(k, subset));
    d.restrictions_.emplace(subset.mask(), k_i);
    CochainComplex cc = CochainComplex::reduced(k_i, ring);
    for (int q = -1; q <= k_i->dimension(); ++q) {
      CohomologyBasis basis = cohomology_basis(cc, q);
      if (basis.size() == 0) continue;
      for (const auto& x : choices) {
        int fiber_degree = 0;
        for (std::size_t a = 0; a < x.size(); ++a) fiber_degree += rings[a].degree(static_cast<std::size_t>(x[a]));
        d.summands_.push_back({subset, q, x, fiber_degree, q + 1 + fiber_degree, basis});
      }
    }
  }
  d.index_generators();
  return d;
}

std::map<int, DegreeGroup> degree_groups(const DecompositionModule& module) {
  std::map<int, DegreeGroup> out;
  for (const auto& g : module.generators()) {
    DegreeGroup& dg = out[g.degree];
    if (g.order == 0) ++dg.free_rank;
    else dg.torsion.push_back(g.order);
  }
  for (auto& [n, dg] : out) std::sort(dg.torsion.begin(), dg.torsion.end());
  return out;
}

std::map<int, std::size_t> poincare_series(const DecompositionModule& module) {
  std::map<int, std::size_t> out;
  for (const auto& [n, dg] : degree_groups(module))
    if (dg.free_rank > 0) out[n] = dg.free_rank;
  return out;
}

DecompositionModule regrade(const DecompositionModule& module, const std::vector<int>& t) {
  DecompositionModule d = module;
  d.pairs_ = module.pairs_.suspended(t);
  bool moved = false;
  for (auto& s : d.summands_) {
    int add = 0;
    for (int v : s.index.members()) add += t[static_cast<std::size_t>(v - 1)];
    moved = moved || add != 0;
    s.total_degree += add;
    if (d.pairs_.kind() != PairFamily::Kind::Simplicial) s.fiber_degree += add;
  }
  if (moved && d.pairs_.kind() == PairFamily::Kind::Simplicial) d.stale_ = true;
  d.index_generators();
  return d;
}

}  // namespace mac
