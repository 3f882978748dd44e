#include "macring/cli.hpp"

#include <algorithm>
#include <limits>
#include <map>

#include <fmt/format.h>
#include <json.hpp>

#include "macring/decomposition.hpp"
#include "macring/errors.hpp"
#include "macring/geometric_model.hpp"
#include "macring/pairs.hpp"
#include "macring/star_ring.hpp"

namespace mac {

namespace {

using nlohmann::json;

json to_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

std::string element_text(const RingElement& x) {
  std::string out;
  for (std::size_t g = 0; g < x.size(); ++g) {
    if (x[g] == 0) continue;
    Integer c = x[g];
    bool negative = c < 0;
    if (negative) c = -c;
    std::string term = (c == 1 ? "" : c.str() + " ") + "g" + std::to_string(g);
    if (out.empty()) out = (negative ? "-" : "") + term;
    else out += (negative ? " - " : " + ") + term;
  }
  return out.empty() ? "0" : out;
}

std::string list_text(const std::vector<int>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + "]";
}

json index_json(const IndexSet& s) { return json(s.members()); }

SimplicialComplex load_complex(const std::string& source) {
  if (source.empty()) throw InputError("no complex given");
  auto first = source.find_first_not_of(" \t\r\n");
  bool inline_text = first != std::string::npos &&
                     (source[first] == '{' || source.compare(first, 2, "m=") == 0 || source.find("facets") != std::string::npos);
  return parse_complex(inline_text ? source : read_text_file(source));
}

struct Job {
  const JobSpec& spec;
  SimplicialComplex k;
  PairFamily pairs;
  Coefficients ring = Coefficients::integers();
  std::size_t budget = default_simplex_budget;

  json header(const char* command) const {
    json doc{{"command", command},
             {"complex", k.to_string()},
             {"pairs", pairs.describe()},
             {"coefficients", ring.name()}};
    if (pairs.any_basepoint_added()) doc["basepoint_added"] = true;
    return doc;
  }
  std::string text_header() const {
    std::string out =
        fmt::format("complex: {}\npairs: {}\ncoefficients: {}\n", k.to_string(), pairs.describe(), ring.name());
    if (pairs.any_basepoint_added()) out += "note: an empty A_i was given a disjoint basepoint\n";
    return out;
  }
};

JobResult betti(const Job& job) {
  DecompositionModule d = decompose(job.k, job.pairs, job.ring, job.budget);
  // one row per (I, total degree)
  std::vector<std::pair<IndexSet, int>> keys;
  std::map<std::pair<std::uint64_t, int>, DegreeGroup> groups;
  for (const auto& g : d.generators()) {
    const Summand& s = d.summands()[g.summand];
    auto key = std::make_pair(s.index.mask(), g.degree);
    if (!groups.count(key)) keys.emplace_back(s.index, g.degree);
    DegreeGroup& dg = groups[key];
    if (g.order == 0) ++dg.free_rank;
    else dg.torsion.push_back(g.order);
  }
  std::stable_sort(keys.begin(), keys.end(), [](const auto& a, const auto& b) {
    if (a.first == b.first) return a.second < b.second;
    return a.first < b.first;
  });
  auto totals = degree_groups(d);
  auto torsion_text = [](const std::vector<Integer>& t) {
    if (t.empty()) return std::string("-");
    std::string s;
    for (const auto& x : t) s += (s.empty() ? "" : ",") + ("Z/" + x.str());
    return s;
  };

  JobResult r;
  if (job.spec.format == OutputFormat::Structured) {
    json doc = job.header("betti");
    doc["rows"] = json::array();
    for (const auto& [index, n] : keys) {
      const DegreeGroup& dg = groups.at({index.mask(), n});
      json t = json::array();
      for (const auto& x : dg.torsion) t.push_back(to_json(x));
      doc["rows"].push_back({{"index_set", index_json(index)}, {"degree", n}, {"rank", dg.free_rank}, {"torsion", t}});
    }
    doc["totals"] = json::array();
    for (const auto& [n, dg] : totals) {
      json t = json::array();
      for (const auto& x : dg.torsion) t.push_back(to_json(x));
      doc["totals"].push_back({{"degree", n}, {"rank", dg.free_rank}, {"torsion", t}});
    }
    r.report = doc.dump(2) + "\n";
    return r;
  }
  std::string out = job.text_header();
  out += fmt::format("{:<16} {:>6} {:>6}  {}\n", "I", "degree", "rank", "torsion");
  for (const auto& [index, n] : keys) {
    const DegreeGroup& dg = groups.at({index.mask(), n});
    out += fmt::format("{:<16} {:>6} {:>6}  {}\n", index.to_string(), n, dg.free_rank, torsion_text(dg.torsion));
  }
  out += "totals\n";
  for (const auto& [n, dg] : totals)
    out += fmt::format("  H^{}: rank {}, torsion {}\n", n, dg.free_rank, torsion_text(dg.torsion));
  r.report = out;
  return r;
}

json generator_json(const DecompositionModule& d, std::size_t g) {
  const ModuleGenerator& gen = d.generators()[g];
  const Summand& s = d.summands()[gen.summand];
  const Cochain& c = s.basis.generators()[gen.index];
  json rep = json::array();
  // representative cocycle on K_I (or on the smash model for simplicial pairs)
  std::shared_ptr<const SimplicialComplex> k_i;
  if (d.pairs().kind() == PairFamily::Kind::Simplicial) k_i = d.smash_model(s.index)->complex_ptr();
  else k_i = d.restriction(s.index);
  for (std::size_t f = 0; f < c.values.size(); ++f)
    if (c.values[f] != 0) rep.push_back({json(k_i->face_vector(c.degree, f)), to_json(c.values[f])});
  json fiber = json::array();
  for (std::size_t a = 0; a < s.fiber.size(); ++a)
    fiber.push_back(d.pairs().fiber_ring(s.index.members()[a] - 1).generator(static_cast<std::size_t>(s.fiber[a])).name);
  return {{"id", g},
          {"index_set", index_json(s.index)},
          {"internal_degree", s.internal_degree},
          {"degree", gen.degree},
          {"fiber", fiber},
          {"order", to_json(gen.order)},
          {"representative", rep}};
}

JobResult ring_table(const Job& job) {
  StarRing table = multiplication_table(job.k, job.pairs, job.ring, job.budget);
  const DecompositionModule& d = table.module();
  JobResult r;
  if (job.spec.format == OutputFormat::Structured) {
    json doc = job.header("ring");
    doc["generators"] = json::array();
    for (std::size_t g = 0; g < table.size(); ++g) doc["generators"].push_back(generator_json(d, g));
    doc["products"] = json::array();
    for (std::size_t i = 0; i < table.size(); ++i)
      for (std::size_t j = 0; j < table.size(); ++j) {
        const RingElement& p = table.product(i, j);
        for (std::size_t k = 0; k < p.size(); ++k)
          if (p[k] != 0) doc["products"].push_back({i, j, k, to_json(p[k])});
      }
    r.report = doc.dump(2) + "\n";
    return r;
  }
  std::string out = job.text_header();
  out += fmt::format("generators ({})\n", table.size());
  for (std::size_t g = 0; g < table.size(); ++g)
    out += fmt::format("  g{:<4} degree {:>3}  {}\n", g, d.generators()[g].degree, d.generator_label(g));
  out += "products (g0 is the unit; zero products omitted)\n";
  std::size_t nonzero = 0;
  for (std::size_t i = 1; i < table.size(); ++i)
    for (std::size_t j = 1; j < table.size(); ++j) {
      const RingElement& p = table.product(i, j);
      if (std::all_of(p.begin(), p.end(), [](const Integer& x) { return x == 0; })) continue;
      ++nonzero;
      out += fmt::format("  g{} * g{} = {}\n", i, j, element_text(p));
    }
  out += fmt::format("nonzero products: {}\n", nonzero);
  r.report = out;
  return r;
}

JobResult hochster_table(const Job& job) {
  DecompositionModule d = decompose(job.k, job.pairs, job.ring, job.budget);
  std::map<std::pair<std::size_t, int>, DegreeGroup> cells;
  int qmin = 0, qmax = 0;
  std::size_t smax = 0;
  for (const auto& g : d.generators()) {
    const Summand& s = d.summands()[g.summand];
    DegreeGroup& dg = cells[{s.index.size(), s.internal_degree}];
    if (g.order == 0) ++dg.free_rank;
    else dg.torsion.push_back(g.order);
    qmin = std::min(qmin, s.internal_degree);
    qmax = std::max(qmax, s.internal_degree);
    smax = std::max(smax, s.index.size());
  }
  JobResult r;
  if (job.spec.format == OutputFormat::Structured) {
    json doc = job.header("table");
    doc["cells"] = json::array();
    for (const auto& [key, dg] : cells) {
      json t = json::array();
      for (const auto& x : dg.torsion) t.push_back(to_json(x));
      doc["cells"].push_back({{"size", key.first}, {"internal_degree", key.second}, {"rank", dg.free_rank}, {"torsion", t}});
    }
    r.report = doc.dump(2) + "\n";
    return r;
  }
  std::string out = job.text_header();
  out += "rows |I|, columns internal degree q; entries rank (+ torsion)\n";
  out += fmt::format("{:>5}", "|I|");
  for (int q = qmin; q <= qmax; ++q) out += fmt::format(" {:>10}", q);
  out += "\n";
  for (std::size_t s = 0; s <= smax; ++s) {
    out += fmt::format("{:>5}", s);
    for (int q = qmin; q <= qmax; ++q) {
      auto it = cells.find({s, q});
      std::string cell = ".";
      if (it != cells.end()) {
        cell = std::to_string(it->second.free_rank);
        for (const auto& t : it->second.torsion) cell += "+Z/" + t.str();
      }
      out += fmt::format(" {:>10}", cell);
    }
    out += "\n";
  }
  r.report = out;
  return r;
}

void check_verify_policy(const Job& job) {
  if (job.spec.budget || job.pairs.kind() != PairFamily::Kind::DiskSphere) return;
  int n = 1;
  for (int i = 0; i < job.pairs.size(); ++i) n = std::max(n, job.pairs.disk_dimension(i));
  const int m = job.pairs.size();
  bool ok = (n == 1 && m <= 6) || (n == 2 && (m <= 4 || (job.ring.is_field() && m <= 5)));
  if (!ok)
    throw BudgetExceeded(fmt::format(
        "verification of disk dimension {} on {} vertices over {} is outside the default size policy "
        "((D1,S0) up to 6 vertices, (D2,S1) up to 4, or 5 over a field); pass --budget to override",
        n, m, job.ring.name()));
}

JobResult verify(const Job& job) {
  if (!job.pairs.has_geometric_model()) throw InputError("verify needs disk-sphere or simplicial pairs");
  check_verify_policy(job);
  SplittingReport split = verify_splitting(job.k, job.pairs, job.ring, job.budget);
  RingReport ring = verify_eta_ring(job.k, job.pairs, job.ring, job.budget);
  JobResult r;
  r.exit_code = split.ok && ring.ok ? 0 : 1;
  if (job.spec.format == OutputFormat::Structured) {
    json doc = job.header("verify");
    doc["splitting"] = {{"pass", split.ok}, {"failures", split.failures}};
    doc["ring"] = {{"pass", ring.ok}, {"pairs_checked", ring.pairs_checked}, {"failures", ring.failures}};
    r.report = doc.dump(2) + "\n";
    return r;
  }
  std::string out = job.text_header();
  out += fmt::format("{} additive splitting\n", split.ok ? "PASS" : "FAIL");
  for (const auto& f : split.failures) out += "  " + f + "\n";
  out += fmt::format("{} product formula ({} generator pairs)\n", ring.ok ? "PASS" : "FAIL", ring.pairs_checked);
  for (const auto& f : ring.failures) out += "  " + f + "\n";
  r.report = out;
  return r;
}

JobResult regrade_check(const Job& job) {
  std::vector<int> t = job.pairs.suspension();
  std::vector<int> t_prime = job.spec.compare_suspend.value_or(std::vector<int>{});
  if (!job.spec.compare_suspend) {
    t_prime = t;
    for (auto& x : t_prime) x += 2;
  }
  PairFamily base = job.pairs.unsuspended();
  IsoReport iso = ungraded_iso_check(job.k, base, t, t_prime, job.ring, job.budget);
  JobResult r;
  r.exit_code = iso.isomorphic ? 0 : 1;
  if (job.spec.format == OutputFormat::Structured) {
    json doc = job.header("regrade-check");
    doc["t"] = t;
    doc["t_prime"] = t_prime;
    doc["pass"] = iso.isomorphic;
    doc["counterexample"] = iso.counterexample;
    r.report = doc.dump(2) + "\n";
    return r;
  }
  r.report = job.text_header() + fmt::format("{} ungraded isomorphism suspend:{} vs suspend:{}\n",
                                             iso.isomorphic ? "PASS" : "FAIL", list_text(t), list_text(t_prime));
  if (!iso.isomorphic) r.report += "  " + iso.counterexample + "\n";
  return r;
}

}  // namespace

Command parse_command(std::string_view name) {
  if (name == "betti") return Command::Betti;
  if (name == "ring") return Command::Ring;
  if (name == "verify") return Command::Verify;
  if (name == "table") return Command::Table;
  if (name == "regrade-check") return Command::RegradeCheck;
  throw InputError("unknown command '" + std::string(name) + "'");
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "text") return OutputFormat::Text;
  if (name == "structured") return OutputFormat::Structured;
  throw InputError("unknown output format '" + std::string(name) + "'");
}

JobResult run(const JobSpec& spec) {
  try {
    Job job{spec, load_complex(spec.complex), PairFamily{}, Coefficients::parse(spec.coefficients)};
    job.pairs = parse_pair_family(spec.pairs, job.k.vertex_count());
    if (spec.budget) job.budget = *spec.budget;
    switch (spec.command) {
      case Command::Betti:
        return betti(job);
      case Command::Ring:
        return ring_table(job);
      case Command::Verify:
        return verify(job);
      case Command::Table:
        return hochster_table(job);
      case Command::RegradeCheck:
        return regrade_check(job);
    }
    return {2, "error: unknown command\n"};
  } catch (const InputError& e) {
    return {2, std::string("error: ") + e.what() + "\n"};
  } catch (const BudgetExceeded& e) {
    return {3, std::string("budget exceeded: ") + e.what() + "\n"};
  } catch (const InvariantViolation& e) {
    return {1, std::string("internal check failed: ") + e.what() + "\n"};
  }
}

}  // namespace mac
