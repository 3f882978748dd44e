#include "macring/pairs.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "macring/errors.hpp"

namespace mac {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

long long parse_int(std::string_view s, const std::string& what) {
  s = trim(s);
  long long v = 0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw InputError("expected an integer for " + what + ", got '" + std::string(s) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

// "[1,2,3]" or a bare integer repeated m times
std::vector<int> parse_int_list(std::string_view s, int m, const std::string& what) {
  s = trim(s);
  std::vector<int> out;
  if (!s.empty() && s.front() == '[') {
    if (s.back() != ']') throw InputError("unterminated list in " + what);
    std::string_view body = trim(s.substr(1, s.size() - 2));
    if (!body.empty())
      for (auto part : split(body, ',')) out.push_back(static_cast<int>(parse_int(part, what)));
    if (static_cast<int>(out.size()) != m)
      throw InputError(what + " needs " + std::to_string(m) + " entries, got " + std::to_string(out.size()));
  } else {
    out.assign(static_cast<std::size_t>(m), static_cast<int>(parse_int(s, what)));
  }
  return out;
}

Integer sign_of(int e) { return (e % 2 == 0) ? Integer(1) : Integer(-1); }

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------- GradedRing

GradedRing GradedRing::parse(std::string_view text) {
  GradedRing r;
  std::map<std::string, std::size_t, std::less<>> index;
  std::vector<std::pair<std::string, std::string>> product_lines;  // lhs, rhs

  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    std::string where = "ring line " + std::to_string(line_no);
    if (line.substr(0, 4) == "gen ") {
      std::istringstream ss{std::string(line.substr(4))};
      std::string name;
      long long deg = 0;
      std::string extra;
      if (!(ss >> name >> deg) || (ss >> extra)) throw InputError(where + ": expected 'gen <name> <degree>'");
      if (deg < 0) throw InputError(where + ": negative degree");
      if (index.count(name)) throw InputError(where + ": duplicate generator '" + name + "'");
      index.emplace(name, r.gens_.size());
      r.gens_.push_back({name, static_cast<int>(deg)});
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos) throw InputError(where + ": expected 'gen' or a product");
    product_lines.emplace_back(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
  }

  const std::size_t n = r.gens_.size();
  r.table_.assign(n, std::vector<std::vector<Integer>>(n, std::vector<Integer>(n)));
  std::vector<std::vector<char>> given(n, std::vector<char>(n, 0));
  auto lookup = [&](std::string_view name) {
    auto it = index.find(trim(name));
    if (it == index.end()) throw InputError("unknown ring generator '" + std::string(trim(name)) + "'");
    return it->second;
  };
  for (const auto& [lhs, rhs] : product_lines) {
    auto star = lhs.find('*');
    if (star == std::string::npos) throw InputError("expected '<a>*<b>' on the left of '" + lhs + "'");
    std::size_t a = lookup(std::string_view(lhs).substr(0, star));
    std::size_t b = lookup(std::string_view(lhs).substr(star + 1));
    if (given[a][b]) throw InputError("product " + lhs + " given twice");
    given[a][b] = 1;
    std::vector<Integer> coeffs(n);
    if (rhs != "0") {
      for (auto term : split(rhs, '+')) {
        if (term.empty()) throw InputError("empty term in '" + rhs + "'");
        auto sp = term.find_last_of(" \t");
        Integer c = 1;
        std::string_view name = term;
        if (sp != std::string_view::npos) {
          c = parse_int(term.substr(0, sp), "coefficient in '" + rhs + "'");
          name = term.substr(sp + 1);
        } else if (!name.empty() && name.front() == '-') {
          c = -1;
          name.remove_prefix(1);
        }
        coeffs[lookup(name)] += c;
      }
    }
    r.table_[a][b] = std::move(coeffs);
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (!given[a][b] && given[b][a]) {
        Integer s = sign_of(r.gens_[a].degree * r.gens_[b].degree);
        for (std::size_t k = 0; k < n; ++k) r.table_[a][b][k] = s * r.table_[b][a][k];
      }
  r.validate();
  return r;
}

GradedRing GradedRing::sphere(int d) {
  if (d < 0) throw InputError("sphere dimension must be non-negative");
  GradedRing r;
  r.gens_.push_back({"s", d});
  r.table_.assign(1, std::vector<std::vector<Integer>>(1, std::vector<Integer>{d == 0 ? 1 : 0}));
  return r;
}

GradedRing GradedRing::shifted(int t) const {
  if (t < 0) throw InputError("suspension exponents must be non-negative");
  GradedRing r = *this;
  if (t == 0) return r;
  for (auto& g : r.gens_) g.degree += t;
  for (auto& row : r.table_)
    for (auto& cell : row) std::fill(cell.begin(), cell.end(), Integer(0));
  return r;
}

void GradedRing::validate() const {
  const std::size_t n = gens_.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t k = 0; k < n; ++k) {
        if (table_[a][b][k] != 0 && gens_[k].degree != gens_[a].degree + gens_[b].degree)
          throw InputError("ring product " + gens_[a].name + "*" + gens_[b].name + " is not homogeneous");
        if (table_[b][a][k] != sign_of(gens_[a].degree * gens_[b].degree) * table_[a][b][k])
          throw InputError("ring product " + gens_[a].name + "*" + gens_[b].name + " is not graded commutative");
      }
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c) {
        std::vector<Integer> left(n), right(n);
        for (std::size_t l = 0; l < n; ++l) {
          if (table_[a][b][l] != 0)
            for (std::size_t k = 0; k < n; ++k) left[k] += table_[a][b][l] * table_[l][c][k];
          if (table_[b][c][l] != 0)
            for (std::size_t k = 0; k < n; ++k) right[k] += table_[b][c][l] * table_[a][l][k];
        }
        if (left != right)
          throw InputError("ring products of " + gens_[a].name + ", " + gens_[b].name + ", " + gens_[c].name +
                           " are not associative");
      }
}

std::string GradedRing::to_string() const {
  std::ostringstream out;
  for (const auto& g : gens_) out << "gen " << g.name << ' ' << g.degree << '\n';
  for (std::size_t a = 0; a < gens_.size(); ++a)
    for (std::size_t b = 0; b < gens_.size(); ++b) {
      std::string rhs;
      for (std::size_t k = 0; k < gens_.size(); ++k)
        if (table_[a][b][k] != 0) rhs += (rhs.empty() ? "" : " + ") + table_[a][b][k].str() + " " + gens_[k].name;
      if (!rhs.empty()) out << gens_[a].name << '*' << gens_[b].name << " = " << rhs << '\n';
    }
  return out.str();
}

// ------------------------------------------------------------ SimplicialPair

SimplicialPair SimplicialPair::make(SimplicialComplex x, SimplicialComplex a) {
  if (a.vertex_count() > x.vertex_count()) throw InputError("A has more vertices than X");
  if (x.vertex_count() > 60) throw InputError("pair complexes are limited to 60 vertices");
  for (const auto& f : a.faces())
    if (!x.contains(f)) throw InputError("A is not a subcomplex of X");
  SimplicialPair p;
  if (a.count(0) == 0) {
    int n = x.vertex_count() + 1;
    std::vector<Face> facets{{1}};
    for (auto f : x.facets()) {
      if (f.empty()) continue;
      for (auto& v : f) ++v;
      facets.push_back(std::move(f));
    }
    p.x = SimplicialComplex::from_facets(n, std::move(facets));
    p.a = SimplicialComplex::from_facets(n, {{1}});
    p.basepoint = 1;
    p.basepoint_added = true;
    return p;
  }
  p.x = std::move(x);
  p.a = SimplicialComplex::from_facets(p.x.vertex_count(), a.facets());
  p.basepoint = p.a.face(0, 0)[0];
  return p;
}

SimplicialPair SimplicialPair::disk(int n) {
  if (n < 1) throw InputError("disk dimension must be at least 1");
  SimplicialPair p;
  p.x = complexes::simplex(n + 1);
  p.a = complexes::simplex_boundary(n + 1);
  p.basepoint = 1;
  return p;
}

SimplicialPair SimplicialPair::suspension() const {
  SimplicialPair p;
  SimplicialComplex poles = complexes::points(2);
  p.x = join(poles, x);
  p.a = join(poles, a);
  p.basepoint = 1;
  p.basepoint_added = basepoint_added;
  return p;
}

// ---------------------------------------------------------------- PairFamily

PairFamily PairFamily::disk_sphere(std::vector<int> n) {
  for (int d : n)
    if (d < 1) throw InputError("disk dimensions must be at least 1");
  PairFamily f;
  f.kind_ = Kind::DiskSphere;
  f.t_.assign(n.size(), 0);
  f.n_ = std::move(n);
  return f;
}

PairFamily PairFamily::cone(std::vector<GradedRing> rings) {
  for (const auto& r : rings) r.validate();
  PairFamily f;
  f.kind_ = Kind::Cone;
  f.t_.assign(rings.size(), 0);
  f.rings_ = std::move(rings);
  return f;
}

PairFamily PairFamily::simplicial(std::vector<SimplicialPair> pairs) {
  PairFamily f;
  f.kind_ = Kind::Simplicial;
  f.t_.assign(pairs.size(), 0);
  f.pairs_ = std::move(pairs);
  return f;
}

PairFamily PairFamily::suspended(const std::vector<int>& t) const {
  if (t.size() != t_.size())
    throw InputError("suspension vector has " + std::to_string(t.size()) + " entries, expected " +
                     std::to_string(t_.size()));
  PairFamily f = *this;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < 0) throw InputError("suspension exponents must be non-negative");
    f.t_[i] += t[i];
  }
  return f;
}

PairFamily PairFamily::unsuspended() const {
  PairFamily f = *this;
  std::fill(f.t_.begin(), f.t_.end(), 0);
  return f;
}

int PairFamily::disk_dimension(int i) const {
  if (kind_ != Kind::DiskSphere) throw InputError("not a disk-sphere family");
  return n_[static_cast<std::size_t>(i)] + t_[static_cast<std::size_t>(i)];
}

GradedRing PairFamily::fiber_ring(int i) const {
  auto k = static_cast<std::size_t>(i);
  switch (kind_) {
    case Kind::DiskSphere:
      return GradedRing::sphere(n_[k] + t_[k] - 1);
    case Kind::Cone:
      return rings_[k].shifted(t_[k]);
    case Kind::Simplicial:
      break;
  }
  throw InputError("simplicial pair families carry no fiber ring");
}

SimplicialPair PairFamily::simplicial_pair(int i) const {
  auto k = static_cast<std::size_t>(i);
  switch (kind_) {
    case Kind::DiskSphere:
      return SimplicialPair::disk(n_[k] + t_[k]);
    case Kind::Simplicial: {
      SimplicialPair p = pairs_[k];
      for (int s = 0; s < t_[k]; ++s) p = p.suspension();
      return p;
    }
    case Kind::Cone:
      break;
  }
  throw InputError("cone pairs have no simplicial model");
}

bool PairFamily::is_suspension_pair() const {
  bool all_suspended = std::all_of(t_.begin(), t_.end(), [](int t) { return t >= 1; });
  if (all_suspended) return true;
  if (kind_ == Kind::DiskSphere) {
    for (std::size_t i = 0; i < n_.size(); ++i)
      if (n_[i] + t_[i] < 2) return false;
    return true;
  }
  return false;
}

bool PairFamily::any_basepoint_added() const {
  return std::any_of(pairs_.begin(), pairs_.end(), [](const SimplicialPair& p) { return p.basepoint_added; });
}

PairFamily PairFamily::restricted(const IndexSet& subset) const {
  PairFamily f;
  f.kind_ = kind_;
  for (int v : subset.members()) {
    auto k = static_cast<std::size_t>(v - 1);
    if (k >= t_.size()) throw InputError("index set exceeds the pair family");
    f.t_.push_back(t_[k]);
    if (kind_ == Kind::DiskSphere) f.n_.push_back(n_[k]);
    if (kind_ == Kind::Cone) f.rings_.push_back(rings_[k]);
    if (kind_ == Kind::Simplicial) f.pairs_.push_back(pairs_[k]);
  }
  return f;
}

std::string PairFamily::describe() const {
  auto list = [](const std::vector<int>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
  };
  std::string s;
  switch (kind_) {
    case Kind::DiskSphere:
      s = "disk-sphere:" + list(n_);
      break;
    case Kind::Cone: {
      std::vector<int> degrees;
      s = "cone:[";
      for (std::size_t i = 0; i < rings_.size(); ++i) {
        s += i ? ";" : "";
        for (std::size_t g = 0; g < rings_[i].size(); ++g)
          s += (g ? "," : "") + rings_[i].generator(g).name + "^" + std::to_string(rings_[i].degree(g));
      }
      s += "]";
      break;
    }
    case Kind::Simplicial:
      s = "pairs:" + std::to_string(pairs_.size());
      break;
  }
  if (std::any_of(t_.begin(), t_.end(), [](int t) { return t != 0; })) s += " suspend:" + list(t_);
  return s;
}

// ------------------------------------------------------------------ parsing

std::vector<SimplicialPair> parse_pair_file(std::string_view json_text, int m) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("pair file is not valid JSON: ") + e.what());
  }
  auto complex_of = [](const nlohmann::json& j) {
    if (j.is_string()) return parse_complex(j.get<std::string>());
    if (j.is_object()) return parse_complex(j.dump());
    throw InputError("pair complexes must be strings or objects");
  };
  auto pair_of = [&](const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("X") || !j.contains("A")) throw InputError("each pair needs 'X' and 'A'");
    return SimplicialPair::make(complex_of(j["X"]), complex_of(j["A"]));
  };
  if (!doc.is_object()) throw InputError("pair file must hold a JSON object");
  std::vector<SimplicialPair> out;
  if (doc.contains("pairs")) {
    const auto& arr = doc["pairs"];
    if (!arr.is_array()) throw InputError("'pairs' must be an array");
    for (const auto& j : arr) out.push_back(pair_of(j));
    if (out.size() == 1 && m > 1) out.assign(static_cast<std::size_t>(m), out.front());
  } else {
    out.assign(static_cast<std::size_t>(m), pair_of(doc));
  }
  if (static_cast<int>(out.size()) != m)
    throw InputError("pair file lists " + std::to_string(out.size()) + " pairs for " + std::to_string(m) +
                     " vertices");
  return out;
}

PairFamily parse_pair_family(std::string_view text, int m) {
  text = trim(text);
  std::vector<int> t(static_cast<std::size_t>(m), 0);
  if (auto at = text.find("suspend:"); at != std::string_view::npos) {
    t = parse_int_list(text.substr(at + 8), m, "suspend");
    text = trim(text.substr(0, at));
    if (!text.empty() && (text.back() == ';' || text.back() == ',')) text = trim(text.substr(0, text.size() - 1));
  }
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw InputError("pair family must look like '<kind>:<argument>'");
  std::string_view kind = text.substr(0, colon), arg = trim(text.substr(colon + 1));

  PairFamily family;
  if (kind == "disk-sphere") {
    family = PairFamily::disk_sphere(parse_int_list(arg, m, "disk-sphere"));
  } else if (kind == "pair-file") {
    family = PairFamily::simplicial(parse_pair_file(read_text_file(std::string(arg)), m));
  } else if (kind == "cone") {
    auto ring_of = [](std::string_view name) {
      if (name.substr(0, 7) == "sphere:")
        return GradedRing::sphere(static_cast<int>(parse_int(name.substr(7), "sphere dimension")));
      return GradedRing::parse(read_text_file(std::string(name)));
    };
    std::vector<GradedRing> rings;
    if (!arg.empty() && arg.front() == '[') {
      if (arg.back() != ']') throw InputError("unterminated cone list");
      for (auto part : split(arg.substr(1, arg.size() - 2), ',')) rings.push_back(ring_of(part));
      if (static_cast<int>(rings.size()) != m)
        throw InputError("cone list needs " + std::to_string(m) + " entries");
    } else {
      rings.assign(static_cast<std::size_t>(m), ring_of(arg));
    }
    family = PairFamily::cone(std::move(rings));
  } else {
    throw InputError("unknown pair family kind '" + std::string(kind) + "'");
  }
  return family.suspended(t);
}

}  // namespace mac
