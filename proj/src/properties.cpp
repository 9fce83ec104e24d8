#include "pdist/properties.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <memory>
#include <numeric>
#include <sstream>

#include "pdist/errors.hpp"

namespace pdist {

namespace {

bool has_triangle(const Graph& g) {
  for (int u = 0; u < g.n(); ++u)
    for (int v = u + 1; v < g.n(); ++v) {
      if (!g.has_edge(u, v)) continue;
      const auto ru = g.row(u), rv = g.row(v);
      for (std::size_t w = 0; w < ru.size(); ++w)
        if (ru[w] & rv[w]) return true;
    }
  return false;
}

bool two_colorable(const Graph& g) {
  std::vector<int> color(static_cast<std::size_t>(g.n()), -1);
  std::vector<int> stack;
  for (int s = 0; s < g.n(); ++s) {
    if (color[static_cast<std::size_t>(s)] >= 0) continue;
    color[static_cast<std::size_t>(s)] = 0;
    stack.push_back(s);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < g.n(); ++v) {
        if (v == u || !g.has_edge(u, v)) continue;
        auto& c = color[static_cast<std::size_t>(v)];
        if (c < 0) {
          c = 1 - color[static_cast<std::size_t>(u)];
          stack.push_back(v);
        } else if (c == color[static_cast<std::size_t>(u)]) {
          return false;
        }
      }
    }
  }
  return true;
}

// Three edges with degrees (1,1,2,2) on four vertices is exactly P4.
bool has_induced_p4(const Graph& g) {
  const int n = g.n();
  int q[4];
  for (q[0] = 0; q[0] < n; ++q[0])
    for (q[1] = q[0] + 1; q[1] < n; ++q[1])
      for (q[2] = q[1] + 1; q[2] < n; ++q[2])
        for (q[3] = q[2] + 1; q[3] < n; ++q[3]) {
          int deg[4] = {};
          int edges = 0;
          for (int a = 0; a < 4; ++a)
            for (int b = a + 1; b < 4; ++b)
              if (g.has_edge(q[a], q[b])) {
                ++deg[a];
                ++deg[b];
                ++edges;
              }
          if (edges != 3) continue;
          std::sort(deg, deg + 4);
          if (deg[0] == 1 && deg[1] == 1 && deg[2] == 2 && deg[3] == 2) return true;
        }
  return false;
}

bool clique_from(const Graph& g, std::vector<int>& chosen, int next, int r) {
  if (static_cast<int>(chosen.size()) == r) return true;
  for (int v = next; v < g.n(); ++v) {
    bool ok = true;
    for (int u : chosen) ok = ok && g.has_edge(u, v);
    if (!ok) continue;
    chosen.push_back(v);
    if (clique_from(g, chosen, v + 1, r)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

PropertySpec edgeless_property() {
  return {"edgeless", [](const Graph& g) { return g.edge_count() == 0; }, true};
}

PropertySpec triangle_free_property() {
  return {"triangle-free", [](const Graph& g) { return !has_triangle(g); }, true};
}

PropertySpec bipartite_property() { return {"bipartite", two_colorable, true}; }

PropertySpec p4_free_property() {
  return {"p4-free", [](const Graph& g) { return !has_induced_p4(g); }, true};
}

PropertySpec clique_free_property(int r) {
  if (r < 2) throw DomainError("clique size must be >= 2");
  return {"k" + std::to_string(r) + "-free",
          [r](const Graph& g) {
            std::vector<int> chosen;
            return !clique_from(g, chosen, 0, r);
          },
          true};
}

std::vector<std::string> builtin_property_names() {
  return {"edgeless", "triangle-free", "bipartite", "p4-free", "k<r>-free"};
}

PropertySpec property_by_name(const std::string& name) {
  if (name == "edgeless") return edgeless_property();
  if (name == "triangle-free") return triangle_free_property();
  if (name == "bipartite") return bipartite_property();
  if (name == "p4-free") return p4_free_property();
  if (name.size() > 6 && name.front() == 'k' && name.ends_with("-free")) {
    const std::string digits = name.substr(1, name.size() - 6);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return clique_free_property(std::stoi(digits));
  }
  throw DomainError("unknown property '" + name + "'");
}

PropertySpec read_truth_table(std::istream& in, const std::string& name) {
  std::string header;
  if (!std::getline(in, header)) throw ParseError("empty truth table");
  std::istringstream hs(header);
  int n = 0;
  if (!(hs >> n) || n < 1 || n > 7) throw ParseError("truth table header needs 1 <= n <= 7");
  bool hereditary = false;
  std::string flag;
  if (hs >> flag) {
    if (flag != "hereditary") throw ParseError("unknown truth table flag '" + flag + "'");
    hereditary = true;
  }
  if (hs >> flag) throw ParseError("trailing content in truth table header");
  const std::uint64_t limit = std::uint64_t{1} << pair_count(static_cast<std::size_t>(n));
  auto members = std::make_shared<std::set<std::uint64_t>>();
  std::uint64_t code = 0;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    try {
      code = std::stoull(token, &used);
    } catch (const std::exception&) {
      throw ParseError("bad member code '" + token + "'");
    }
    if (used != token.size() || code >= limit) throw ParseError("bad member code '" + token + "'");
    members->insert(code);
  }
  return {name,
          [n, members](const Graph& g) {
            if (g.n() != n) throw DomainError("truth table covers only graphs on " + std::to_string(n) + " vertices");
            return members->contains(g.code());
          },
          hereditary};
}

PropertySpec load_truth_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  return read_truth_table(in, path);
}

bool spot_check_hereditary(const PropertySpec& p, std::span<const Graph> samples) {
  for (const Graph& g : samples) {
    if (g.n() < 2 || !p.predicate(g)) continue;
    for (int drop = 0; drop < g.n(); ++drop) {
      std::vector<int> keep;
      for (int v = 0; v < g.n(); ++v)
        if (v != drop) keep.push_back(v);
      if (!p.predicate(g.induced(keep))) return false;
    }
  }
  return true;
}

std::uint64_t canonical_code(const Graph& g) {
  if (g.n() > 8) throw SizeError("canonical codes support at most 8 vertices");
  std::vector<int> perm(static_cast<std::size_t>(g.n()));
  std::iota(perm.begin(), perm.end(), 0);
  std::uint64_t best = ~std::uint64_t{0};
  do {
    best = std::min(best, g.induced(perm).code());
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<Graph> forbidden_family(const PropertySpec& p, int max_m) {
  if (max_m > 5) throw SizeError("forbidden families are enumerated up to 5 vertices");
  std::vector<Graph> out;
  for (int m = 1; m <= max_m; ++m) {
    std::set<std::uint64_t> classes;
    const std::uint64_t limit = std::uint64_t{1} << pair_count(static_cast<std::size_t>(m));
    for (std::uint64_t code = 0; code < limit; ++code) {
      Graph h = Graph::from_code(m, code);
      if (p.predicate(h)) continue;
      if (classes.insert(canonical_code(h)).second) out.push_back(std::move(h));
    }
  }
  return out;
}

int smallest_violator_size(const PropertySpec& p, int limit) {
  for (int m = 1; m <= limit; ++m) {
    const std::uint64_t codes = std::uint64_t{1} << pair_count(static_cast<std::size_t>(m));
    for (std::uint64_t code = 0; code < codes; ++code)
      if (!p.predicate(Graph::from_code(m, code))) return m;
  }
  return 0;
}

}  // namespace pdist
