#pragma once

#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "pdist/graph.hpp"
#include "pdist/parallel.hpp"

namespace pdist {

struct PropertySpec {
  std::string name;
  std::function<bool(const Graph&)> predicate;
  bool hereditary = false;
};

PropertySpec edgeless_property();
PropertySpec triangle_free_property();
PropertySpec bipartite_property();
/// No induced path on four vertices.
PropertySpec p4_free_property();
/// No clique on r vertices.
PropertySpec clique_free_property(int r);

/// "edgeless", "triangle-free", "bipartite", "p4-free", "k<r>-free" (r >= 2).
/// Throws DomainError on unknown names.
PropertySpec property_by_name(const std::string& name);
std::vector<std::string> builtin_property_names();

/// Truth table over graphs on exactly n vertices: first line "n" or
/// "n hereditary", then one member code per line. Throws ParseError.
PropertySpec load_truth_table(const std::string& path);
PropertySpec read_truth_table(std::istream& in, const std::string& name);

/// True when every single-vertex deletion of each sample that has the
/// property still has it (a spot check of closure under induced subgraphs).
bool spot_check_hereditary(const PropertySpec& p, std::span<const Graph> samples);

/// Labeled graphs on exactly m vertices, 1 <= m <= max_m, that fail the
/// predicate, one representative per isomorphism class, in code order.
std::vector<Graph> forbidden_family(const PropertySpec& p, int max_m);

/// Smallest m <= limit with a graph on m vertices failing the predicate; 0 if none.
int smallest_violator_size(const PropertySpec& p, int limit = 6);

/// Canonical isomorphism-class key: least code over all relabelings (m <= 8).
std::uint64_t canonical_code(const Graph& g);

}  // namespace pdist
