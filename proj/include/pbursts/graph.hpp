#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pbursts {

// One geographic unit (precinct, county, ...).
struct Node {
  int id = 0;
  std::int64_t pop = 0;         // persons
  double area = 0.0;            // squared length units
  double boundary_perim = 0.0;  // length of this unit's border on the exterior
};

// Undirected adjacency between units a and b.
struct Edge {
  int a = 0;
  int b = 0;
  double shared_perim = 0.0;  // length of the border shared by a and b
};

// Immutable adjacency graph over geographic units. The constructor validates
// every structural invariant (ids exactly 0..n-1, no self loops, no duplicate
// pairs, connectedness, attribute signs) and throws std::runtime_error naming
// the offending element on failure. Once built the graph never changes and is
// safe to share across threads.
class AdjacencyGraph {
 public:
  AdjacencyGraph(std::vector<Node> nodes, std::vector<Edge> edges);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
  const Edge& edge(int index) const { return edges_[static_cast<std::size_t>(index)]; }
  std::int64_t total_pop() const { return total_pop_; }
  double total_area() const { return total_area_; }

  // Neighbors of v as (neighbor id, edge index), ascending by neighbor id.
  const std::vector<std::pair<int, int>>& neighbors(int v) const {
    return adj_[static_cast<std::size_t>(v)];
  }

 private:
  std::vector<Node> nodes_;  // indexed by id
  std::vector<Edge> edges_;  // normalized a < b, sorted by (a, b)
  std::vector<std::vector<std::pair<int, int>>> adj_;
  std::int64_t total_pop_ = 0;
  double total_area_ = 0.0;
};

// Assignment of every node to one of `district_count` districts labeled
// 1..m. A dense array is the smallest representation that supports O(n)
// scoring and exact-duplicate detection in the frontier archive.
struct Plan {
  std::vector<int> assignment;
  int district_count = 0;

  bool operator==(const Plan& other) const = default;
};

// True iff every non-empty district induces a connected subgraph. Labels
// outside 1..district_count make the plan malformed: the result is false and
// `why`, when given, receives a diagnostic.
bool is_contiguous(const AdjacencyGraph& graph, const Plan& plan,
                   std::string* why = nullptr);

// Throws std::runtime_error if the plan violates any invariant: wrong
// assignment length, labels outside 1..m, an unused label, or a
// non-contiguous district.
void validate_plan(const AdjacencyGraph& graph, const Plan& plan);

// Population of each district, 1-based labels mapped to entries 0..m-1.
// Entries sum to the graph's total population.
std::vector<std::int64_t> district_populations(const AdjacencyGraph& graph,
                                               const Plan& plan);

struct DistrictGeometry {
  double area = 0.0;
  double perimeter = 0.0;
};

// Area and perimeter of each district. A district's perimeter is the sum of
// its members' exterior boundary lengths plus the shared borders of edges cut
// by the plan. Accumulation is in ascending node/edge order so results are
// bit-reproducible.
std::vector<DistrictGeometry> district_geometry(const AdjacencyGraph& graph,
                                                const Plan& plan);

}  // namespace pbursts
