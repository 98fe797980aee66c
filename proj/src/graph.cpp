#include "pbursts/graph.hpp"

#include <algorithm>
#include <queue>
#include <set>
#include <stdexcept>

#include <fmt/format.h>

namespace pbursts {

AdjacencyGraph::AdjacencyGraph(std::vector<Node> nodes, std::vector<Edge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  const int n = static_cast<int>(nodes_.size());
  if (n < 1) throw std::runtime_error("graph must have at least one node");

  std::sort(nodes_.begin(), nodes_.end(),
            [](const Node& x, const Node& y) { return x.id < y.id; });
  for (int i = 0; i < n; ++i) {
    const Node& nd = nodes_[static_cast<std::size_t>(i)];
    if (nd.id != i) {
      if (i > 0 && nd.id == nodes_[static_cast<std::size_t>(i - 1)].id) {
        throw std::runtime_error(fmt::format("duplicate node id {}", nd.id));
      }
      throw std::runtime_error(
          fmt::format("node ids must be exactly 0..{}, found {}", n - 1, nd.id));
    }
    if (nd.pop < 0) throw std::runtime_error(fmt::format("negative population at node {}", nd.id));
    if (!(nd.area > 0.0)) {
      throw std::runtime_error(fmt::format("non-positive area at node {}", nd.id));
    }
    if (nd.boundary_perim < 0.0) {
      throw std::runtime_error(fmt::format("negative boundary_perim at node {}", nd.id));
    }
    total_pop_ += nd.pop;
    total_area_ += nd.area;
  }
  if (total_pop_ <= 0) throw std::runtime_error("total population must be positive");

  for (Edge& e : edges_) {
    if (e.a == e.b) throw std::runtime_error(fmt::format("self-loop at node {}", e.a));
    if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n) {
      throw std::runtime_error(
          fmt::format("edge {}-{} references an unknown node", e.a, e.b));
    }
    if (e.shared_perim < 0.0) {
      throw std::runtime_error(
          fmt::format("negative shared_perim on edge {}-{}", e.a, e.b));
    }
    if (e.a > e.b) std::swap(e.a, e.b);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& x, const Edge& y) {
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].a == edges_[i - 1].a && edges_[i].b == edges_[i - 1].b) {
      throw std::runtime_error(
          fmt::format("duplicate edge {}-{}", edges_[i].a, edges_[i].b));
    }
  }

  adj_.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < static_cast<int>(edges_.size()); ++i) {
    const Edge& e = edges_[static_cast<std::size_t>(i)];
    adj_[static_cast<std::size_t>(e.a)].emplace_back(e.b, i);
    adj_[static_cast<std::size_t>(e.b)].emplace_back(e.a, i);
  }
  for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());

  // Whole-graph connectivity by BFS from node 0.
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int v = frontier.front();
    frontier.pop();
    for (const auto& [u, ei] : adj_[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        ++reached;
        frontier.push(u);
      }
    }
  }
  if (reached != n) throw std::runtime_error("graph disconnected");
}

bool is_contiguous(const AdjacencyGraph& graph, const Plan& plan, std::string* why) {
  const int n = graph.node_count();
  const int m = plan.district_count;
  if (static_cast<int>(plan.assignment.size()) != n) {
    if (why) *why = fmt::format("assignment length {} != node count {}",
                                plan.assignment.size(), n);
    return false;
  }
  for (int v = 0; v < n; ++v) {
    const int d = plan.assignment[static_cast<std::size_t>(v)];
    if (d < 1 || d > m) {
      if (why) *why = fmt::format("node {} has label {} outside 1..{}", v, d, m);
      return false;
    }
  }

  // One BFS per district over its induced subgraph.
  std::vector<int> first(static_cast<std::size_t>(m) + 1, -1);
  std::vector<int> sizes(static_cast<std::size_t>(m) + 1, 0);
  for (int v = 0; v < n; ++v) {
    const int d = plan.assignment[static_cast<std::size_t>(v)];
    if (first[static_cast<std::size_t>(d)] < 0) first[static_cast<std::size_t>(d)] = v;
    ++sizes[static_cast<std::size_t>(d)];
  }
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  std::vector<int> stack;
  for (int d = 1; d <= m; ++d) {
    if (sizes[static_cast<std::size_t>(d)] == 0) continue;  // empty: vacuously connected
    int reached = 0;
    stack.clear();
    stack.push_back(first[static_cast<std::size_t>(d)]);
    seen[static_cast<std::size_t>(first[static_cast<std::size_t>(d)])] = 1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      ++reached;
      for (const auto& [u, ei] : graph.neighbors(v)) {
        if (!seen[static_cast<std::size_t>(u)] &&
            plan.assignment[static_cast<std::size_t>(u)] == d) {
          seen[static_cast<std::size_t>(u)] = 1;
          stack.push_back(u);
        }
      }
    }
    if (reached != sizes[static_cast<std::size_t>(d)]) {
      if (why) *why = fmt::format("district {} is not connected", d);
      return false;
    }
  }
  return true;
}

void validate_plan(const AdjacencyGraph& graph, const Plan& plan) {
  if (plan.district_count < 1) throw std::runtime_error("plan has no districts");
  std::string why;
  if (!is_contiguous(graph, plan, &why)) {
    throw std::runtime_error(fmt::format("invalid plan: {}", why));
  }
  std::vector<int> counts(static_cast<std::size_t>(plan.district_count) + 1, 0);
  for (const int d : plan.assignment) ++counts[static_cast<std::size_t>(d)];
  for (int d = 1; d <= plan.district_count; ++d) {
    if (counts[static_cast<std::size_t>(d)] == 0) {
      throw std::runtime_error(fmt::format("invalid plan: district {} is empty", d));
    }
  }
}

std::vector<std::int64_t> district_populations(const AdjacencyGraph& graph,
                                               const Plan& plan) {
  std::vector<std::int64_t> pops(static_cast<std::size_t>(plan.district_count), 0);
  for (int v = 0; v < graph.node_count(); ++v) {
    pops[static_cast<std::size_t>(plan.assignment[static_cast<std::size_t>(v)] - 1)] +=
        graph.node(v).pop;
  }
  return pops;
}

std::vector<DistrictGeometry> district_geometry(const AdjacencyGraph& graph,
                                                const Plan& plan) {
  std::vector<DistrictGeometry> geo(static_cast<std::size_t>(plan.district_count));
  for (int v = 0; v < graph.node_count(); ++v) {
    const Node& nd = graph.node(v);
    auto& g = geo[static_cast<std::size_t>(plan.assignment[static_cast<std::size_t>(v)] - 1)];
    g.area += nd.area;
    g.perimeter += nd.boundary_perim;
  }
  // Cut edges contribute their shared border to both incident districts.
  for (const Edge& e : graph.edges()) {
    const int da = plan.assignment[static_cast<std::size_t>(e.a)];
    const int db = plan.assignment[static_cast<std::size_t>(e.b)];
    if (da != db) {
      geo[static_cast<std::size_t>(da - 1)].perimeter += e.shared_perim;
      geo[static_cast<std::size_t>(db - 1)].perimeter += e.shared_perim;
    }
  }
  return geo;
}

}  // namespace pbursts
