#include "pbursts/recom.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <utility>

#include <fmt/format.h>

namespace pbursts {

namespace {

// Union-find over local indices.
class DisjointSets {
 public:
  explicit DisjointSets(int n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] =
          parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[static_cast<std::size_t>(b)] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

struct LocalEdge {
  int u = 0;  // local indices
  int v = 0;
};

// Random spanning tree of the subgraph induced by `members` (global node
// ids, ascending): each induced edge gets a fresh uniform weight and Kruskal
// keeps the minimum-weight tree. Edge traversal order is fixed, so the
// result depends only on the rng stream.
std::vector<LocalEdge> random_spanning_tree(const AdjacencyGraph& graph,
                                            const std::vector<int>& members,
                                            const std::vector<int>& local_index, Rng& rng) {
  struct Weighted {
    double w;
    int idx;
  };
  std::vector<LocalEdge> candidates;
  std::vector<Weighted> order;
  for (const int v : members) {
    for (const auto& [u, ei] : graph.neighbors(v)) {
      if (u > v && local_index[static_cast<std::size_t>(u)] >= 0) {
        candidates.push_back(LocalEdge{local_index[static_cast<std::size_t>(v)],
                                       local_index[static_cast<std::size_t>(u)]});
        order.push_back(Weighted{rng.uniform01(), static_cast<int>(candidates.size()) - 1});
      }
    }
  }
  std::sort(order.begin(), order.end(), [](const Weighted& a, const Weighted& b) {
    return a.w != b.w ? a.w < b.w : a.idx < b.idx;
  });
  const int n = static_cast<int>(members.size());
  DisjointSets sets(n);
  std::vector<LocalEdge> tree;
  tree.reserve(static_cast<std::size_t>(n) - 1);
  for (const Weighted& we : order) {
    const LocalEdge e = candidates[static_cast<std::size_t>(we.idx)];
    if (sets.unite(e.u, e.v)) {
      tree.push_back(e);
      if (static_cast<int>(tree.size()) == n - 1) break;
    }
  }
  return tree;
}

struct RootedTree {
  std::vector<int> parent;       // parent local index, -1 at the root
  std::vector<int> order;        // preorder
  std::vector<std::int64_t> subtree_pop;
  std::vector<int> subtree_size;
};

RootedTree root_tree(const std::vector<LocalEdge>& tree, const std::vector<int>& members,
                     const AdjacencyGraph& graph) {
  const int n = static_cast<int>(members.size());
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
  for (const LocalEdge& e : tree) {
    adj[static_cast<std::size_t>(e.u)].push_back(e.v);
    adj[static_cast<std::size_t>(e.v)].push_back(e.u);
  }
  RootedTree rt;
  rt.parent.assign(static_cast<std::size_t>(n), -1);
  rt.order.reserve(static_cast<std::size_t>(n));
  std::vector<int> stack{0};
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  seen[0] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    rt.order.push_back(v);
    for (const int u : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        rt.parent[static_cast<std::size_t>(u)] = v;
        stack.push_back(u);
      }
    }
  }
  rt.subtree_pop.assign(static_cast<std::size_t>(n), 0);
  rt.subtree_size.assign(static_cast<std::size_t>(n), 1);
  for (int i = 0; i < n; ++i) {
    rt.subtree_pop[static_cast<std::size_t>(i)] =
        graph.node(members[static_cast<std::size_t>(i)]).pop;
  }
  for (int i = n - 1; i >= 1; --i) {  // children precede parents in reverse preorder
    const int v = rt.order[static_cast<std::size_t>(i)];
    const auto p = static_cast<std::size_t>(rt.parent[static_cast<std::size_t>(v)]);
    rt.subtree_pop[p] += rt.subtree_pop[static_cast<std::size_t>(v)];
    rt.subtree_size[p] += rt.subtree_size[static_cast<std::size_t>(v)];
  }
  return rt;
}

// dev of a would-be region holding `targets` districts: |pop/targets - N/m|
// relative to N/m, written with an integer numerator.
bool within_tolerance(std::int64_t pop, std::int64_t targets, std::int64_t total,
                      std::int64_t districts, double tolerance) {
  const auto deviation =
      static_cast<double>(std::abs(pop * districts - targets * total));
  return deviation <= tolerance * static_cast<double>(targets * total);
}

// Marks the subtree below `c` (inclusive) in the rooted tree.
std::vector<char> subtree_mask(const RootedTree& rt, int c) {
  std::vector<char> mask(rt.parent.size(), 0);
  mask[static_cast<std::size_t>(c)] = 1;
  // Preorder guarantees parents appear before children.
  for (const int v : rt.order) {
    if (v != c && rt.parent[static_cast<std::size_t>(v)] >= 0 &&
        mask[static_cast<std::size_t>(rt.parent[static_cast<std::size_t>(v)])]) {
      mask[static_cast<std::size_t>(v)] = 1;
    }
  }
  return mask;
}

}  // namespace

Plan recom_step(const Plan& current, const ProblemSpec& spec, const ChainConfig& config,
                Rng& rng) {
  const AdjacencyGraph& graph = spec.graph;
  const int m = current.district_count;
  if (m < 2) throw std::runtime_error("step requires m >= 2");
  if (config.max_attempts < 1) throw std::runtime_error("max_attempts must be >= 1");

  // Adjacent district pairs (joined by at least one cut edge), ascending.
  std::vector<std::pair<int, int>> pairs;
  for (const Edge& e : graph.edges()) {
    const int da = current.assignment[static_cast<std::size_t>(e.a)];
    const int db = current.assignment[static_cast<std::size_t>(e.b)];
    if (da != db) pairs.emplace_back(std::min(da, db), std::max(da, db));
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  const std::int64_t total = graph.total_pop();
  std::vector<int> local_index(static_cast<std::size_t>(graph.node_count()), -1);

  for (int attempt = 0; attempt < config.max_attempts; ++attempt) {
    const auto [da, db] = pairs[rng.uniform_index(pairs.size())];

    std::vector<int> members;
    for (int v = 0; v < graph.node_count(); ++v) {
      const int d = current.assignment[static_cast<std::size_t>(v)];
      if (d == da || d == db) {
        local_index[static_cast<std::size_t>(v)] = static_cast<int>(members.size());
        members.push_back(v);
      }
    }

    const std::vector<LocalEdge> tree = random_spanning_tree(graph, members, local_index, rng);
    const RootedTree rt = root_tree(tree, members, graph);
    const std::int64_t union_pop = rt.subtree_pop[0];

    // Candidate cuts: tree edges whose two sides both land within tolerance.
    std::vector<int> candidates;  // child local index identifies the edge
    for (int c = 0; c < static_cast<int>(members.size()); ++c) {
      if (rt.parent[static_cast<std::size_t>(c)] < 0) continue;
      const std::int64_t below = rt.subtree_pop[static_cast<std::size_t>(c)];
      if (within_tolerance(below, 1, total, m, config.pop_tolerance) &&
          within_tolerance(union_pop - below, 1, total, m, config.pop_tolerance)) {
        candidates.push_back(c);
      }
    }

    for (const int v : members) local_index[static_cast<std::size_t>(v)] = -1;

    if (candidates.empty()) continue;

    const int cut = candidates[rng.uniform_index(candidates.size())];
    const std::vector<char> below = subtree_mask(rt, cut);
    Plan next = current;
    for (int i = 0; i < static_cast<int>(members.size()); ++i) {
      next.assignment[static_cast<std::size_t>(members[static_cast<std::size_t>(i)])] =
          below[static_cast<std::size_t>(i)] ? db : da;
    }
    return next;
  }
  throw std::runtime_error(
      fmt::format("step rejection exhausted after {} attempts", config.max_attempts));
}

ChainState recom_step(ChainState state, const ProblemSpec& spec, const ChainConfig& config) {
  state.current = recom_step(state.current, spec, config, state.rng);
  return state;
}

std::vector<Plan> run_burst(ChainState& state, const ProblemSpec& spec,
                            const ChainConfig& config, int b) {
  if (b < 1) throw std::invalid_argument("burst length must be >= 1");
  std::vector<Plan> visited;
  visited.reserve(static_cast<std::size_t>(b));
  for (int i = 0; i < b; ++i) {
    state.current = recom_step(state.current, spec, config, state.rng);
    visited.push_back(state.current);
  }
  return visited;
}

Plan seed_plan(const ProblemSpec& spec, std::uint64_t seed, int max_attempts) {
  const AdjacencyGraph& graph = spec.graph;
  const int n = graph.node_count();
  const int m = spec.districts;
  if (m < 1) throw std::runtime_error("district count must be >= 1");
  if (m > n) throw std::runtime_error(fmt::format("cannot form {} districts from {} nodes", m, n));

  Plan plan;
  plan.assignment.assign(static_cast<std::size_t>(n), 1);
  plan.district_count = m;
  if (m == 1) return plan;

  Rng rng(seed);
  const std::int64_t total = graph.total_pop();

  struct Region {
    std::vector<int> nodes;  // ascending global ids
    int targets = 1;         // districts still to carve out of this region
  };
  std::vector<Region> open;
  std::vector<std::vector<int>> finished;
  {
    Region whole;
    whole.nodes.resize(static_cast<std::size_t>(n));
    std::iota(whole.nodes.begin(), whole.nodes.end(), 0);
    whole.targets = m;
    open.push_back(std::move(whole));
  }

  std::vector<int> local_index(static_cast<std::size_t>(n), -1);

  while (!open.empty()) {
    // Split the region with the most districts left; ties go to the one
    // containing the smallest node id.
    std::size_t pick = 0;
    for (std::size_t i = 1; i < open.size(); ++i) {
      if (open[i].targets > open[pick].targets ||
          (open[i].targets == open[pick].targets &&
           open[i].nodes.front() < open[pick].nodes.front())) {
        pick = i;
      }
    }
    Region region = std::move(open[pick]);
    open.erase(open.begin() + static_cast<std::ptrdiff_t>(pick));

    const std::int64_t k_low = region.targets / 2;
    const std::int64_t k_high = region.targets - k_low;

    for (int i = 0; i < static_cast<int>(region.nodes.size()); ++i) {
      local_index[static_cast<std::size_t>(region.nodes[static_cast<std::size_t>(i)])] = i;
    }

    bool split_done = false;
    for (int attempt = 0; attempt < max_attempts && !split_done; ++attempt) {
      const std::vector<LocalEdge> tree =
          random_spanning_tree(graph, region.nodes, local_index, rng);
      const RootedTree rt = root_tree(tree, region.nodes, graph);
      const std::int64_t region_pop = rt.subtree_pop[0];

      // Best edge: minimize the worse side's average-population deviation
      // from the global ideal, trying both ways of assigning the targets.
      double best_badness = -1.0;
      int best_cut = -1;
      bool best_low_below = true;
      const int region_size = static_cast<int>(region.nodes.size());
      for (int c = 0; c < region_size; ++c) {
        if (rt.parent[static_cast<std::size_t>(c)] < 0) continue;
        const std::int64_t below = rt.subtree_pop[static_cast<std::size_t>(c)];
        const std::int64_t above = region_pop - below;
        const int below_size = rt.subtree_size[static_cast<std::size_t>(c)];
        for (const bool low_below : {true, false}) {
          const std::int64_t kb = low_below ? k_low : k_high;
          const std::int64_t ka = low_below ? k_high : k_low;
          if (kb == 0 || ka == 0) continue;
          // A side cannot hold more districts than nodes.
          if (below_size < kb || region_size - below_size < ka) continue;
          const double bad_below = static_cast<double>(std::abs(below * m - kb * total)) /
                                   static_cast<double>(kb * total);
          const double bad_above = static_cast<double>(std::abs(above * m - ka * total)) /
                                   static_cast<double>(ka * total);
          const double badness = std::max(bad_below, bad_above);
          if (best_cut < 0 || badness < best_badness) {
            best_badness = badness;
            best_cut = c;
            best_low_below = low_below;
          }
        }
      }
      if (best_cut < 0 || best_badness > spec.pop_tolerance) continue;

      const std::vector<char> below_mask = subtree_mask(rt, best_cut);
      Region side_below;
      Region side_above;
      for (int i = 0; i < static_cast<int>(region.nodes.size()); ++i) {
        (below_mask[static_cast<std::size_t>(i)] ? side_below : side_above)
            .nodes.push_back(region.nodes[static_cast<std::size_t>(i)]);
      }
      side_below.targets = static_cast<int>(best_low_below ? k_low : k_high);
      side_above.targets = static_cast<int>(best_low_below ? k_high : k_low);
      for (Region* side : {&side_below, &side_above}) {
        if (side->targets == 1) {
          finished.push_back(std::move(side->nodes));
        } else {
          open.push_back(std::move(*side));
        }
      }
      split_done = true;
    }

    for (const int v : region.nodes) local_index[static_cast<std::size_t>(v)] = -1;
    if (!split_done) {
      throw std::runtime_error(
          fmt::format("no feasible seed found after {} attempts", max_attempts));
    }
  }

  // Label districts 1..m by smallest member node id.
  std::sort(finished.begin(), finished.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) {
              return a.front() < b.front();
            });
  for (int d = 0; d < static_cast<int>(finished.size()); ++d) {
    for (const int v : finished[static_cast<std::size_t>(d)]) {
      plan.assignment[static_cast<std::size_t>(v)] = d + 1;
    }
  }
  return plan;
}

}  // namespace pbursts
