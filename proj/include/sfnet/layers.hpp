#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <vector>

#include "sfnet/error.hpp"
#include "sfnet/graph.hpp"
#include "sfnet/rng.hpp"
#include "sfnet/topology.hpp"

namespace sfnet {

enum class RoutingAlgo { lnmp, rues, acyclic, minimal };

inline const char* to_string(RoutingAlgo a) {
  switch (a) {
    case RoutingAlgo::lnmp: return "lnmp";
    case RoutingAlgo::rues: return "rues";
    case RoutingAlgo::acyclic: return "acyclic";
    default: return "minimal";
  }
}

// Directed per-link weight: number of endpoint-to-endpoint routes whose
// switch path crosses the link, over all layers built so far.
struct LinkWeights {
  explicit LinkWeights(int n_switches) : n(n_switches), w(static_cast<size_t>(n) * n, 0) {}
  int64_t& at(int from, int to) { return w[static_cast<size_t>(from) * n + to]; }
  int64_t at(int from, int to) const { return w[static_cast<size_t>(from) * n + to]; }
  int n;
  std::vector<int64_t> w;
};

// Per ordered pair: how many almost-minimal paths the pair holds across
// layers. Lower count = higher placement priority.
struct PairPriorities {
  explicit PairPriorities(int n_switches) : n(n_switches), count(static_cast<size_t>(n) * n, 0) {}
  uint16_t& at(int src, int dst) { return count[static_cast<size_t>(src) * n + dst]; }
  uint16_t at(int src, int dst) const { return count[static_cast<size_t>(src) * n + dst]; }
  int n;
  std::vector<uint16_t> count;
};

// Forwarding bindings of one layer under construction:
// next[s][d] = next hop switch s uses toward destination switch d.
struct LayerBindings {
  explicit LayerBindings(int n_switches) : n(n_switches), next(static_cast<size_t>(n) * n, -1) {}
  int32_t get(int sw, int dst) const { return next[static_cast<size_t>(sw) * n + dst]; }
  void set(int sw, int dst, int hop) { next[static_cast<size_t>(sw) * n + dst] = hop; }
  int n;
  std::vector<int32_t> next;
};

struct LayerSet {
  struct Layer {
    // paths[s*n+d]: switch hop sequence s..d; empty on the diagonal
    std::vector<std::vector<int32_t>> paths;
    std::vector<uint8_t> fallback;  // 1 unless the pair got its own inserted path
  };

  int n_switches = 0;
  int n_layers = 0;
  uint64_t seed = 0;
  RoutingAlgo algo = RoutingAlgo::minimal;
  double rues_fraction = 1.0;
  std::vector<Layer> layers;

  const std::vector<int32_t>& path(int layer, int src, int dst) const {
    return layers[layer].paths[static_cast<size_t>(src) * n_switches + dst];
  }
  bool is_fallback(int layer, int src, int dst) const {
    return layers[layer].fallback[static_cast<size_t>(src) * n_switches + dst] != 0;
  }
};

namespace detail {

struct LayerGenContext {
  const Topology* topo = nullptr;
  int n = 0;
  std::vector<int> dist;          // all-pairs, n*n
  std::vector<uint8_t> adjacent;  // n*n
  int dist_at(int a, int b) const { return dist[static_cast<size_t>(a) * n + b]; }
  bool adj_at(int a, int b) const { return adjacent[static_cast<size_t>(a) * n + b] != 0; }
};

inline LayerGenContext make_context(const Topology& topo) {
  LayerGenContext ctx;
  ctx.topo = &topo;
  ctx.n = topo.n_switches();
  ctx.dist = all_pairs_distances(topo.adj);
  for (int d : ctx.dist)
    if (d < 0) throw ConfigError("layer generation: topology is disconnected");
  ctx.adjacent.assign(static_cast<size_t>(ctx.n) * ctx.n, 0);
  for (const auto& [a, b] : topo.links) {
    ctx.adjacent[static_cast<size_t>(a) * ctx.n + b] = 1;
    ctx.adjacent[static_cast<size_t>(b) * ctx.n + a] = 1;
  }
  return ctx;
}

// Sum of current weights along the bound chain from sw to dst.
inline int64_t chain_weight(const LayerGenContext& ctx, const LayerBindings& bind,
                            const LinkWeights& weights, int sw, int dst) {
  int64_t total = 0;
  int cur = sw;
  while (cur != dst) {
    const int nxt = bind.get(cur, dst);
    total += weights.at(cur, nxt);
    cur = nxt;
  }
  return total;
}

// Completes a layer: every ordered pair gets a path. Pairs bound by inserted
// paths keep those routes; the rest walk minimal next hops chosen to balance
// current weights (ties toward the lexicographically smallest hop sequence).
// Weight contributions are added once per pair; pairs already accounted for
// during insertion are passed in `counted`.
inline LayerSet::Layer materialize_layer(const LayerGenContext& ctx, LayerBindings& bind,
                                         LinkWeights& weights, const std::vector<uint8_t>& counted,
                                         const std::vector<uint8_t>& own_insertion) {
  const int n = ctx.n;
  const auto& topo = *ctx.topo;
  LayerSet::Layer layer;
  layer.paths.resize(static_cast<size_t>(n) * n);
  layer.fallback.assign(static_cast<size_t>(n) * n, 1);

  std::vector<int> order(n);
  for (int dst = 0; dst < n; ++dst) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::make_pair(ctx.dist_at(a, dst), a) < std::make_pair(ctx.dist_at(b, dst), b);
    });
    for (int s : order) {
      if (s == dst) continue;
      if (bind.get(s, dst) < 0) {
        int best = -1;
        int64_t best_w = 0;
        for (int v : topo.adj[s]) {
          if (ctx.dist_at(v, dst) != ctx.dist_at(s, dst) - 1) continue;
          const int64_t w = weights.at(s, v) + chain_weight(ctx, bind, weights, v, dst);
          if (best < 0 || w < best_w) {
            best = v;
            best_w = w;
          }
        }
        bind.set(s, dst, best);
      }
      auto& path = layer.paths[static_cast<size_t>(s) * n + dst];
      path.push_back(s);
      while (path.back() != dst) path.push_back(bind.get(path.back(), dst));
      const size_t idx = static_cast<size_t>(s) * n + dst;
      if (!own_insertion.empty() && own_insertion[idx]) layer.fallback[idx] = 0;
      if (counted.empty() || !counted[idx]) {
        const int64_t routes = static_cast<int64_t>(topo.switches[s].endpoints) *
                               topo.switches[dst].endpoints;
        for (size_t i = 0; i + 1 < path.size(); ++i) weights.at(path[i], path[i + 1]) += routes;
      }
    }
  }
  return layer;
}

}  // namespace detail

// All 3-hop candidate paths src -> a -> b -> dst that respect the layer's
// existing per-destination bindings; returns the one minimizing summed link
// weights (ties: lexicographically smallest hop sequence). nullopt when the
// pair is already routed in this layer or no candidate survives.
inline std::optional<std::array<int, 4>> find_path(const detail::LayerGenContext& ctx,
                                                   const LinkWeights& weights,
                                                   const LayerBindings& bind, int src, int dst) {
  if (bind.get(src, dst) >= 0) return std::nullopt;
  const auto& topo = *ctx.topo;
  std::optional<std::array<int, 4>> best;
  int64_t best_w = 0;
  for (int a : topo.adj[src]) {
    if (a == dst) continue;
    const int bound_a = bind.get(a, dst);
    for (int b : topo.adj[a]) {
      if (b == src || b == a || b == dst) continue;
      if (bound_a >= 0 && bound_a != b) continue;
      if (!ctx.adj_at(b, dst)) continue;
      const int bound_b = bind.get(b, dst);
      if (bound_b >= 0 && bound_b != dst) continue;
      const int64_t w = weights.at(src, a) + weights.at(a, b) + weights.at(b, dst);
      if (!best || w < best_w || (w == best_w && std::array<int, 4>{src, a, b, dst} < *best)) {
        best = {src, a, b, dst};
        best_w = w;
      }
    }
  }
  return best;
}

// Weight update for a freshly inserted path: every sender position whose
// sub-pair the insertion newly routed contributes its endpoint routes to the
// links of its suffix. With all senders new this reduces to the cumulative
// prefix rule (increments proportional to 1,2,3 times the route product).
inline void update_weights(const std::vector<int32_t>& path, LinkWeights& weights,
                           const Topology& topo, const std::vector<uint8_t>& sender_is_new = {}) {
  const int hops = static_cast<int>(path.size()) - 1;
  const int dst = path[hops];
  for (int i = 0; i < hops; ++i) {
    if (!sender_is_new.empty() && !sender_is_new[i]) continue;
    const int64_t routes =
        static_cast<int64_t>(topo.switches[path[i]].endpoints) * topo.switches[dst].endpoints;
    for (int j = i; j < hops; ++j) weights.at(path[j], path[j + 1]) += routes;
  }
}

// Priority update for a freshly inserted path: every newly routed sub-pair
// whose suffix is strictly longer than its minimal distance now holds one
// more almost-minimal path.
inline void update_priorities(const std::vector<int32_t>& path, PairPriorities& priorities,
                              const std::vector<int>& all_pairs_dist,
                              const std::vector<uint8_t>& sender_is_new = {}) {
  const int hops = static_cast<int>(path.size()) - 1;
  const int dst = path[hops];
  const int n = priorities.n;
  for (int i = 0; i < hops; ++i) {
    if (!sender_is_new.empty() && !sender_is_new[i]) continue;
    if (hops - i > all_pairs_dist[static_cast<size_t>(path[i]) * n + dst])
      ++priorities.at(path[i], dst);
  }
}

// Layered multipath generation: layer 0 carries weight-balanced minimal
// paths; each further layer inserts one 3-hop path per pair in priority
// order, falling back to minimal routing where no valid candidate exists.
// Deterministic for a fixed (topology, n_layers, seed).
inline LayerSet generate_layers(const Topology& topo, int n_layers, uint64_t seed) {
  if (n_layers < 1) throw ConfigError("generate_layers: need n_layers >= 1");
  auto ctx = detail::make_context(topo);
  const int n = ctx.n;
  Rng rng(seed);
  LinkWeights weights(n);
  PairPriorities priorities(n);

  LayerSet out;
  out.n_switches = n;
  out.n_layers = n_layers;
  out.seed = seed;
  out.algo = RoutingAlgo::lnmp;

  {
    LayerBindings bind(n);
    out.layers.push_back(detail::materialize_layer(ctx, bind, weights, {}, {}));
  }

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<size_t>(n) * (n - 1));
  for (int l = 1; l < n_layers; ++l) {
    LayerBindings bind(n);
    std::vector<uint8_t> counted(static_cast<size_t>(n) * n, 0);
    std::vector<uint8_t> own(static_cast<size_t>(n) * n, 0);

    // copy_pairs: snapshot priorities, randomize within each level
    pairs.clear();
    for (int s = 0; s < n; ++s)
      for (int d = 0; d < n; ++d)
        if (s != d) pairs.emplace_back(s, d);
    rng.shuffle(pairs);
    std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
      return priorities.at(a.first, a.second) < priorities.at(b.first, b.second);
    });

    for (const auto& [src, dst] : pairs) {
      const auto found = find_path(ctx, weights, bind, src, dst);
      if (!found) continue;
      const std::vector<int32_t> path(found->begin(), found->end());
      std::vector<uint8_t> sender_is_new(3, 0);
      for (int i = 0; i < 3; ++i) sender_is_new[i] = bind.get((*found)[i], dst) < 0;
      for (int i = 0; i < 3; ++i) bind.set((*found)[i], dst, (*found)[i + 1]);
      update_priorities(path, priorities, ctx.dist, sender_is_new);
      update_weights(path, weights, topo, sender_is_new);
      for (int i = 0; i < 3; ++i)
        if (sender_is_new[i]) counted[static_cast<size_t>((*found)[i]) * n + dst] = 1;
      own[static_cast<size_t>(src) * n + dst] = 1;
    }
    out.layers.push_back(detail::materialize_layer(ctx, bind, weights, counted, own));
  }
  return out;
}

// RUES baseline: each layer keeps ceil(fraction * |E|) uniformly sampled
// links (resampled while disconnected, up to 100 tries) and routes
// weight-agnostic shortest paths inside the sample.
inline LayerSet generate_layers_rues(const Topology& topo, int n_layers, double fraction,
                                     uint64_t seed) {
  if (n_layers < 1) throw ConfigError("rues: need n_layers >= 1");
  if (fraction <= 0.0 || fraction > 1.0) throw ConfigError("rues: fraction must be in (0,1]");
  auto ctx = detail::make_context(topo);
  const int n = ctx.n;
  Rng rng(seed);

  LayerSet out;
  out.n_switches = n;
  out.n_layers = n_layers;
  out.seed = seed;
  out.algo = RoutingAlgo::rues;
  out.rues_fraction = fraction;

  auto shortest_path_layer = [&](const std::vector<std::vector<int>>& adj) {
    LayerSet::Layer layer;
    layer.paths.resize(static_cast<size_t>(n) * n);
    layer.fallback.assign(static_cast<size_t>(n) * n, 0);
    for (int dst = 0; dst < n; ++dst) {
      const auto d = bfs_distances(adj, dst);
      std::vector<int> next(n, -1);
      for (int s = 0; s < n; ++s) {
        if (s == dst) continue;
        for (int v : adj[s])
          if (d[v] == d[s] - 1) {
            next[s] = v;
            break;  // adjacency sorted: smallest id wins
          }
      }
      for (int s = 0; s < n; ++s) {
        if (s == dst) continue;
        auto& path = layer.paths[static_cast<size_t>(s) * n + dst];
        path.push_back(s);
        while (path.back() != dst) path.push_back(next[path.back()]);
      }
    }
    return layer;
  };

  out.layers.push_back(shortest_path_layer(topo.adj));
  const size_t keep =
      static_cast<size_t>(std::ceil(fraction * static_cast<double>(topo.links.size())));
  std::vector<std::pair<int, int>> links;
  for (int l = 1; l < n_layers; ++l) {
    bool sampled = false;
    for (int attempt = 0; attempt < 100 && !sampled; ++attempt) {
      links = topo.links;
      rng.shuffle(links);
      links.resize(keep);
      std::vector<std::vector<int>> sub(n);
      for (const auto& [a, b] : links) {
        sub[a].push_back(b);
        sub[b].push_back(a);
      }
      for (auto& nbrs : sub) std::sort(nbrs.begin(), nbrs.end());
      if (!is_connected(sub) || std::any_of(sub.begin(), sub.end(),
                                            [](const auto& v) { return v.empty(); }))
        continue;
      out.layers.push_back(shortest_path_layer(sub));
      sampled = true;
    }
    if (!sampled)
      throw CapacityError("rues: layer " + std::to_string(l) +
                          ": no connected sample within 100 retries");
  }
  return out;
}

// FatPaths-style baseline approximation: every layer beyond the first is a
// random spanning tree routed by its unique tree paths.
inline LayerSet generate_layers_acyclic_baseline(const Topology& topo, int n_layers,
                                                 uint64_t seed) {
  if (n_layers < 1) throw ConfigError("acyclic baseline: need n_layers >= 1");
  auto ctx = detail::make_context(topo);
  const int n = ctx.n;
  Rng rng(seed);

  LayerSet out;
  out.n_switches = n;
  out.n_layers = n_layers;
  out.seed = seed;
  out.algo = RoutingAlgo::acyclic;

  auto tree_layer = [&](const std::vector<std::vector<int>>& adj) {
    LayerSet::Layer layer;
    layer.paths.resize(static_cast<size_t>(n) * n);
    layer.fallback.assign(static_cast<size_t>(n) * n, 0);
    for (int dst = 0; dst < n; ++dst) {
      const auto d = bfs_distances(adj, dst);
      for (int s = 0; s < n; ++s) {
        if (s == dst) continue;
        auto& path = layer.paths[static_cast<size_t>(s) * n + dst];
        path.push_back(s);
        int cur = s;
        while (cur != dst) {
          for (int v : adj[cur])
            if (d[v] == d[cur] - 1) {
              cur = v;
              break;
            }
          path.push_back(cur);
        }
      }
    }
    return layer;
  };

  {
    LinkWeights weights(n);
    LayerBindings bind(n);
    out.layers.push_back(detail::materialize_layer(ctx, bind, weights, {}, {}));
  }
  std::vector<std::pair<int, int>> links;
  std::vector<int> parent(n);
  for (int l = 1; l < n_layers; ++l) {
    links = topo.links;
    rng.shuffle(links);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<std::vector<int>> tree(n);
    int taken = 0;
    for (const auto& [a, b] : links) {
      const int ra = find(a), rb = find(b);
      if (ra == rb) continue;
      parent[ra] = rb;
      tree[a].push_back(b);
      tree[b].push_back(a);
      if (++taken == n - 1) break;
    }
    for (auto& nbrs : tree) std::sort(nbrs.begin(), nbrs.end());
    out.layers.push_back(tree_layer(tree));
  }
  return out;
}

// Plain minimal routing replicated across the requested number of layers.
inline LayerSet generate_layers_minimal(const Topology& topo, int n_layers, uint64_t seed) {
  if (n_layers < 1) throw ConfigError("minimal routing: need n_layers >= 1");
  auto ctx = detail::make_context(topo);
  LinkWeights weights(ctx.n);
  LayerBindings bind(ctx.n);
  LayerSet out;
  out.n_switches = ctx.n;
  out.n_layers = n_layers;
  out.seed = seed;
  out.algo = RoutingAlgo::minimal;
  out.layers.push_back(detail::materialize_layer(ctx, bind, weights, {}, {}));
  for (int l = 1; l < n_layers; ++l) out.layers.push_back(out.layers.front());
  return out;
}

inline LayerSet generate_layers(const Topology& topo, RoutingAlgo algo, int n_layers,
                                uint64_t seed, double rues_fraction = 1.0) {
  switch (algo) {
    case RoutingAlgo::lnmp: return generate_layers(topo, n_layers, seed);
    case RoutingAlgo::rues: return generate_layers_rues(topo, n_layers, rues_fraction, seed);
    case RoutingAlgo::acyclic: return generate_layers_acyclic_baseline(topo, n_layers, seed);
    default: return generate_layers_minimal(topo, n_layers, seed);
  }
}

}  // namespace sfnet
