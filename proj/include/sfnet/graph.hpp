#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace sfnet {

// Single-source BFS over an adjacency list; unreachable = -1.
inline std::vector<int> bfs_distances(const std::vector<std::vector<int>>& adj, int src) {
  std::vector<int> dist(adj.size(), -1);
  dist[src] = 0;
  std::vector<int> frontier{src}, next;
  while (!frontier.empty()) {
    next.clear();
    for (int u : frontier) {
      for (int v : adj[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          next.push_back(v);
        }
      }
    }
    frontier.swap(next);
  }
  return dist;
}

inline bool is_connected(const std::vector<std::vector<int>>& adj) {
  if (adj.empty()) return true;
  const auto d = bfs_distances(adj, 0);
  return std::none_of(d.begin(), d.end(), [](int x) { return x < 0; });
}

// Exact diameter by all-pairs BFS; -1 when disconnected.
inline int graph_diameter(const std::vector<std::vector<int>>& adj) {
  int diameter = 0;
  for (size_t s = 0; s < adj.size(); ++s) {
    const auto d = bfs_distances(adj, static_cast<int>(s));
    for (int x : d) {
      if (x < 0) return -1;
      diameter = std::max(diameter, x);
    }
  }
  return diameter;
}

// Shortest cycle length; INT_MAX for forests.
inline int graph_girth(const std::vector<std::vector<int>>& adj) {
  int girth = std::numeric_limits<int>::max();
  const int n = static_cast<int>(adj.size());
  std::vector<int> dist(n), parent(n);
  for (int s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    dist[s] = 0;
    std::vector<int> frontier{s}, next;
    while (!frontier.empty()) {
      next.clear();
      for (int u : frontier) {
        for (int v : adj[u]) {
          if (dist[v] < 0) {
            dist[v] = dist[u] + 1;
            parent[v] = u;
            next.push_back(v);
          } else if (parent[u] != v && dist[v] >= dist[u]) {
            girth = std::min(girth, dist[u] + dist[v] + 1);
          }
        }
      }
      frontier.swap(next);
    }
  }
  return girth;
}

// All-pairs hop distances as a flat n*n matrix.
inline std::vector<int> all_pairs_distances(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> dist(static_cast<size_t>(n) * n);
  for (int s = 0; s < n; ++s) {
    const auto d = bfs_distances(adj, s);
    std::copy(d.begin(), d.end(), dist.begin() + static_cast<size_t>(s) * n);
  }
  return dist;
}

}  // namespace sfnet
