#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sfnet/error.hpp"
#include "sfnet/gf.hpp"
#include "sfnet/graph.hpp"

namespace sfnet {

// Highest LID usable for unicast addressing (1..0xBFFF).
inline constexpr int kUnicastLidLimit = 49151;

enum class TopoKind { slimfly, fattree2, fattree3, hyperx2, custom };

inline const char* to_string(TopoKind k) {
  switch (k) {
    case TopoKind::slimfly: return "slimfly";
    case TopoKind::fattree2: return "fattree2";
    case TopoKind::fattree3: return "fattree3";
    case TopoKind::hyperx2: return "hyperx2";
    default: return "custom";
  }
}

struct SwitchLabel {
  int subgroup = 0;  // S in (S,R,I)
  int rack = 0;      // R: group index (x for subgroup 0, m for subgroup 1)
  int index = 0;     // I: position within the rack's subgroup (y or c)

  friend bool operator==(const SwitchLabel&, const SwitchLabel&) = default;
  friend auto operator<=>(const SwitchLabel&, const SwitchLabel&) = default;
};

struct SfParams {
  int q = 0;
  int delta = 0;  // q = 4w + delta
  int w = 0;
  bool mms_valid = false;
  int n_switches = 0;     // N_r = 2q^2
  int net_radix = 0;      // k' = (3q - delta)/2
  int concentration = 0;  // p = ceil(k'/2), full global bandwidth
  int radix = 0;          // k = k' + p
  long long n_endpoints() const { return static_cast<long long>(n_switches) * concentration; }
  int xi = -1;                       // primitive element, valid iff mms_valid
  std::vector<int> gen_x;            // X
  std::vector<int> gen_x_prime;      // X'
};

struct PortPeer {
  enum class Kind : uint8_t { unused, endpoint, sw };
  Kind kind = Kind::unused;
  int peer = -1;       // endpoint id or switch id
  int peer_port = -1;  // port on the peer switch
};

struct SwitchRec {
  int id = 0;
  int endpoints = 0;  // p_s
  int rack = -1;
  std::optional<SwitchLabel> label;
};

struct Endpoint {
  int id = 0;
  int sw = 0;
  int port = 0;  // port on its switch
};

struct Topology {
  TopoKind kind = TopoKind::custom;
  std::optional<SfParams> sf;
  std::vector<SwitchRec> switches;
  std::vector<std::vector<int>> adj;            // sorted neighbor ids
  std::vector<std::pair<int, int>> links;       // undirected, first < second, sorted
  std::vector<std::vector<PortPeer>> ports;     // ports[s][i], slot 0 unused
  std::vector<Endpoint> endpoints;
  int diameter = 0;

  int n_switches() const { return static_cast<int>(switches.size()); }
  int n_endpoints() const { return static_cast<int>(endpoints.size()); }
  size_t n_links() const { return links.size(); }

  bool adjacent(int a, int b) const {
    return std::binary_search(adj[a].begin(), adj[a].end(), b);
  }

  // Port index on s facing neighbor switch nbr; -1 if not adjacent.
  int port_toward(int s, int nbr) const {
    const auto& pp = ports[s];
    for (int i = 1; i < static_cast<int>(pp.size()); ++i)
      if (pp[i].kind == PortPeer::Kind::sw && pp[i].peer == nbr) return i;
    return -1;
  }
};

// --- Slim Fly (MMS graph) construction -------------------------------------

// delta such that q = 4w + delta when one exists in {-1,0,1}; q % 4 == 2 has
// none, but k' = 3q/2 is still integral there, which the scalability table
// uses for its any-integer-q mode.
inline int sf_delta_for(int q) {
  switch (q % 4) {
    case 1: return 1;
    case 3: return -1;
    default: return 0;
  }
}

inline SfParams derive_sf_params(int q, bool strict = false) {
  if (q < 2) throw ConfigError("slim fly: q must be >= 2");
  SfParams params;
  params.q = q;
  params.delta = sf_delta_for(q);
  const bool delta_exists = (q - params.delta) % 4 == 0;
  if (strict && !delta_exists)
    throw ConfigError("slim fly: q=" + std::to_string(q) + " admits no delta in {-1,0,1}");
  params.w = delta_exists ? (q - params.delta) / 4 : 0;
  params.n_switches = 2 * q * q;
  params.net_radix = (3 * q - params.delta) / 2;
  params.concentration = (params.net_radix + 1) / 2;
  params.radix = params.net_radix + params.concentration;
  params.mms_valid = delta_exists && prime_power_decompose(q).has_value();
  if (!params.mms_valid) return params;

  GaloisField gf(q);
  params.xi = gf.primitive_element();
  std::vector<int> powers(q);  // powers[i] = xi^i, powers[q-1] == 1 again
  powers[0] = 1;
  for (int i = 1; i < q; ++i) powers[i] = gf.mul(powers[i - 1], params.xi);

  auto take = [&](int first, int last) {  // exponents first..last, step 2
    std::vector<int> out;
    for (int e = first; e <= last; e += 2) out.push_back(powers[e]);
    return out;
  };
  std::vector<int> x, xp;
  const int w = params.w;
  if (params.delta == 1) {
    x = take(0, q - 3);
    xp = take(1, q - 2);
  } else if (params.delta == -1) {
    x = take(0, 2 * w - 2);
    for (int v : take(2 * w - 1, 4 * w - 3)) x.push_back(v);
    xp = take(1, 2 * w - 1);
    for (int v : take(2 * w, 4 * w - 2)) xp.push_back(v);
  } else {  // q = 2^s
    x = take(0, q - 2);
    xp = take(1, q - 1);
  }
  std::sort(x.begin(), x.end());
  std::sort(xp.begin(), xp.end());
  params.gen_x = std::move(x);
  params.gen_x_prime = std::move(xp);
  return params;
}

namespace detail {

inline void finalize_links(Topology& topo) {
  for (auto& nbrs : topo.adj) std::sort(nbrs.begin(), nbrs.end());
  std::sort(topo.links.begin(), topo.links.end());
}

inline void add_link(Topology& topo, int a, int b) {
  topo.adj[a].push_back(b);
  topo.adj[b].push_back(a);
  topo.links.emplace_back(std::min(a, b), std::max(a, b));
}

inline void attach_endpoints(Topology& topo, int sw, int count) {
  // endpoint ports come first: ports 1..p
  for (int i = 0; i < count; ++i) {
    const int eid = static_cast<int>(topo.endpoints.size());
    const int port = 1 + i;
    topo.endpoints.push_back({eid, sw, port});
    if (static_cast<int>(topo.ports[sw].size()) <= port) topo.ports[sw].resize(port + 1);
    topo.ports[sw][port] = {PortPeer::Kind::endpoint, eid, -1};
    topo.switches[sw].endpoints = count;
  }
}

// Wire switch-switch ports in the order given by `neighbor_order` per switch,
// starting right after the endpoint ports.
inline void assign_switch_ports(Topology& topo,
                                const std::vector<std::vector<int>>& neighbor_order) {
  const int n = topo.n_switches();
  std::vector<int> next_port(n);
  for (int s = 0; s < n; ++s) {
    next_port[s] = topo.switches[s].endpoints + 1;
    const size_t need = next_port[s] + neighbor_order[s].size();
    if (topo.ports[s].size() < need) topo.ports[s].resize(need);
  }
  // First pass reserves the port index each switch uses toward each neighbor.
  std::vector<std::vector<std::pair<int, int>>> port_of(n);  // (nbr, port)
  for (int s = 0; s < n; ++s)
    for (int nbr : neighbor_order[s]) port_of[s].emplace_back(nbr, next_port[s]++);
  for (int s = 0; s < n; ++s) {
    for (auto [nbr, port] : port_of[s]) {
      int peer_port = -1;
      for (auto [b, pb] : port_of[nbr])
        if (b == s) {
          peer_port = pb;
          break;
        }
      topo.ports[s][port] = {PortPeer::Kind::sw, nbr, peer_port};
    }
  }
}

}  // namespace detail

// Switch ids: subgroup 0 is x*q + y, subgroup 1 is q*q + m*q + c. Rack r
// pairs group x=r with group m=r. Ports: 1..p endpoints, then intra-rack
// switch links in ascending label order, then one port per foreign rack in
// ascending rack order (every switch has exactly one link per foreign rack).
inline Topology build_slim_fly(const SfParams& params) {
  if (!params.mms_valid)
    throw ConfigError("slim fly: q=" + std::to_string(params.q) +
                      " is not an MMS-constructible prime power");
  const int q = params.q;
  GaloisField gf(q);
  std::vector<bool> in_x(q, false), in_xp(q, false);
  for (int v : params.gen_x) in_x[v] = true;
  for (int v : params.gen_x_prime) in_xp[v] = true;

  Topology topo;
  topo.kind = TopoKind::slimfly;
  topo.sf = params;
  const int n = params.n_switches;
  topo.switches.resize(n);
  topo.adj.resize(n);
  topo.ports.resize(n);
  auto id0 = [q](int x, int y) { return x * q + y; };
  auto id1 = [q](int m, int c) { return q * q + m * q + c; };
  for (int g = 0; g < q; ++g) {
    for (int i = 0; i < q; ++i) {
      for (int sub : {0, 1}) {
        const int id = sub == 0 ? id0(g, i) : id1(g, i);
        topo.switches[id] = {id, 0, g, SwitchLabel{sub, g, i}};
      }
    }
  }

  // Eq. 1: (0,x,y) ~ (0,x,y') iff y - y' in X
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      for (int y2 = y + 1; y2 < q; ++y2)
        if (in_x[gf.sub(y, y2)]) detail::add_link(topo, id0(x, y), id0(x, y2));
  // Eq. 2: (1,m,c) ~ (1,m,c') iff c - c' in X'
  for (int m = 0; m < q; ++m)
    for (int c = 0; c < q; ++c)
      for (int c2 = c + 1; c2 < q; ++c2)
        if (in_xp[gf.sub(c, c2)]) detail::add_link(topo, id1(m, c), id1(m, c2));
  // Eq. 3: (0,x,y) ~ (1,m,c) iff y = m*x + c
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y)
      for (int m = 0; m < q; ++m) detail::add_link(topo, id0(x, y), id1(m, gf.sub(y, gf.mul(m, x))));
  detail::finalize_links(topo);

  for (int s = 0; s < n; ++s) detail::attach_endpoints(topo, s, params.concentration);

  // Port layout: intra-rack first (ascending label), then foreign racks.
  std::vector<std::vector<int>> order(n);
  for (int s = 0; s < n; ++s) {
    const int rack = topo.switches[s].rack;
    std::vector<int> intra, inter;
    for (int nbr : topo.adj[s])
      (topo.switches[nbr].rack == rack ? intra : inter).push_back(nbr);
    auto label_less = [&](int a, int b) { return *topo.switches[a].label < *topo.switches[b].label; };
    std::sort(intra.begin(), intra.end(), label_less);
    std::sort(inter.begin(), inter.end(),
              [&](int a, int b) { return topo.switches[a].rack < topo.switches[b].rack; });
    order[s] = std::move(intra);
    for (int v : inter) order[s].push_back(v);
  }
  detail::assign_switch_ports(topo, order);
  topo.diameter = 2;
  return topo;
}

inline Topology build_slim_fly(int q) { return build_slim_fly(derive_sf_params(q)); }

// Smallest-N and closest full-bandwidth configuration near n_nodes
// (cube-root search; N(q) is monotone, so scanning q upward is exact).
inline SfParams find_sf_near(long long n_nodes) {
  if (n_nodes < 8) throw ConfigError("find_sf_near: need n_nodes >= 8");
  std::optional<SfParams> below, above;
  for (int q = 3;; ++q) {
    SfParams cand = derive_sf_params(q);
    if (!cand.mms_valid) continue;
    if (cand.n_endpoints() >= n_nodes) {
      above = cand;
      break;
    }
    below = cand;
  }
  if (!below) return *above;
  const auto d_below = n_nodes - below->n_endpoints();
  const auto d_above = above->n_endpoints() - n_nodes;
  return d_below < d_above ? *below : *above;  // ties toward smaller q
}

// --- Fat tree / HyperX construction ----------------------------------------

// Non-blocking 2-level fat tree at maximum scale for the radix: `radix`
// leaves (radix/2 endpoints + radix/2 uplinks each) and radix/2 cores.
// oversub=3 gives the 3:1 variant: 3*radix/4 endpoints per leaf, radix/4 cores.
inline Topology build_fat_tree2(int radix, int oversub = 1) {
  if (radix % 2 != 0) throw ConfigError("fat tree: radix must be even");
  if (oversub != 1 && oversub != 3) throw ConfigError("fat tree: oversub must be 1 or 3");
  if (oversub == 3 && radix % 4 != 0) throw ConfigError("fat tree 3:1: radix must be divisible by 4");
  const int down = oversub == 1 ? radix / 2 : 3 * radix / 4;
  const int up = radix - down;
  const int leaves = radix;
  const int cores = up;  // each leaf has one link per core

  Topology topo;
  topo.kind = TopoKind::fattree2;
  const int n = leaves + cores;
  topo.switches.resize(n);
  topo.adj.resize(n);
  topo.ports.resize(n);
  for (int s = 0; s < n; ++s) topo.switches[s] = {s, 0, -1, std::nullopt};
  for (int l = 0; l < leaves; ++l)
    for (int c = 0; c < cores; ++c) detail::add_link(topo, l, leaves + c);
  detail::finalize_links(topo);
  for (int l = 0; l < leaves; ++l) detail::attach_endpoints(topo, l, down);
  std::vector<std::vector<int>> order(n);
  for (int s = 0; s < n; ++s) order[s] = topo.adj[s];
  detail::assign_switch_ports(topo, order);
  topo.diameter = 2;
  return topo;
}

// Full 3-level fat tree: radix pods of radix/2 edge + radix/2 aggregation
// switches, plus (radix/2)^2 cores.
inline Topology build_fat_tree3(int radix) {
  if (radix % 2 != 0) throw ConfigError("fat tree: radix must be even");
  const int half = radix / 2;
  const int pods = radix;
  const int edges = pods * half;
  const int aggs = pods * half;
  const int cores = half * half;

  Topology topo;
  topo.kind = TopoKind::fattree3;
  const int n = edges + aggs + cores;
  topo.switches.resize(n);
  topo.adj.resize(n);
  topo.ports.resize(n);
  for (int s = 0; s < n; ++s) topo.switches[s] = {s, 0, -1, std::nullopt};
  auto edge_id = [&](int pod, int i) { return pod * half + i; };
  auto agg_id = [&](int pod, int j) { return edges + pod * half + j; };
  auto core_id = [&](int c) { return edges + aggs + c; };
  for (int pod = 0; pod < pods; ++pod) {
    for (int i = 0; i < half; ++i)
      for (int j = 0; j < half; ++j) detail::add_link(topo, edge_id(pod, i), agg_id(pod, j));
    for (int j = 0; j < half; ++j)
      for (int i = 0; i < half; ++i) detail::add_link(topo, agg_id(pod, j), core_id(j * half + i));
  }
  detail::finalize_links(topo);
  for (int pod = 0; pod < pods; ++pod)
    for (int i = 0; i < half; ++i) detail::attach_endpoints(topo, edge_id(pod, i), half);
  std::vector<std::vector<int>> order(n);
  for (int s = 0; s < n; ++s) order[s] = topo.adj[s];
  detail::assign_switch_ports(topo, order);
  topo.diameter = 4;
  return topo;
}

// 2-D HyperX: d x d lattice with full row and column meshes, d as large as
// the radix allows for a near-full-bandwidth concentration, every remaining
// port attached to an endpoint: d = max{d : 3(d-1) <= radix},
// p = radix - 2(d-1).
inline Topology build_hyperx2(int radix) {
  if (radix < 4) throw ConfigError("hyperx2: radix must be >= 4");
  const int d = radix / 3 + 1;
  const int conc = radix - 2 * (d - 1);

  Topology topo;
  topo.kind = TopoKind::hyperx2;
  const int n = d * d;
  topo.switches.resize(n);
  topo.adj.resize(n);
  topo.ports.resize(n);
  for (int s = 0; s < n; ++s) topo.switches[s] = {s, 0, -1, std::nullopt};
  auto id = [&](int r, int c) { return r * d + c; };
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) {
      for (int c2 = c + 1; c2 < d; ++c2) detail::add_link(topo, id(r, c), id(r, c2));
      for (int r2 = r + 1; r2 < d; ++r2) detail::add_link(topo, id(r, c), id(r2, c));
    }
  detail::finalize_links(topo);
  for (int s = 0; s < n; ++s) detail::attach_endpoints(topo, s, conc);
  std::vector<std::vector<int>> order(n);
  for (int s = 0; s < n; ++s) order[s] = topo.adj[s];
  detail::assign_switch_ports(topo, order);
  topo.diameter = 2;
  return topo;
}

// --- Count models (maximal-scale and fixed-size deployments) ---------------

struct TopologyCounts {
  long long endpoints = 0;
  long long switches = 0;
  long long links = 0;
};

inline TopologyCounts count_max_scale(TopoKind kind, int radix, int oversub = 1) {
  const long long r = radix;
  switch (kind) {
    case TopoKind::fattree2:
      if (oversub == 3) return {3 * r * r / 4, r + r / 4, r * r / 4};
      return {r * r / 2, 3 * r / 2, r * r / 2};
    case TopoKind::fattree3:
      return {r * r * r / 4, 5 * r * r / 4, r * r * r / 2};
    case TopoKind::hyperx2: {
      const long long d = r / 3 + 1;
      return {d * d * (r - 2 * (d - 1)), d * d, d * d * (d - 1)};
    }
    case TopoKind::slimfly: {
      // largest q whose full-bandwidth radix fits
      SfParams best;
      for (int q = 2;; ++q) {
        SfParams cand = derive_sf_params(q);
        if (cand.radix > radix) break;
        best = cand;
      }
      return {best.n_endpoints(), best.n_switches,
              static_cast<long long>(best.n_switches) * best.net_radix / 2};
    }
    default:
      throw ConfigError("count_max_scale: unsupported kind");
  }
}

// Counts for a cluster of (at least) n endpoints built from radix-port
// switches. Fat trees attach exactly n endpoints and keep whole aggregation
// layers; direct topologies attach a uniform concentration per switch, so
// their endpoint counts may exceed n.
inline TopologyCounts count_fixed_size(TopoKind kind, long long n, int radix, int oversub = 1) {
  const long long r = radix;
  auto ceil_div = [](long long a, long long b) { return (a + b - 1) / b; };
  switch (kind) {
    case TopoKind::fattree2: {
      if (oversub == 3) {
        // 3:1 leaves; published deployment sizing provisions radix/8 uplink
        // cables per leaf against a full radix/4 core layer.
        const long long leaves = ceil_div(n, 3 * r / 4);
        return {n, leaves + r / 4, leaves * (r / 8)};
      }
      const long long leaves = ceil_div(n, r / 2);
      return {n, leaves + ceil_div(leaves, 2), leaves * (r / 2)};
    }
    case TopoKind::fattree3: {
      const long long pods = ceil_div(n, r * r / 4);
      const long long edges = ceil_div(n, r / 2);
      const long long aggs = pods * (r / 2);
      const long long cores = pods * (r / 4);
      return {n, edges + aggs + cores, edges * (r / 2) + aggs * (r / 2)};
    }
    case TopoKind::hyperx2: {
      // smallest lattice whose per-switch demand stays within both the port
      // budget and the lattice dimension (concentration <= d)
      for (long long d = 2;; ++d) {
        if (2 * (d - 1) + 1 > r) throw ConfigError("count_fixed_size: hyperx2 radix too small");
        const long long conc = ceil_div(n, d * d);
        if (conc <= d && 2 * (d - 1) + conc <= r)
          return {d * d * conc, d * d, d * d * (d - 1)};
      }
    }
    case TopoKind::slimfly: {
      for (int q = 2;; ++q) {
        SfParams cand = derive_sf_params(q);
        if (!cand.mms_valid) continue;
        if (cand.n_endpoints() >= n && cand.radix <= radix)
          return {cand.n_endpoints(), cand.n_switches,
                  static_cast<long long>(cand.n_switches) * cand.net_radix / 2};
        if (cand.n_switches > n * 4) throw ConfigError("count_fixed_size: no slim fly fits");
      }
    }
    default:
      throw ConfigError("count_fixed_size: unsupported kind");
  }
}

// --- Scalability under the LID budget (LMC sweep) ---------------------------

struct ScalabilityRow {
  int ports = 0;
  int lmc = 0;
  int addresses = 1;  // 2^lmc
  int q = 0;
  int n_switches = 0;
  long long n_endpoints = 0;
  int net_radix = 0;
  int concentration = 0;
};

// Largest full-bandwidth SF that fits both the port budget and the unicast
// LID space with 2^lmc addresses per endpoint. With prime_power_only the
// search is restricted to MMS-constructible q; otherwise any integer q with
// integral k' qualifies (matching the published scalability table).
inline std::vector<ScalabilityRow> scalability_table(const std::vector<int>& port_counts,
                                                     int lmc_lo, int lmc_hi,
                                                     bool prime_power_only = false) {
  if (port_counts.empty()) throw ConfigError("scalability_table: no port counts");
  if (lmc_lo < 0 || lmc_hi > 7 || lmc_lo > lmc_hi) throw ConfigError("scalability_table: lmc range");
  std::vector<ScalabilityRow> rows;
  for (int ports : port_counts) {
    for (int lmc = lmc_lo; lmc <= lmc_hi; ++lmc) {
      ScalabilityRow row;
      row.ports = ports;
      row.lmc = lmc;
      row.addresses = 1 << lmc;
      for (int q = 2;; ++q) {
        SfParams cand = derive_sf_params(q);
        if (cand.radix > ports) break;
        if ((q - cand.delta) % 4 != 0 && q % 4 != 2) continue;  // k' not integral
        if (prime_power_only && !cand.mms_valid) continue;
        const long long lids = cand.n_endpoints() * row.addresses + cand.n_switches;
        if (lids > kUnicastLidLimit) continue;
        row.q = q;
        row.n_switches = cand.n_switches;
        row.n_endpoints = cand.n_endpoints();
        row.net_radix = cand.net_radix;
        row.concentration = cand.concentration;
      }
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace sfnet
