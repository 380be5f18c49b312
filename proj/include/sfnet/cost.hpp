#pragma once

#include <map>
#include <string>

#include "sfnet/error.hpp"
#include "sfnet/topology.hpp"

namespace sfnet {

struct PriceTable {
  double switch_price = 0;
  double optical_cable = 0;   // inter-rack
  double copper_cable = 0;    // intra-rack
  double endpoint_cable = 0;  // endpoint attachment (NIC-side)
};

// Default prices calibrated against the published 36-port deployment-cost
// table (totals land within a few percent); override via a price file.
inline PriceTable default_prices() { return {11040.0, 1030.0, 250.0, 300.0}; }

inline PriceTable price_table_from_map(const std::map<std::string, double>& kv) {
  PriceTable prices;
  auto need = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw ConfigError(std::string("price table: missing key '") + key + "'");
    return it->second;
  };
  prices.switch_price = need("switch");
  prices.optical_cable = need("optical_cable");
  prices.copper_cable = need("copper_cable");
  prices.endpoint_cable = need("endpoint_cable");
  return prices;
}

struct CostSummary {
  long long endpoints = 0;
  long long switches = 0;
  long long links = 0;
  long long copper_links = 0;
  long long optical_links = 0;
  double total_cost = 0;
  double cost_per_endpoint = 0;
};

// Without rack layout information every inter-switch link is priced optical;
// copper_links picks up the intra-rack share when racks are known.
inline CostSummary tally_costs(const Topology& topo, const PriceTable& prices,
                               bool use_rack_layout = true) {
  CostSummary cost;
  cost.endpoints = topo.n_endpoints();
  cost.switches = topo.n_switches();
  cost.links = static_cast<long long>(topo.n_links());
  for (const auto& [a, b] : topo.links) {
    const int ra = topo.switches[a].rack, rb = topo.switches[b].rack;
    if (use_rack_layout && ra >= 0 && ra == rb)
      ++cost.copper_links;
    else
      ++cost.optical_links;
  }
  cost.total_cost = cost.switches * prices.switch_price +
                    cost.copper_links * prices.copper_cable +
                    cost.optical_links * prices.optical_cable +
                    cost.endpoints * prices.endpoint_cable;
  cost.cost_per_endpoint = cost.endpoints > 0 ? cost.total_cost / cost.endpoints : 0.0;
  return cost;
}

inline CostSummary tally_costs(const TopologyCounts& counts, const PriceTable& prices) {
  CostSummary cost;
  cost.endpoints = counts.endpoints;
  cost.switches = counts.switches;
  cost.links = counts.links;
  cost.optical_links = counts.links;
  cost.total_cost = cost.switches * prices.switch_price + cost.links * prices.optical_cable +
                    cost.endpoints * prices.endpoint_cable;
  cost.cost_per_endpoint = cost.endpoints > 0 ? cost.total_cost / cost.endpoints : 0.0;
  return cost;
}

}  // namespace sfnet
