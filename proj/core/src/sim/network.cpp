#include "poloc/sim/network.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "poloc/errors.hpp"

namespace poloc::sim {

std::string_view to_string(Topology t) {
  switch (t) {
    case Topology::line: return "line";
    case Topology::grid: return "grid";
    case Topology::random_geometric: return "random_geometric";
  }
  return "?";
}

Topology parse_topology(std::string_view s) {
  if (s == "line") return Topology::line;
  if (s == "grid") return Topology::grid;
  if (s == "random_geometric") return Topology::random_geometric;
  throw InvalidArgument("unknown topology '" + std::string(s) + "'");
}

bool RoadNetwork::connected() const {
  if (adjacency.empty()) return false;
  std::vector<bool> seen(size(), false);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = true;
  std::size_t reached = 1;
  while (!q.empty()) {
    auto v = q.front();
    q.pop();
    for (auto u : adjacency[v]) {
      if (!seen[u - 1]) {
        seen[u - 1] = true;
        ++reached;
        q.push(u - 1);
      }
    }
  }
  return reached == size();
}

namespace {

void link(RoadNetwork& net, std::size_t a, std::size_t b) {
  net.adjacency[a].push_back(static_cast<RsuId>(b + 1));
  net.adjacency[b].push_back(static_cast<RsuId>(a + 1));
}

RoadNetwork empty_network(std::size_t n) {
  RoadNetwork net;
  net.adjacency.resize(n);
  net.group.assign(n, 0);
  return net;
}

}  // namespace

RoadNetwork generate_network(std::size_t n, Topology topology, std::mt19937_64& rng) {
  if (n < 2) throw InvalidArgument("a road network needs at least two RSUs");
  RoadNetwork net = empty_network(n);
  switch (topology) {
    case Topology::line:
      for (std::size_t i = 0; i + 1 < n; ++i) link(net, i, i + 1);
      break;
    case Topology::grid: {
      auto cols = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n))));
      for (std::size_t i = 0; i < n; ++i) {
        if ((i % cols) + 1 < cols && i + 1 < n) link(net, i, i + 1);
        if (i + cols < n) link(net, i, i + cols);
      }
      break;
    }
    case Topology::random_geometric: {
      const double radius = std::sqrt(2.0 * std::log(static_cast<double>(n)) / static_cast<double>(n));
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      for (int attempt = 0;; ++attempt) {
        if (attempt == kNetworkRetries)
          throw std::runtime_error("no connected random geometric network after retries");
        net = empty_network(n);
        std::vector<std::pair<double, double>> pts(n);
        for (auto& p : pts) p = {unit(rng), unit(rng)};
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = i + 1; j < n; ++j)
            if (std::hypot(pts[i].first - pts[j].first, pts[i].second - pts[j].second) <= radius)
              link(net, i, j);
        if (net.connected()) break;
      }
      break;
    }
  }
  for (auto& adj : net.adjacency) std::sort(adj.begin(), adj.end());
  return net;
}

}  // namespace poloc::sim
