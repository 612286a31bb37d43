#pragma once

#include <cstddef>
#include <vector>

namespace multiband {

struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
};

/// Edge list over nodes 0..num_nodes-1. Directed or not depending on the
/// consumer: shortest-path oracles read (u, v) as an arc.
struct Graph {
  std::size_t num_nodes = 0;
  std::vector<Edge> edges;
};

}  // namespace multiband
