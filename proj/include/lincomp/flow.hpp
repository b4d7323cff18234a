#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

namespace lincomp {

/// Edmonds-Karp max-flow with integral capacities. Arcs are added in pairs
/// (forward, residual twin at id ^ 1).
class AugmentingFlow {
 public:
  static constexpr std::int64_t kUnbounded = std::numeric_limits<std::int32_t>::max();

  explicit AugmentingFlow(std::size_t nodes) : adj_(nodes) {}

  std::size_t add_arc(std::size_t from, std::size_t to, std::int64_t capacity) {
    const std::size_t id = arcs_.size();
    arcs_.push_back({to, capacity, 0});
    arcs_.push_back({from, 0, 0});
    adj_[from].push_back(id);
    adj_[to].push_back(id + 1);
    return id;
  }

  /// Pushes flow from `source` to `sink` along shortest augmenting paths.
  std::int64_t run(std::size_t source, std::size_t sink) {
    std::int64_t total = 0;
    while (true) {
      std::vector<std::size_t> via(adj_.size(), kNone);
      std::vector<bool> seen(adj_.size(), false);
      std::queue<std::size_t> frontier;
      frontier.push(source);
      seen[source] = true;
      while (!frontier.empty() && !seen[sink]) {
        const std::size_t u = frontier.front();
        frontier.pop();
        for (std::size_t id : adj_[u]) {
          const auto& arc = arcs_[id];
          if (residual(id) > 0 && !seen[arc.to]) {
            seen[arc.to] = true;
            via[arc.to] = id;
            frontier.push(arc.to);
          }
        }
      }
      if (!seen[sink]) break;
      std::int64_t push = kUnbounded;
      for (std::size_t v = sink; v != source; v = arcs_[via[v] ^ 1].to) push = std::min(push, residual(via[v]));
      for (std::size_t v = sink; v != source; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].flow += push;
        arcs_[via[v] ^ 1].flow -= push;
      }
      total += push;
    }
    source_ = source;
    return total;
  }

  std::int64_t flow_on(std::size_t arc) const { return arcs_[arc].flow; }

  /// Nodes reachable from the source in the residual graph after run().
  std::vector<bool> source_side() const {
    std::vector<bool> seen(adj_.size(), false);
    std::vector<std::size_t> stack{source_};
    seen[source_] = true;
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t id : adj_[u]) {
        if (residual(id) > 0 && !seen[arcs_[id].to]) {
          seen[arcs_[id].to] = true;
          stack.push_back(arcs_[id].to);
        }
      }
    }
    return seen;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  struct Arc {
    std::size_t to;
    std::int64_t capacity;
    std::int64_t flow;
  };

  std::int64_t residual(std::size_t id) const { return arcs_[id].capacity - arcs_[id].flow; }

  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> adj_;
  std::size_t source_ = 0;
};

}  // namespace lincomp
