#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "frolip/errors.hpp"

// Dinic max-flow on 64-bit capacities, plus feasibility of circulations with
// lower bounds via the usual super-source reduction.
namespace frolip::flow {

class Network {
 public:
  explicit Network(std::size_t nodes) : adj_(nodes), level_(nodes), iter_(nodes) {}

  std::size_t add_node() {
    adj_.emplace_back();
    level_.push_back(0);
    iter_.push_back(0);
    return adj_.size() - 1;
  }

  // Returns the edge id; flow(id) reads the flow on it after solving.
  std::size_t add_edge(std::size_t from, std::size_t to, std::int64_t cap) {
    if (cap < 0) throw DomainError("NegativeCapacity", "edge capacity must be nonnegative");
    edges_.push_back({to, cap, 0});
    adj_[from].push_back(edges_.size() - 1);
    edges_.push_back({from, 0, 0});
    adj_[to].push_back(edges_.size() - 1);
    return edges_.size() - 2;
  }

  std::int64_t flow(std::size_t id) const { return edges_[id].flow; }
  std::size_t size() const { return adj_.size(); }

  std::int64_t max_flow(std::size_t s, std::size_t t) {
    std::int64_t total = 0;
    while (bfs(s, t)) {
      std::fill(iter_.begin(), iter_.end(), 0);
      for (;;) {
        const std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max());
        if (f == 0) break;
        total += f;
      }
    }
    return total;
  }

 private:
  struct Edge {
    std::size_t to;
    std::int64_t cap;
    std::int64_t flow;
  };

  bool bfs(std::size_t s, std::size_t t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::queue<std::size_t> q;
    level_[s] = 0;
    q.push(s);
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (std::size_t id : adj_[v]) {
        const Edge& e = edges_[id];
        if (e.cap - e.flow > 0 && level_[e.to] < 0) {
          level_[e.to] = level_[v] + 1;
          q.push(e.to);
        }
      }
    }
    return level_[t] >= 0;
  }

  std::int64_t dfs(std::size_t v, std::size_t t, std::int64_t pushed) {
    if (v == t) return pushed;
    for (std::size_t& i = iter_[v]; i < adj_[v].size(); ++i) {
      const std::size_t id = adj_[v][i];
      Edge& e = edges_[id];
      if (e.cap - e.flow <= 0 || level_[e.to] != level_[v] + 1) continue;
      const std::int64_t got = dfs(e.to, t, std::min(pushed, e.cap - e.flow));
      if (got > 0) {
        e.flow += got;
        edges_[id ^ 1].flow -= got;
        return got;
      }
    }
    return 0;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
};

// Circulation with lower and upper bounds on every edge.
class Circulation {
 public:
  explicit Circulation(std::size_t nodes) : net_(nodes + 2), excess_(nodes, 0), nodes_(nodes) {}

  std::size_t add_edge(std::size_t from, std::size_t to, std::int64_t lower, std::int64_t upper) {
    if (lower < 0 || upper < lower) throw DomainError("InvalidBounds", "edge bounds must satisfy 0 <= lower <= upper");
    excess_[to] += lower;
    excess_[from] -= lower;
    lowers_.push_back(lower);
    ids_.push_back(net_.add_edge(from, to, upper - lower));
    return ids_.size() - 1;
  }

  // True if some flow meets every bound and conserves flow at every node.
  bool solve() {
    const std::size_t src = nodes_, sink = nodes_ + 1;
    std::int64_t need = 0;
    for (std::size_t v = 0; v < nodes_; ++v) {
      if (excess_[v] > 0) {
        net_.add_edge(src, v, excess_[v]);
        need += excess_[v];
      } else if (excess_[v] < 0) {
        net_.add_edge(v, sink, -excess_[v]);
      }
    }
    return net_.max_flow(src, sink) == need;
  }

  std::int64_t flow(std::size_t edge) const { return lowers_[edge] + net_.flow(ids_[edge]); }

 private:
  Network net_;
  std::vector<std::int64_t> excess_;
  std::vector<std::int64_t> lowers_;
  std::vector<std::size_t> ids_;
  std::size_t nodes_;
};

}  // namespace frolip::flow
