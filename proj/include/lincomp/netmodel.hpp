#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lincomp/error.hpp"
#include "lincomp/ff.hpp"

namespace lincomp {

using NodeId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  NodeId tail;
  NodeId head;

  bool operator==(const Edge&) const = default;
};

/// Single-receiver acyclic multigraph. Edges are stored in canonical
/// topological order: head(e_i) == tail(e_j) implies i < j.
class Network {
 public:
  /// Validates and canonicalizes. Edge pairs name nodes; parallel edges allowed.
  static Network build(std::vector<std::string> nodes, const std::vector<std::string>& sources,
                       const std::string& receiver,
                       const std::vector<std::pair<std::string, std::string>>& edges,
                       std::uint32_t q = 2);

  std::uint32_t q() const noexcept { return q_; }
  std::size_t node_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  std::size_t source_count() const noexcept { return sources_.size(); }

  const std::vector<std::string>& node_names() const noexcept { return names_; }
  const std::string& name(NodeId u) const { return names_.at(u); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<NodeId>& sources() const noexcept { return sources_; }
  NodeId source(std::size_t tau) const { return sources_.at(tau); }
  NodeId receiver() const noexcept { return receiver_; }

  NodeId node_id(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw Error(Errc::UnknownNode, "no node named '" + name + "'");
    return it->second;
  }
  /// Position of u in the source list, if u is a source.
  std::optional<std::size_t> source_index(NodeId u) const {
    auto it = std::find(sources_.begin(), sources_.end(), u);
    if (it == sources_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - sources_.begin());
  }

  const std::vector<EdgeId>& in_edges(NodeId u) const { return in_.at(checked(u)); }
  const std::vector<EdgeId>& out_edges(NodeId u) const { return out_.at(checked(u)); }
  const std::vector<EdgeId>& in_edges(const std::string& u) const { return in_[node_id(u)]; }
  const std::vector<EdgeId>& out_edges(const std::string& u) const { return out_[node_id(u)]; }

  bool operator==(const Network& o) const {
    return q_ == o.q_ && names_ == o.names_ && sources_ == o.sources_ && receiver_ == o.receiver_ &&
           edges_ == o.edges_;
  }

 private:
  NodeId checked(NodeId u) const {
    if (u >= names_.size()) throw Error(Errc::UnknownNode, "node id " + std::to_string(u));
    return u;
  }

  std::uint32_t q_ = 2;
  std::vector<std::string> names_;
  std::map<std::string, NodeId> index_;
  std::vector<NodeId> sources_;
  NodeId receiver_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> in_, out_;
};

inline Network Network::build(std::vector<std::string> nodes, const std::vector<std::string>& sources,
                              const std::string& receiver,
                              const std::vector<std::pair<std::string, std::string>>& edges,
                              std::uint32_t q) {
  Network net;
  if (!is_prime(q)) throw Error(Errc::NotPrime, "network alphabet q=" + std::to_string(q));
  net.q_ = q;
  net.names_ = std::move(nodes);
  for (NodeId u = 0; u < net.names_.size(); ++u) {
    if (!net.index_.emplace(net.names_[u], u).second)
      throw Error(Errc::ParseError, "duplicate node '" + net.names_[u] + "'");
  }
  auto lookup = [&](const std::string& name) {
    auto it = net.index_.find(name);
    if (it == net.index_.end()) throw Error(Errc::ParseError, "undeclared node '" + name + "'");
    return it->second;
  };
  net.receiver_ = lookup(receiver);
  for (const auto& s : sources) {
    NodeId u = lookup(s);
    if (std::find(net.sources_.begin(), net.sources_.end(), u) != net.sources_.end())
      throw Error(Errc::ParseError, "duplicate source '" + s + "'");
    if (u == net.receiver_) throw Error(Errc::ReceiverIsSource, "receiver '" + s + "' is declared a source");
    net.sources_.push_back(u);
  }
  if (net.sources_.empty()) throw Error(Errc::ParseError, "network has no sources");

  std::vector<Edge> raw;
  raw.reserve(edges.size());
  for (const auto& [t, h] : edges) raw.push_back({lookup(t), lookup(h)});

  // Kahn's algorithm on edges: e_j waits on every edge entering tail(e_j).
  // Ready edges are taken in input order.
  const std::size_t n = net.names_.size();
  std::vector<std::vector<std::size_t>> raw_in(n), raw_out(n);
  for (std::size_t i = 0; i < raw.size(); ++i) {
    raw_out[raw[i].tail].push_back(i);
    raw_in[raw[i].head].push_back(i);
  }
  std::vector<std::size_t> pending(raw.size());
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    pending[i] = raw_in[raw[i].tail].size();
    if (pending[i] == 0) ready.push(i);
  }
  std::vector<std::size_t> order;
  order.reserve(raw.size());
  while (!ready.empty()) {
    const std::size_t i = ready.top();
    ready.pop();
    order.push_back(i);
    for (std::size_t j : raw_out[raw[i].head])
      if (--pending[j] == 0) ready.push(j);
  }
  if (order.size() != raw.size()) throw Error(Errc::CyclicGraph, "graph contains a directed cycle");

  for (std::size_t i : order) net.edges_.push_back(raw[i]);
  net.in_.assign(n, {});
  net.out_.assign(n, {});
  for (EdgeId e = 0; e < net.edges_.size(); ++e) {
    net.out_[net.edges_[e].tail].push_back(e);
    net.in_[net.edges_[e].head].push_back(e);
  }

  for (NodeId u = 0; u < n; ++u) {
    if (net.in_[u].empty() && !net.source_index(u))
      throw Error(Errc::OrphanNonSource, "node '" + net.names_[u] + "' has no in-edges and is not a source");
  }

  std::vector<bool> reaches(n, false);
  std::vector<NodeId> stack{net.receiver_};
  reaches[net.receiver_] = true;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (EdgeId e : net.in_[u]) {
      NodeId t = net.edges_[e].tail;
      if (!reaches[t]) reaches[t] = true, stack.push_back(t);
    }
  }
  for (NodeId u = 0; u < n; ++u)
    if (!reaches[u]) throw Error(Errc::UnreachableNode, "node '" + net.names_[u] + "' has no path to the receiver");
  return net;
}

inline nlohmann::json network_to_json(const Network& net) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : net.edges()) edges.push_back({net.name(e.tail), net.name(e.head)});
  nlohmann::json sources = nlohmann::json::array();
  for (NodeId s : net.sources()) sources.push_back(net.name(s));
  return {{"field", {{"q", net.q()}}},
          {"nodes", net.node_names()},
          {"sources", sources},
          {"receiver", net.name(net.receiver())},
          {"edges", edges}};
}

inline Network network_from_json(const nlohmann::json& j) {
  try {
    std::uint32_t q = 2;
    if (j.contains("field")) q = j.at("field").at("q").get<std::uint32_t>();
    auto nodes = j.at("nodes").get<std::vector<std::string>>();
    auto sources = j.at("sources").get<std::vector<std::string>>();
    auto receiver = j.at("receiver").get<std::string>();
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(Errc::ParseError, "edge must be a [tail, head] pair");
      edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return Network::build(std::move(nodes), sources, receiver, edges, q);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::ParseError, ex.what());
  }
}

inline Network parse_network(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::ParseError, ex.what());
  }
  return network_from_json(j);
}

inline std::string serialize_network(const Network& net) { return network_to_json(net).dump(); }

}  // namespace lincomp
