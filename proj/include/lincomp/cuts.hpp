#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "lincomp/code.hpp"
#include "lincomp/flow.hpp"
#include "lincomp/netmodel.hpp"

namespace lincomp {

/// Nonnegative fraction kept in lowest terms.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Ratio of(std::uint64_t num, std::uint64_t den) {
    const auto g = std::gcd(num, den);
    return g ? Ratio{num / g, den / g} : Ratio{0, 1};
  }

  friend bool operator==(const Ratio& a, const Ratio& b) { return a.num * b.den == b.num * a.den; }
  friend std::strong_ordering operator<=>(const Ratio& a, const Ratio& b) {
    return a.num * b.den <=> b.num * a.den;
  }
};

struct CutReport {
  Ratio value;
  std::vector<EdgeId> witness;       // sorted
  std::vector<std::size_t> separated;  // sorted source indices K_C
};

/// Indices of sources with no path to the receiver once `cut` is deleted.
inline std::vector<std::size_t> separated_sources(const Network& net, const std::vector<EdgeId>& cut) {
  std::vector<bool> removed(net.edge_count(), false);
  for (EdgeId e : cut) removed.at(e) = true;
  std::vector<bool> reaches(net.node_count(), false);
  std::vector<NodeId> stack{net.receiver()};
  reaches[net.receiver()] = true;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (EdgeId e : net.in_edges(u)) {
      if (removed[e]) continue;
      const NodeId t = net.edge(e).tail;
      if (!reaches[t]) reaches[t] = true, stack.push_back(t);
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t tau = 0; tau < net.source_count(); ++tau)
    if (!reaches[net.source(tau)]) out.push_back(tau);
  return out;
}

namespace detail {

// Minimum edge cut between the sources in `mask` and the receiver, read
// off the residual graph of a unit-capacity max-flow.
inline std::vector<EdgeId> min_cut_for(const Network& net, std::uint64_t mask) {
  const std::size_t super = net.node_count();
  AugmentingFlow flow(net.node_count() + 1);
  for (const auto& e : net.edges()) flow.add_arc(e.tail, e.head, 1);
  for (std::size_t tau = 0; tau < net.source_count(); ++tau)
    if (mask >> tau & 1) flow.add_arc(super, net.source(tau), AugmentingFlow::kUnbounded);
  flow.run(super, net.receiver());
  const auto side = flow.source_side();
  std::vector<EdgeId> cut;
  for (EdgeId e = 0; e < net.edge_count(); ++e)
    if (side[net.edge(e).tail] && !side[net.edge(e).head]) cut.push_back(e);
  return cut;
}

// Orders candidate cuts: smaller ratio, then more separated sources, then
// lexicographically smaller witness.
inline bool better_cut(const CutReport& a, const CutReport& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.separated.size() != b.separated.size()) return a.separated.size() > b.separated.size();
  return a.witness < b.witness;
}

}  // namespace detail

/// min over cuts C of |C| / rank(T_{K_C}), with a witness cut. One max-flow
/// per nonempty source subset W; the min cut for W = K_{C*} of an optimal
/// C* separates a superset of W with no more edges.
inline CutReport mincut_ratio(const Network& net, const TargetMatrix& target) {
  const std::size_t s = net.source_count();
  if (target.cols() != s)
    throw Error(Errc::DimensionMismatch,
                "target has " + std::to_string(target.cols()) + " columns for " + std::to_string(s) + " sources");
  if (s >= 63) throw Error(Errc::DimensionMismatch, "too many sources for subset enumeration");
  CutReport best;
  bool found = false;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << s); ++mask) {
    CutReport cand;
    cand.witness = detail::min_cut_for(net, mask);
    cand.separated = separated_sources(net, cand.witness);
    // Every node reaches the receiver, so a flow of at least 1 exists and
    // the cut separates all of `mask`; rank >= 1 by the no-zero-column rule.
    cand.value = Ratio::of(cand.witness.size(), target.rank_of(cand.separated));
    if (!found || detail::better_cut(cand, best)) best = std::move(cand), found = true;
  }
  return best;
}

inline bool check_necessary(const Network& net, const TargetMatrix& target) {
  const auto report = mincut_ratio(net, target);
  return report.value >= Ratio{1, 1};
}

}  // namespace lincomp
