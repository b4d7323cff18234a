#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lincomp/code.hpp"
#include "lincomp/cuts.hpp"
#include "lincomp/equiv.hpp"
#include "lincomp/mvpoly.hpp"
#include "lincomp/netmodel.hpp"

namespace lincomp {

/// Indices refer to columns of the standard form (I P); kappa[i] is the
/// source of the returned network that plays column i.
struct Construction {
  std::size_t tau = 0;
  std::vector<std::size_t> k;
  std::size_t j1 = 0;
  std::size_t p = 0;
  std::vector<std::size_t> kbar;
  std::vector<std::size_t> kappa;
};

struct CounterexampleBundle {
  Network network;
  TargetMatrix target;
  FqMatrix standard;  // (I P)
  Construction construction;
};

inline nlohmann::json construction_to_json(const Construction& c) {
  return {{"tau", c.tau}, {"K", c.k}, {"j1", c.j1}, {"p", c.p}, {"Kbar", c.kbar}, {"kappa", c.kappa}};
}

/// Three sources, four edges: s2 feeds s1 and s3, both of which feed rho.
/// Paired with T1 = [[1,0,1],[0,1,0]].
inline CounterexampleBundle build_n1(std::uint32_t q) {
  auto net = Network::build({"s1", "s2", "s3", "rho"}, {"s1", "s2", "s3"}, "rho",
                            {{"s2", "s1"}, {"s2", "s3"}, {"s1", "rho"}, {"s3", "rho"}}, q);
  auto t1 = TargetMatrix::from_rows(q, {{1, 0, 1}, {0, 1, 0}});
  Construction c{2, {0}, 0, 1, {}, {0, 1, 2}};
  FqMatrix standard = t1.matrix();
  return {std::move(net), std::move(t1), std::move(standard), std::move(c)};
}

namespace detail {

inline void self_check(const CounterexampleBundle& b) {
  const auto cut = mincut_ratio(b.network, b.target);
  if (cut.value != Ratio{1, 1})
    throw Error(Errc::ConstructionMismatch,
                "min-cut ratio is " + std::to_string(cut.value.num) + "/" + std::to_string(cut.value.den));
  if (solvable(b.network, b.target) != Verdict::Unsolvable)
    throw Error(Errc::ConstructionMismatch, "generated network admits a solution");
}

}  // namespace detail

/// Min-cut-1 network without a linear solution for T, built from an
/// equivalence T = Q (I P) Pi whose P contains a zero.
inline CounterexampleBundle build_np(const TargetMatrix& t, const Equivalence& witness) {
  const std::size_t l = t.rows(), s = t.cols();
  if (l == 1 || l == s) throw Error(Errc::ClassMismatch, "needs 1 < l < s");
  if (!witness.p_has_zero() || witness.reconstruct(t.field()) != t.matrix())
    throw Error(Errc::ClassMismatch, "witness does not factor the target with a zero in P");

  const FqMatrix hat = witness.standard_form();
  Construction c;
  c.tau = s;
  for (std::size_t col = l; col < s && c.tau == s; ++col)
    for (std::size_t i = 0; i < l; ++i)
      if (hat(i, col) == 0) c.tau = col;
  std::vector<bool> in_k(s, false);
  for (std::size_t i = 0; i < l; ++i)
    if (hat(i, c.tau) != 0) c.k.push_back(i), in_k[i] = true;
  c.j1 = c.k.front();
  c.p = l;
  for (std::size_t i = 0; i < l && c.p == l; ++i)
    if (!in_k[i]) c.p = i;
  for (std::size_t i = 0; i < s; ++i)
    if (!in_k[i] && i != c.tau && i != c.p) c.kbar.push_back(i);
  c.kappa.assign(s, 0);
  for (std::size_t j = 0; j < s; ++j) c.kappa[witness.pi[j]] = j;

  std::vector<std::string> nodes, sources;
  for (std::size_t j = 0; j < s; ++j) sources.push_back("s" + std::to_string(j + 1));
  nodes = sources;
  nodes.push_back("v");
  nodes.push_back("rho");
  auto sigma = [&](std::size_t i) { return sources[c.kappa[i]]; };
  std::vector<std::pair<std::string, std::string>> edges{{sigma(c.p), sigma(c.j1)}, {sigma(c.p), "v"}, {sigma(c.tau), "v"}};
  for (std::size_t j : c.k)
    if (j != c.j1) edges.emplace_back(sigma(c.tau), sigma(j));
  for (std::size_t j : c.k) edges.emplace_back(sigma(j), "rho");
  edges.emplace_back("v", "rho");
  for (std::size_t j : c.kbar) edges.emplace_back(sigma(j), "rho");

  CounterexampleBundle out{Network::build(nodes, sources, "rho", edges, t.q()), t, hat, std::move(c)};
  detail::self_check(out);
  return out;
}

inline CounterexampleBundle build_np(const TargetMatrix& t) {
  const auto cls = classify(t);
  if (cls.kind != TargetClass::HasZero) throw Error(Errc::ClassMismatch, std::string("target class is ") + to_string(cls.kind));
  return build_np(t, cls.witness);
}

/// Rows {j1, p} and columns {j1, p, tau} of (I P).
inline TargetMatrix induced_gadget_target(const CounterexampleBundle& b) {
  const auto& c = b.construction;
  const std::size_t rows[] = {c.j1, c.p}, cols[] = {c.j1, c.p, c.tau};
  FqMatrix m(2, 3, 0);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = b.standard(rows[i], cols[j]);
  return TargetMatrix(b.target.q(), std::move(m));
}

}  // namespace lincomp
