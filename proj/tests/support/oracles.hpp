#pragma once

// Brute-force reference implementations used to cross-check the library.
// They share no algorithmic code with it beyond the plain data types.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "lincomp/code.hpp"
#include "lincomp/netmodel.hpp"

namespace oracle {

using Rows = std::vector<std::vector<std::uint32_t>>;

inline bool prime_by_trial(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d < n; ++d) {
    if (d * d > n) break;
    if (n % d == 0) return false;
  }
  return true;
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t q) {
  for (std::uint32_t x = 1; x < q; ++x)
    if (std::uint64_t{a} * x % q == 1) return x;
  return 0;
}

inline std::size_t rank_mod(Rows m, std::uint32_t q) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[r], m[piv]);
    const auto inv = inv_mod(m[r][c], q);
    for (auto& x : m[r]) x = static_cast<std::uint32_t>(std::uint64_t{x} * inv % q);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const auto f = m[i][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] = static_cast<std::uint32_t>((m[i][j] + std::uint64_t{q - f} * m[r][j]) % q);
    }
    if (++r == m.size()) break;
  }
  return r;
}

inline Rows product_mod(const Rows& a, const Rows& b, std::uint32_t q) {
  Rows out(a.size(), std::vector<std::uint32_t>(b.empty() ? 0 : b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < out[i].size(); ++j)
        out[i][j] = static_cast<std::uint32_t>((out[i][j] + std::uint64_t{a[i][k]} * b[k][j]) % q);
  return out;
}

inline Rows rows_of(const lincomp::Matrix<std::uint32_t>& m) {
  Rows out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row(i));
  return out;
}

// Polynomials as coefficient vectors, constant term first.
inline std::vector<std::uint32_t> poly_times(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b,
                                             std::uint32_t q) {
  std::vector<std::uint32_t> out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % q;
  return out;
}

inline std::vector<std::vector<std::uint32_t>> monic_polys(std::uint32_t q, std::size_t deg) {
  std::vector<std::vector<std::uint32_t>> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < deg; ++i) total *= q;
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::vector<std::uint32_t> p(deg + 1, 0);
    p[deg] = 1;
    auto rest = idx;
    for (std::size_t i = 0; i < deg; ++i) p[i] = rest % q, rest /= q;
    out.push_back(p);
  }
  return out;
}

/// Irreducible iff no product of two monic polynomials of positive degree
/// equals it.
inline bool irreducible_by_products(std::uint32_t q, const std::vector<std::uint32_t>& f) {
  const std::size_t n = f.size() - 1;
  for (std::size_t d = 1; d <= n / 2; ++d)
    for (const auto& a : monic_polys(q, d))
      for (const auto& b : monic_polys(q, n - d))
        if (poly_times(a, b, q) == f) return false;
  return true;
}

/// Smallest ratio |C| / rank(T_{K_C}) over all edge subsets with K_C
/// nonempty, as (num, den) in lowest terms.
inline std::pair<std::uint64_t, std::uint64_t> brute_mincut(const lincomp::Network& net, const Rows& t, std::uint32_t q) {
  const std::size_t m = net.edge_count();
  std::uint64_t best_num = 0, best_den = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    // reach[u]: u still has a path to the receiver
    std::vector<bool> reach(net.node_count(), false);
    reach[net.receiver()] = true;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t e = 0; e < m; ++e) {
        if (mask >> e & 1) continue;
        const auto& ed = net.edge(e);
        if (reach[ed.head] && !reach[ed.tail]) reach[ed.tail] = true, changed = true;
      }
    }
    std::vector<std::size_t> sep;
    for (std::size_t tau = 0; tau < net.source_count(); ++tau)
      if (!reach[net.source(tau)]) sep.push_back(tau);
    if (sep.empty()) continue;
    Rows sub(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
      for (auto tau : sep) sub[i].push_back(t[i][tau]);
    const std::uint64_t num = static_cast<std::uint64_t>(__builtin_popcountll(mask));
    const std::uint64_t den = rank_mod(sub, q);
    if (best_den == 0 || num * best_den < best_num * den) best_num = num, best_den = den;
  }
  const auto g = std::gcd(best_num, best_den);
  return {best_num / g, best_den / g};
}

/// Random valid network: sources and relays in a random topological order
/// followed by the receiver. Every non-receiver node gets an out-edge to a
/// later node and every relay an in-edge from an earlier one.
template <typename Rng>
lincomp::Network random_dag(Rng& rng, std::size_t s, std::size_t relays, std::size_t max_edges, std::uint32_t q) {
  std::vector<std::string> order;
  for (std::size_t i = 0; i < s; ++i) order.push_back("s" + std::to_string(i + 1));
  for (std::size_t i = 0; i < relays; ++i) order.push_back("v" + std::to_string(i + 1));
  std::shuffle(order.begin(), order.end(), rng);
  // the first node has no predecessor, so it must be a source
  std::iter_swap(order.begin(), std::find_if(order.begin(), order.end(), [](const std::string& x) { return x[0] == 's'; }));
  order.push_back("rho");
  const std::size_t n = order.size();
  auto is_relay = [&](std::size_t i) { return order[i][0] == 'v'; };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  auto pick = [&](std::size_t lo, std::size_t hi) { return std::uniform_int_distribution<std::size_t>(lo, hi)(rng); };
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (is_relay(i)) {
      bool has_in = false;
      for (auto& e : edges) has_in = has_in || e.second == i;
      if (!has_in) edges.emplace_back(pick(0, i - 1), i);
    }
    edges.emplace_back(i, pick(i + 1, n - 1));
  }
  while (edges.size() < max_edges && pick(0, 3) != 0) {
    const auto a = pick(0, n - 2);
    edges.emplace_back(a, pick(a + 1, n - 1));
  }
  std::vector<std::pair<std::string, std::string>> named;
  for (auto [a, b] : edges) named.emplace_back(order[a], order[b]);
  std::shuffle(named.begin(), named.end(), rng);
  std::vector<std::string> sources, nodes = order;
  for (std::size_t i = 0; i < s; ++i) sources.push_back("s" + std::to_string(i + 1));
  return lincomp::Network::build(nodes, sources, "rho", named, q);
}

template <typename Rng>
lincomp::Network random_network(Rng& rng, std::size_t s, std::size_t max_edges, std::uint32_t q) {
  const std::size_t relays = std::uniform_int_distribution<std::size_t>(0, 2)(rng);
  return random_dag(rng, s, relays, max_edges, q);
}

/// Edge values by direct propagation for given messages (n = 1 codes).
inline std::vector<std::uint32_t> propagate(const lincomp::Network& net, const lincomp::LinearCode& code,
                                            const std::vector<std::uint32_t>& msg, std::uint32_t q) {
  auto val = [&](const lincomp::Felem& f) { return f.coeffs[0]; };
  std::vector<std::uint32_t> z(net.edge_count(), 0);
  std::vector<bool> done(net.edge_count(), false);
  for (std::size_t pass = 0; pass < net.edge_count(); ++pass) {
    for (std::size_t e = 0; e < net.edge_count(); ++e) {
      if (done[e]) continue;
      const auto u = net.edge(e).tail;
      bool ready = true;
      for (auto in : net.in_edges(u)) ready = ready && done[in];
      if (!ready) continue;
      std::uint64_t acc = 0;
      for (std::size_t tau = 0; tau < net.source_count(); ++tau)
        if (net.source(tau) == u)
          if (auto it = code.a.find({tau, e}); it != code.a.end()) acc += std::uint64_t{val(it->second)} * msg[tau];
      for (auto in : net.in_edges(u))
        if (auto it = code.f.find({in, e}); it != code.f.end()) acc += std::uint64_t{val(it->second)} * z[in];
      z[e] = static_cast<std::uint32_t>(acc % q);
      done[e] = true;
    }
  }
  std::vector<std::uint32_t> out(code.outputs, 0);
  for (std::size_t j = 0; j < code.outputs; ++j) {
    std::uint64_t acc = 0;
    for (auto e : net.in_edges(net.receiver()))
      if (auto it = code.b.find({e, j}); it != code.b.end()) acc += std::uint64_t{val(it->second)} * z[e];
    out[j] = static_cast<std::uint32_t>(acc % q);
  }
  return out;
}

/// A code over F_q (n = 1) solves T iff every unit message produces the
/// matching column of T.
inline bool solves(const lincomp::Network& net, const lincomp::LinearCode& code, const Rows& t, std::uint32_t q) {
  for (std::size_t tau = 0; tau < net.source_count(); ++tau) {
    std::vector<std::uint32_t> msg(net.source_count(), 0);
    msg[tau] = 1;
    const auto out = propagate(net, code, msg, q);
    for (std::size_t j = 0; j < t.size(); ++j)
      if (out[j] != t[j][tau]) return false;
  }
  return true;
}

/// Enumerates every F_q assignment of the admissible coefficient slots.
/// `fixed` slots are pinned to 1 and skipped. Returns the number of
/// solutions found (stops after the first when `first_only`).
inline std::size_t count_solutions(const lincomp::Network& net, const Rows& t, std::uint32_t q, bool first_only,
                                   std::size_t* assignments_tried = nullptr,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& pinned_a = {}) {
  const std::size_t l = t.size();
  struct Slot {
    int kind;
    std::size_t x, y;
  };
  std::vector<Slot> slots;
  const lincomp::ExtField fld(q, {0, 1});
  lincomp::LinearCode base(fld, l);
  for (std::size_t tau = 0; tau < net.source_count(); ++tau)
    for (auto e : net.out_edges(net.source(tau))) {
      if (std::find(pinned_a.begin(), pinned_a.end(), std::pair{tau, e}) != pinned_a.end()) base.a[{tau, e}] = fld.one();
      else slots.push_back({0, tau, e});
    }
  for (std::size_t e = 0; e < net.edge_count(); ++e)
    for (auto nx : net.out_edges(net.edge(e).head)) slots.push_back({1, e, nx});
  for (auto e : net.in_edges(net.receiver()))
    for (std::size_t j = 0; j < l; ++j) slots.push_back({2, e, j});
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < slots.size(); ++i) total *= q;
  std::size_t found = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    auto code = base;
    auto rest = idx;
    for (const auto& s : slots) {
      const auto v = static_cast<std::uint32_t>(rest % q);
      rest /= q;
      if (v == 0) continue;
      const auto fe = fld.embed(v);
      if (s.kind == 0) code.a[{s.x, s.y}] = fe;
      else if (s.kind == 1) code.f[{s.x, s.y}] = fe;
      else code.b[{s.x, s.y}] = fe;
    }
    if (assignments_tried) ++*assignments_tried;
    if (solves(net, code, t, q)) {
      ++found;
      if (first_only) return found;
    }
  }
  return found;
}

/// Whether T = Q (I 1) Pi for some invertible Q and permutation Pi, with
/// 1 the l x (s - l) all-ones block, over F_2.
inline bool equivalent_to_identity_ones(const Rows& t) {
  const std::size_t l = t.size(), s = t[0].size();
  Rows base(l, std::vector<std::uint32_t>(s, 1));
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t j = 0; j < l; ++j) base[i][j] = i == j;
  std::vector<std::size_t> perm(s);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::uint64_t qm = 0; qm < (std::uint64_t{1} << (l * l)); ++qm) {
    Rows q(l, std::vector<std::uint32_t>(l));
    for (std::size_t i = 0; i < l * l; ++i) q[i / l][i % l] = qm >> i & 1;
    if (rank_mod(q, 2) != l) continue;
    const auto qb = product_mod(q, base, 2);
    std::sort(perm.begin(), perm.end());
    do {
      bool ok = true;
      for (std::size_t j = 0; j < s && ok; ++j)
        for (std::size_t i = 0; i < l && ok; ++i) ok = qb[i][perm[j]] == t[i][j];
      if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return false;
}

/// All l x s matrices over F_2 with full row rank and no zero column.
inline std::vector<Rows> binary_targets(std::size_t l, std::size_t s) {
  std::vector<Rows> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << (l * s)); ++bits) {
    Rows m(l, std::vector<std::uint32_t>(s));
    for (std::size_t i = 0; i < l * s; ++i) m[i / s][i % s] = bits >> i & 1;
    bool zero_col = false;
    for (std::size_t j = 0; j < s; ++j) {
      bool nz = false;
      for (std::size_t i = 0; i < l; ++i) nz = nz || m[i][j];
      zero_col = zero_col || !nz;
    }
    if (!zero_col && rank_mod(m, 2) == l) out.push_back(m);
  }
  return out;
}

}  // namespace oracle
