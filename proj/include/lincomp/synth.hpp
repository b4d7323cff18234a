#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lincomp/code.hpp"
#include "lincomp/cuts.hpp"
#include "lincomp/equiv.hpp"
#include "lincomp/flow.hpp"
#include "lincomp/mvpoly.hpp"
#include "lincomp/netmodel.hpp"

namespace lincomp {

enum class SynthMethod { SumTree, Routing, Alignment };

inline constexpr const char* to_string(SynthMethod m) {
  switch (m) {
    case SynthMethod::SumTree: return "SumTree";
    case SynthMethod::Routing: return "Routing";
    case SynthMethod::Alignment: return "Alignment";
  }
  return "?";
}

struct SynthResult {
  LinearCode code;
  std::size_t n = 1;
  std::size_t attempts = 0;
  SynthMethod method = SynthMethod::SumTree;
  std::uint64_t seed = 0;
};

/// Raised when the min-cut condition fails; carries the violating cut.
class CutViolationError : public Error {
 public:
  explicit CutViolationError(CutReport report)
      : Error(Errc::CutViolation, "cut of size " + std::to_string(report.witness.size()) + " separates " +
                                      std::to_string(report.separated.size()) + " sources"),
        report_(std::move(report)) {}

  const CutReport& report() const noexcept { return report_; }

 private:
  CutReport report_;
};

namespace detail {

inline LinearCode code_from_matrices(const ExtField& fld, const Network& net, const CodingMatrices<ExtField>& cm) {
  LinearCode code(fld, cm.b.rows());
  for (std::size_t tau = 0; tau < net.source_count(); ++tau)
    for (EdgeId e : net.out_edges(net.source(tau)))
      if (!fld.is_zero(cm.a(tau, e))) code.a[{tau, e}] = cm.a(tau, e);
  for (EdgeId e = 0; e < net.edge_count(); ++e)
    for (EdgeId next : net.out_edges(net.edge(e).head))
      if (!fld.is_zero(cm.f(e, next))) code.f[{e, next}] = cm.f(e, next);
  for (EdgeId e : net.in_edges(net.receiver()))
    for (std::size_t j = 0; j < cm.b.rows(); ++j)
      if (!fld.is_zero(cm.b(j, e))) code.b[{e, j}] = cm.b(j, e);
  return code;
}

inline Matrix<Felem> embed_matrix(const ExtField& fld, const FqMatrix& m) {
  Matrix<Felem> out(m.rows(), m.cols(), fld.zero());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = fld.embed(m(i, j));
  return out;
}

inline TargetMatrix identity_target(std::uint32_t q, std::size_t s) {
  FqMatrix m(s, s, 0);
  for (std::size_t i = 0; i < s; ++i) m(i, i) = 1;
  return TargetMatrix(q, std::move(m));
}

inline void require_cut(const Network& net, const TargetMatrix& target) {
  auto report = mincut_ratio(net, target);
  if (report.value < Ratio{1, 1}) throw CutViolationError(std::move(report));
}

}  // namespace detail

/// l = 1: every node forwards along its least out-edge; the chosen edges
/// form an in-tree rooted at the receiver that adds up T_i * x_i.
inline SynthResult synthesize_sum(const Network& net, const TargetMatrix& target) {
  if (target.rows() != 1) throw Error(Errc::ShapeMismatch, "sum construction needs a single-row target");
  if (target.cols() != net.source_count()) throw Error(Errc::DimensionMismatch, "target width differs from source count");
  const ExtField fld = ExtField::of_degree(target.q(), 1);
  std::vector<std::optional<EdgeId>> chosen(net.node_count());
  for (NodeId u = 0; u < net.node_count(); ++u) {
    if (u == net.receiver()) continue;
    const auto& out = net.out_edges(u);
    if (!out.empty()) chosen[u] = *std::min_element(out.begin(), out.end());
  }
  auto selected = [&](EdgeId e) { return chosen[net.edge(e).tail] == e; };

  SynthResult res{LinearCode(fld, 1)};
  for (std::size_t tau = 0; tau < net.source_count(); ++tau)
    res.code.a[{tau, *chosen[net.source(tau)]}] = fld.embed(target(0, tau));
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    if (!selected(e)) continue;
    const NodeId head = net.edge(e).head;
    if (head == net.receiver()) res.code.b[{e, 0}] = fld.one();
    else res.code.f[{e, *chosen[head]}] = fld.one();
  }
  res.method = SynthMethod::SumTree;
  return res;
}

/// l = s: routes each message unchanged along edge-disjoint paths and
/// decodes with T.
inline SynthResult synthesize_routing(const Network& net, const TargetMatrix& target) {
  const std::size_t s = net.source_count();
  if (target.rows() != s || target.cols() != s) throw Error(Errc::ShapeMismatch, "routing needs a square target");
  const std::size_t super = net.node_count();
  AugmentingFlow flow(net.node_count() + 1);
  std::vector<std::size_t> arc_of(net.edge_count());
  for (EdgeId e = 0; e < net.edge_count(); ++e) arc_of[e] = flow.add_arc(net.edge(e).tail, net.edge(e).head, 1);
  for (std::size_t tau = 0; tau < s; ++tau) flow.add_arc(super, net.source(tau), 1);
  if (flow.run(super, net.receiver()) < static_cast<std::int64_t>(s))
    throw CutViolationError(mincut_ratio(net, detail::identity_target(target.q(), s)));

  const ExtField fld = ExtField::of_degree(target.q(), 1);
  SynthResult res{LinearCode(fld, s)};
  std::vector<bool> used(net.edge_count(), false);
  auto next_edge = [&](NodeId u) {
    for (EdgeId e : net.out_edges(u))
      if (!used[e] && flow.flow_on(arc_of[e]) == 1) return used[e] = true, e;
    throw Error(Errc::ConstructionMismatch, "flow decomposition stalled");
  };
  for (std::size_t tau = 0; tau < s; ++tau) {
    EdgeId e = next_edge(net.source(tau));
    res.code.a[{tau, e}] = fld.one();
    while (net.edge(e).head != net.receiver()) {
      const EdgeId next = next_edge(net.edge(e).head);
      res.code.f[{e, next}] = fld.one();
      e = next;
    }
    for (std::size_t j = 0; j < s; ++j)
      if (target(j, tau) != 0) res.code.b[{e, j}] = fld.embed(target(j, tau));
  }
  res.method = SynthMethod::Routing;
  return res;
}

/// Internals of one alignment run, kept for inspection.
struct AlignmentTrace {
  Matrix<Felem> transfer;            // s x (s-1) before alignment
  std::vector<Felem> diagonal;       // D_ii
  Matrix<Felem> aligned;             // s x (s-1) after alignment, before Q
  FqMatrix q;
  std::vector<std::uint32_t> u;
};

namespace detail {

inline bool all_deletions_invertible(const ExtField& fld, const Matrix<Felem>& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    if (!is_invertible(fld, delete_row(m, i))) return false;
  return true;
}

/// D_ii = (M_s M_(s)^{-1})_i. Nonzero whenever every M_(i) is invertible.
inline std::vector<Felem> alignment_diagonal(const ExtField& fld, const Matrix<Felem>& m) {
  const std::size_t last = m.rows() - 1;
  const auto top_inv = inverse(fld, delete_row(m, last));
  Matrix<Felem> bottom(1, m.cols(), fld.zero());
  for (std::size_t j = 0; j < m.cols(); ++j) bottom(0, j) = m(last, j);
  return multiply(fld, bottom, top_inv).row(0);
}

inline std::size_t starting_degree(std::uint32_t q, std::size_t s, std::size_t edges) {
  const std::uint64_t want = 2 * s * edges;
  std::size_t n = 1;
  for (std::uint64_t size = q; size < want; size *= q) ++n;
  return n;
}

}  // namespace detail

struct AlignmentOptions {
  std::size_t trials_per_degree = 64;
  std::size_t max_degree = 16;
};

/// l = s - 1 with T ~ (I u), u entrywise nonzero: random coefficients until
/// every M_(i) is invertible, then rescale B and A so the stacked transfer
/// matrix becomes (I; u^t), and absorb Q into the decoder.
inline SynthResult synthesize_units(const Network& net, const TargetMatrix& target, std::uint64_t seed,
                                    const AlignmentOptions& opts = {}, AlignmentTrace* trace = nullptr) {
  const std::size_t s = net.source_count();
  if (target.cols() != s) throw Error(Errc::DimensionMismatch, "target width differs from source count");
  if (target.rows() + 1 != s) throw Error(Errc::ClassMismatch, "alignment needs l = s - 1");
  if (classify(target).kind != TargetClass::AllUnits) throw Error(Errc::ClassMismatch, "target is not in the all-units class");
  detail::require_cut(net, target);
  const auto factor = factor_iu(target);
  const std::size_t l = s - 1;

  std::mt19937_64 rng(seed);
  std::size_t attempts = 0;
  for (std::size_t n = detail::starting_degree(target.q(), s, net.edge_count()); n <= opts.max_degree; ++n) {
    const ExtField fld = ExtField::of_degree(target.q(), n);
    for (std::size_t trial = 0; trial < opts.trials_per_degree; ++trial) {
      ++attempts;
      auto draw = [&](auto...) { return fld.random(rng); };
      auto cm = layout_matrices(fld, net, l, draw, draw, draw);
      const auto m = transfer_rows(fld, cm);
      if (!detail::all_deletions_invertible(fld, m)) continue;

      const auto d = detail::alignment_diagonal(fld, m);
      for (const auto& x : d)
        if (fld.is_zero(x)) throw Error(Errc::ConstructionMismatch, "zero alignment coefficient with invertible minors");
      // Bbar = D^{-1} U (M_(s)^t)^{-1} B
      std::vector<Felem> du(l), ratio(l);
      for (std::size_t i = 0; i < l; ++i) {
        const auto u = fld.embed(factor.u[i]);
        du[i] = fld.mul(fld.inv(d[i]), u);
        ratio[i] = fld.mul(d[i], fld.inv(u));
      }
      const auto top_t_inv = inverse(fld, transpose(delete_row(m, l)));
      cm.b = scale_rows(fld, multiply(fld, top_t_inv, cm.b), du);
      for (std::size_t i = 0; i < l; ++i)
        for (std::size_t e = 0; e < cm.a.cols(); ++e) cm.a(i, e) = fld.mul(ratio[i], cm.a(i, e));
      if (trace) *trace = {m, d, transfer_rows(fld, cm), factor.q, factor.u};
      cm.b = multiply(fld, detail::embed_matrix(fld, factor.q), cm.b);

      SynthResult res{detail::code_from_matrices(fld, net, cm), n, attempts, SynthMethod::Alignment, seed};
      if (!is_solution(net, res.code, target))
        throw Error(Errc::ConstructionMismatch, "aligned code does not realize the target");
      return res;
    }
  }
  throw Error(Errc::RandomBudgetExhausted, std::to_string(attempts) + " trials up to n = " +
                                               std::to_string(opts.max_degree) + " with seed " + std::to_string(seed));
}

enum class SynthStatus { Solved, Unsolvable, SolvableNoConstructor, CutViolation };

inline constexpr const char* to_string(SynthStatus s) {
  switch (s) {
    case SynthStatus::Solved: return "solved";
    case SynthStatus::Unsolvable: return "unsolvable";
    case SynthStatus::SolvableNoConstructor: return "solvable-no-constructor";
    case SynthStatus::CutViolation: return "cut-violation";
  }
  return "?";
}

struct SynthOutcome {
  SynthStatus status;
  std::optional<SynthResult> result;
  std::optional<CutReport> cut;
};

/// Checks the cut condition, then picks a construction by shape and class.
/// Shapes without a construction fall back to the Groebner test.
inline SynthOutcome synthesize(const Network& net, const TargetMatrix& target, std::uint64_t seed = 0,
                               const GroebnerOptions& gb = {}) {
  if (target.cols() != net.source_count()) throw Error(Errc::DimensionMismatch, "target width differs from source count");
  auto cut = mincut_ratio(net, target);
  if (cut.value < Ratio{1, 1}) return {SynthStatus::CutViolation, std::nullopt, std::move(cut)};
  const std::size_t l = target.rows(), s = target.cols();
  std::optional<SynthResult> res;
  if (l == 1) res = synthesize_sum(net, target);
  else if (l == s) res = synthesize_routing(net, target);
  else if (l + 1 == s && classify(target).kind == TargetClass::AllUnits) res = synthesize_units(net, target, seed);
  if (res) {
    res->seed = seed;
    return {SynthStatus::Solved, std::move(res), std::move(cut)};
  }
  const auto verdict = solvable(net, target, gb);
  return {verdict == Verdict::Unsolvable ? SynthStatus::Unsolvable : SynthStatus::SolvableNoConstructor, std::nullopt,
          std::move(cut)};
}

}  // namespace lincomp
