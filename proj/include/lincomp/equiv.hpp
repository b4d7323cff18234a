#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lincomp/code.hpp"
#include "lincomp/error.hpp"
#include "lincomp/ff.hpp"
#include "lincomp/matrix.hpp"

namespace lincomp {

using FqMatrix = Matrix<std::uint32_t>;

/// T = Q (I P) Pi. `pi[j]` is the column of Q (I P) that lands in column j
/// of T.
struct Equivalence {
  FqMatrix q;
  std::vector<std::size_t> pi;
  FqMatrix p;

  std::size_t l() const { return q.rows(); }
  std::size_t s() const { return pi.size(); }

  /// (I P) as an l x s matrix.
  FqMatrix standard_form() const {
    FqMatrix out(l(), s(), 0);
    for (std::size_t i = 0; i < l(); ++i) {
      out(i, i) = 1;
      for (std::size_t k = 0; k < p.cols(); ++k) out(i, l() + k) = p(i, k);
    }
    return out;
  }

  FqMatrix reconstruct(const PrimeField& f) const {
    const auto qi = multiply(f, q, standard_form());
    FqMatrix out(l(), s(), 0);
    for (std::size_t j = 0; j < s(); ++j)
      for (std::size_t i = 0; i < l(); ++i) out(i, j) = qi(i, pi[j]);
    return out;
  }

  bool p_has_zero() const {
    for (std::size_t i = 0; i < p.rows(); ++i)
      for (std::size_t k = 0; k < p.cols(); ++k)
        if (p(i, k) == 0) return true;
    return false;
  }
};

enum class TargetClass { IdentityLike, SumLike, AllUnits, HasZero };

inline constexpr const char* to_string(TargetClass c) {
  switch (c) {
    case TargetClass::IdentityLike: return "IdentityLike";
    case TargetClass::SumLike: return "SumLike";
    case TargetClass::AllUnits: return "AllUnits";
    case TargetClass::HasZero: return "HasZero";
  }
  return "?";
}

struct Classification {
  TargetClass kind;
  Equivalence witness;
};

namespace detail {

// Advances `idx` to the next k-subset of {0..n-1} in lexicographic order.
inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

// Equivalence whose identity block comes from `chosen`, or nullopt when
// those columns are singular.
inline std::optional<Equivalence> form_for_subset(const TargetMatrix& t, const std::vector<std::size_t>& chosen) {
  const auto& f = t.field();
  const auto block = select_columns(t.matrix(), chosen);
  auto block_inv = try_inverse(f, block);
  if (!block_inv) return std::nullopt;
  std::vector<std::size_t> rest;
  for (std::size_t j = 0, c = 0; j < t.cols(); ++j) {
    if (c < chosen.size() && chosen[c] == j) ++c;
    else rest.push_back(j);
  }
  Equivalence eq{block, std::vector<std::size_t>(t.cols()), multiply(f, *block_inv, select_columns(t.matrix(), rest))};
  for (std::size_t k = 0; k < chosen.size(); ++k) eq.pi[chosen[k]] = k;
  for (std::size_t k = 0; k < rest.size(); ++k) eq.pi[rest[k]] = chosen.size() + k;
  return eq;
}

template <typename Visit>
void for_each_identity_block(const TargetMatrix& t, Visit&& visit) {
  std::vector<std::size_t> idx(t.rows());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  do {
    if (auto eq = form_for_subset(t, idx))
      if (!visit(*eq)) return;
  } while (next_combination(idx, t.cols()));
}

}  // namespace detail

/// (I P) form from the lexicographically first invertible column subset.
inline Equivalence canonicalize(const TargetMatrix& t) {
  std::optional<Equivalence> found;
  detail::for_each_identity_block(t, [&](const Equivalence& eq) {
    found = eq;
    return false;
  });
  if (!found) throw Error(Errc::RankDeficient, "no invertible column subset");
  return *found;
}

/// Enumerates all invertible column subsets; reports AllUnits when some
/// subset gives an entrywise-nonzero P.
inline Classification classify(const TargetMatrix& t) {
  const std::size_t l = t.rows(), s = t.cols();
  if (l == s) return {TargetClass::IdentityLike, canonicalize(t)};
  if (l == 1) return {TargetClass::SumLike, canonicalize(t)};
  std::optional<Equivalence> units, zero;
  detail::for_each_identity_block(t, [&](const Equivalence& eq) {
    if (eq.p_has_zero()) {
      if (!zero) zero = eq;
      return true;
    }
    units = eq;
    return false;
  });
  if (units) return {TargetClass::AllUnits, *units};
  if (!zero) throw Error(Errc::RankDeficient, "no invertible column subset");
  return {TargetClass::HasZero, *zero};
}

/// Over F_2 with 1 < l < s: an equivalence whose P contains a zero. When
/// the canonical P is all ones, left-multiplies by I-with-last-column-ones
/// and swaps columns l and l+1.
inline Equivalence binary_zero_transform(const TargetMatrix& t) {
  if (t.q() != 2) throw Error(Errc::NotBinary, "target is over F_" + std::to_string(t.q()));
  const std::size_t l = t.rows(), s = t.cols();
  if (l <= 1 || l >= s) throw Error(Errc::ShapeMismatch, "requires 1 < l < s");
  auto canon = canonicalize(t);
  if (canon.p_has_zero()) return canon;
  if (s - l == 1) throw Error(Errc::AllOnesColumnVector, "target is equivalent to (I 1) with a single column");

  const auto& f = t.field();
  FqMatrix shift = identity(f, l);
  for (std::size_t i = 0; i < l; ++i) shift(i, l - 1) = 1;
  // shift * (I Pbar) * swap = (I P)
  const auto moved = multiply(f, shift, canon.standard_form());
  FqMatrix swapped = moved;
  for (std::size_t i = 0; i < l; ++i) std::swap(swapped(i, l - 1), swapped(i, l));
  Equivalence out;
  out.p = FqMatrix(l, s - l, 0);
  for (std::size_t i = 0; i < l; ++i)
    for (std::size_t k = 0; k < s - l; ++k) out.p(i, k) = swapped(i, l + k);
  // T = Qc (I Pbar) Pic = Qc shift^{-1} (I P) swap Pic
  out.q = multiply(f, canon.q, inverse(f, shift));
  out.pi.resize(s);
  for (std::size_t j = 0; j < s; ++j) {
    const std::size_t c = canon.pi[j];
    out.pi[j] = c == l - 1 ? l : c == l ? l - 1 : c;
  }
  return out;
}

struct UnitFactorization {
  FqMatrix q;                      // (s-1) x (s-1), invertible
  std::vector<std::uint32_t> u;    // length s-1, all nonzero
};

/// T = Q (I u') with Q the first s-1 columns of T, for l = s-1 targets in
/// the AllUnits class.
inline UnitFactorization factor_iu(const TargetMatrix& t) {
  const std::size_t l = t.rows(), s = t.cols();
  if (l + 1 != s) throw Error(Errc::ShapeMismatch, "factor_iu requires l = s - 1");
  if (classify(t).kind != TargetClass::AllUnits) throw Error(Errc::NotInClass, "target is not equivalent to (I u) with units");
  const auto& f = t.field();
  std::vector<std::size_t> first(l);
  for (std::size_t i = 0; i < l; ++i) first[i] = i;
  UnitFactorization out{select_columns(t.matrix(), first), {}};
  auto qinv = try_inverse(f, out.q);
  if (!qinv) throw Error(Errc::NotInClass, "leading block is singular");
  const auto u = multiply(f, *qinv, select_columns(t.matrix(), {s - 1}));
  for (std::size_t i = 0; i < l; ++i) {
    if (u(i, 0) == 0) throw Error(Errc::NotInClass, "factor has a zero entry");
    out.u.push_back(u(i, 0));
  }
  return out;
}

}  // namespace lincomp
