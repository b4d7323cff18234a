#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lincomp/code.hpp"
#include "lincomp/error.hpp"
#include "lincomp/ff.hpp"
#include "lincomp/matrix.hpp"
#include "lincomp/netmodel.hpp"

namespace lincomp {

enum class MonomialOrder { Grevlex, Lex };

using Monomial = std::vector<std::uint16_t>;

struct Term {
  Monomial mono;
  std::uint32_t coeff;

  bool operator==(const Term&) const = default;
};

/// Polynomial over F_q with terms strictly descending in its ring's order
/// and no zero coefficients.
struct MvPoly {
  std::vector<Term> terms;

  bool is_zero() const noexcept { return terms.empty(); }
  const Term& lead() const { return terms.front(); }
  bool operator==(const MvPoly&) const = default;
};

inline bool divides(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

inline Monomial quotient(const Monomial& a, const Monomial& b) {
  Monomial out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<std::uint16_t>(a[i] - b[i]);
  return out;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

inline unsigned degree(const Monomial& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

/// F_q[x_0, ..., x_{k-1}] with a fixed monomial order.
class PolyRing {
 public:
  using value_type = MvPoly;

  PolyRing(std::uint32_t q, std::size_t nvars, MonomialOrder order = MonomialOrder::Grevlex)
      : field_(q), nvars_(nvars), order_(order) {}

  std::uint32_t q() const noexcept { return field_.q(); }
  const PrimeField& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  MonomialOrder order() const noexcept { return order_; }
  PolyRing with_order(MonomialOrder order) const { return PolyRing(q(), nvars_, order); }

  std::strong_ordering compare(const Monomial& a, const Monomial& b) const {
    if (order_ == MonomialOrder::Grevlex) {
      const auto da = degree(a), db = degree(b);
      if (da != db) return da <=> db;
      for (std::size_t i = nvars_; i-- > 0;)
        if (a[i] != b[i]) return b[i] <=> a[i];
      return std::strong_ordering::equal;
    }
    for (std::size_t i = 0; i < nvars_; ++i)
      if (a[i] != b[i]) return a[i] <=> b[i];
    return std::strong_ordering::equal;
  }

  MvPoly zero() const { return {}; }
  MvPoly constant(std::uint32_t c) const {
    c %= q();
    if (!c) return {};
    return MvPoly{{Term{Monomial(nvars_, 0), c}}};
  }
  MvPoly one() const { return constant(1); }
  MvPoly variable(std::size_t i) const {
    Monomial m(nvars_, 0);
    m.at(i) = 1;
    return MvPoly{{Term{std::move(m), 1}}};
  }
  bool is_zero(const MvPoly& p) const noexcept { return p.is_zero(); }
  bool is_constant(const MvPoly& p) const { return p.terms.size() == 1 && degree(p.lead().mono) == 0; }

  /// Sorts descending and merges like terms.
  MvPoly normalize(std::vector<Term> terms) const {
    std::sort(terms.begin(), terms.end(), [this](const Term& x, const Term& y) { return compare(x.mono, y.mono) > 0; });
    MvPoly out;
    for (auto& t : terms) {
      if (!out.terms.empty() && out.terms.back().mono == t.mono) {
        out.terms.back().coeff = field_.add(out.terms.back().coeff, t.coeff);
        if (!out.terms.back().coeff) out.terms.pop_back();
      } else if (t.coeff % q()) {
        out.terms.push_back({std::move(t.mono), t.coeff % q()});
      }
    }
    return out;
  }

  MvPoly add(const MvPoly& a, const MvPoly& b) const { return combine(a, b, 1); }
  MvPoly sub(const MvPoly& a, const MvPoly& b) const { return combine(a, b, q() - 1); }
  MvPoly neg(const MvPoly& a) const { return scale(a, q() - 1); }

  MvPoly scale(const MvPoly& a, std::uint32_t c) const {
    c %= q();
    if (!c) return {};
    MvPoly out = a;
    for (auto& t : out.terms) t.coeff = field_.mul(t.coeff, c);
    return out;
  }

  /// c * m * a
  MvPoly mul_term(const MvPoly& a, const Monomial& m, std::uint32_t c) const {
    c %= q();
    if (!c) return {};
    MvPoly out;
    out.terms.reserve(a.terms.size());
    for (const auto& t : a.terms) {
      Monomial mono(nvars_);
      for (std::size_t i = 0; i < nvars_; ++i) mono[i] = static_cast<std::uint16_t>(t.mono[i] + m[i]);
      out.terms.push_back({std::move(mono), field_.mul(t.coeff, c)});
    }
    return out;  // monomial multiplication preserves the order
  }

  MvPoly mul(const MvPoly& a, const MvPoly& b) const {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Term> terms;
    terms.reserve(a.terms.size() * b.terms.size());
    for (const auto& x : a.terms)
      for (const auto& y : b.terms) {
        Monomial mono(nvars_);
        for (std::size_t i = 0; i < nvars_; ++i) mono[i] = static_cast<std::uint16_t>(x.mono[i] + y.mono[i]);
        terms.push_back({std::move(mono), field_.mul(x.coeff, y.coeff)});
      }
    return normalize(std::move(terms));
  }

  MvPoly make_monic(const MvPoly& a) const {
    if (a.is_zero()) return a;
    return scale(a, field_.inv(a.lead().coeff));
  }

  /// Re-sorts a polynomial produced under another order of the same arity.
  MvPoly adopt(const MvPoly& p) const { return normalize(p.terms); }

 private:
  MvPoly combine(const MvPoly& a, const MvPoly& b, std::uint32_t factor) const {
    MvPoly out;
    out.terms.reserve(a.terms.size() + b.terms.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms.size() || j < b.terms.size()) {
      std::strong_ordering cmp = std::strong_ordering::equal;
      if (i == a.terms.size()) cmp = std::strong_ordering::less;
      else if (j == b.terms.size()) cmp = std::strong_ordering::greater;
      else cmp = compare(a.terms[i].mono, b.terms[j].mono);
      if (cmp > 0) {
        out.terms.push_back(a.terms[i++]);
      } else if (cmp < 0) {
        out.terms.push_back({b.terms[j].mono, field_.mul(b.terms[j].coeff, factor)});
        ++j;
      } else {
        const auto c = field_.add(a.terms[i].coeff, field_.mul(b.terms[j].coeff, factor));
        if (c) out.terms.push_back({a.terms[i].mono, c});
        ++i, ++j;
      }
    }
    return out;
  }

  PrimeField field_;
  std::size_t nvars_;
  MonomialOrder order_;
};

// ---- Groebner bases -----------------------------------------------------

struct GroebnerOptions {
  MonomialOrder order = MonomialOrder::Grevlex;
  std::uint64_t max_reductions = 1'000'000;
  bool track_cofactors = false;
};

/// Reduced Groebner basis, sorted by ascending leading monomial. When
/// cofactors are tracked, basis[k] == sum_i cofactors[k][i] * generators[i].
struct GroebnerBasis {
  PolyRing ring;
  std::vector<MvPoly> basis;
  std::vector<std::vector<MvPoly>> cofactors;
  std::uint64_t reductions = 0;

  bool is_unit() const { return basis.size() == 1 && ring.is_constant(basis[0]); }
};

namespace detail {

struct Tracked {
  MvPoly poly;
  std::vector<MvPoly> cof;
};

class GroebnerRun {
 public:
  GroebnerRun(const PolyRing& ring, const GroebnerOptions& opts, std::size_t ngens)
      : ring_(ring), opts_(opts), ngens_(ngens) {}

  Tracked unit_vector(const MvPoly& p, std::size_t i) const {
    Tracked t{p, {}};
    if (opts_.track_cofactors) {
      t.cof.assign(ngens_, ring_.zero());
      t.cof[i] = ring_.one();
    }
    return t;
  }

  // h - c * m * g, with cofactors carried along.
  void subtract_multiple(Tracked& h, const Tracked& g, const Monomial& m, std::uint32_t c) const {
    h.poly = ring_.sub(h.poly, ring_.mul_term(g.poly, m, c));
    if (opts_.track_cofactors)
      for (std::size_t i = 0; i < ngens_; ++i) h.cof[i] = ring_.sub(h.cof[i], ring_.mul_term(g.cof[i], m, c));
  }

  void scale(Tracked& h, std::uint32_t c) const {
    h.poly = ring_.scale(h.poly, c);
    for (auto& x : h.cof) x = ring_.scale(x, c);
  }

  /// Full reduction of h modulo `divisors` (every term, not just the lead).
  Tracked reduce(Tracked h, const std::vector<Tracked>& divisors, std::optional<std::size_t> skip = {}) const {
    const auto& fld = ring_.field();
    Tracked remainder{ring_.zero(), {}};
    if (opts_.track_cofactors) remainder.cof = h.cof;
    std::vector<Term> rem_terms;
    while (!h.poly.is_zero()) {
      const Term lt = h.poly.lead();
      bool divided = false;
      for (std::size_t k = 0; k < divisors.size(); ++k) {
        if (skip && *skip == k) continue;
        const auto& g = divisors[k];
        if (g.poly.is_zero() || !divides(g.poly.lead().mono, lt.mono)) continue;
        const auto c = fld.mul(lt.coeff, fld.inv(g.poly.lead().coeff));
        subtract_multiple(h, g, quotient(lt.mono, g.poly.lead().mono), c);
        divided = true;
        break;
      }
      if (!divided) {
        rem_terms.push_back(lt);
        h.poly.terms.erase(h.poly.terms.begin());
      }
    }
    remainder.poly.terms = std::move(rem_terms);
    if (opts_.track_cofactors) remainder.cof = std::move(h.cof);
    return remainder;
  }

  Tracked spoly(const Tracked& f, const Tracked& g) const {
    const auto& fld = ring_.field();
    const auto l = lcm(f.poly.lead().mono, g.poly.lead().mono);
    Tracked out{ring_.zero(), {}};
    if (opts_.track_cofactors) out.cof.assign(ngens_, ring_.zero());
    subtract_multiple(out, f, quotient(l, f.poly.lead().mono), fld.neg(fld.inv(f.poly.lead().coeff)));
    subtract_multiple(out, g, quotient(l, g.poly.lead().mono), fld.inv(g.poly.lead().coeff));
    return out;
  }

  const PolyRing& ring() const { return ring_; }

 private:
  const PolyRing& ring_;
  const GroebnerOptions& opts_;
  std::size_t ngens_;
};

}  // namespace detail

/// Buchberger's algorithm with the coprime-leading-monomial criterion,
/// followed by minimalization and interreduction.
inline GroebnerBasis buchberger(const PolyRing& base_ring, const std::vector<MvPoly>& gens,
                                const GroebnerOptions& opts = {}) {
  const PolyRing ring = base_ring.with_order(opts.order);
  detail::GroebnerRun run(ring, opts, gens.size());
  GroebnerBasis result{ring, {}, {}, 0};

  std::vector<detail::Tracked> basis;
  auto finish_unit = [&](detail::Tracked t) {
    run.scale(t, ring.field().inv(t.poly.lead().coeff));
    result.basis = {t.poly};
    if (opts.track_cofactors) result.cofactors = {t.cof};
    return result;
  };

  for (std::size_t i = 0; i < gens.size(); ++i) {
    auto p = ring.adopt(gens[i]);
    if (p.is_zero()) continue;
    if (ring.is_constant(p)) return finish_unit(run.unit_vector(p, i));
    basis.push_back(run.unit_vector(p, i));
  }
  if (basis.empty()) return result;

  struct Pair {
    std::size_t i, j;
    Monomial lcm;
  };
  std::vector<Pair> pairs;
  auto add_pairs_for = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      const auto& a = basis[i].poly.lead().mono;
      const auto& b = basis[j].poly.lead().mono;
      if (coprime(a, b)) continue;
      pairs.push_back({i, j, lcm(a, b)});
    }
  };
  for (std::size_t j = 0; j < basis.size(); ++j) add_pairs_for(j);

  while (!pairs.empty()) {
    // normal selection strategy: smallest lcm first, ties by insertion
    auto it = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& x, const Pair& y) {
      return ring.compare(x.lcm, y.lcm) < 0;
    });
    const Pair pr = *it;
    pairs.erase(it);
    if (++result.reductions > opts.max_reductions)
      throw Error(Errc::Aborted, "Buchberger exceeded " + std::to_string(opts.max_reductions) + " pair reductions");
    auto r = run.reduce(run.spoly(basis[pr.i], basis[pr.j]), basis);
    if (r.poly.is_zero()) continue;
    if (ring.is_constant(r.poly)) return finish_unit(std::move(r));
    basis.push_back(std::move(r));
    add_pairs_for(basis.size() - 1);
  }

  // Minimal basis: drop elements whose leading monomial is divisible by
  // another kept leading monomial.
  std::sort(basis.begin(), basis.end(), [&](const detail::Tracked& x, const detail::Tracked& y) {
    return ring.compare(x.poly.lead().mono, y.poly.lead().mono) < 0;
  });
  std::vector<detail::Tracked> minimal;
  for (auto& g : basis) {
    const bool redundant = std::any_of(minimal.begin(), minimal.end(), [&](const detail::Tracked& m) {
      return divides(m.poly.lead().mono, g.poly.lead().mono);
    });
    if (!redundant) minimal.push_back(std::move(g));
  }
  // Interreduce against the other minimal elements, then normalize to monic.
  std::vector<detail::Tracked> reduced;
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    auto r = run.reduce(minimal[k], minimal, k);
    run.scale(r, ring.field().inv(r.poly.lead().coeff));
    reduced.push_back(std::move(r));
  }
  for (auto& r : reduced) {
    result.basis.push_back(std::move(r.poly));
    if (opts.track_cofactors) result.cofactors.push_back(std::move(r.cof));
  }
  return result;
}

// ---- the ideal J --------------------------------------------------------

enum class CoeffKind { A, F, B };

/// Symbolic code coefficient:
///   A: (source index, edge), F: (edge in, edge out), B: (edge, output row).
struct Indeterminate {
  CoeffKind kind;
  std::size_t first;
  std::size_t second;

  auto operator<=>(const Indeterminate&) const = default;

  std::string to_string() const {
    const char* k = kind == CoeffKind::A ? "A" : kind == CoeffKind::F ? "F" : "B";
    return "x[" + std::string(k) + "," + std::to_string(first) + "," + std::to_string(second) + "]";
  }

  static Indeterminate parse(const std::string& text) {
    Indeterminate v{CoeffKind::A, 0, 0};
    char kind = 0;
    std::size_t a = 0, b = 0;
    std::istringstream in(text);
    char x, lb, c1, c2, rb;
    if (!(in >> x >> lb >> kind >> c1 >> a >> c2 >> b >> rb) || x != 'x' || lb != '[' || c1 != ',' || c2 != ',' ||
        rb != ']' || (kind != 'A' && kind != 'F' && kind != 'B'))
      throw Error(Errc::UnknownIndeterminate, "cannot parse indeterminate '" + text + "'");
    v.kind = kind == 'A' ? CoeffKind::A : kind == 'F' ? CoeffKind::F : CoeffKind::B;
    v.first = a;
    v.second = b;
    return v;
  }
};

/// Generators of J: entries of (T_tau)^t - M_tau, tau-major.
struct IdealJ {
  PolyRing ring;
  std::vector<Indeterminate> vars;
  std::vector<MvPoly> generators;
  std::vector<std::pair<Indeterminate, std::uint32_t>> pinned;

  std::optional<std::size_t> var_index(const Indeterminate& v) const {
    auto it = std::find(vars.begin(), vars.end(), v);
    if (it == vars.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vars.begin());
  }
};

/// All admissible code coefficients of `net` for l output rows, in the
/// fixed order A (by source, edge), F (by edge pair), B (by edge, row).
inline std::vector<Indeterminate> code_indeterminates(const Network& net, std::size_t l) {
  std::vector<Indeterminate> vars;
  for (std::size_t tau = 0; tau < net.source_count(); ++tau)
    for (EdgeId e : net.out_edges(net.source(tau))) vars.push_back({CoeffKind::A, tau, e});
  for (EdgeId e = 0; e < net.edge_count(); ++e)
    for (EdgeId next : net.out_edges(net.edge(e).head)) vars.push_back({CoeffKind::F, e, next});
  for (EdgeId e : net.in_edges(net.receiver()))
    for (std::size_t j = 0; j < l; ++j) vars.push_back({CoeffKind::B, e, j});
  return vars;
}

inline IdealJ symbolic_transfer(const Network& net, const TargetMatrix& target) {
  if (target.cols() != net.source_count())
    throw Error(Errc::DimensionMismatch, "target columns do not match the source count");
  const std::size_t l = target.rows();
  IdealJ ideal{PolyRing(target.q(), 0), code_indeterminates(net, l), {}, {}};
  ideal.ring = PolyRing(target.q(), ideal.vars.size());
  const auto& ring = ideal.ring;
  auto var = [&](CoeffKind kind, std::size_t a, std::size_t b) {
    return ring.variable(*ideal.var_index({kind, a, b}));
  };
  const auto cm = layout_matrices(
      ring, net, l, [&](std::size_t tau, EdgeId e) { return var(CoeffKind::A, tau, e); },
      [&](EdgeId in, EdgeId out) { return var(CoeffKind::F, in, out); },
      [&](EdgeId e, std::size_t j) { return var(CoeffKind::B, e, j); });
  const auto m = transfer_rows(ring, cm);
  for (std::size_t tau = 0; tau < net.source_count(); ++tau)
    for (std::size_t j = 0; j < l; ++j) ideal.generators.push_back(ring.sub(ring.constant(target(j, tau)), m(tau, j)));
  return ideal;
}

/// Substitutes constants for some indeterminates and drops them from the ring.
inline IdealJ pin(const IdealJ& ideal, const std::map<Indeterminate, std::uint32_t>& assignments) {
  std::vector<std::optional<std::uint32_t>> value(ideal.vars.size());
  for (const auto& [v, c] : assignments) {
    auto idx = ideal.var_index(v);
    if (!idx) throw Error(Errc::UnknownIndeterminate, v.to_string() + " is not a variable of this ideal");
    value[*idx] = c % ideal.ring.q();
  }
  IdealJ out{ideal.ring, {}, {}, ideal.pinned};
  std::vector<std::size_t> renumber(ideal.vars.size(), 0);
  for (std::size_t i = 0; i < ideal.vars.size(); ++i) {
    if (value[i]) {
      out.pinned.emplace_back(ideal.vars[i], *value[i]);
      continue;
    }
    renumber[i] = out.vars.size();
    out.vars.push_back(ideal.vars[i]);
  }
  out.ring = PolyRing(ideal.ring.q(), out.vars.size(), ideal.ring.order());
  const auto& fld = ideal.ring.field();
  for (const auto& g : ideal.generators) {
    std::vector<Term> terms;
    for (const auto& t : g.terms) {
      Monomial mono(out.vars.size(), 0);
      std::uint32_t c = t.coeff;
      for (std::size_t i = 0; i < ideal.vars.size(); ++i) {
        if (value[i]) c = fld.mul(c, fld.pow(*value[i], t.mono[i]));
        else mono[renumber[i]] = t.mono[i];
      }
      terms.push_back({std::move(mono), c});
    }
    out.generators.push_back(out.ring.normalize(std::move(terms)));
  }
  return out;
}

enum class Verdict { Solvable, Unsolvable };

inline constexpr const char* to_string(Verdict v) { return v == Verdict::Solvable ? "solvable" : "unsolvable"; }

inline GroebnerBasis groebner(const IdealJ& ideal, const GroebnerOptions& opts = {}) {
  return buchberger(ideal.ring, ideal.generators, opts);
}

/// Unsolvable iff 1 lies in J (reduced basis {1}).
inline Verdict solvable(const IdealJ& ideal, const GroebnerOptions& opts = {}) {
  return groebner(ideal, opts).is_unit() ? Verdict::Unsolvable : Verdict::Solvable;
}

inline Verdict solvable(const Network& net, const TargetMatrix& target, const GroebnerOptions& opts = {}) {
  return solvable(symbolic_transfer(net, target), opts);
}

/// Value of each generator at the coefficients of a concrete code.
inline std::vector<Felem> evaluate(const IdealJ& ideal, const LinearCode& code) {
  const auto& fld = code.field;
  if (fld.q() != ideal.ring.q()) throw Error(Errc::FieldMismatch, "code and ideal use different base fields");
  std::vector<Felem> point;
  for (const auto& v : ideal.vars) {
    Felem x = fld.zero();
    auto find_in = [&](const auto& map) {
      if (auto it = map.find({v.first, v.second}); it != map.end()) x = it->second;
    };
    if (v.kind == CoeffKind::A) find_in(code.a);
    else if (v.kind == CoeffKind::F) find_in(code.f);
    else find_in(code.b);
    point.push_back(std::move(x));
  }
  std::vector<Felem> out;
  for (const auto& g : ideal.generators) {
    Felem acc = fld.zero();
    for (const auto& t : g.terms) {
      Felem prod = fld.embed(t.coeff);
      for (std::size_t i = 0; i < point.size(); ++i)
        if (t.mono[i]) prod = fld.mul(prod, fld.pow(point[i], t.mono[i]));
      acc = fld.add(acc, prod);
    }
    out.push_back(std::move(acc));
  }
  return out;
}

/// Canonical text: "c*x[A,2,3]^1*x[F,0,2]^2 + ..." in descending term order.
inline std::string to_text(const MvPoly& p, const std::vector<Indeterminate>& vars) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& t : p.terms) {
    if (!out.empty()) out += " + ";
    out += std::to_string(t.coeff);
    for (std::size_t i = 0; i < t.mono.size(); ++i)
      if (t.mono[i]) out += "*" + vars[i].to_string() + "^" + std::to_string(t.mono[i]);
  }
  return out;
}

}  // namespace lincomp
