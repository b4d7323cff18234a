#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "lincomp/error.hpp"
#include "lincomp/ff.hpp"
#include "lincomp/matrix.hpp"
#include "lincomp/netmodel.hpp"

namespace lincomp {

/// l x s demand matrix over F_q: full row rank, no zero column, 1 <= l <= s.
class TargetMatrix {
 public:
  TargetMatrix(std::uint32_t q, Matrix<std::uint32_t> entries) : field_(q), m_(std::move(entries)) {
    if (m_.rows() == 0 || m_.cols() == 0) throw Error(Errc::ShapeMismatch, "empty target matrix");
    if (m_.rows() > m_.cols()) throw Error(Errc::ShapeMismatch, "target has more rows than columns");
    for (std::size_t i = 0; i < m_.rows(); ++i)
      for (std::size_t j = 0; j < m_.cols(); ++j)
        if (!field_.contains(m_(i, j))) throw Error(Errc::FieldMismatch, "target entry outside F_q");
    for (std::size_t j = 0; j < m_.cols(); ++j) {
      bool nonzero = false;
      for (std::size_t i = 0; i < m_.rows(); ++i) nonzero = nonzero || m_(i, j) != 0;
      if (!nonzero) throw Error(Errc::ZeroColumn, "column " + std::to_string(j) + " is zero");
    }
    if (lincomp::rank(field_, m_) != m_.rows()) throw Error(Errc::RankDeficient, "target is not full row rank");
  }

  static TargetMatrix from_rows(std::uint32_t q, const std::vector<std::vector<std::uint32_t>>& rows) {
    if (rows.empty()) throw Error(Errc::ShapeMismatch, "empty target matrix");
    Matrix<std::uint32_t> m(rows.size(), rows[0].size(), 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != m.cols()) throw Error(Errc::ShapeMismatch, "ragged target matrix");
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return TargetMatrix(q, std::move(m));
  }

  std::uint32_t q() const noexcept { return field_.q(); }
  const PrimeField& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return m_.rows(); }
  std::size_t cols() const noexcept { return m_.cols(); }
  std::uint32_t operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
  const Matrix<std::uint32_t>& matrix() const noexcept { return m_; }

  /// Rank of the column submatrix indexed by `cols`.
  std::size_t rank_of(const std::vector<std::size_t>& cols) const {
    return lincomp::rank(field_, select_columns(m_, cols));
  }

  bool operator==(const TargetMatrix& o) const { return q() == o.q() && m_ == o.m_; }

 private:
  PrimeField field_;
  Matrix<std::uint32_t> m_;
};

/// Scalar linear code over F_{q^n}. Absent coefficients are zero.
///   a: (source index, edge out of that source)   -> injection coefficient
///   f: (edge into u, edge out of u)              -> forwarding coefficient
///   b: (edge into the receiver, output row)      -> decoding coefficient
struct LinearCode {
  ExtField field;
  std::size_t outputs = 1;
  std::map<std::pair<std::size_t, EdgeId>, Felem> a;
  std::map<std::pair<EdgeId, EdgeId>, Felem> f;
  std::map<std::pair<EdgeId, std::size_t>, Felem> b;

  explicit LinearCode(ExtField fld, std::size_t l = 1) : field(std::move(fld)), outputs(l) {}

  bool operator==(const LinearCode&) const = default;
};

template <typename Ring>
struct CodingMatrices {
  MatrixOf<Ring> a;  // s x |E|, row tau is A_tau
  MatrixOf<Ring> f;  // |E| x |E|, strictly upper triangular
  MatrixOf<Ring> b;  // l x |E|
};

/// Lays out A, F, B with entries supplied per admissible slot. Slots that
/// the topology does not admit stay zero.
template <typename Ring, typename AFn, typename FFn, typename BFn>
CodingMatrices<Ring> layout_matrices(const Ring& ring, const Network& net, std::size_t l, AFn&& a_entry,
                                     FFn&& f_entry, BFn&& b_entry) {
  const std::size_t m = net.edge_count();
  CodingMatrices<Ring> out{zeros(ring, net.source_count(), m), zeros(ring, m, m), zeros(ring, l, m)};
  for (std::size_t tau = 0; tau < net.source_count(); ++tau)
    for (EdgeId e : net.out_edges(net.source(tau))) out.a(tau, e) = a_entry(tau, e);
  for (EdgeId e = 0; e < m; ++e)
    for (EdgeId next : net.out_edges(net.edge(e).head)) out.f(e, next) = f_entry(e, next);
  for (EdgeId e : net.in_edges(net.receiver()))
    for (std::size_t j = 0; j < l; ++j) out.b(j, e) = b_entry(e, j);
  return out;
}

/// Rows M_tau = A_tau (I - F)^{-1} B^t stacked into an s x l matrix.
template <typename Ring>
MatrixOf<Ring> transfer_rows(const Ring& ring, const CodingMatrices<Ring>& cm) {
  auto resolvent = nilpotent_resolvent(ring, cm.f);
  return multiply(ring, multiply(ring, cm.a, resolvent), transpose(cm.b));
}

inline void check_code(const Network& net, const LinearCode& code) {
  for (const auto& [key, v] : code.a) {
    const auto [tau, e] = key;
    if (tau >= net.source_count() || e >= net.edge_count() || net.edge(e).tail != net.source(tau))
      throw Error(Errc::InconsistentCode, "a-coefficient on (" + std::to_string(tau) + "," + std::to_string(e) + ")");
    if (!code.field.contains(v)) throw Error(Errc::FieldMismatch, "a-coefficient outside the code field");
  }
  for (const auto& [key, v] : code.f) {
    const auto [in, out] = key;
    if (in >= net.edge_count() || out >= net.edge_count() || net.edge(in).head != net.edge(out).tail)
      throw Error(Errc::InconsistentCode, "f-coefficient on (" + std::to_string(in) + "," + std::to_string(out) + ")");
    if (!code.field.contains(v)) throw Error(Errc::FieldMismatch, "f-coefficient outside the code field");
  }
  for (const auto& [key, v] : code.b) {
    const auto [e, j] = key;
    if (e >= net.edge_count() || net.edge(e).head != net.receiver() || j >= code.outputs)
      throw Error(Errc::InconsistentCode, "b-coefficient on (" + std::to_string(e) + "," + std::to_string(j) + ")");
    if (!code.field.contains(v)) throw Error(Errc::FieldMismatch, "b-coefficient outside the code field");
  }
}

inline CodingMatrices<ExtField> assemble_matrices(const Network& net, const LinearCode& code) {
  check_code(net, code);
  const auto& fld = code.field;
  auto lookup = [&fld](const auto& map, auto key) {
    auto it = map.find(key);
    return it == map.end() ? fld.zero() : it->second;
  };
  return layout_matrices(
      fld, net, code.outputs, [&](std::size_t tau, EdgeId e) { return lookup(code.a, std::pair{tau, e}); },
      [&](EdgeId in, EdgeId out) { return lookup(code.f, std::pair{in, out}); },
      [&](EdgeId e, std::size_t j) { return lookup(code.b, std::pair{e, j}); });
}

/// s x l matrix whose row tau is M_tau.
inline Matrix<Felem> transfer_matrix(const Network& net, const LinearCode& code) {
  return transfer_rows(code.field, assemble_matrices(net, code));
}

/// Pushes one message per source through the code in canonical edge order.
inline std::vector<Felem> simulate(const Network& net, const LinearCode& code, const std::vector<Felem>& messages) {
  if (messages.size() != net.source_count())
    throw Error(Errc::ArityMismatch, "expected " + std::to_string(net.source_count()) + " messages");
  check_code(net, code);
  const auto& fld = code.field;
  std::vector<Felem> z(net.edge_count(), fld.zero());
  for (EdgeId e = 0; e < net.edge_count(); ++e) {
    const NodeId u = net.edge(e).tail;
    Felem value = fld.zero();
    if (auto tau = net.source_index(u)) {
      if (auto it = code.a.find({*tau, e}); it != code.a.end())
        value = fld.add(value, fld.mul(it->second, messages[*tau]));
    }
    for (EdgeId in : net.in_edges(u)) {
      if (auto it = code.f.find({in, e}); it != code.f.end()) value = fld.add(value, fld.mul(it->second, z[in]));
    }
    z[e] = std::move(value);
  }
  std::vector<Felem> out(code.outputs, fld.zero());
  for (std::size_t j = 0; j < code.outputs; ++j)
    for (EdgeId e : net.in_edges(net.receiver()))
      if (auto it = code.b.find({e, j}); it != code.b.end()) out[j] = fld.add(out[j], fld.mul(it->second, z[e]));
  return out;
}

inline bool is_solution(const Network& net, const LinearCode& code, const TargetMatrix& target) {
  if (target.q() != code.field.q()) throw Error(Errc::FieldMismatch, "target and code use different base fields");
  if (target.cols() != net.source_count() || target.rows() != code.outputs)
    throw Error(Errc::DimensionMismatch, "target shape does not match network and code");
  const auto m = transfer_matrix(net, code);
  for (std::size_t tau = 0; tau < target.cols(); ++tau)
    for (std::size_t j = 0; j < target.rows(); ++j)
      if (m(tau, j) != code.field.embed(target(j, tau))) return false;
  return true;
}

/// Checks the demand against every message tuple over F_{q^n}. Callers
/// bound q^{n s}.
inline bool exhaustive_check(const Network& net, const LinearCode& code, const TargetMatrix& target) {
  const auto& fld = code.field;
  const std::size_t s = net.source_count();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < s; ++i) total *= fld.order();
  std::vector<Felem> msg(s, fld.zero());
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t i = 0; i < s; ++i) {
      msg[i] = fld.from_index(rest % fld.order());
      rest /= fld.order();
    }
    const auto out = simulate(net, code, msg);
    for (std::size_t j = 0; j < target.rows(); ++j) {
      Felem want = fld.zero();
      for (std::size_t i = 0; i < s; ++i) want = fld.add(want, fld.mul(fld.embed(target(j, i)), msg[i]));
      if (out[j] != want) return false;
    }
  }
  return true;
}

// ---- file formats -------------------------------------------------------

inline nlohmann::json field_to_json(const ExtField& f) {
  return {{"q", f.q()}, {"n", f.n()}, {"modulus", f.modulus()}};
}

inline ExtField field_from_json(const nlohmann::json& j) {
  const auto q = j.at("q").get<std::uint32_t>();
  if (!is_prime(q)) throw Error(Errc::NotPrime, std::to_string(q) + " is not prime");
  const std::size_t n = j.contains("n") ? j.at("n").get<std::size_t>() : 1;
  if (j.contains("modulus")) {
    auto mod = j.at("modulus").get<std::vector<std::uint32_t>>();
    if (mod.size() != n + 1) throw Error(Errc::ParseError, "modulus length must be n + 1");
    return ExtField(q, std::move(mod));
  }
  return ExtField::of_degree(q, n);
}

inline nlohmann::json felem_to_json(const Felem& e) { return e.coeffs; }

inline Felem felem_from_json(const ExtField& f, const nlohmann::json& j) {
  Felem e{j.get<std::vector<std::uint32_t>>()};
  if (!f.contains(e)) throw Error(Errc::FieldMismatch, "element " + j.dump() + " is not in the field");
  return e;
}

inline nlohmann::json code_to_json(const LinearCode& code) {
  nlohmann::json a = nlohmann::json::array(), f = nlohmann::json::array(), b = nlohmann::json::array();
  for (const auto& [k, v] : code.a) a.push_back({k.first, k.second, felem_to_json(v)});
  for (const auto& [k, v] : code.f) f.push_back({k.first, k.second, felem_to_json(v)});
  for (const auto& [k, v] : code.b) b.push_back({k.first, k.second, felem_to_json(v)});
  return {{"field", field_to_json(code.field)}, {"l", code.outputs}, {"a", a}, {"f", f}, {"b", b}};
}

inline LinearCode code_from_json(const nlohmann::json& j) {
  try {
    LinearCode code(field_from_json(j.at("field")));
    std::size_t max_row = 0;
    auto read = [&](const char* key, auto& map) {
      if (!j.contains(key)) return;
      for (const auto& entry : j.at(key)) {
        if (!entry.is_array() || entry.size() != 3) throw Error(Errc::ParseError, std::string(key) + " entries are [i, j, elem]");
        auto e = felem_from_json(code.field, entry[2]);
        if (code.field.is_zero(e)) continue;
        map[{entry[0].get<std::size_t>(), entry[1].get<std::size_t>()}] = std::move(e);
      }
    };
    read("a", code.a);
    read("f", code.f);
    read("b", code.b);
    for (const auto& [k, v] : code.b) max_row = std::max(max_row, k.second + 1);
    code.outputs = j.contains("l") ? j.at("l").get<std::size_t>() : std::max<std::size_t>(max_row, 1);
    return code;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::ParseError, ex.what());
  }
}

inline nlohmann::json target_to_json(const TargetMatrix& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < t.rows(); ++i) rows.push_back(t.matrix().row(i));
  return {{"field", {{"q", t.q()}}}, {"matrix", rows}};
}

inline TargetMatrix target_from_json(const nlohmann::json& j) {
  try {
    return TargetMatrix::from_rows(j.at("field").at("q").get<std::uint32_t>(),
                                   j.at("matrix").get<std::vector<std::vector<std::uint32_t>>>());
  } catch (const nlohmann::json::exception& ex) {
    throw Error(Errc::ParseError, ex.what());
  }
}

}  // namespace lincomp
