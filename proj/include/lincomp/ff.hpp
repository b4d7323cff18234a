#pragma once

#include <compare>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lincomp/error.hpp"

namespace lincomp {

inline bool is_prime(std::uint64_t q) noexcept {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

/// F_q for prime q, elements stored as residues in [0, q).
class PrimeField {
 public:
  using value_type = std::uint32_t;

  explicit PrimeField(std::uint32_t q) : q_(q) {
    if (!is_prime(q)) throw Error(Errc::NotPrime, std::to_string(q) + " is not prime");
  }

  std::uint32_t q() const noexcept { return q_; }

  value_type zero() const noexcept { return 0; }
  value_type one() const noexcept { return 1; }
  value_type from_int(std::int64_t v) const noexcept {
    auto r = v % static_cast<std::int64_t>(q_);
    return static_cast<value_type>(r < 0 ? r + q_ : r);
  }
  bool is_zero(value_type a) const noexcept { return a == 0; }
  bool contains(value_type a) const noexcept { return a < q_; }

  value_type add(value_type a, value_type b) const noexcept {
    return static_cast<value_type>((std::uint64_t{a} + b) % q_);
  }
  value_type sub(value_type a, value_type b) const noexcept {
    return static_cast<value_type>((std::uint64_t{a} + q_ - b) % q_);
  }
  value_type neg(value_type a) const noexcept { return a == 0 ? 0 : q_ - a; }
  value_type mul(value_type a, value_type b) const noexcept {
    return static_cast<value_type>((std::uint64_t{a} * b) % q_);
  }
  value_type pow(value_type a, std::uint64_t e) const noexcept {
    std::uint64_t base = a % q_, acc = 1;
    while (e) {
      if (e & 1) acc = acc * base % q_;
      base = base * base % q_;
      e >>= 1;
    }
    return static_cast<value_type>(acc);
  }
  value_type inv(value_type a) const {
    if (a % q_ == 0) throw Error(Errc::DivisionByZero, "inverse of zero in F_" + std::to_string(q_));
    return pow(a, q_ - 2);
  }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint32_t q_;
};

inline PrimeField make_prime_field(std::uint32_t q) { return PrimeField(q); }

/// Element of F_{q^n} as its coefficient vector over F_q, constant term first.
struct Felem {
  std::vector<std::uint32_t> coeffs;

  auto operator<=>(const Felem&) const = default;
};

namespace detail {

// Dense polynomials over F_q, constant term first, no trailing zeros.
using UPoly = std::vector<std::uint32_t>;

inline void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

// Remainder of a modulo b (b nonzero, trimmed).
inline UPoly poly_mod(UPoly a, const UPoly& b, const PrimeField& f) {
  trim(a);
  const auto lead_inv = f.inv(b.back());
  while (a.size() >= b.size()) {
    const auto factor = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = f.sub(a[shift + i], f.mul(factor, b[i]));
    trim(a);
  }
  return a;
}

inline void poly_divmod(UPoly a, const UPoly& b, const PrimeField& f, UPoly& quot, UPoly& rem) {
  trim(a);
  quot.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  const auto lead_inv = f.inv(b.back());
  while (a.size() >= b.size()) {
    const auto factor = f.mul(a.back(), lead_inv);
    const std::size_t shift = a.size() - b.size();
    quot[shift] = factor;
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = f.sub(a[shift + i], f.mul(factor, b[i]));
    trim(a);
  }
  rem = std::move(a);
}

inline UPoly poly_mul(const UPoly& a, const UPoly& b, const PrimeField& f) {
  if (a.empty() || b.empty()) return {};
  UPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  trim(out);
  return out;
}

inline UPoly poly_sub(UPoly a, const UPoly& b, const PrimeField& f) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = f.sub(a[i], b[i]);
  trim(a);
  return a;
}

}  // namespace detail

/// Irreducibility by trial division with every monic polynomial of degree
/// 1..deg/2. `modulus` is given constant term first.
inline bool is_irreducible(std::uint32_t q, const std::vector<std::uint32_t>& modulus) {
  const PrimeField f(q);
  detail::UPoly m = modulus;
  detail::trim(m);
  if (m.size() < 2) return false;
  const std::size_t deg = m.size() - 1;
  if (deg == 1) return true;
  if (m[0] == 0) return false;
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    detail::UPoly divisor(d + 1, 0);
    divisor[d] = 1;
    // odometer over the d free coefficients
    while (true) {
      if (detail::poly_mod(m, divisor, f).empty()) return false;
      std::size_t i = 0;
      while (i < d && ++divisor[i] == q) divisor[i++] = 0;
      if (i == d) break;
    }
  }
  return true;
}

/// Lexicographically least monic irreducible of degree n (coefficients
/// compared constant term first).
inline std::vector<std::uint32_t> find_irreducible(std::uint32_t q, std::size_t n) {
  if (n == 0) throw Error(Errc::DimensionMismatch, "extension degree must be positive");
  const PrimeField f(q);
  std::vector<std::uint32_t> cand(n + 1, 0);
  cand[n] = 1;
  if (n == 1) return cand;
  // Constant term 0 means x divides the candidate; those all precede c0 = 1.
  cand[0] = 1;
  while (true) {
    if (is_irreducible(q, cand)) return cand;
    // Increment (c0, ..., c_{n-1}) with c_{n-1} as the least significant digit.
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++cand[i] < q) break;
      cand[i] = 0;
      if (i == 0) throw Error(Errc::NotIrreducible, "no irreducible found");
    }
  }
}

/// F_{q^n} = F_q[x] / (modulus).
class ExtField {
 public:
  using value_type = Felem;

  ExtField(std::uint32_t q, std::vector<std::uint32_t> modulus) : base_(q), modulus_(std::move(modulus)) {
    if (modulus_.size() < 2 || modulus_.back() != 1)
      throw Error(Errc::NotIrreducible, "modulus must be monic of degree >= 1");
    for (auto c : modulus_)
      if (c >= q) throw Error(Errc::NotIrreducible, "modulus coefficient out of range");
    if (!is_irreducible(q, modulus_)) throw Error(Errc::NotIrreducible, "modulus is reducible");
    n_ = modulus_.size() - 1;
  }

  /// Field of degree n with the deterministic modulus from find_irreducible.
  static ExtField of_degree(std::uint32_t q, std::size_t n) { return ExtField(q, find_irreducible(q, n)); }

  std::uint32_t q() const noexcept { return base_.q(); }
  std::size_t n() const noexcept { return n_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }
  const PrimeField& base() const noexcept { return base_; }

  /// q^n, saturating at UINT64_MAX.
  std::uint64_t order() const noexcept {
    std::uint64_t acc = 1;
    for (std::size_t i = 0; i < n_; ++i) {
      if (acc > UINT64_MAX / q()) return UINT64_MAX;
      acc *= q();
    }
    return acc;
  }

  Felem zero() const { return Felem{std::vector<std::uint32_t>(n_, 0)}; }
  Felem one() const { return embed(1); }
  Felem embed(std::uint32_t v) const {
    Felem e = zero();
    e.coeffs[0] = v % q();
    return e;
  }
  /// The class of x.
  Felem generator() const {
    if (n_ == 1) return embed(static_cast<std::uint32_t>(base_.neg(modulus_[0])));
    Felem e = zero();
    e.coeffs[1] = 1;
    return e;
  }

  bool contains(const Felem& a) const noexcept {
    if (a.coeffs.size() != n_) return false;
    for (auto c : a.coeffs)
      if (c >= q()) return false;
    return true;
  }
  bool is_zero(const Felem& a) const {
    check(a);
    for (auto c : a.coeffs)
      if (c) return false;
    return true;
  }
  /// F_q scalar when the element lies in the prime subfield.
  bool in_base_field(const Felem& a) const {
    check(a);
    for (std::size_t i = 1; i < n_; ++i)
      if (a.coeffs[i]) return false;
    return true;
  }

  Felem add(const Felem& a, const Felem& b) const {
    check(a), check(b);
    Felem out = a;
    for (std::size_t i = 0; i < n_; ++i) out.coeffs[i] = base_.add(a.coeffs[i], b.coeffs[i]);
    return out;
  }
  Felem sub(const Felem& a, const Felem& b) const {
    check(a), check(b);
    Felem out = a;
    for (std::size_t i = 0; i < n_; ++i) out.coeffs[i] = base_.sub(a.coeffs[i], b.coeffs[i]);
    return out;
  }
  Felem neg(const Felem& a) const { return sub(zero(), a); }

  Felem mul(const Felem& a, const Felem& b) const {
    check(a), check(b);
    const std::uint64_t q64 = q();
    std::vector<std::uint64_t> prod(2 * n_ - 1, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      if (!a.coeffs[i]) continue;
      for (std::size_t j = 0; j < n_; ++j)
        prod[i + j] = (prod[i + j] + std::uint64_t{a.coeffs[i]} * b.coeffs[j]) % q64;
    }
    // x^n = -(m_0 + ... + m_{n-1} x^{n-1})
    for (std::size_t k = prod.size(); k-- > n_;) {
      const std::uint64_t c = prod[k];
      if (!c) continue;
      prod[k] = 0;
      for (std::size_t i = 0; i < n_; ++i)
        prod[k - n_ + i] = (prod[k - n_ + i] + (q64 - c) * modulus_[i]) % q64;
    }
    Felem out;
    out.coeffs.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) out.coeffs[i] = static_cast<std::uint32_t>(prod[i]);
    return out;
  }

  Felem pow(const Felem& a, std::uint64_t e) const {
    Felem acc = one(), base = a;
    while (e) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  Felem inv(const Felem& a) const {
    if (is_zero(a)) throw Error(Errc::DivisionByZero, "inverse of zero");
    // Extended Euclid in F_q[x]: track s with s*a = r (mod modulus).
    detail::UPoly r0 = modulus_, r1 = a.coeffs, s0, s1 = {1};
    detail::trim(r1);
    while (!r1.empty()) {
      detail::UPoly quot, rem;
      detail::poly_divmod(r0, r1, base_, quot, rem);
      auto s2 = detail::poly_sub(s0, detail::poly_mul(quot, s1, base_), base_);
      r0 = std::move(r1), r1 = std::move(rem);
      s0 = std::move(s1), s1 = std::move(s2);
    }
    // r0 is a nonzero constant since the modulus is irreducible.
    const auto scale = base_.inv(r0[0]);
    Felem out = zero();
    for (std::size_t i = 0; i < s0.size() && i < n_; ++i) out.coeffs[i] = base_.mul(scale, s0[i]);
    return out;
  }

  template <typename Rng>
  Felem random(Rng& rng) const {
    std::uniform_int_distribution<std::uint32_t> dist(0, q() - 1);
    Felem e = zero();
    for (auto& c : e.coeffs) c = dist(rng);
    return e;
  }

  /// Base-q digits with the constant term least significant.
  Felem from_index(std::uint64_t idx) const {
    Felem e = zero();
    for (std::size_t i = 0; i < n_; ++i) {
      e.coeffs[i] = static_cast<std::uint32_t>(idx % q());
      idx /= q();
    }
    return e;
  }
  std::uint64_t to_index(const Felem& a) const {
    check(a);
    std::uint64_t idx = 0;
    for (std::size_t i = n_; i-- > 0;) idx = idx * q() + a.coeffs[i];
    return idx;
  }

  bool operator==(const ExtField& o) const { return q() == o.q() && modulus_ == o.modulus_; }

 private:
  void check(const Felem& a) const {
    if (!contains(a)) throw Error(Errc::FieldMismatch, "element does not belong to this field");
  }

  PrimeField base_;
  std::vector<std::uint32_t> modulus_;
  std::size_t n_ = 1;
};

}  // namespace lincomp
