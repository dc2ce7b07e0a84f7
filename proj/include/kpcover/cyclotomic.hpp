#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kpcover/errors.hpp"
#include "kpcover/numeric.hpp"

namespace kpc {

namespace detail {

// Dense integer polynomials, little-endian coefficients, no trailing zeros.
using IntPoly = std::vector<Int>;

inline void poly_trim(IntPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline IntPoly poly_mul(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly out(a.size() + b.size() - 1, Int(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  poly_trim(out);
  return out;
}

/// Exact division of a by the monic polynomial b; throws if a remainder is
/// left over.
inline IntPoly poly_div_exact_monic(IntPoly a, const IntPoly& b) {
  check_internal(!b.empty() && b.back() == 1, "divisor must be monic");
  poly_trim(a);
  if (a.empty()) return {};
  check_internal(a.size() >= b.size(), "degree underflow in division");
  IntPoly q(a.size() - b.size() + 1, Int(0));
  for (std::size_t i = a.size(); i-- >= b.size();) {
    const Int c = a[i];
    if (c == 0) continue;
    const std::size_t shift = i - (b.size() - 1);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    if (i == b.size() - 1) break;  // avoid size_t wraparound
  }
  for (const auto& c : a)
    check_internal(c == 0, "inexact polynomial division");
  poly_trim(q);
  return q;
}

/// Remainder of a modulo the monic polynomial b.
inline IntPoly poly_mod_monic(IntPoly a, const IntPoly& b) {
  check_internal(!b.empty() && b.back() == 1, "modulus must be monic");
  poly_trim(a);
  while (a.size() >= b.size()) {
    const Int c = a.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] -= c * b[j];
    poly_trim(a);
  }
  return a;
}

}  // namespace detail

/// The n-th cyclotomic polynomial Phi_n, computed by dividing X^n - 1 by the
/// product of Phi_d over proper divisors d | n. Monic, integer coefficients,
/// degree phi(n). Little-endian coefficient order.
inline std::vector<Int> cyclotomic_polynomial(std::int64_t n) {
  require(n >= 1, "cyclotomic index must be positive");
  detail::IntPoly xn_minus_1(static_cast<std::size_t>(n) + 1, Int(0));
  xn_minus_1[0] = -1;
  xn_minus_1[static_cast<std::size_t>(n)] = 1;
  detail::IntPoly divisor_product{Int(1)};
  for (std::int64_t d = 1; d < n; ++d)
    if (n % d == 0)
      divisor_product =
          detail::poly_mul(divisor_product, cyclotomic_polynomial(d));
  return detail::poly_div_exact_monic(std::move(xn_minus_1), divisor_product);
}

inline std::int64_t euler_phi(std::int64_t n) {
  std::int64_t out = n;
  for (auto p : prime_factors(n)) out = out / p * (p - 1);
  return out;
}

/// An element of Z[zeta_n]: an integer polynomial in zeta_n reduced modulo
/// Phi_n. Canonical form is unique (degree < phi(n)), so equality is
/// coefficient equality. All arithmetic is exact; coefficients are
/// arbitrary-precision integers.
class CycInt {
 public:
  CycInt() = default;

  static CycInt zero(std::int64_t n) { return CycInt(n, {}); }

  static CycInt one(std::int64_t n) { return from_integer(n, 1); }

  static CycInt from_integer(std::int64_t n, Int value) {
    if (value == 0) return zero(n);
    return CycInt(n, {std::move(value)});
  }

  /// zeta_n^k, reduced.
  static CycInt from_root(std::int64_t n, std::int64_t k) {
    require(n >= 1, "ambient order must be positive");
    k = mod_reduce(k, n);
    detail::IntPoly mono(static_cast<std::size_t>(k) + 1, Int(0));
    mono.back() = 1;
    return CycInt(n, detail::poly_mod_monic(std::move(mono), modulus(n)));
  }

  /// zeta_s^j embedded into Z[zeta_n] for s | n (zeta_s = zeta_n^{n/s}).
  static CycInt from_root_of_order(std::int64_t n, std::int64_t s,
                                   std::int64_t j) {
    require(s >= 1 && n % s == 0, "embedding requires s | n");
    return from_root(n, mod_reduce(j, s) * (n / s));
  }

  std::int64_t ambient_order() const { return n_; }

  bool is_zero() const { return coeffs_.empty(); }

  /// The integer value when every non-constant coefficient vanishes.
  std::optional<Int> is_rational_integer() const {
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      if (coeffs_[i] != 0) return std::nullopt;
    return coeffs_.empty() ? Int(0) : coeffs_[0];
  }

  /// Coefficients padded to length phi(n), little-endian.
  std::vector<Int> coefficients() const {
    std::vector<Int> out = coeffs_;
    out.resize(static_cast<std::size_t>(euler_phi(n_)), Int(0));
    return out;
  }

  friend bool operator==(const CycInt& a, const CycInt& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

  CycInt operator-() const {
    CycInt out = *this;
    for (auto& c : out.coeffs_) c = -c;
    return out;
  }

  CycInt& operator+=(const CycInt& other) {
    check_same_ambient(other);
    if (coeffs_.size() < other.coeffs_.size())
      coeffs_.resize(other.coeffs_.size(), Int(0));
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
      coeffs_[i] += other.coeffs_[i];
    detail::poly_trim(coeffs_);
    return *this;
  }

  CycInt& operator-=(const CycInt& other) { return *this += -other; }

  CycInt& operator*=(const CycInt& other) {
    check_same_ambient(other);
    coeffs_ = detail::poly_mod_monic(detail::poly_mul(coeffs_, other.coeffs_),
                                     modulus(n_));
    return *this;
  }

  CycInt& operator*=(const Int& scalar) {
    if (scalar == 0) {
      coeffs_.clear();
      return *this;
    }
    for (auto& c : coeffs_) c *= scalar;
    return *this;
  }

  friend CycInt operator+(CycInt a, const CycInt& b) { return a += b; }
  friend CycInt operator-(CycInt a, const CycInt& b) { return a -= b; }
  friend CycInt operator*(CycInt a, const CycInt& b) { return a *= b; }
  friend CycInt operator*(CycInt a, const Int& s) { return a *= s; }
  friend CycInt operator*(const Int& s, CycInt a) { return a *= s; }

  /// Exact division by a rational integer; throws internal_error when any
  /// coefficient is not divisible.
  CycInt divide_exact(const Int& divisor, const char* context) const {
    CycInt out = *this;
    for (auto& c : out.coeffs_) c = exact_div(c, divisor, context);
    return out;
  }

  /// Textual form "c0,c1,...;n" with phi(n) coefficients.
  std::string to_string() const {
    std::string out;
    const auto cs = coefficients();
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (i) out += ',';
      out += cs[i].get_str();
    }
    out += ';';
    out += std::to_string(n_);
    return out;
  }

 private:
  CycInt(std::int64_t n, detail::IntPoly coeffs)
      : n_(n), coeffs_(std::move(coeffs)) {
    require(n_ >= 1, "ambient order must be positive");
    detail::poly_trim(coeffs_);
  }

  void check_same_ambient(const CycInt& other) const {
    require(n_ == other.n_,
            "mixing cyclotomic integers with different ambient orders");
  }

  /// Phi_n, cached per ambient order. Node-based map keeps references stable.
  static const detail::IntPoly& modulus(std::int64_t n) {
    thread_local std::map<std::int64_t, detail::IntPoly> cache;
    auto it = cache.find(n);
    if (it == cache.end())
      it = cache.emplace(n, cyclotomic_polynomial(n)).first;
    return it->second;
  }

  std::int64_t n_ = 1;
  detail::IntPoly coeffs_;
};

}  // namespace kpc
