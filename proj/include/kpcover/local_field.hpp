#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "kpcover/errors.hpp"
#include "kpcover/numeric.hpp"

namespace kpc {

/// A non-archimedean local field F modelled at the coarsest granularity that
/// determines tame n-th order Hilbert symbols: residue characteristic p,
/// residue cardinality q = p^f, and the cover degree n with mu_n of full size
/// (q ≡ 1 mod n). Elements of F^x are tracked modulo principal units only.
///
/// Unit exponents are taken with respect to one distinguished generator g of
/// the residue multiplicative group, fixed once per model: the smallest
/// primitive root when q is prime, and an abstract Conway-style generator for
/// proper prime powers (its identity never enters any computation; only the
/// coordinate system depends on it, and all outputs are generator-stable).
struct LocalFieldModel {
  std::int64_t p = 0;  // residue characteristic, prime
  std::int64_t f = 1;  // q = p^f
  std::int64_t q = 0;  // residue cardinality
  std::int64_t n = 1;  // cover degree, |mu_n(F)| = n
  // Smallest primitive root mod q for prime q; empty for proper prime powers
  // (abstract fixed generator).
  std::optional<std::int64_t> unit_generator;

  static LocalFieldModel make(std::int64_t q, std::int64_t n) {
    LocalFieldModel m;
    require(n >= 1, "cover degree n must be positive");
    require(prime_power_decompose(q, m.p, m.f),
            "residue cardinality must be a prime power");
    require(n == 1 || (q - 1) % n == 0,
            "wild/ill-posed model: need q ≡ 1 (mod n) so that |mu_n| = n");
    m.q = q;
    m.n = n;
    if (m.f == 1) m.unit_generator = smallest_primitive_root(q);
    return m;
  }

  bool tame() const { return n == 1 || (q - 1) % n == 0; }

  /// Exponent of -1 with respect to g: (q-1)/2 for odd q, 0 in characteristic
  /// two where -1 = 1.
  std::int64_t minus_one_exponent() const { return q % 2 == 0 ? 0 : (q - 1) / 2; }

  /// Textual form "p^f;n".
  std::string to_string() const {
    return std::to_string(p) + "^" + std::to_string(f) + ";" + std::to_string(n);
  }

  /// Parses "p^f;n" (also accepts "q;n" with q a prime power).
  static LocalFieldModel parse(const std::string& text);
};

/// The class of an element of F^x modulo principal units: the coset
/// pi^v · g^e · (1 + p_F), stored as (valuation v, unit exponent e mod q-1).
struct FieldClass {
  std::int64_t valuation = 0;
  std::int64_t unit_exponent = 0;  // reduced to [0, q-1)

  static FieldClass make(const LocalFieldModel& model, std::int64_t v,
                         std::int64_t e) {
    return FieldClass{v, mod_reduce(e, model.q - 1)};
  }

  friend bool operator==(const FieldClass&, const FieldClass&) = default;

  FieldClass mul(const LocalFieldModel& model, const FieldClass& other) const {
    return make(model, valuation + other.valuation,
                unit_exponent + other.unit_exponent);
  }

  FieldClass pow(const LocalFieldModel& model, std::int64_t k) const {
    // Exponent arithmetic is valid for negative k too: e lives in Z/(q-1).
    return make(model, valuation * k,
                mul_mod(unit_exponent, k, model.q - 1));
  }

  /// The class of -x (multiplication by g^{(q-1)/2}, or identity for q even).
  FieldClass negate(const LocalFieldModel& model) const {
    return make(model, valuation, unit_exponent + model.minus_one_exponent());
  }

  /// Textual form "v:e".
  std::string to_string() const {
    return std::to_string(valuation) + ":" + std::to_string(unit_exponent);
  }

  static FieldClass parse(const LocalFieldModel& model, const std::string& text);
};

/// An element zeta^k of mu_n, where zeta = g^{(q-1)/n} is the distinguished
/// generator. Multiplication is exponent addition mod n.
struct RootOfUnity {
  std::int64_t exponent = 0;  // reduced to [0, n)
  std::int64_t order = 1;     // the ambient n

  static RootOfUnity make(std::int64_t n, std::int64_t k) {
    require(n >= 1, "root-of-unity order must be positive");
    return RootOfUnity{mod_reduce(k, n), n};
  }

  friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;

  RootOfUnity operator*(const RootOfUnity& other) const {
    require(order == other.order, "mixed mu_n orders");
    return make(order, exponent + other.exponent);
  }

  RootOfUnity inverse() const { return make(order, -exponent); }

  bool is_identity() const { return exponent == 0; }
};

namespace detail {
inline void require_symbol_model(const LocalFieldModel& model) {
  require(model.n == 1 || (model.q % 2 != 0 && (model.q - 1) % model.n == 0),
          "wild/ill-posed model for Hilbert symbol evaluation");
}
}  // namespace detail

/// The n-th order Hilbert symbol (x,y)_n evaluated by the tame formula
///   ((-1)^{v(x)v(y)} x^{v(y)} y^{-v(x)} mod p_F)^{(q-1)/n},
/// returned as the exponent of the distinguished generator of mu_n:
///   e(-1)·v(x)v(y) + v(y)·e(x) - v(x)·e(y)  (mod n).
/// Bimultiplicative, antisymmetric, and dependent only on class data.
inline RootOfUnity hilbert_symbol(const LocalFieldModel& model,
                                  const FieldClass& x, const FieldClass& y) {
  detail::require_symbol_model(model);
  const std::int64_t n = model.n;
  std::int64_t e = mod_reduce(model.minus_one_exponent(), n);
  e = mul_mod(e, mul_mod(x.valuation, y.valuation, n), n);
  e = mod_reduce(e + mul_mod(y.valuation, x.unit_exponent, n), n);
  e = mod_reduce(e - mul_mod(x.valuation, y.unit_exponent, n), n);
  return RootOfUnity::make(n, e);
}

/// Membership of x in F^{x m} for m | n. At class granularity this is
/// m | v(x) and m | e(x), the latter well defined because m | q-1.
inline bool is_nth_power(const LocalFieldModel& model, const FieldClass& x,
                         std::int64_t m) {
  require(m >= 1, "power index must be positive");
  require(model.n % m == 0,
          "membership undecidable at class granularity (need m | n)");
  return x.valuation % m == 0 && x.unit_exponent % m == 0;
}

/// d_F(m) = m·|m|^{-1/2}; equals m exactly when gcd(m,p) = 1. The wild case
/// p | m is out of scope and rejected.
inline Int d_F(const LocalFieldModel& model, const Int& m) {
  require(m >= 1, "d_F argument must be positive");
  check_internal(model.p > 0, "uninitialized model");
  require(!mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(model.p)),
          "wild case unsupported: p | m in d_F");
  return m;
}

inline Int d_F(const LocalFieldModel& model, std::int64_t m) {
  return d_F(model, Int(m));
}

/// [F^x : F^{x m}] = d_F(m)^2 for m | n.
inline Int index_power_subgroup(const LocalFieldModel& model, std::int64_t m) {
  require(m >= 1 && model.n % m == 0, "index requested for m not dividing n");
  const Int d = d_F(model, m);
  return d * d;
}

inline LocalFieldModel LocalFieldModel::parse(const std::string& text) {
  const auto semi = text.find(';');
  if (semi == std::string::npos)
    throw parse_error("model text must be \"p^f;n\": " + text);
  const std::string qpart = text.substr(0, semi);
  const std::string npart = text.substr(semi + 1);
  std::int64_t q = 0, n = 0;
  try {
    const auto caret = qpart.find('^');
    if (caret == std::string::npos) {
      q = std::stoll(qpart);
    } else {
      const std::int64_t p = std::stoll(qpart.substr(0, caret));
      const std::int64_t f = std::stoll(qpart.substr(caret + 1));
      require(f >= 1 && f <= 62, "unreasonable residue degree");
      q = 1;
      for (std::int64_t i = 0; i < f; ++i) {
        require(q <= (std::int64_t{1} << 62) / p, "residue field too large");
        q *= p;
      }
    }
    n = std::stoll(npart);
  } catch (const error&) {
    throw;
  } catch (const std::exception&) {
    throw parse_error("unparsable model text: " + text);
  }
  return make(q, n);
}

inline FieldClass FieldClass::parse(const LocalFieldModel& model,
                                    const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw parse_error("field class text must be \"v:e\": " + text);
  try {
    return make(model, std::stoll(text.substr(0, colon)),
                std::stoll(text.substr(colon + 1)));
  } catch (const error&) {
    throw;
  } catch (const std::exception&) {
    throw parse_error("unparsable field class text: " + text);
  }
}

}  // namespace kpc
