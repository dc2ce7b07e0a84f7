#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kpcover/errors.hpp"
#include "kpcover/local_field.hpp"
#include "kpcover/numeric.hpp"

namespace kpc {

/// The (r, n, c) of an n-fold Kazhdan-Patterson cover of GL_r with twist c.
/// c is stored mod n; every quantity in scope (cocycle exponents, gcd
/// invariants, center) depends on c only mod n, and any integer lift gives
/// the same gcd with n.
struct CoverParams {
  std::int64_t r = 1;
  std::int64_t n = 1;
  std::int64_t c = 0;  // reduced to [0, n)

  static CoverParams make(std::int64_t r, std::int64_t n, std::int64_t c) {
    require(r >= 1, "rank must be positive");
    require(n >= 1, "cover degree must be positive");
    return CoverParams{r, n, mod_reduce(c, n)};
  }

  /// The exponent 2rc + r - 1 controlling the center, as an integer lift.
  std::int64_t center_exponent_lift() const { return 2 * r * c + r - 1; }

  friend bool operator==(const CoverParams&, const CoverParams&) = default;
};

/// An ordered composition (r_1, ..., r_k) of a rank.
struct Composition {
  std::vector<std::int64_t> parts;

  static Composition make(std::vector<std::int64_t> parts) {
    require(!parts.empty(), "composition must be nonempty");
    for (auto p : parts) require(p >= 1, "composition parts must be positive");
    return Composition{std::move(parts)};
  }

  std::int64_t sum() const {
    std::int64_t s = 0;
    for (auto p : parts) s += p;
    return s;
  }

  std::size_t length() const { return parts.size(); }
};

/// All compositions of m, each encoded by its parts; 2^{m-1} of them.
inline std::vector<std::vector<std::int64_t>> compositions(std::int64_t m) {
  require(m >= 1, "compositions of a positive integer only");
  std::vector<std::vector<std::int64_t>> out;
  out.reserve(std::size_t{1} << (m - 1));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (m - 1)); ++mask) {
    std::vector<std::int64_t> parts;
    std::int64_t run = 1;
    for (std::int64_t gap = 0; gap < m - 1; ++gap) {
      if (mask & (std::uint64_t{1} << gap)) {
        parts.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    parts.push_back(run);
    out.push_back(std::move(parts));
  }
  return out;
}

/// d_r = gcd(n, 2rc + r - 1).
inline std::int64_t d_r(const CoverParams& cover) {
  return std::gcd(cover.n, cover.center_exponent_lift());
}

/// d_r for a block of rank r0 inside the same (n, c) family.
inline std::int64_t d_r_block(const CoverParams& cover, std::int64_t r0) {
  return d_r(CoverParams::make(r0, cover.n, cover.c));
}

/// d'_r = gcd(n, r).
inline std::int64_t d_prime_r(const CoverParams& cover) {
  return std::gcd(cover.n, cover.r);
}

inline std::int64_t d_prime_r_block(const CoverParams& cover, std::int64_t r0) {
  return std::gcd(cover.n, r0);
}

/// A diagonal torus element diag(x_1, ..., x_r) at class granularity.
struct TorusClass {
  std::vector<FieldClass> entries;

  static TorusClass make(std::vector<FieldClass> entries) {
    require(!entries.empty(), "torus element must have positive rank");
    return TorusClass{std::move(entries)};
  }

  std::int64_t rank() const { return static_cast<std::int64_t>(entries.size()); }

  static TorusClass scalar(const LocalFieldModel& model, const FieldClass& x,
                           std::int64_t r) {
    require(r >= 1, "rank must be positive");
    (void)model;
    return TorusClass{std::vector<FieldClass>(static_cast<std::size_t>(r), x)};
  }

  TorusClass mul(const LocalFieldModel& model, const TorusClass& other) const {
    require(entries.size() == other.entries.size(),
            "torus rank mismatch in product");
    std::vector<FieldClass> out;
    out.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i)
      out.push_back(entries[i].mul(model, other.entries[i]));
    return TorusClass{std::move(out)};
  }
};

/// Membership of the scalar lambda·I_r in the image of the center of the
/// cover: lambda^{2rc+r-1} must be an n-th power.
inline bool center_membership(const CoverParams& cover,
                              const LocalFieldModel& model,
                              const FieldClass& lambda) {
  require(cover.n == model.n, "cover degree and model degree disagree");
  const FieldClass power = lambda.pow(model, cover.center_exponent_lift());
  return is_nth_power(model, power, cover.n);
}

/// The 2-cocycle of the cover restricted to the diagonal torus, as a mu_n
/// exponent:
///   sum_i c·h(x_i,y_i) + sum_{i<j} [ (c+1)·h(x_i,y_j) + c·h(x_j,y_i) ]
/// where h is the Hilbert symbol exponent. This is the block restriction
/// formula specialized to 1x1 blocks, with the GL_1 rule (x,y)^c.
inline RootOfUnity torus_cocycle(const CoverParams& cover,
                                 const LocalFieldModel& model,
                                 const TorusClass& x, const TorusClass& y) {
  require(cover.n == model.n, "cover degree and model degree disagree");
  require(x.rank() == cover.r && y.rank() == cover.r,
          "torus rank mismatch against cover rank");
  const std::int64_t n = cover.n;
  std::int64_t acc = 0;
  for (std::int64_t i = 0; i < cover.r; ++i) {
    acc = mod_reduce(
        acc + cover.c * hilbert_symbol(model, x.entries[i], y.entries[i]).exponent,
        n);
    for (std::int64_t j = i + 1; j < cover.r; ++j) {
      const std::int64_t hij =
          hilbert_symbol(model, x.entries[i], y.entries[j]).exponent;
      const std::int64_t hji =
          hilbert_symbol(model, x.entries[j], y.entries[i]).exponent;
      acc = mod_reduce(acc + (cover.c + 1) * hij + cover.c * hji, n);
    }
  }
  return RootOfUnity::make(n, acc);
}

/// Commutator [s(a), s(b)] = sigma(a,b)·sigma(b,a)^{-1} for commuting
/// diagonal elements, as a mu_n exponent.
inline RootOfUnity commutator_torus(const CoverParams& cover,
                                    const LocalFieldModel& model,
                                    const TorusClass& a, const TorusClass& b) {
  const auto ab = torus_cocycle(cover, model, a, b);
  const auto ba = torus_cocycle(cover, model, b, a);
  return ab * ba.inverse();
}

namespace detail {
inline void require_composition_of(const CoverParams& cover,
                                   const Composition& beta) {
  require(beta.sum() == cover.r, "composition does not sum to the rank");
}

inline Int checked_ratio(const Int& num, const Int& den, const char* what) {
  check_internal(den > 0, std::string("nonpositive denominator in ") + what);
  Int q, rem;
  mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(),
              den.get_mpz_t());
  check_internal(rem == 0 && q > 0,
                 std::string(what) + " failed to be a positive integer "
                                     "(wild-case leak or bad input)");
  return q;
}
}  // namespace detail

/// n_beta = d_F(n^k) / d_F(d_r · prod_i d'_{r_i}); asserted integral.
inline Int n_beta(const CoverParams& cover, const LocalFieldModel& model,
                  const Composition& beta) {
  require(cover.n == model.n, "cover degree and model degree disagree");
  detail::require_composition_of(cover, beta);
  const std::int64_t k = static_cast<std::int64_t>(beta.length());
  Int den = d_r(cover);
  for (auto ri : beta.parts) den *= d_prime_r_block(cover, ri);
  return detail::checked_ratio(d_F(model, pow_int(Int(cover.n), k)),
                               d_F(model, den), "n_beta");
}

/// m_beta = d_F(n^k · prod_i d'_{r_i}) / d_F(d_r); asserted integral.
inline Int m_beta(const CoverParams& cover, const LocalFieldModel& model,
                  const Composition& beta) {
  require(cover.n == model.n, "cover degree and model degree disagree");
  detail::require_composition_of(cover, beta);
  const std::int64_t k = static_cast<std::int64_t>(beta.length());
  Int num = pow_int(Int(cover.n), k);
  for (auto ri : beta.parts) num *= d_prime_r_block(cover, ri);
  return detail::checked_ratio(d_F(model, num), d_F(model, Int(d_r(cover))),
                               "m_beta");
}

/// M_beta = d_F(n^{2k}) / d_F(d_r · prod_i d_{r_i}); asserted integral.
inline Int M_beta(const CoverParams& cover, const LocalFieldModel& model,
                  const Composition& beta) {
  require(cover.n == model.n, "cover degree and model degree disagree");
  detail::require_composition_of(cover, beta);
  const std::int64_t k = static_cast<std::int64_t>(beta.length());
  Int den = d_r(cover);
  for (auto ri : beta.parts) den *= d_r_block(cover, ri);
  return detail::checked_ratio(d_F(model, pow_int(Int(cover.n), 2 * k)),
                               d_F(model, den), "M_beta");
}

/// The multiplicity entering the torus-character lift: n_beta at
/// beta = (1,...,1) must equal n^r / d_r.
inline bool torus_lift_multiplicity_check(const CoverParams& cover,
                                          const LocalFieldModel& model) {
  const Composition ones = Composition::make(
      std::vector<std::int64_t>(static_cast<std::size_t>(cover.r), 1));
  const Int expected = detail::checked_ratio(pow_int(Int(cover.n), cover.r),
                                             Int(d_r(cover)),
                                             "torus lift multiplicity");
  return n_beta(cover, model, ones) == expected;
}

}  // namespace kpc
