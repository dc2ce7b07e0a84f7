#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "kpcover/cyclotomic.hpp"
#include "kpcover/errors.hpp"
#include "kpcover/numeric.hpp"
#include "kpcover/segments.hpp"

namespace kpc {

/// A torsion point diag(zeta^{e_1}, ..., zeta^{e_r}) of the diagonal torus,
/// as a vector of mu_n exponents.
struct TorusPoint {
  std::vector<std::int64_t> exps;  // each reduced to [0, n)
  std::int64_t n = 1;

  static TorusPoint make(std::int64_t n, std::vector<std::int64_t> exps) {
    require(n >= 1, "mu_n order must be positive");
    require(!exps.empty(), "torus point must have positive rank");
    for (auto& e : exps) e = mod_reduce(e, n);
    return TorusPoint{std::move(exps), n};
  }

  std::int64_t rank() const { return static_cast<std::int64_t>(exps.size()); }

  /// Exponent multiset as multiplicity-by-value.
  std::map<std::int64_t, std::int64_t> multiset() const {
    std::map<std::int64_t, std::int64_t> out;
    for (auto e : exps) ++out[e];
    return out;
  }
};

using GermValue = CycInt;

/// |W(G_x, T)| at a torsion point: the product of factorials of the exponent
/// multiplicities (distinct mu_n exponents stay distinct in the residue field
/// in the tame case, so the centralizer is the corresponding block Levi).
inline Int weyl_stabilizer_order(const TorusPoint& x) {
  Int acc = 1;
  for (const auto& [exp, mult] : x.multiset()) acc *= factorial(mult);
  return acc;
}

namespace detail {

inline GermValue germ_Z_multiset(
    const Segment& seg, const std::map<std::int64_t, std::int64_t>& multiset,
    std::int64_t n) {
  const std::int64_t r0 = seg.rho.r0;
  const std::int64_t m = seg.length();
  // Nonzero only on conjugates of diag(z_1 I_{r0}, ..., z_m I_{r0}) with the
  // z_i pairwise different; then the value is the product of the central
  // character at the z_i.
  if (static_cast<std::int64_t>(multiset.size()) != m) return CycInt::zero(n);
  std::int64_t exp_sum = 0;
  for (const auto& [exp, mult] : multiset) {
    if (mult != r0) return CycInt::zero(n);
    exp_sum += exp;
  }
  return CycInt::from_root(n, seg.rho.mu_exponent * mod_reduce(exp_sum, n));
}

}  // namespace detail

/// Germ of the Zelevinsky subrepresentation Z(rho,[a,b]) at x: the product
/// formula on points conjugate to diag(z_1 I_{r0},...,z_m I_{r0}) with
/// pairwise different z_i, zero elsewhere. Depends on x only through its
/// exponent multiset; endpoints never enter (nu is trivial at torsion
/// points).
inline GermValue germ_Z(const Segment& seg, const TorusPoint& x) {
  require(seg.rho.n == x.n, "segment and point have different mu_n orders");
  require(x.rank() == seg.rank(), "length mismatch: point rank != r0*m");
  return detail::germ_Z_multiset(seg, x.multiset(), x.n);
}

/// True when the evaluation rule at this segment is the adopted conjecture
/// rather than a proven case (proven: r0 = 1, or segments of length one).
inline bool germ_regime_conjectural(const Segment& seg) {
  return seg.rho.r0 > 1 && seg.length() > 1;
}

namespace detail {

using Multiset = std::map<std::int64_t, std::int64_t>;

/// Enumerates the ways to split `remaining` into sub-multisets of prescribed
/// total sizes and accumulates the product of block germ values. The Weyl sum
/// over S_r collapses to this: every distinct arrangement of the exponent
/// multiset is hit |W(G_x,T)| times, and the per-block stabilizer orders
/// cancel the within-block multinomial counts exactly.
inline void split_accumulate(const std::vector<Segment>& factors,
                             std::size_t factor_index,
                             std::vector<Multiset>& blocks,
                             std::vector<std::int64_t>& capacity,
                             Multiset& remaining, std::int64_t n,
                             GermValue& total) {
  if (factor_index == factors.size()) {
    GermValue prod = CycInt::one(n);
    for (std::size_t i = 0; i < factors.size(); ++i) {
      prod *= germ_Z_multiset(factors[i], blocks[i], n);
      if (prod.is_zero()) break;
    }
    total += prod;
    return;
  }
  // Fill block `factor_index` with capacity[factor_index] entries drawn from
  // `remaining`, value by value.
  std::function<void(Multiset::iterator, std::int64_t)> fill =
      [&](Multiset::iterator it, std::int64_t still_needed) {
        if (still_needed == 0) {
          split_accumulate(factors, factor_index + 1, blocks, capacity,
                           remaining, n, total);
          return;
        }
        if (it == remaining.end()) return;
        auto next = std::next(it);
        const std::int64_t value = it->first;
        const std::int64_t avail = it->second;
        for (std::int64_t take = 0; take <= std::min(avail, still_needed);
             ++take) {
          if (take > 0) {
            it->second = avail - take;
            blocks[factor_index][value] = take;
          }
          fill(next, still_needed - take);
          if (take > 0) {
            it->second = avail;
            blocks[factor_index].erase(value);
          }
        }
      };
  fill(remaining.begin(), capacity[factor_index]);
}

}  // namespace detail

/// Germ of a formal product of segments at x, via the Weyl-sum product
/// formula
///   |W(G_x,T)| c_{pi_1 x ... x pi_k}(x)
///     = (1/prod r_i!) sum_{w in S_r} prod_i |W((G_{r_i})_{x_{w,i}})| c_{pi_i}(x_{w,i}),
/// with factors evaluated by germ_Z. Computed by enumerating multiset splits,
/// which is the same sum with the stabilizer and multinomial factors
/// cancelled; the result is integral in Z[zeta_n] by construction, so the
/// division demanded by the formula is exact.
inline GermValue germ_term(const ProductTerm& term, const TorusPoint& x) {
  require(term.total_rank() == x.rank(),
          "rank mismatch: product term vs torus point");
  for (const auto& f : term.factors)
    require(f.rho.n == x.n, "segment and point have different mu_n orders");
  std::vector<detail::Multiset> blocks(term.factors.size());
  std::vector<std::int64_t> capacity;
  capacity.reserve(term.factors.size());
  for (const auto& f : term.factors) capacity.push_back(f.rank());
  detail::Multiset remaining = x.multiset();
  GermValue total = CycInt::zero(x.n);
  detail::split_accumulate(term.factors, 0, blocks, capacity, remaining, x.n,
                           total);
  return total;
}

/// Germ of the square integrable L(rho,[a,b]) at x: the determinantal
/// expansion of the segment, evaluated termwise by germ_term.
inline GermValue germ_L(const Segment& seg, const TorusPoint& x) {
  require(seg.rho.n == x.n, "segment and point have different mu_n orders");
  require(x.rank() == seg.rank(), "length mismatch: point rank != r0*m");
  GermValue total = CycInt::zero(x.n);
  const auto expansion = tadic_expand_L(seg);
  for (const auto& [term, coeff] : expansion.terms())
    total += germ_term(term, x) * coeff;
  return total;
}

}  // namespace kpc
