// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every assertion is exact; the stated runtime budgets are enforced.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "kpcover/cli.hpp"
#include "kpcover/cover.hpp"
#include "kpcover/cyclotomic.hpp"
#include "kpcover/germ.hpp"
#include "kpcover/local_field.hpp"
#include "kpcover/segments.hpp"
#include "kpcover/whittaker.hpp"

using namespace kpc;

namespace {

struct Criterion {
  int number;
  std::string title;
  double budget_seconds;
  std::function<bool(std::string&)> body;
};

std::int64_t smallest_symbol_model_q(std::int64_t n) {
  // Smallest prime power q with q = 1 mod n that the symbol accepts
  // (q odd unless n = 1).
  for (std::int64_t q = 2;; ++q) {
    std::int64_t p, f;
    if (!prime_power_decompose(q, p, f)) continue;
    if (n > 1 && q % 2 == 0) continue;
    if (n == 1 || (q - 1) % n == 0) return q;
  }
}

CuspidalLabel label_of_order(std::int64_t r0, std::int64_t n, std::int64_t s) {
  return CuspidalLabel::make("rho", r0, n, n / s);
}

bool criterion1_oracle_equals_closed(std::string& detail) {
  const auto outcomes = run_oracle_sweep(oracle_sweep_cases(4, 2, 2, 4, 6));
  std::size_t mismatches = 0;
  for (const auto& o : outcomes)
    if (!o.match) ++mismatches;
  detail = std::to_string(outcomes.size()) + " tuples, " +
           std::to_string(mismatches) + " mismatches";
  return mismatches == 0;
}

bool criterion2_hand_anchors(std::string& detail) {
  const auto cover = CoverParams::make(2, 2, 0);
  const auto model = LocalFieldModel::make(3, 2);
  const Rat three(3), one(1);
  const bool ok =
      dim_sqrt_closed(cover, 1, 2, 1).value == three &&
      dim_sqrt_bruteforce(cover, model, 1, 2, label_of_order(1, 2, 1)).value ==
          three &&
      dim_sqrt_closed(cover, 1, 2, 2).value == one &&
      dim_sqrt_bruteforce(cover, model, 1, 2, label_of_order(1, 2, 2)).value ==
          one;
  detail = "(n=2,c=0,r0=1,m=2): s=1 -> 3, s=2 -> 1, both routes";
  return ok;
}

bool criterion3_exceptional(std::string& detail) {
  std::size_t checked = 0;
  for (std::int64_t n = 1; n <= 6; ++n)
    for (std::int64_t c = 0; c <= 5; ++c) {
      if (dim_Z_closed(CoverParams::make(n, n, c), 1, 1, n).value != Rat(1))
        return false;
      if (dim_Z_closed(CoverParams::make(n + 1, n, c), 1, 1, n + 1).value !=
          Rat(0))
        return false;
      checked += 2;
    }
  detail = std::to_string(checked) + " values";
  return true;
}

bool criterion4_cuspidal(std::string& detail) {
  std::size_t checked = 0;
  for (std::int64_t n = 1; n <= 6; ++n) {
    const auto model = LocalFieldModel::make(smallest_prime_power_1_mod(n), n);
    for (std::int64_t r0 = 1; r0 <= 3; ++r0)
      for (std::int64_t c = 0; c < n; ++c) {
        const auto cover = CoverParams::make(r0, n, c);
        Rat expected(Int(n), Int(d_r(cover)));
        expected.canonicalize();
        if (dim_sqrt_closed(cover, r0, 1, 1).value != expected) return false;
        const auto brute =
            dim_sqrt_bruteforce(cover, model, r0, 1, label_of_order(r0, n, 1));
        if (brute.value != expected) return false;
        if (brute.conjectural) return false;  // proven regime only
        ++checked;
      }
  }
  detail = std::to_string(checked) + " (n,r0,c) tuples, closed and oracle";
  return true;
}

bool criterion5_gl2_principal_series(std::string& detail) {
  const auto dim = dim_product(CoverParams::make(2, 2, 0),
                               {{1, Int(1)}, {1, Int(1)}});
  const Int index = index_power_subgroup(LocalFieldModel::make(3, 2), 2);
  detail = "dim_product = " + dim.value.get_str() +
           ", [F^x:F^x2] = " + index.get_str();
  return dim.value == Rat(4) && index == 4;
}

bool criterion6_hilbert_suite(std::string& detail) {
  std::size_t models = 0;
  for (std::int64_t q : {5, 7, 11, 13})
    for (std::int64_t n = 1; n <= q - 1; ++n) {
      if ((q - 1) % n != 0) continue;
      ++models;
      const auto m = LocalFieldModel::make(q, n);
      std::vector<FieldClass> classes;
      for (std::int64_t v = 0; v < n; ++v)
        for (std::int64_t e = 0; e < n; ++e)
          classes.push_back(FieldClass::make(m, v, e));
      const auto gens = {FieldClass::make(m, 1, 0), FieldClass::make(m, 0, 1)};
      for (const auto& x : classes) {
        for (const auto& y : classes) {
          const auto xy = hilbert_symbol(m, x, y);
          const auto yx = hilbert_symbol(m, y, x);
          if (!(xy * yx).is_identity()) return false;  // antisymmetry
          for (const auto& g : gens) {
            if (hilbert_symbol(m, x.mul(m, g), y).exponent !=
                (hilbert_symbol(m, x, y) * hilbert_symbol(m, g, y)).exponent)
              return false;  // bimultiplicativity (left)
            if (hilbert_symbol(m, x, y.mul(m, g)).exponent !=
                (hilbert_symbol(m, x, y) * hilbert_symbol(m, x, g)).exponent)
              return false;  // bimultiplicativity (right)
          }
        }
        if (!hilbert_symbol(m, x, x.negate(m)).is_identity())
          return false;  // Steinberg
        bool kills_all = true;
        for (const auto& y : classes)
          if (!hilbert_symbol(m, x, y).is_identity()) {
            kills_all = false;
            break;
          }
        if (kills_all != is_nth_power(m, x, n))
          return false;  // nondegeneracy + F^{xn} consistency
      }
    }
  detail = std::to_string(models) + " (q,n) models, exhaustive";
  return true;
}

bool criterion7_cocycle_identity(std::string& detail) {
  const auto m = LocalFieldModel::make(7, 3);
  const std::vector<FieldClass> gens = {
      FieldClass::make(m, 0, 0), FieldClass::make(m, 1, 0),
      FieldClass::make(m, 0, 1), FieldClass::make(m, 1, 1)};
  std::size_t triples = 0;
  for (std::int64_t r = 1; r <= 3; ++r) {
    // All torus elements with entries in the generating set.
    std::vector<TorusClass> elements;
    std::vector<std::size_t> pick(static_cast<std::size_t>(r), 0);
    while (true) {
      std::vector<FieldClass> entries;
      for (auto i : pick) entries.push_back(gens[i]);
      elements.push_back(TorusClass::make(entries));
      std::size_t pos = 0;
      while (pos < pick.size() && ++pick[pos] == gens.size()) pick[pos++] = 0;
      if (pos == pick.size()) break;
    }
    for (std::int64_t c = 0; c <= 2; ++c) {
      const auto cover = CoverParams::make(r, 3, c);
      for (const auto& x : elements)
        for (const auto& y : elements)
          for (const auto& z : elements) {
            const auto lhs = torus_cocycle(cover, m, x, y) *
                             torus_cocycle(cover, m, x.mul(m, y), z);
            const auto rhs = torus_cocycle(cover, m, x, y.mul(m, z)) *
                             torus_cocycle(cover, m, y, z);
            if (lhs.exponent != rhs.exponent) return false;
            ++triples;
          }
    }
  }
  detail = std::to_string(triples) + " torus triples, zero violations";
  return true;
}

bool criterion8_center_criterion(std::string& detail) {
  std::size_t checked = 0;
  for (std::int64_t n = 1; n <= 4; ++n) {
    const auto m = LocalFieldModel::make(smallest_symbol_model_q(n), n);
    for (std::int64_t r = 1; r <= 4; ++r)
      for (std::int64_t c = 0; c < n; ++c) {
        const auto cover = CoverParams::make(r, n, c);
        for (std::int64_t v = 0; v < n; ++v)
          for (std::int64_t e = 0; e < n; ++e) {
            const auto lambda = FieldClass::make(m, v, e);
            const auto scalar = TorusClass::scalar(m, lambda, r);
            bool all_trivial = true;
            for (std::int64_t slot = 0; slot < r && all_trivial; ++slot)
              for (const auto& gen :
                   {FieldClass::make(m, 1, 0), FieldClass::make(m, 0, 1)}) {
                std::vector<FieldClass> entries(
                    static_cast<std::size_t>(r), FieldClass::make(m, 0, 0));
                entries[static_cast<std::size_t>(slot)] = gen;
                if (!commutator_torus(cover, m, scalar,
                                      TorusClass::make(entries))
                         .is_identity()) {
                  all_trivial = false;
                  break;
                }
              }
            if (center_membership(cover, m, lambda) != all_trivial)
              return false;
            ++checked;
          }
      }
  }
  detail = std::to_string(checked) + " (n,r,c,lambda) cases, exhaustive";
  return true;
}

bool criterion9_tadic_involution(std::string& detail) {
  const auto rho = CuspidalLabel::make("rho", 1, 1, 0);
  for (std::int64_t m = 1; m <= 6; ++m) {
    const auto seg = Segment::make(rho, Rat(0), Rat(m - 1));
    if (tadic_expand_L(seg).size() != std::size_t{1} << (m - 1)) return false;
    if (tadic_expand_Z(seg).size() != std::size_t{1} << (m - 1)) return false;
    const auto unit = GrothendieckElement::single(ProductTerm::make({seg}));
    if (expand_linearly(tadic_expand_L(seg), tadic_expand_Z) != unit)
      return false;
    if (expand_linearly(tadic_expand_Z(seg), tadic_expand_L) != unit)
      return false;
  }
  detail = "m <= 6, both directions, term counts 2^{m-1}";
  return true;
}

bool criterion10_identity_checkers(std::string& detail) {
  const auto outcomes = run_identity_sweep(8, 8);
  std::size_t failures = 0;
  for (const auto& o : outcomes)
    if (!o.pass) ++failures;
  detail = std::to_string(outcomes.size()) + " cases, " +
           std::to_string(failures) + " failures";
  return failures == 0;
}

bool criterion11_multiplicities(std::string& detail) {
  std::size_t checked = 0;
  for (std::int64_t n = 1; n <= 6; ++n) {
    const auto model = LocalFieldModel::make(smallest_prime_power_1_mod(n), n);
    for (std::int64_t r = 1; r <= 6; ++r)
      for (std::int64_t c = 0; c <= 5; ++c) {
        const auto cover = CoverParams::make(r, n, c);
        for (const auto& parts : compositions(r)) {
          const auto beta = Composition::make(parts);
          // Integrality is asserted inside; a throw fails the criterion.
          const Int nb = n_beta(cover, model, beta);
          const Int mb = m_beta(cover, model, beta);
          const Int Mb = M_beta(cover, model, beta);
          (void)mb;
          Int prod_m = 1;
          for (auto ri : parts)
            prod_m *= m_beta(CoverParams::make(ri, n, c), model,
                             Composition::make({ri}));
          if (Mb != nb * prod_m) return false;
          ++checked;
        }
        if (!torus_lift_multiplicity_check(cover, model)) return false;
      }
  }
  detail = std::to_string(checked) + " compositions, torus case included";
  return true;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "brute-force oracle equals closed form on the full tame sweep",
       120.0, criterion1_oracle_equals_closed},
      {2, "hand-verified anchors (n=2,c=0,r0=1,m=2): 3 and 1", 120.0,
       criterion2_hand_anchors},
      {3, "exceptional representations: dim_Z(k=n) = 1, dim_Z(k=n+1) = 0",
       120.0, criterion3_exceptional},
      {4, "cuspidal case: dim = n/d_r, closed and oracle", 120.0,
       criterion4_cuspidal},
      {5, "metaplectic GL_2 principal series dimension 4 = [F^x:F^x2]", 120.0,
       criterion5_gl2_principal_series},
      {6, "Hilbert symbol axioms, exhaustive over q in {5,7,11,13}", 10.0,
       criterion6_hilbert_suite},
      {7, "cocycle identity on torus triples (q=7, n=3, r<=3)", 120.0,
       criterion7_cocycle_identity},
      {8, "center criterion: membership iff all commutators trivial", 120.0,
       criterion8_center_criterion},
      {9, "Tadic L<->Z double expansion is the identity (m<=6)", 120.0,
       criterion9_tadic_involution},
      {10, "identity checkers pass for n<=8, s|n, m,k<=8", 30.0,
       criterion10_identity_checkers},
      {11, "multiplicity integrality and M_beta = n_beta*prod m_{(r_i)}",
       120.0, criterion11_multiplicities},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
      ok = criterion.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
      ok = false;
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (elapsed > criterion.budget_seconds) {
      ok = false;
      detail += " [over budget]";
    }
    std::printf("%s  criterion %2d (%.2fs): %s%s%s\n", ok ? "PASS" : "FAIL",
                criterion.number, elapsed, criterion.title.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) FAILED\n", failures);
  return failures == 0 ? 0 : 1;
}
