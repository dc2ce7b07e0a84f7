#include "kpcover/cover.hpp"

#include <gtest/gtest.h>

#include <vector>

using namespace kpc;

namespace {

std::vector<FieldClass> class_generators(const LocalFieldModel& m) {
  return {FieldClass::make(m, 0, 0), FieldClass::make(m, 1, 0),
          FieldClass::make(m, 0, 1), FieldClass::make(m, 1, 1)};
}

/// All torus elements of rank r with entries drawn from the generator set.
std::vector<TorusClass> torus_generating_set(const LocalFieldModel& m,
                                             std::int64_t r) {
  const auto gens = class_generators(m);
  std::vector<TorusClass> out;
  std::vector<std::size_t> pick(static_cast<std::size_t>(r), 0);
  while (true) {
    std::vector<FieldClass> entries;
    for (auto i : pick) entries.push_back(gens[i]);
    out.push_back(TorusClass::make(entries));
    std::size_t pos = 0;
    while (pos < pick.size() && ++pick[pos] == gens.size()) pick[pos++] = 0;
    if (pos == pick.size()) break;
  }
  return out;
}

}  // namespace

TEST(CoverParams, GcdInvariants) {
  EXPECT_EQ(d_r(CoverParams::make(3, 4, 1)), 4);  // gcd(4, 8)
  for (std::int64_t c = 0; c < 6; ++c) {
    // n | r forces 2rc + r - 1 = -1 mod n, so d_r = 1.
    EXPECT_EQ(d_r(CoverParams::make(6, 3, c)), 1);
    EXPECT_EQ(d_r(CoverParams::make(4, 2, c)), 1);
  }
  EXPECT_EQ(d_r(CoverParams::make(5, 1, 0)), 1);
  EXPECT_EQ(d_prime_r(CoverParams::make(5, 1, 0)), 1);
  EXPECT_EQ(d_prime_r(CoverParams::make(6, 4, 2)), 2);
}

TEST(CoverParams, TwistReducedModN) {
  EXPECT_EQ(CoverParams::make(2, 3, 5).c, 2);
  EXPECT_EQ(CoverParams::make(2, 3, -1).c, 2);
  // Any lift of c gives the same gcd.
  EXPECT_EQ(d_r(CoverParams::make(2, 3, 5)), d_r(CoverParams::make(2, 3, 2)));
}

TEST(CenterMembership, FrozenExamples) {
  {
    const auto cover = CoverParams::make(2, 2, 0);  // exponent 2rc+r-1 = 1
    const auto m = LocalFieldModel::make(3, 2);
    EXPECT_TRUE(center_membership(cover, m, FieldClass::make(m, 0, 0)));
    EXPECT_FALSE(center_membership(cover, m, FieldClass::make(m, 1, 0)));
  }
  {
    const auto cover = CoverParams::make(3, 3, 0);  // exponent = 2 = -1 mod 3
    const auto m = LocalFieldModel::make(7, 3);
    EXPECT_TRUE(center_membership(cover, m, FieldClass::make(m, 0, 3)));
  }
}

TEST(TorusCocycle, FrozenExamples) {
  const auto m = LocalFieldModel::make(7, 3);
  // r = 1 reduces to c·h(x, y).
  for (std::int64_t c = 0; c < 3; ++c) {
    const auto cover = CoverParams::make(1, 3, c);
    const auto x = TorusClass::make({FieldClass::make(m, 1, 0)});
    const auto y = TorusClass::make({FieldClass::make(m, 0, 1)});
    const auto h = hilbert_symbol(m, x.entries[0], y.entries[0]);
    EXPECT_EQ(torus_cocycle(cover, m, x, y).exponent,
              mod_reduce(c * h.exponent, 3));
  }
  // All unramified units: every tame symbol vanishes.
  {
    const auto cover = CoverParams::make(3, 3, 2);
    const auto u = TorusClass::make({FieldClass::make(m, 0, 1),
                                     FieldClass::make(m, 0, 4),
                                     FieldClass::make(m, 0, 2)});
    EXPECT_EQ(torus_cocycle(cover, m, u, u).exponent, 0);
  }
  // q=7, n=3, c=0, r=2: x = diag(pi, 1), y = diag(1, g) leaves the single
  // factor (c+1)·h(pi, g) = 2.
  {
    const auto cover = CoverParams::make(2, 3, 0);
    const auto x = TorusClass::make(
        {FieldClass::make(m, 1, 0), FieldClass::make(m, 0, 0)});
    const auto y = TorusClass::make(
        {FieldClass::make(m, 0, 0), FieldClass::make(m, 0, 1)});
    EXPECT_EQ(torus_cocycle(cover, m, x, y).exponent, 2);
    EXPECT_EQ(commutator_torus(cover, m, x, y).exponent, 2);
    EXPECT_EQ(commutator_torus(cover, m, x, x).exponent, 0);
  }
}

TEST(TorusCocycle, CocycleIdentity) {
  const auto m = LocalFieldModel::make(7, 3);
  for (std::int64_t r = 1; r <= 2; ++r) {
    const auto elements = torus_generating_set(m, r);
    for (std::int64_t c = 0; c < 3; ++c) {
      const auto cover = CoverParams::make(r, 3, c);
      for (const auto& x : elements)
        for (const auto& y : elements)
          for (const auto& z : elements) {
            const auto lhs = torus_cocycle(cover, m, x, y) *
                             torus_cocycle(cover, m, x.mul(m, y), z);
            const auto rhs = torus_cocycle(cover, m, x, y.mul(m, z)) *
                             torus_cocycle(cover, m, y, z);
            EXPECT_EQ(lhs.exponent, rhs.exponent);
          }
    }
  }
}

TEST(CenterMembership, MatchesCommutatorTriviality) {
  // Unit-scale shadow of the acceptance criterion: r <= 3, n in {2, 3}.
  for (std::int64_t n : {2, 3}) {
    const auto m = LocalFieldModel::make(n == 2 ? 3 : 7, n);
    for (std::int64_t r = 1; r <= 3; ++r)
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
            EXPECT_EQ(center_membership(cover, m, lambda), all_trivial)
                << "n=" << n << " r=" << r << " c=" << c << " v=" << v
                << " e=" << e;
          }
      }
  }
}

TEST(Multiplicities, FrozenExamples) {
  {
    const auto cover = CoverParams::make(2, 3, 2);
    const auto m = LocalFieldModel::make(7, 3);
    EXPECT_EQ(d_r(cover), 3);  // gcd(3, 9)
    EXPECT_EQ(n_beta(cover, m, Composition::make({1, 1})), 3);
  }
  {
    const auto cover = CoverParams::make(2, 2, 0);
    const auto m = LocalFieldModel::make(3, 2);
    EXPECT_EQ(n_beta(cover, m, Composition::make({2})), 1);
    EXPECT_EQ(m_beta(cover, m, Composition::make({2})), 4);
  }
  {
    const auto cover = CoverParams::make(3, 1, 0);
    const auto m = LocalFieldModel::make(2, 1);
    for (const auto& parts :
         {std::vector<std::int64_t>{3}, {1, 2}, {1, 1, 1}}) {
      const auto beta = Composition::make(parts);
      EXPECT_EQ(n_beta(cover, m, beta), 1);
      EXPECT_EQ(m_beta(cover, m, beta), 1);
      EXPECT_EQ(M_beta(cover, m, beta), 1);
    }
  }
}

TEST(Multiplicities, StructuralIdentities) {
  // M_beta = n_beta · prod_i m_{(r_i)}, restriction bookkeeping, and the
  // index identity, over compositions of r <= 6, n <= 6.
  for (std::int64_t n = 1; n <= 6; ++n) {
    const auto model =
        LocalFieldModel::make(smallest_prime_power_1_mod(n), n);
    for (std::int64_t r = 1; r <= 6; ++r)
      for (std::int64_t c = 0; c < n; ++c) {
        const auto cover = CoverParams::make(r, n, c);
        for (const auto& parts : compositions(r)) {
          const auto beta = Composition::make(parts);
          const Int nb = n_beta(cover, model, beta);
          const Int mb = m_beta(cover, model, beta);
          const Int Mb = M_beta(cover, model, beta);
          Int prod_m_blocks = 1;
          for (auto ri : parts) {
            const auto block = CoverParams::make(ri, n, c);
            prod_m_blocks *=
                m_beta(block, model, Composition::make({ri}));
          }
          EXPECT_EQ(Mb, nb * prod_m_blocks);
          // Mackey bookkeeping:
          //   prod_i d_F(d_{r_i}) · M_beta · [F^{x n/d_r} : F^{x n}]
          //     = d_F(d_r) · [F^x : F^{x n}]^k.
          const std::int64_t dr = d_r(cover);
          Int lhs = Mb;
          for (auto ri : parts) lhs *= Int(d_r_block(cover, ri));
          const Int rel_index =
              index_power_subgroup(model, n) /
              index_power_subgroup(model, n / dr);
          lhs *= rel_index;
          Int rhs = dr;
          rhs *= pow_int(index_power_subgroup(model, n),
                         static_cast<std::int64_t>(parts.size()));
          EXPECT_EQ(lhs, rhs);
          // Index identity inside the multiplicity proposition:
          //   n_beta^2 · [F^{x n/d_r} : F^{x n}]
          //     = prod_i [F^x : F^{x n/d'_{r_i}}].
          Int lhs2 = nb * nb * rel_index;
          Int rhs2 = 1;
          for (auto ri : parts)
            rhs2 *= index_power_subgroup(model,
                                         n / d_prime_r_block(cover, ri));
          EXPECT_EQ(lhs2, rhs2);
          EXPECT_GT(mb, 0);
        }
      }
  }
}

TEST(Multiplicities, TorusLiftCheck) {
  EXPECT_TRUE(torus_lift_multiplicity_check(CoverParams::make(2, 2, 0),
                                            LocalFieldModel::make(3, 2)));
  EXPECT_TRUE(torus_lift_multiplicity_check(CoverParams::make(2, 3, 2),
                                            LocalFieldModel::make(7, 3)));
  EXPECT_TRUE(torus_lift_multiplicity_check(CoverParams::make(3, 1, 0),
                                            LocalFieldModel::make(2, 1)));
}

TEST(Compositions, CountAndSum) {
  for (std::int64_t m = 1; m <= 10; ++m) {
    const auto cs = compositions(m);
    EXPECT_EQ(cs.size(), std::size_t{1} << (m - 1));
    for (const auto& parts : cs) {
      std::int64_t sum = 0;
      for (auto p : parts) sum += p;
      EXPECT_EQ(sum, m);
    }
  }
}
