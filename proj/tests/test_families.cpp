#include "oracles.hpp"

#include <gtest/gtest.h>

#include <string>

using namespace flagforge;

namespace {

std::string pw(const char* var, int e) { return e == 1 ? std::string(var) : std::string(var) + "^" + std::to_string(e); }

// The displayed expansion of omega, typed in as text.
PForm displayed_omega(int k) {
  const std::string text = pw("z3", k + 1) + " dz0 + (" + pw("z2", k + 1) + " + " + pw("z0", k) + "*z3) dz1 - z1*" +
                           pw("z2", k) + " dz2 + (-z0*" + pw("z3", k) + " - " + pw("z0", k) + "*z1) dz3";
  return parse_form(text, 4);
}

MultiVector displayed_field(int k) {
  const std::string text = "z1*" + pw("z2", k) + " d/dz0 + (z0*" + pw("z3", k) + " + " + pw("z0", k) + "*z1) d/dz1 + " +
                           pw("z3", k + 1) + " d/dz2 + (" + pw("z2", k + 1) + " + " + pw("z0", k) + "*z3) d/dz3";
  return parse_multivector(text, 4, 1);
}

Poly sum_of_squares(std::size_t nvars) {
  Poly f(nvars);
  for (std::size_t i = 1; i < nvars; ++i) f += Poly::variable(nvars, i) * Poly::variable(nvars, i);
  return f;
}

}  // namespace

TEST(Antisym, ReproducesDisplayedExpansions) {
  for (int k = 1; k <= 5; ++k) {
    const auto ex = antisym_example(k);
    EXPECT_EQ(ex.omega, displayed_omega(k)) << k;
    EXPECT_EQ(ex.field, displayed_field(k)) << k;
  }
  EXPECT_THROW(antisym_example(0), std::invalid_argument);
}

TEST(Antisym, EulerTangencyAndDegrees) {
  for (int k = 1; k <= 5; ++k) {
    const auto ex = antisym_example(k);
    EXPECT_TRUE(contract(radial_field(4), ex.omega).is_zero());
    EXPECT_TRUE(contract(ex.field, ex.omega).is_zero());
    EXPECT_EQ(descend_form(ex.omega, 3).degree(), k);
    EXPECT_EQ(fields_distribution({ex.field}, 3).total_degree(), k + 1);
  }
}

TEST(Homogenize, Examples) {
  const Poly f = parse_poly("z1^2 + z2^2", 3);
  EXPECT_EQ(homogenize(f, 2), f);
  EXPECT_EQ(homogenize(parse_poly("z1^2 + z2", 3), 2), parse_poly("z1^2 + z0*z2", 3));
  EXPECT_THROW(homogenize(parse_poly("z1^2 + 1", 3), 2), std::invalid_argument);
  EXPECT_THROW(homogenize(parse_poly("z1^3", 3), 2), std::invalid_argument);
  EXPECT_THROW(homogenize(parse_poly("z0*z1", 3), 2), std::invalid_argument);
}

TEST(HomogenizeProperty, DehomogenizationRoundTrip) {
  oracle::Gen gen(37);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t nvars = 5;
    const int k = gen.uniform(1, 4);
    Poly f(nvars);
    for (int e = 1; e <= k; ++e) {
      Poly part = gen.homogeneous(nvars, e, 2);
      for (const auto& [m, c] : part.terms()) {
        std::vector<std::uint32_t> exps(m.exponents().begin(), m.exponents().end());
        exps[1] += exps[0];  // move any z0 onto z1
        exps[0] = 0;
        f.add_term(Monomial(exps), c);
      }
    }
    if (f.total_degree() != k) continue;
    const Poly big_f = homogenize(f, k);
    EXPECT_EQ(big_f.homogeneous_degree().value(), k);
    EXPECT_EQ(dehomogenize(big_f), f);
    std::vector<Rational> pt{Rational(1)};
    for (std::size_t i = 1; i < nvars; ++i) pt.push_back(gen.coefficient());
    EXPECT_EQ(big_f.evaluate(pt), f.evaluate(pt));
  }
}

TEST(Kupka, SumOfSquaresOnP4) {
  const ProjDistribution d = kupka_form(sum_of_squares(5), 2, 4);
  EXPECT_EQ(d.degree(), 1);
  EXPECT_EQ(d.codim(), 1);
  EXPECT_TRUE(contract(radial_field(5), d.omega()).is_zero());
}

TEST(KupkaProperty, EulerRelationAndDegree) {
  oracle::Gen gen(41);
  for (int trial = 0; trial < 60; ++trial) {
    const int k = gen.uniform(1, 4);
    const std::size_t nvars = 5;
    Poly f = gen.homogeneous(nvars, k, 3);
    Poly g(nvars);
    for (const auto& [m, c] : f.terms()) {
      std::vector<std::uint32_t> exps(m.exponents().begin(), m.exponents().end());
      exps[2] += exps[0];
      exps[0] = 0;
      g.add_term(Monomial(exps), c);
    }
    if (g.total_degree() != k) continue;
    const PForm omega = kupka_omega(g, k, 4);
    // Oracle: i_theta dF = k F, so i_theta omega = z0 k F - k F z0 = 0.
    const Poly big_f = homogenize(g, k);
    EXPECT_EQ(contract(radial_field(nvars), differential(big_f)).component(0), Rational(k) * big_f);
    EXPECT_TRUE(contract(radial_field(nvars), omega).is_zero());
    EXPECT_EQ(descend_form(omega, 4).degree(), k - 1);
  }
}

TEST(Kupka, DOmegaNonzeroOnTheKupkaSet) {
  const Poly f = parse_poly("z1*z2 + z3*z4", 5);
  const ProjDistribution d = kupka_form(f, 2, 4);
  // Points with z0 = 0 and F = 0, away from the cone's vertex.
  const std::vector<std::vector<Rational>> pts{{0, 1, 0, 0, 0}, {0, 0, 1, 0, 0}, {0, 1, 0, 1, 0}, {0, 2, 3, -6, 1}};
  for (const auto& pt : pts) {
    EXPECT_TRUE(is_singular_point(d, pt));
    EXPECT_TRUE(is_kupka_point(d, pt));
  }
  // d omega = 3 dz0 ^ dF.
  EXPECT_EQ(exterior_derivative(d.omega()), Rational(3) * wedge(coordinate_differential(5, 0), differential(f)));
}

TEST(Hamiltonian, DisplayedPatterns) {
  using SP = SignedPartial;
  EXPECT_EQ(nominal_pattern(1, 4), (std::vector<SP>{{-1, 2}, {1, 1}, {-1, 4}, {1, 3}}));
  EXPECT_EQ(nominal_pattern(2, 4), (std::vector<SP>{{-1, 3}, {1, 4}, {-1, 1}, {1, 2}}));
  EXPECT_EQ(nominal_pattern(3, 4), (std::vector<SP>{{-1, 4}, {1, 3}, {-1, 2}, {1, 1}}));
  EXPECT_EQ(nominal_pattern(1, 6), (std::vector<SP>{{-1, 2}, {1, 1}, {-1, 4}, {1, 3}, {-1, 6}, {1, 5}}));
  EXPECT_EQ(nominal_pattern(5, 6), (std::vector<SP>{{-1, 6}, {1, 5}, {-1, 4}, {1, 3}, {-1, 2}, {1, 1}}));
  EXPECT_EQ(corrected_pattern(nominal_pattern(2, 4)), (std::vector<SP>{{-1, 3}, {-1, 4}, {1, 1}, {1, 2}}));
}

TEST(Hamiltonian, SumOfSquaresOnP4) {
  const auto cands = hamiltonian_fields(sum_of_squares(5), 4);
  ASSERT_EQ(cands.size(), 4U);
  EXPECT_TRUE(cands[0].valid);
  EXPECT_EQ(cands[1].index, 2);
  EXPECT_FALSE(cands[1].valid);
  EXPECT_EQ(cands[1].residue, parse_poly("-8*z1*z3 + 8*z2*z4", 5));
  EXPECT_EQ(cands[2].origin, PatternOrigin::corrected);
  EXPECT_TRUE(cands[2].valid);
  EXPECT_TRUE(cands[3].valid);
  EXPECT_EQ(cands[0].field, parse_multivector("-2*z2 d/dz1 + 2*z1 d/dz2 - 2*z4 d/dz3 + 2*z3 d/dz4", 5, 1));
}

TEST(HamiltonianProperty, ResiduesForGenericF) {
  oracle::Gen gen(43);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t nvars = 5;
    Poly f(nvars);
    for (std::size_t i = 1; i < nvars; ++i) f += gen.homogeneous(nvars, gen.uniform(1, 3), 1) * Poly::variable(nvars, i);
    f = dehomogenize(f);
    const auto cands = hamiltonian_fields(f, 4);
    const auto d = [&](std::size_t i) { return f.derivative(i); };
    const Poly expected = Rational(-2) * d(1) * d(3) + Rational(2) * d(2) * d(4);
    for (const auto& c : cands) {
      EXPECT_EQ(c.valid, c.residue.is_zero());
      if (c.index == 2 && c.origin == PatternOrigin::nominal) {
        EXPECT_EQ(c.residue, expected);
      } else {
        EXPECT_TRUE(c.valid);
      }
      // Tangent to the levels of f: X(f) is the residue.
      EXPECT_EQ(oracle::apply_field(field_components(c.field), f), c.residue);
    }
  }
}

TEST(HamiltonianProperty, EveryIndexValidatesOnP6) {
  oracle::Gen gen(47);
  for (int trial = 0; trial < 10; ++trial) {
    Poly f = dehomogenize(gen.homogeneous(7, 3, 5));
    if (f.is_zero()) continue;
    const auto valid = validated_fields(hamiltonian_fields(f, 6));
    ASSERT_EQ(valid.size(), 5U);
    for (const auto& c : valid) EXPECT_TRUE(c.residue.is_zero());
  }
}

TEST(Hamiltonian, BracketsAreComputedNotAssumed) {
  const auto valid = validated_fields(hamiltonian_fields(sum_of_squares(5), 4));
  const auto table = bracket_table(valid);
  ASSERT_EQ(table.size(), 3U);
  EXPECT_TRUE(table[0].vanishes);  // [H1, H2 corrected]
  EXPECT_TRUE(table[1].vanishes);  // [H1, H3]
  // [H2 corrected, H3] does not vanish for f = sum z_i^2.
  EXPECT_FALSE(table[2].vanishes);
  EXPECT_EQ(table[2].bracket, parse_multivector("-8*z2 d/dz1 + 8*z1 d/dz2 + 8*z4 d/dz3 - 8*z3 d/dz4", 5, 1));
}

TEST(Hamiltonian, Errors) {
  EXPECT_THROW(hamiltonian_fields(Poly(3), 2), std::invalid_argument);
  EXPECT_THROW(hamiltonian_fields(Poly(4), 4), DimensionMismatch);
  EXPECT_THROW(nominal_pattern(4, 4), std::out_of_range);
  EXPECT_THROW(hamiltonian_flag(sum_of_squares(5), 2, 4, {7}), std::invalid_argument);
}
