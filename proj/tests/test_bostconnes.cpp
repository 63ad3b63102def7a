#include <gtest/gtest.h>

#include <random>

#include "nnx/bostconnes.hpp"
#include "nnx/states.hpp"

using namespace nnx;

namespace {

DirichletCharacter chi4() { return DirichletCharacter::from_generator(4, 3, Rational(1, 2)); }

bool coprime_to(Int m, const PrimeSet& E)
{
    for (UInt p : E) {
        if (m % static_cast<Int>(p) == 0) return false;
    }
    return true;
}

// phi_Q(P_j) for the Gibbs state on l2(N^x), Q the projection onto n coprime
// to E and P_j onto the multiples of j, summed directly.
Real brute_conditional(Int j, const PrimeSet& E, Real beta, Int M)
{
    Real top = 0, bottom = 0;
    for (Int m = M; m >= 1; --m) {
        if (!coprime_to(m, E)) continue;
        Real w = std::pow(static_cast<Real>(m), -beta);
        bottom += w;
        if (m % j == 0) top += w;
    }
    return top / bottom;
}

}  // namespace

TEST(Characters, Construction)
{
    auto chi = chi4();
    EXPECT_LT(std::abs(chi.value_at(1) - Complex(1)), 1e-18L);
    EXPECT_LT(std::abs(chi.value_at(3) - Complex(-1)), 1e-18L);
    EXPECT_FALSE(chi.is_trivial());
    EXPECT_TRUE(DirichletCharacter::trivial(4).is_trivial());
    EXPECT_THROW(DirichletCharacter(4, {{1, 0}, {3, Rational(1, 3)}}), std::invalid_argument);
    EXPECT_THROW(DirichletCharacter(4, {{1, 0}}), std::invalid_argument);
    EXPECT_THROW(DirichletCharacter::from_generator(8, 3, Rational(1, 2)), std::invalid_argument);
    EXPECT_THROW(DirichletCharacter(101, {}), std::invalid_argument);
    EXPECT_THROW(char_at_un(chi, 6), std::invalid_argument);
    auto chi7 = DirichletCharacter::from_generator(7, 3, Rational(1, 6));
    EXPECT_LT(std::abs(chi7.value_at(2) - unit_root(Rational(1, 3))), 1e-18L);
}

TEST(Characters, CompletelyMultiplicative)
{
    auto chi7 = DirichletCharacter::from_generator(7, 3, Rational(1, 6));
    std::mt19937_64 rng(37);
    for (const auto& chi : {chi4(), chi7}) {
        for (int i = 0; i < 1000; ++i) {
            Int m = static_cast<Int>(rng() % 5000 + 1), n = static_cast<Int>(rng() % 5000 + 1);
            if (gcd(m * n, chi.modulus()) != 1) continue;
            ASSERT_LT(std::abs(char_at_un(chi, m * n) - char_at_un(chi, m) * char_at_un(chi, n)), 1e-15L);
        }
    }
}

TEST(EulerSums, SeriesAgreesWithInvertedProduct)
{
    const PrimeSet E{3, 5, 7, 11, 13};
    for (Real beta : {0.5L, 1.0L, 2.0L}) {
        auto s = char_euler_sum(chi4(), E, beta, 100000);
        EXPECT_LE(std::abs(s.series - s.product), s.tail_bound) << static_cast<double>(beta);
        EXPECT_GT(s.terms, 100u);
    }
    auto small = char_euler_sum(chi4(), {3}, 2, 1000);
    EXPECT_EQ(small.terms, 7u);  // 1, 3, ..., 729
    EXPECT_LT(std::abs(small.product - Complex(Real(9) / 10)), 1e-18L);
    EXPECT_THROW(char_euler_sum(chi4(), {2, 3}, 1, 100), std::invalid_argument);
}

TEST(EulerSums, InvarianceRatio)
{
    for (Real r : invariance_ratio(DirichletCharacter::trivial(4), 1, 40)) EXPECT_NEAR(static_cast<double>(r), 1, 1e-15);
    auto ratios = invariance_ratio(chi4(), 1, 40);
    ASSERT_EQ(ratios.size(), 40u);
    EXPECT_LT(ratios.back(), 0.2L);
    EXPECT_LT(ratios.back(), ratios[9]);
    EXPECT_LT(ratios[9], ratios[0]);
}

TEST(Reconstruction, ConjugatedProjections)
{
    // mu_n^* P_k mu_n = P_{k / gcd(k, n)} on the basis of l2(N^x).
    for (Int n = 1; n <= 30; ++n) {
        for (Int k = 1; k <= 30; ++k) {
            const Int reduced = k / gcd(k, n);
            for (Int m = 1; m <= 200; ++m) {
                bool conjugated = (n * m) % k == 0;
                ASSERT_EQ(conjugated, m % reduced == 0);
            }
        }
    }
}

TEST(Reconstruction, BruteForceGibbsSums)
{
    const PrimeSet E{2, 3};
    const Real beta = 4;
    ProjectionCombination element{{1, 0.5L}, {6, 2.0L}, {10, -1.0L}, {12, 0.25L}};
    auto r = bc_reconstruct_check(E, beta, element);
    EXPECT_LE(r.defect, 1e-12L);
    // Right side summed directly: E-smooth n up to 10^4, phi_Q by brute force.
    Real rhs = 0, zE = 0;
    for (Int n = 1; n <= 10000; ++n) {
        Int rest = n;
        for (UInt p : E) {
            while (rest % static_cast<Int>(p) == 0) rest /= static_cast<Int>(p);
        }
        if (rest != 1) continue;
        const Real w = std::pow(static_cast<Real>(n), -beta);
        zE += w;
        for (const auto& [k, c] : element) rhs += w * c * brute_conditional(k / gcd(k, n), E, beta, 20000);
    }
    rhs /= zE;
    EXPECT_NEAR(static_cast<double>(rhs), static_cast<double>(r.lhs), 1e-10);
    EXPECT_NEAR(static_cast<double>(r.rhs), static_cast<double>(r.lhs), 1e-12);
}

TEST(Reconstruction, Family)
{
    const PrimeSet E{2, 3, 5, 7};
    for (Real beta : {1.5L, 2.0L, 3.0L}) {
        for (Int k = 1; k <= 60; ++k) EXPECT_LE(bc_reconstruct_check(E, beta, {{k, 1}}).defect, 1e-9L) << k;
    }
    EXPECT_THROW(bc_reconstruct_check(E, 1, {{1, 1}}), std::invalid_argument);
    EXPECT_THROW(bc_reconstruct_check(E, 2, {{0, 1}}), std::invalid_argument);
}
