#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nnx/representation.hpp"
#include "nnx/states.hpp"

using namespace nnx;

namespace {

PsiBetaMu psi_mu(Real beta, CircleMeasure mu) { return PsiBetaMu{beta, std::move(mu)}; }

CircleMeasure two_atom() { return CircleMeasure::atoms({{Rational(1, 5), Rational(1, 3)}, {Rational(1, 2), Rational(2, 3)}}); }

}  // namespace

TEST(Measures, Moments)
{
    auto mu = two_atom();
    EXPECT_LT(std::abs(mu.moment(0) - Complex(1)), 1e-18L);
    EXPECT_LT(std::abs(mu.moment(2) - (Real(1) / 3 * unit_root(Rational(2, 5)) + Real(2) / 3)), 1e-18L);
    EXPECT_EQ(CircleMeasure::lebesgue().moment(3), Complex(0));
    EXPECT_EQ(*CircleMeasure::point(Rational(1, 4)).exact_moment(3), ComplexRational(0, -1));
    EXPECT_FALSE(CircleMeasure::point(Rational(1, 3)).exact_moment(1));
    EXPECT_THROW(CircleMeasure::atoms({{0, Rational(1, 2)}}), std::invalid_argument);
    EXPECT_THROW(CircleMeasure::atoms({{0, Rational(1, 2)}, {1, Rational(1, 2)}}), std::invalid_argument);
}

TEST(States, PsiBetaValues)
{
    StateEvaluator phi(PsiBeta{2});
    EXPECT_EQ(*phi.exact(Monomial(3, 5, 5, 3)), ComplexRational(Rational(1, 25), 0));
    EXPECT_EQ(*phi.exact(Monomial(3, 5, 5, 2)), ComplexRational(0));
    EXPECT_EQ(phi(Monomial(1, 2, 3, 1)), Complex(0));
    StateEvaluator half(PsiBeta{1.5L});
    for (Int a = 1; a <= 30; ++a) {
        for (Int k = 0; k <= 5; ++k) {
            EXPECT_NEAR(static_cast<double>(half(Monomial(k, a, a, k)).real()), std::pow(a, -1.5), 1e-12);
        }
    }
    EXPECT_THROW(phi(Monomial::zero()), std::invalid_argument);
    EXPECT_THROW(StateEvaluator(PsiBeta{0.5L}), std::invalid_argument);
    EXPECT_THROW(StateEvaluator(psi_mu(2, CircleMeasure::lebesgue())), std::invalid_argument);
}

TEST(States, PsiBetaMuAtIdentityPoint)
{
    // For mu = delta_1 the state on s^n is sum_{x | n} x^{1-beta} / zeta(beta-1).
    StateEvaluator phi(psi_mu(3, CircleMeasure::point(0)));
    const Real z2 = std::numbers::pi_v<Real> * std::numbers::pi_v<Real> / 6;
    EXPECT_NEAR(static_cast<double>(phi(s_power(6)).real()), static_cast<double>((1 + 0.25L + 1 / 9.0L + 1 / 36.0L) / z2),
                1e-15);
    EXPECT_NEAR(static_cast<double>(phi(Monomial(4, 2, 2, 0)).real()), static_cast<double>((0.25L + 1 / 16.0L) / (2 * z2)),
                1e-15);
    EXPECT_EQ(phi(Monomial(3, 2, 2, 0)), Complex(0));
}

TEST(States, KmsOnSmallGrid)
{
    auto grid = monomial_grid(3);
    std::vector<StateSpec> specs{PsiBeta{1}, PsiBeta{1.5L}, PsiBeta{2}, psi_mu(2.5L, two_atom()),
                                 psi_mu(3, CircleMeasure::point(Rational(1, 3)))};
    for (const auto& spec : specs) {
        StateEvaluator phi(spec);
        const Real beta = phi.beta();
        for (const auto& X : grid) {
            ASSERT_LE(kms_characterisation_check(phi, X, beta), 1e-9L);
            for (const auto& Y : grid) ASSERT_LE(kms_defect(phi, X, Y, beta), 1e-9L);
        }
    }
}

TEST(States, KmsDetectsWrongTemperature)
{
    StateEvaluator phi(PsiBeta{2});
    EXPECT_GT(kms_defect(phi, gen_v(2), gen_v_star(2), 3), 0.1L);
}

TEST(States, LebesgueMatchesPsiBeta)
{
    for (Real beta : {2.5L, 3.0L, 4.0L}) {
        StateEvaluator leb(psi_mu(beta, CircleMeasure::lebesgue())), plain(PsiBeta{beta});
        for (const auto& x : monomial_grid(5)) ASSERT_LT(std::abs(leb(x) - plain(x)), 1e-15L) << to_string(x);
    }
}

TEST(States, WeakStarLimitWithinBound)
{
    // |psi_{beta,mu} - psi_{inf,mu}| <= 2 (1 - 1/zeta(beta-1)) away from a = b > 1, m = n,
    // where the gap is a^{-beta} instead.
    auto mu = two_atom();
    StateEvaluator limit(psi_mu(kInfiniteBeta, mu));
    for (Real beta : {3.0L, 5.0L, 10.0L, 20.0L}) {
        StateEvaluator phi(psi_mu(beta, mu));
        const Real bound = std::max(2 * (1 - 1 / zeta(beta - 1, 1e-15L).value), std::pow(Real(2), -beta));
        Real worst = 0;
        for (const auto& x : monomial_grid(5)) worst = std::max(worst, std::abs(phi(x) - limit(x)));
        EXPECT_LE(worst, bound * (1 + 1e-12L)) << beta;
    }
    EXPECT_EQ(limit(Monomial(1, 1, 1, 1)), Complex(1));
}

TEST(States, RecoverMoments)
{
    StateEvaluator phi(psi_mu(3, two_atom()));
    auto moments = recover_moments(phi, 12);
    for (Int k = 1; k <= 12; ++k) {
        EXPECT_LT(std::abs(moments[static_cast<std::size_t>(k - 1)] - two_atom().moment(k)), 1e-9L) << k;
    }
}

TEST(States, GroundStates)
{
    auto grid = monomial_grid(4);
    std::vector<ToeplitzState> omegas{VectorState{0}, VectorState{3}, EvaluationState{Rational(1, 3)}};
    for (const auto& omega : omegas) {
        StateEvaluator phi(Ground{omega});
        for (const auto& X : grid) {
            EXPECT_TRUE(ground_check(phi, X));
            for (const auto& Y : grid) EXPECT_TRUE(ground_pair_check(phi, Y, X));
        }
    }
    StateEvaluator vec(Ground{VectorState{2}});
    EXPECT_EQ(vec(Monomial(2, 1, 1, 2)), Complex(1));
    EXPECT_EQ(vec(Monomial(3, 1, 1, 3)), Complex(0));
    EXPECT_EQ(vec(Monomial(0, 2, 2, 0)), Complex(0));
}

TEST(States, BelowOneHasNoKmsState)
{
    for (Real beta : {0.0L, 0.25L, 0.5L, 0.9L}) {
        for (Int a : {2, 3, 5}) EXPECT_GT(no_kms_witness(beta, a), 0);
    }
    EXPECT_THROW(no_kms_witness(1, 2), std::invalid_argument);
}

TEST(Measure, CylinderSeries)
{
    for (Real beta : {1.5L, 2.0L, 3.0L}) {
        for (Int a = 1; a <= 30; ++a) {
            for (Int m : {0, 7}) {
                auto s = measure_cylinder(beta, m, a);
                EXPECT_LE(std::abs(s.value - std::pow(static_cast<Real>(a), -beta)), s.tail_bound + 1e-17L);
                EXPECT_LE(s.tail_bound, 1e-14L);
            }
        }
    }
}

TEST(Measure, PartitionFunction)
{
    auto s = partition_sum(3, 10000);
    const Real z2 = std::numbers::pi_v<Real> * std::numbers::pi_v<Real> / 6;
    EXPECT_LE(std::abs(s.value - z2), s.tail_bound);
    EXPECT_LT(std::abs(zeta(2, 1e-15L).value - z2), 1e-6L);
}

TEST(Reconstruction, ConditionalMassExact)
{
    const PrimeSet E{2, 3, 5};
    EXPECT_EQ(conditional_mass_exact(3, E), Rational(3, 4) * Rational(8, 9) * Rational(24, 25));
    EXPECT_NEAR(static_cast<double>(conditional_mass(3, E)), 0.64, 1e-15);
}

TEST(Reconstruction, ConditionalStateMatchesCompressedTrace)
{
    // phi(Q s^k Q) / phi(Q) on l2(X), with Q the projection onto x coprime to E.
    const PrimeSet E{2, 3};
    const Int N = 400;
    for (const auto& z : {Rational(0), Rational(1, 3)}) {
        StateEvaluator phi(psi_mu(4, CircleMeasure::point(z)));
        auto mass = trace_state(TraceProfile(Monomial(), z, N, &E), 4);
        for (Int k = 0; k <= 12; ++k) {
            auto top = trace_state(TraceProfile(s_power(k), z, N, &E), 4);
            Complex expected = conditional_state_sk(phi, E, k);
            Real tolerance = (top.tail_bound + mass.tail_bound) / (mass.value.real() - mass.tail_bound) * 2;
            EXPECT_LE(std::abs(top.value / mass.value - expected), tolerance) << k;
        }
    }
}

TEST(Reconstruction, ExactAndMomentLimit)
{
    const PrimeSet E{2, 3, 5, 7};
    StateEvaluator phi(psi_mu(3, two_atom()));
    for (Int n = 0; n <= 30; ++n) EXPECT_LE(reconstruct_sn(phi, E, n).defect, 1e-12L) << n;
    Real worst = 0;
    for (Int n = 1; n <= 30; ++n) worst = std::max(worst, reconstruct_sn(phi, E, n, ConditionalModel::MomentLimit).defect);
    EXPECT_GT(worst, 1e-4L);  // the moment model is only the large-E limit
}

TEST(Positivity, GramMatrices)
{
    std::mt19937_64 rng(31);
    std::vector<StateSpec> specs{PsiBeta{1.5L}, psi_mu(3, two_atom()), Ground{EvaluationState{Rational(1, 7)}}};
    for (const auto& spec : specs) {
        StateEvaluator phi(spec);
        for (int trial = 0; trial < 5; ++trial) {
            std::vector<Monomial> family;
            for (int i = 0; i < 10; ++i) {
                family.emplace_back(static_cast<Int>(rng() % 5), static_cast<Int>(rng() % 4 + 1),
                                    static_cast<Int>(rng() % 4 + 1), static_cast<Int>(rng() % 5));
            }
            EXPECT_GE(gram_matrix(phi, family).min_eigenvalue, -1e-8L);
        }
    }
}
