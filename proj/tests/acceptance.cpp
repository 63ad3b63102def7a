// Acceptance suite: one line per criterion. Usage: nnx_acceptance [criterion...]
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nnx/bostconnes.hpp"
#include "nnx/representation.hpp"
#include "nnx/spectrum.hpp"
#include "nnx/states.hpp"
#include "oracles.hpp"

using namespace nnx;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

// Collects the first failure and a running summary.
class Check {
public:
    void expect(bool ok, const std::string& what)
    {
        if (!ok && failure_.empty()) failure_ = what;
        ++count_;
    }
    void note(const std::string& text) { notes_ += (notes_.empty() ? "" : "; ") + text; }
    Outcome outcome() const
    {
        std::string detail = std::to_string(count_) + " checks";
        if (!notes_.empty()) detail += "; " + notes_;
        if (!failure_.empty()) detail += "; first failure: " + failure_;
        return {failure_.empty(), detail};
    }

private:
    long count_ = 0;
    std::string failure_;
    std::string notes_;
};

std::string sci(Real x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3Le", x);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

PrimeSet primes_through(UInt n)
{
    auto p = primes_up_to(n);
    return PrimeSet(p.begin(), p.end());
}

std::vector<CircleMeasure> criterion_measures()
{
    return {CircleMeasure::point(0), CircleMeasure::point(Rational(1, 4)), CircleMeasure::point(Rational(1, 3)),
            CircleMeasure::lebesgue(),
            CircleMeasure::atoms({{Rational(1, 5), Rational(1, 3)}, {Rational(1, 2), Rational(2, 3)}})};
}

std::vector<StateSpec> criterion_states()
{
    std::vector<StateSpec> out{PsiBeta{1}, PsiBeta{1.5L}, PsiBeta{2}};
    for (Real beta : {2.5L, 3.0L}) {
        for (const auto& mu : criterion_measures()) out.push_back(PsiBetaMu{beta, mu});
    }
    return out;
}

std::string describe(const StateSpec& spec)
{
    std::ostringstream out;
    if (const auto* p = std::get_if<PsiBeta>(&spec)) out << "psi_" << static_cast<double>(p->beta);
    else if (const auto* q = std::get_if<PsiBetaMu>(&spec)) out << "psi_" << static_cast<double>(q->beta) << ",mu";
    else out << "ground";
    return out.str();
}

Outcome relations()
{
    auto start = std::chrono::steady_clock::now();
    Check c;
    for (const auto& rel : toeplitz_relations(primes_through(47), 30)) {
        Monomial lhs = reduce(rel.lhs, ParseOptions{true});
        Monomial rhs = rel.rhs_kind == RelationInstance::Rhs::Zero       ? Monomial::zero()
                       : rel.rhs_kind == RelationInstance::Rhs::Identity ? Monomial()
                                                                          : reduce(rel.rhs, ParseOptions{true});
        c.expect(lhs == rhs, rel.name + ": " + rel.lhs + " -> " + to_string(lhs) + " vs " + to_string(rhs));
    }
    double t = seconds_since(start);
    c.expect(t < 10, "runtime " + std::to_string(t) + " s exceeds 10 s");
    return c.outcome();
}

Outcome euclid_join()
{
    auto start = std::chrono::steady_clock::now();
    Check c;
    for (Int cc = 1; cc <= 20; ++cc) {
        for (Int d = 1; d <= 20; ++d) {
            if (gcd(cc, d) != 1) continue;
            for (Int k = -100; k <= 100; ++k) {
                auto [alpha, beta] = oracle::euclid(cc, d, k);
                std::string where = "euclid(" + std::to_string(cc) + "," + std::to_string(d) + "," + std::to_string(k) + ")";
                c.expect(euclid_smallest(cc, d, k) == EuclidSolution{alpha, beta}, where);
                c.expect(euclid_smallest_direct(cc, d, k) == EuclidSolution{alpha, beta}, where + " direct");
            }
        }
    }
    for (Int m = 0; m < 30; ++m) {
        for (Int a = 1; a <= 12; ++a) {
            for (Int n = 0; n < 30; ++n) {
                for (Int b = 1; b <= 12; ++b) {
                    auto j = join({m, a}, {n, b});
                    auto brute = oracle::join(m, a, n, b);
                    bool same = j.has_value() == brute.has_value() &&
                                (!j || j->upper == SemigroupElement(brute->first, brute->second));
                    c.expect(same, "join " + to_string(SemigroupElement(m, a)) + " v " + to_string(SemigroupElement(n, b)));
                }
            }
        }
    }
    double t = seconds_since(start);
    c.expect(t < 5, "runtime " + std::to_string(t) + " s exceeds 5 s");
    return c.outcome();
}

Outcome rewriter_vs_representation()
{
    auto start = std::chrono::steady_clock::now();
    Check c;
    const auto grid = monomial_grid(5);
    std::vector<SemigroupElement> toeplitz_basis;
    for (Int j = 0; j <= 20; ++j) {
        for (Int cc = 1; cc <= 12; ++cc) toeplitz_basis.emplace_back(j, cc);
    }
    std::vector<XVector> x_basis;
    for (Int x = 1; x <= 36; ++x) {
        for (Int r = 0; r < x; ++r) x_basis.push_back({r, x, 0});
    }
    // R(e) once per right factor, then L(R(e)) against (LR)(e).
    std::vector<std::optional<SemigroupElement>> right_t(toeplitz_basis.size());
    std::vector<std::optional<XVector>> right_x(x_basis.size());
    long zeros = 0;
    for (const auto& R : grid) {
        for (std::size_t i = 0; i < toeplitz_basis.size(); ++i) right_t[i] = toeplitz_apply(R, toeplitz_basis[i]);
        for (std::size_t i = 0; i < x_basis.size(); ++i) right_x[i] = x_apply(R, x_basis[i]);
        for (const auto& L : grid) {
            const Monomial LR = L * R;
            zeros += LR.is_zero();
            for (std::size_t i = 0; i < toeplitz_basis.size(); ++i) {
                auto stepwise = right_t[i] ? toeplitz_apply(L, *right_t[i]) : std::nullopt;
                if (toeplitz_apply(LR, toeplitz_basis[i]) != stepwise) {
                    c.expect(false, "l2(NxN*): " + to_string(L) + " * " + to_string(R) + " on e" + to_string(toeplitz_basis[i]));
                }
            }
            for (std::size_t i = 0; i < x_basis.size(); ++i) {
                auto stepwise = right_x[i] ? x_apply(L, *right_x[i]) : std::nullopt;
                // Equal windings make the phases agree for every z.
                if (x_apply(LR, x_basis[i]) != stepwise) {
                    c.expect(false, "l2(X): " + to_string(L) + " * " + to_string(R) + " on e(" +
                                        std::to_string(x_basis[i].r) + "," + std::to_string(x_basis[i].x) + ")");
                }
            }
            c.expect(true, "");
        }
    }
    c.note(std::to_string(grid.size() * grid.size()) + " products (" + std::to_string(zeros) + " zero) on " +
           std::to_string(toeplitz_basis.size() + x_basis.size()) + " basis vectors");
    double t = seconds_since(start);
    c.note("runtime " + std::to_string(t) + " s");
    c.expect(t < 60, "runtime exceeds 60 s");
    return c.outcome();
}

Outcome kms_grid()
{
    auto start = std::chrono::steady_clock::now();
    Check c;
    const auto grid = monomial_grid(5);
    Real worst = 0;
    for (const auto& spec : criterion_states()) {
        StateEvaluator phi(spec);
        const Real beta = phi.beta();
        for (const auto& X : grid) {
            Real ch = kms_characterisation_check(phi, X, beta);
            worst = std::max(worst, ch);
            c.expect(ch <= 1e-9L, describe(spec) + " characterisation at " + to_string(X));
            for (const auto& Y : grid) {
                Real d = kms_defect(phi, X, Y, beta);
                worst = std::max(worst, d);
                if (d > 1e-9L) c.expect(false, describe(spec) + " KMS at " + to_string(X) + ", " + to_string(Y));
            }
        }
    }
    c.note("max defect " + sci(worst));
    double t = seconds_since(start);
    c.note("runtime " + std::to_string(t) + " s");
    c.expect(t < 120, "runtime exceeds 120 s");
    return c.outcome();
}

Outcome psi_values()
{
    Check c;
    for (Int beta : {1, 2, 3}) {
        StateEvaluator phi(PsiBeta{static_cast<Real>(beta)});
        for (Int a = 1; a <= 30; ++a) {
            Rational expected(1, 1);
            for (Int i = 0; i < beta; ++i) expected /= a;
            for (Int k = 0; k <= 10; ++k) {
                auto exact = phi.exact(Monomial(k, a, a, k));
                c.expect(exact && *exact == ComplexRational(expected, 0),
                         "psi_" + std::to_string(beta) + " at a=" + std::to_string(a));
            }
        }
    }
    StateEvaluator half(PsiBeta{1.5L});
    for (Int a = 1; a <= 30; ++a) {
        for (Int k = 0; k <= 10; ++k) {
            Real err = std::abs(half(Monomial(k, a, a, k)) - std::pow(static_cast<Real>(a), -1.5L));
            c.expect(err <= 1e-12L, "psi_1.5 at a=" + std::to_string(a));
        }
    }
    Real widest = 0;
    for (Real beta : {1.5L, 2.0L, 3.0L}) {
        for (Int a = 1; a <= 30; ++a) {
            for (Int m = 0; m < a; ++m) {
                auto s = measure_cylinder(beta, m, a);
                widest = std::max(widest, s.tail_bound);
                c.expect(std::abs(s.value - std::pow(static_cast<Real>(a), -beta)) <= s.tail_bound,
                         "cylinder a=" + std::to_string(a) + " m=" + std::to_string(m));
            }
        }
    }
    c.note("widest tail bound " + sci(widest));
    return c.outcome();
}

Outcome trace_cross_check()
{
    auto start = std::chrono::steady_clock::now();
    Check c;
    const auto grid = monomial_grid(5);
    Real worst_ratio = 0;
    for (const auto& z : {Rational(0), Rational(1, 4), Rational(1, 3)}) {
        std::vector<StateEvaluator> states;
        for (Real beta : {2.5L, 3.0L, 4.0L}) states.emplace_back(PsiBetaMu{beta, CircleMeasure::point(z)});
        for (const auto& x : grid) {
            TraceProfile profile(x, z, 500);
            for (const auto& phi : states) {
                auto t = trace_state(profile, phi.beta());
                Real err = std::abs(t.value - phi(x));
                worst_ratio = std::max(worst_ratio, err / t.tail_bound);
                c.expect(err <= t.tail_bound, to_string(x) + " at z=" + z.get_str() + " beta " + sci(phi.beta()));
            }
        }
    }
    c.note("max error / tail bound " + sci(worst_ratio));
    auto part = partition_sum(3, 10000);
    const Real z2 = std::numbers::pi_v<Real> * std::numbers::pi_v<Real> / 6;
    c.expect(std::abs(part.value - z2) <= part.tail_bound, "partition sum outside its tail bound");
    Real zeta_err = std::abs(zeta(2, target_error(64)).value - z2);
    c.expect(zeta_err <= 1e-6L, "zeta(2) vs pi^2/6");
    c.note("partition gap " + sci(std::abs(part.value - z2)) + " <= " + sci(part.tail_bound));
    c.note("runtime " + std::to_string(seconds_since(start)) + " s");
    return c.outcome();
}

Outcome positivity()
{
    Check c;
    std::mt19937_64 rng(2024);
    Real lowest = 1;
    for (const auto& spec : criterion_states()) {
        StateEvaluator phi(spec);
        for (int family_index = 0; family_index < 20; ++family_index) {
            std::vector<Monomial> family;
            const int size = static_cast<int>(rng() % 12) + 1;
            const std::vector<Int> parts{1, 2, 3, 4, 6};
            for (int i = 0; i < size; ++i) {
                family.emplace_back(static_cast<Int>(rng() % 6), parts[rng() % parts.size()], parts[rng() % parts.size()],
                                    static_cast<Int>(rng() % 6));
            }
            Real e = gram_matrix(phi, family).min_eigenvalue;
            lowest = std::min(lowest, e);
            c.expect(e >= -1e-8L, describe(spec) + " family " + std::to_string(family_index) + " eigenvalue " + sci(e));
        }
    }
    c.note("lowest eigenvalue " + sci(lowest));
    return c.outcome();
}

Outcome reconstruction()
{
    Check c;
    const PrimeSet E = primes_through(50);
    Real worst = 0;
    for (Int beta : {3, 4}) {
        for (const auto& mu : criterion_measures()) {
            StateEvaluator phi(PsiBetaMu{static_cast<Real>(beta), mu});
            for (Int n = 0; n <= 60; ++n) {
                Real d = reconstruct_sn(phi, E, n).defect;
                worst = std::max(worst, d);
                c.expect(d <= 1e-9L, "beta " + std::to_string(beta) + " n=" + std::to_string(n));
            }
        }
        Rational product(1);
        for (UInt p : E) {
            mpz_class power;
            mpz_ui_pow_ui(power.get_mpz_t(), p, static_cast<unsigned long>(beta - 1));
            product *= Rational(1) - Rational(1) / Rational(power);
        }
        product.canonicalize();
        c.expect(conditional_mass_exact(beta, E) == product, "conditional mass at beta " + std::to_string(beta));
        c.expect(std::abs(conditional_mass(static_cast<Real>(beta), E) - static_cast<Real>(product.get_d())) < 1e-15L,
                 "floating conditional mass");
    }
    c.note("max defect " + sci(worst));
    return c.outcome();
}

Outcome below_one()
{
    Check c;
    Real smallest = 1e9;
    for (Real beta : {0.0L, 0.25L, 0.5L, 0.9L}) {
        for (Int a : {2, 3, 5}) {
            Real w = no_kms_witness(beta, a);
            smallest = std::min(smallest, w);
            c.expect(w > 0, "beta " + sci(beta) + " a=" + std::to_string(a));
        }
    }
    c.note("smallest witness " + sci(smallest));
    return c.outcome();
}

Outcome ground_states()
{
    Check c;
    const auto grid = monomial_grid(5);
    std::vector<ToeplitzState> omegas;
    for (Int k = 0; k <= 5; ++k) omegas.push_back(VectorState{k});
    for (const auto& angle : {Rational(0), Rational(1, 4), Rational(1, 3), Rational(2, 7)}) omegas.push_back(EvaluationState{angle});
    for (const auto& omega : omegas) {
        StateEvaluator phi(Ground{omega});
        for (const auto& X : grid) {
            c.expect(ground_check(phi, X), "ground_check at " + to_string(X));
            for (const auto& Y : grid) {
                if (!ground_pair_check(phi, Y, X)) c.expect(false, "ground pair " + to_string(Y) + ", " + to_string(X));
            }
        }
    }
    Real worst = 0;
    std::string worst_at;
    for (const auto& mu : criterion_measures()) {
        StateEvaluator limit(PsiBetaMu{kInfiniteBeta, mu});
        c.expect(limit(Monomial(1, 1, 1, 1)) == Complex(1), "psi_inf(s s*) != 1");
        for (Real beta : {3.0L, 5.0L, 10.0L, 20.0L}) {
            StateEvaluator phi(PsiBetaMu{beta, mu});
            Real gap = 0;
            std::string at;
            for (const auto& x : grid) {
                Real d = std::abs(phi(x) - limit(x));
                if (d > gap) {
                    gap = d;
                    at = to_string(x);
                }
            }
            if (beta == 20 && gap > worst) {
                worst = gap;
                worst_at = at;
            }
        }
    }
    c.expect(worst <= 1e-6L, "weak* gap at beta 20 is " + sci(worst) + " at " + worst_at);
    c.note("weak* gap at beta 20: " + sci(worst));
    return c.outcome();
}

Outcome q_model()
{
    Check c;
    auto report = relation_suite(Model::Z, primes_through(13), 10000);
    for (const auto& e : report.entries) {
        c.expect(e.passed, e.relation + ": " + e.counterexample);
        c.note(e.relation + " x" + std::to_string(e.checked));
    }
    return c.outcome();
}

Outcome spectrum()
{
    Check c;
    std::mt19937_64 rng(99);
    const std::vector<UInt> small_primes{2, 3, 5, 7};
    auto random_N = [&] {
        std::map<UInt, Exponent> f;
        for (UInt p : small_primes) {
            int pick = static_cast<int>(rng() % 5);
            if (pick == 4) f[p] = kInfiniteExponent;
            else if (pick > 0) f[p] = static_cast<Exponent>(pick);
        }
        return SupernaturalNumber(f, rng() % 8 == 0 ? kInfiniteExponent : 0);
    };
    for (int i = 0; i < 100; ++i) {
        SpectrumPoint w = rng() % 2 ? SpectrumPoint(APoint{static_cast<Int>(rng() % 30), random_N()})
                                    : SpectrumPoint(BPoint{ResidueFamily::from_generator(static_cast<Int>(rng() % 1000)), random_N()});
        auto r = verify_hereditary_directed(w, 20);
        c.expect(r.passed, to_string(w) + ": " + r.counterexample);
    }
    const std::vector<UInt> moduli{1, 2, 3, 4, 6, 8, 9, 12, 18, 24, 36};
    auto random_finite = [&]() -> SpectrumPoint {
        auto N = SupernaturalNumber::from_integer(moduli[rng() % moduli.size()]);
        Int r = static_cast<Int>(rng() % 40);
        if (rng() % 2) return APoint{r, N};
        return BPoint{ResidueFamily::from_generator(r), N};
    };
    int included = 0;
    for (int i = 0; i < 1000; ++i) {
        auto outer = random_finite(), inner = random_finite();
        auto outer_set = oracle::members(outer, 80, 36), inner_set = oracle::members(inner, 80, 36);
        bool brute = std::includes(outer_set.begin(), outer_set.end(), inner_set.begin(), inner_set.end());
        included += brute;
        c.expect(includes(outer, inner, 64) == brute, to_string(inner) + " in " + to_string(outer));
    }
    c.note(std::to_string(included) + " of 1000 pairs included");
    std::vector<ResidueFamily> families{ResidueFamily::from_generator(0), ResidueFamily::from_generator(37),
                                        ResidueFamily::from_table(ResidueClass(2, 1)), ResidueFamily::from_table(ResidueClass(30, 7))};
    for (const auto& r : families) {
        for (Int m = 0; m <= 10; ++m) {
            for (Int a = 1; a <= 10; ++a) {
                for (Int n = 0; n <= 10; ++n) {
                    for (Int b = 1; b <= 10; ++b) {
                        SemigroupElement x(m, a), y(n, b);
                        auto lhs = boundary_act(x, boundary_act(y, r)), rhs = boundary_act(x * y, r);
                        for (Int level = 1; level <= 50; ++level) {
                            bool same = lhs.known_at(level) == rhs.known_at(level) &&
                                        (!lhs.known_at(level) || lhs.at(level) == rhs.at(level));
                            if (!same) c.expect(false, "action at level " + std::to_string(level));
                        }
                    }
                }
            }
        }
    }
    return c.outcome();
}

Outcome appendix()
{
    Check c;
    const auto chi = DirichletCharacter::from_generator(4, 3, Rational(1, 2));
    auto s = char_euler_sum(chi, {3, 5, 7, 11, 13}, 1, 100000);
    Real gap = std::abs(s.series - s.product);
    c.expect(gap <= s.tail_bound, "series/product gap " + sci(gap) + " exceeds the tail bound " + sci(s.tail_bound));
    c.expect(gap <= 1e-6L, "series/product gap " + sci(gap) + " exceeds 1e-6 at truncation 1e5");
    c.note("series/product gap " + sci(gap) + ", tail bound " + sci(s.tail_bound));
    auto ratios = invariance_ratio(chi, 1, 40);
    c.expect(ratios.back() < 0.2L, "ratio at K=40 is " + sci(ratios.back()));
    c.note("ratio at K=40 " + sci(ratios.back()));
    Real worst = 0;
    for (const PrimeSet& E : {PrimeSet{2}, PrimeSet{2, 3}, PrimeSet{3, 5, 7}, primes_through(13)}) {
        for (Real beta : {1.5L, 2.0L, 3.0L}) {
            for (Int k = 1; k <= 60; ++k) {
                Real d = bc_reconstruct_check(E, beta, {{k, 1}}).defect;
                worst = std::max(worst, d);
                c.expect(d <= 1e-9L, "mu_k mu_k^* for k=" + std::to_string(k));
            }
            Real d = bc_reconstruct_check(E, beta, {{1, 0.5L}, {6, -2}, {10, 1.25L}, {49, 3}}).defect;
            worst = std::max(worst, d);
            c.expect(d <= 1e-9L, "mixed combination");
        }
    }
    c.note("reconstruction defect " + sci(worst));
    return c.outcome();
}

struct Criterion {
    const char* name;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv)
{
    const std::vector<Criterion> criteria{
        {"relation suite (T1)-(T5), (T1')-(T5')", relations},
        {"euclid and join against exhaustive search", euclid_join},
        {"rewriter against l2(NxN*) and l2(X)", rewriter_vs_representation},
        {"KMS identity grid", kms_grid},
        {"psi_beta values and cylinder series", psi_values},
        {"trace state cross-check and partition function", trace_cross_check},
        {"positivity of Gram matrices", positivity},
        {"reconstruction of phi(s^n)", reconstruction},
        {"no KMS state below beta = 1", below_one},
        {"ground states and the beta -> inf limit", ground_states},
        {"Q_N relations on l2(Z)", q_model},
        {"spectrum: hereditary/directed, inclusions, action", spectrum},
        {"Bost-Connes appendix", appendix},
    };
    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) selected.push_back(std::stoi(argv[i]));
    if (selected.empty()) {
        for (int i = 1; i <= static_cast<int>(criteria.size()); ++i) selected.push_back(i);
    }
    bool all = true;
    for (int index : selected) {
        if (index < 1 || index > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "no criterion %d\n", index);
            return 2;
        }
        const auto& criterion = criteria[static_cast<std::size_t>(index - 1)];
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criterion.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("criterion %2d %s: %s (%.2f s) %s\n", index, o.passed ? "PASS" : "FAIL", criterion.name,
                    seconds_since(start), o.detail.c_str());
        std::fflush(stdout);
        all = all && o.passed;
    }
    return all ? 0 : 1;
}
