#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nnx/algebra.hpp"
#include "nnx/numtheory.hpp"
#include "nnx/semigroup.hpp"

namespace nnx {

// Generator tokens in this module may carry a composite index a, meaning
// the product of the prime generators v_p^{e_p(a)}.

// l^2(N ⋊ N^x): T_y e_x = e_{yx}; T_y^* e_x = e_{y^{-1}x} when y <= x.
std::optional<SemigroupElement> toeplitz_apply(const SemigroupElement& y, bool adjoint, const SemigroupElement& e);
std::optional<SemigroupElement> toeplitz_apply(const GeneratorToken& token, const SemigroupElement& e);
std::optional<SemigroupElement> toeplitz_apply(const Monomial& x, const SemigroupElement& e);
// Rightmost token acts first.
std::optional<SemigroupElement> toeplitz_apply_word(const std::vector<GeneratorToken>& word, const SemigroupElement& e);

// Basis vector e_{r,x} of l^2(X), r in Z/x, carrying the scalar z^winding
// for the fibre character z.
struct XVector {
    Int r = 0;
    Int x = 1;
    Int winding = 0;

    friend bool operator==(const XVector&, const XVector&) = default;
};

std::optional<XVector> x_apply(const GeneratorToken& token, const XVector& e);
std::optional<XVector> x_apply(const Monomial& x, const XVector& e);
std::optional<XVector> x_apply_word(const std::vector<GeneratorToken>& word, const XVector& e);
// The scalar z^winding, z = e^{2 pi i angle}.
Complex x_phase(const XVector& e, const Rational& z_angle);
// Same basis vector and the same exact root-of-unity scalar.
bool x_equal(const XVector& u, const XVector& v, const Rational& z_angle);

// l^2(Z): S e_n = e_{n+1}, V_p e_n = e_{pn}.
std::optional<Int> z_apply(const GeneratorToken& token, Int n);
std::optional<Int> z_apply(const Monomial& x, Int n);
std::optional<Int> z_apply_word(const std::vector<GeneratorToken>& word, Int n);

enum class Model { Toeplitz, X, Z };

struct RelationResult {
    std::string relation;
    Int checked = 0;
    bool passed = true;
    std::string counterexample;
};

struct RelationReport {
    std::vector<RelationResult> entries;
    bool passed() const;
};

// Toeplitz and X models check the Toeplitz relations with the isometries
// (window: m, a <= window, resp. x <= window). The Z model checks (Q1),
// (Q2), (Q5) and (Q6) on |n| <= window.
RelationReport relation_suite(Model model, const PrimeSet& primes, Int window, const Rational& z_angle = 0,
                              Int max_composite = 0);

// Per-x diagonal sums sum_r <pi(T) e_{r,x}, e_{r,x}> for x <= N.
class TraceProfile {
public:
    TraceProfile(const Monomial& x, const Rational& z_angle, Int N, const PrimeSet* compress = nullptr);

    Int truncation() const { return static_cast<Int>(diagonal_.size()) - 1; }
    const std::vector<Complex>& diagonal() const { return diagonal_; }

private:
    std::vector<Complex> diagonal_;  // index x
};

struct TraceResult {
    Complex value;
    Real tail_bound = 0;
};

// (1/zeta(beta-1)) sum_{x <= N} sum_r x^{-beta} <pi(T) e_{r,x}, e_{r,x}>,
// with tail bound N^{2-beta}/((beta-2) zeta(beta-1)).
TraceResult trace_state(const TraceProfile& profile, Real beta, unsigned precision_bits = 64);
TraceResult trace_state(const Monomial& x, Real beta, const Rational& z_angle, Int N, unsigned precision_bits = 64);

// prod_{p in E} prod_{j < p} (1 - S^j V_p V_p^* S^{*j}) applied to e.
std::optional<XVector> q_projector_apply(const PrimeSet& E, const XVector& e);

struct ProjectorCheck {
    bool passed = true;
    Int checked = 0;
    std::string counterexample;
};

// Fixes e_{0,1} and every e_{r,x} with x coprime to E; kills e_{r,x}
// when x > 1 is supported on E.
ProjectorCheck q_projector_check(const PrimeSet& E, Int window);

}  // namespace nnx
