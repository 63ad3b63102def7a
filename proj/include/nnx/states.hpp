#pragma once

#include <limits>
#include <optional>
#include <variant>
#include <vector>

#include "nnx/algebra.hpp"
#include "nnx/numtheory.hpp"

namespace nnx {

inline constexpr Real kInfiniteBeta = std::numeric_limits<Real>::infinity();

// e^{2 pi i angle}, computed from the exact angle reduced mod 1.
Complex unit_root(const Rational& angle);
// The same value when it is a Gaussian integer (angle a multiple of 1/4).
std::optional<ComplexRational> exact_unit_root(const Rational& angle);

// Probability measure on the circle: finitely many atoms or Lebesgue.
class CircleMeasure {
public:
    struct Atom {
        Rational angle;  // in turns, [0, 1)
        Rational weight;
    };

    static CircleMeasure lebesgue();
    static CircleMeasure point(const Rational& angle);
    static CircleMeasure atoms(std::vector<Atom> atoms);

    bool is_lebesgue() const { return lebesgue_; }
    const std::vector<Atom>& atom_list() const { return atoms_; }

    // int z^k dmu(z)
    Complex moment(Int k) const;
    std::optional<ComplexRational> exact_moment(Int k) const;

private:
    bool lebesgue_ = false;
    std::vector<Atom> atoms_;
};

// Vector state at e_k on l^2(N).
struct VectorState {
    Int k = 0;
};

// Evaluation at z = e^{2 pi i angle} on C(T).
struct EvaluationState {
    Rational angle;
};

using ToeplitzState = std::variant<VectorState, EvaluationState>;

// omega(s^m s^{*n}) for a state of the Toeplitz algebra of N.
Complex toeplitz_value(const ToeplitzState& omega, Int m, Int n);
std::optional<ComplexRational> toeplitz_value_exact(const ToeplitzState& omega, Int m, Int n);

struct PsiBeta {
    Real beta = 1;
};

struct PsiBetaMu {
    Real beta = 3;
    CircleMeasure mu;
};

struct Ground {
    ToeplitzState omega;
};

using StateSpec = std::variant<PsiBeta, PsiBetaMu, Ground>;

void validate(const StateSpec& spec);
Real beta_of(const StateSpec& spec);

// Evaluates a state on spanning monomials. The zeta normalisation is
// computed once per evaluator.
class StateEvaluator {
public:
    explicit StateEvaluator(StateSpec spec, unsigned precision_bits = 64);

    Complex operator()(const Monomial& x) const;
    std::optional<ComplexRational> exact(const Monomial& x) const;

    const StateSpec& spec() const { return spec_; }
    Real beta() const { return beta_of(spec_); }
    unsigned precision_bits() const { return bits_; }
    // zeta(beta - 1) for the finite-beta psi_{beta,mu}.
    Real partition_value() const { return zeta_shift_; }

private:
    StateSpec spec_;
    unsigned bits_;
    Real zeta_shift_ = 0;
};

Complex evaluate(const StateSpec& spec, const Monomial& x, unsigned precision_bits = 64);

// |a^beta phi(XY) - b^beta phi(YX)|, a and b from X.
Real kms_defect(const StateEvaluator& phi, const Monomial& X, const Monomial& Y, Real beta);
// |phi(x) - a^{-beta} phi(s^{((m-n)/a))})| on the support, |phi(x)| off it.
Real kms_characterisation_check(const StateEvaluator& phi, const Monomial& x, Real beta);
// phi vanishes on x unless a = b = 1.
bool ground_check(const StateEvaluator& phi, const Monomial& x);
// phi(Y X) = 0 whenever X has a < b.
bool ground_pair_check(const StateEvaluator& phi, const Monomial& Y, const Monomial& X);
// a * a^{-beta} - 1, positive for beta < 1 and a >= 2.
Real no_kms_witness(Real beta, Int a);

struct SeriesValue {
    Real value = 0;
    Real tail_bound = 0;
};

// Mass of the cylinder {m + aZ-hat} under the beta measure, from its
// per-prime series.
SeriesValue measure_cylinder(Real beta, Int m, Int a, Real target = 1e-15L);
// prod_{p in E} (1 - p^{1 - beta})
Real conditional_mass(Real beta, const PrimeSet& E);
Rational conditional_mass_exact(Int beta, const PrimeSet& E);
// sum_{x <= N} x^{1-beta} and the integral tail bound N^{2-beta}/(beta-2).
SeriesValue partition_sum(Real beta, UInt N);

enum class ConditionalModel {
    Exact,        // the compression by Q_E itself
    MomentLimit,  // phi_Q(s^k) replaced by the moment of mu (E -> all primes)
};

// phi_{Q_E}(s^k) = zeta_E(beta - 1) phi(Q_E s^k Q_E).
Complex conditional_state_sk(const StateEvaluator& phi, const PrimeSet& E, Int k,
                             ConditionalModel model = ConditionalModel::Exact);

struct Reconstruction {
    Complex lhs;
    Complex rhs;
    Real defect = 0;
};

Reconstruction reconstruct_sn(const StateEvaluator& phi, const PrimeSet& E, Int n,
                              ConditionalModel model = ConditionalModel::Exact);
// Moments 1..count of mu recovered from the values on s^n.
std::vector<Complex> recover_moments(const StateEvaluator& phi, Int count);

struct GramResult {
    std::vector<std::vector<Complex>> matrix;
    Real min_eigenvalue = 0;
};

GramResult gram_matrix(const StateEvaluator& phi, const std::vector<Monomial>& family);

}  // namespace nnx
