#include "nnx/states.hpp"

#include <cfloat>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace nnx {

namespace {

Rational fractional_part(const Rational& x)
{
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    Rational out = x - Rational(fl);
    out.canonicalize();
    return out;
}

bool is_integer(Real x) { return std::isfinite(x) && x == std::floor(x); }

Real power(Int base, Real exponent)
{
    return std::pow(static_cast<Real>(base), exponent);
}

Rational rational_power(Int base, Int exponent)
{
    mpz_class b(static_cast<long>(base)), p;
    mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(std::abs(exponent)));
    Rational out = exponent >= 0 ? Rational(p) : Rational(1) / Rational(p);
    out.canonicalize();
    return out;
}

}  // namespace

Complex unit_root(const Rational& angle)
{
    Rational frac = fractional_part(angle);
    if (auto exact = exact_unit_root(frac)) return to_complex(*exact);
    Real theta = 2 * std::numbers::pi_v<Real> * to_real(frac);
    return {std::cos(theta), std::sin(theta)};
}

std::optional<ComplexRational> exact_unit_root(const Rational& angle)
{
    Rational frac = fractional_part(angle) * 4;
    if (frac.get_den() != 1) return std::nullopt;
    switch (frac.get_num().get_si()) {
    case 0: return ComplexRational(1, 0);
    case 1: return ComplexRational(0, 1);
    case 2: return ComplexRational(-1, 0);
    default: return ComplexRational(0, -1);
    }
}

CircleMeasure CircleMeasure::lebesgue()
{
    CircleMeasure mu;
    mu.lebesgue_ = true;
    return mu;
}

CircleMeasure CircleMeasure::point(const Rational& angle) { return atoms({{angle, 1}}); }

CircleMeasure CircleMeasure::atoms(std::vector<Atom> atoms)
{
    if (atoms.empty()) throw std::invalid_argument("measure needs at least one atom");
    Rational total = 0;
    for (auto& atom : atoms) {
        atom.angle = fractional_part(atom.angle);
        atom.weight.canonicalize();
        if (sgn(atom.weight) <= 0) throw std::invalid_argument("atom weights must be positive");
        total += atom.weight;
    }
    if (total != 1) throw std::invalid_argument("atom weights must sum to 1");
    for (std::size_t i = 0; i < atoms.size(); ++i) {
        for (std::size_t j = i + 1; j < atoms.size(); ++j) {
            if (atoms[i].angle == atoms[j].angle) throw std::invalid_argument("atoms must sit at distinct points");
        }
    }
    CircleMeasure mu;
    mu.atoms_ = std::move(atoms);
    return mu;
}

Complex CircleMeasure::moment(Int k) const
{
    if (k == 0) return 1;  // probability measure
    if (lebesgue_) return 0;
    Complex sum = 0;
    for (const auto& atom : atoms_) {
        sum += to_real(atom.weight) * unit_root(atom.angle * Rational(static_cast<long>(k)));
    }
    return sum;
}

std::optional<ComplexRational> CircleMeasure::exact_moment(Int k) const
{
    if (lebesgue_) return ComplexRational(k == 0 ? 1 : 0);
    ComplexRational sum;
    for (const auto& atom : atoms_) {
        auto z = exact_unit_root(atom.angle * Rational(static_cast<long>(k)));
        if (!z) return std::nullopt;
        sum = sum + ComplexRational(atom.weight, 0) * *z;
    }
    return sum;
}

Complex toeplitz_value(const ToeplitzState& omega, Int m, Int n)
{
    if (const auto* v = std::get_if<VectorState>(&omega)) return (m == n && v->k >= n) ? 1 : 0;
    const auto& e = std::get<EvaluationState>(omega);
    return unit_root(e.angle * Rational(static_cast<long>(m - n)));
}

std::optional<ComplexRational> toeplitz_value_exact(const ToeplitzState& omega, Int m, Int n)
{
    if (const auto* v = std::get_if<VectorState>(&omega)) return ComplexRational((m == n && v->k >= n) ? 1 : 0);
    const auto& e = std::get<EvaluationState>(omega);
    return exact_unit_root(e.angle * Rational(static_cast<long>(m - n)));
}

void validate(const StateSpec& spec)
{
    if (const auto* p = std::get_if<PsiBeta>(&spec)) {
        if (!(p->beta >= 1)) throw std::invalid_argument("psi_beta needs beta in [1, inf]");
    } else if (const auto* q = std::get_if<PsiBetaMu>(&spec)) {
        if (!(q->beta > 2)) throw std::invalid_argument("psi_beta_mu needs beta in (2, inf]");
    } else {
        const auto& g = std::get<Ground>(spec);
        if (const auto* v = std::get_if<VectorState>(&g.omega); v && v->k < 0) {
            throw std::invalid_argument("vector state index must be non-negative");
        }
    }
}

Real beta_of(const StateSpec& spec)
{
    if (const auto* p = std::get_if<PsiBeta>(&spec)) return p->beta;
    if (const auto* q = std::get_if<PsiBetaMu>(&spec)) return q->beta;
    return kInfiniteBeta;
}

StateEvaluator::StateEvaluator(StateSpec spec, unsigned precision_bits)
    : spec_(std::move(spec)), bits_(precision_bits)
{
    validate(spec_);
    Real target = target_error(precision_bits);
    if (const auto* q = std::get_if<PsiBetaMu>(&spec_); q && std::isfinite(q->beta)) {
        zeta_shift_ = zeta(q->beta - 1, target).value;
    }
}

Complex StateEvaluator::operator()(const Monomial& x) const
{
    if (x.is_zero()) throw std::invalid_argument("states are evaluated on spanning monomials, not zero");
    const Int a = x.a(), b = x.b(), m = x.m(), n = x.n();
    if (const auto* p = std::get_if<PsiBeta>(&spec_)) {
        if (a != b || m != n) return 0;
        return power(a, -p->beta);
    }
    if (const auto* g = std::get_if<Ground>(&spec_)) {
        if (a != 1 || b != 1) return 0;
        return toeplitz_value(g->omega, m, n);
    }
    const auto& q = std::get<PsiBetaMu>(spec_);
    if (!std::isfinite(q.beta)) {
        if (a != 1 || b != 1) return 0;
        return q.mu.moment(m - n);
    }
    if (a != b || mod(m - n, a) != 0) return 0;
    if (m == n) return power(a, -q.beta);
    const Int d = m - n;
    Complex sum = 0;
    for (Int x_div : divisors(std::abs(d))) {
        if (x_div % a != 0) continue;
        sum += power(x_div, 1 - q.beta) * q.mu.moment(d / x_div);
    }
    return sum / (static_cast<Real>(a) * zeta_shift_);
}

std::optional<ComplexRational> StateEvaluator::exact(const Monomial& x) const
{
    if (x.is_zero()) throw std::invalid_argument("states are evaluated on spanning monomials, not zero");
    const Int a = x.a(), b = x.b(), m = x.m(), n = x.n();
    if (const auto* p = std::get_if<PsiBeta>(&spec_)) {
        if (a != b || m != n) return ComplexRational(0);
        if (!std::isfinite(p->beta)) return ComplexRational(a == 1 ? 1 : 0);
        if (!is_integer(p->beta)) return std::nullopt;
        return ComplexRational(rational_power(a, -static_cast<Int>(p->beta)), 0);
    }
    if (const auto* g = std::get_if<Ground>(&spec_)) {
        if (a != 1 || b != 1) return ComplexRational(0);
        return toeplitz_value_exact(g->omega, m, n);
    }
    const auto& q = std::get<PsiBetaMu>(spec_);
    if (!std::isfinite(q.beta)) {
        if (a != 1 || b != 1) return ComplexRational(0);
        return q.mu.exact_moment(m - n);
    }
    if (a != b || mod(m - n, a) != 0) return ComplexRational(0);
    if (m == n && is_integer(q.beta)) return ComplexRational(rational_power(a, -static_cast<Int>(q.beta)), 0);
    return std::nullopt;
}

Complex evaluate(const StateSpec& spec, const Monomial& x, unsigned precision_bits)
{
    return StateEvaluator(spec, precision_bits)(x);
}

namespace {

Complex value_or_zero(const StateEvaluator& phi, const Monomial& x)
{
    return x.is_zero() ? Complex(0) : phi(x);
}

}  // namespace

Real kms_defect(const StateEvaluator& phi, const Monomial& X, const Monomial& Y, Real beta)
{
    if (!std::isfinite(beta)) throw std::invalid_argument("kms_defect needs a finite beta");
    if (X.is_zero() || Y.is_zero()) return 0;
    Complex left = power(X.a(), beta) * value_or_zero(phi, X * Y);
    Complex right = power(X.b(), beta) * value_or_zero(phi, Y * X);
    return std::abs(left - right);
}

Real kms_characterisation_check(const StateEvaluator& phi, const Monomial& x, Real beta)
{
    Complex value = phi(x);
    if (x.a() != x.b() || mod(x.m() - x.n(), x.a()) != 0) return std::abs(value);
    Complex rhs = power(x.a(), -beta) * phi(s_power((x.m() - x.n()) / x.a()));
    return std::abs(value - rhs);
}

bool ground_check(const StateEvaluator& phi, const Monomial& x)
{
    if (x.is_zero() || (x.a() == 1 && x.b() == 1)) return true;
    return phi(x) == Complex(0);
}

bool ground_pair_check(const StateEvaluator& phi, const Monomial& Y, const Monomial& X)
{
    if (X.is_zero() || Y.is_zero() || X.a() >= X.b()) return true;
    return value_or_zero(phi, Y * X) == Complex(0);
}

Real no_kms_witness(Real beta, Int a)
{
    if (!(beta >= 0 && beta < 1)) throw std::invalid_argument("no_kms_witness needs beta in [0, 1)");
    if (a < 2) throw std::invalid_argument("no_kms_witness needs a >= 2");
    return static_cast<Real>(a) * power(a, -beta) - 1;
}

SeriesValue measure_cylinder(Real beta, Int m, Int a, Real target)
{
    if (a < 1 || m < 0) throw std::invalid_argument("measure_cylinder needs m >= 0 and a >= 1");
    if (!(beta >= 1)) throw std::invalid_argument("measure_cylinder needs beta >= 1");
    if (!std::isfinite(beta)) return {a == 1 ? Real{1} : Real{0}, 0};
    if (beta == 1) return {Real{1} / static_cast<Real>(a), 0};
    // Per prime p^e || a: (1 - q) p^{-e} sum_{k >= e} q^k, q = p^{1 - beta}.
    Real lower = 1, upper = 1;
    long operations = 0;
    for (auto [p, e] : factorize(static_cast<UInt>(a))) {
        const Real q = power(static_cast<Int>(p), 1 - beta);
        const Real scale = (1 - q) * power(static_cast<Int>(p), -static_cast<Real>(e));
        Real term = std::pow(q, static_cast<Real>(e));
        Real sum = 0;
        while (term * scale / (1 - q) > target / 4) {
            sum += term;
            term *= q;
            ++operations;
        }
        const Real tail = term / (1 - q);
        lower *= scale * sum;
        upper *= scale * (sum + tail);
        operations += 8;
    }
    // Rounding: one relative epsilon per floating operation on the way.
    return {lower, upper - lower + static_cast<Real>(operations) * LDBL_EPSILON * upper};
}

Real conditional_mass(Real beta, const PrimeSet& E)
{
    Real product = 1;
    for (UInt p : E) product *= 1 - power(static_cast<Int>(p), 1 - beta);
    return product;
}

Rational conditional_mass_exact(Int beta, const PrimeSet& E)
{
    Rational product = 1;
    for (UInt p : E) product *= 1 - rational_power(static_cast<Int>(p), 1 - beta);
    product.canonicalize();
    return product;
}

SeriesValue partition_sum(Real beta, UInt N)
{
    if (!(beta > 2)) throw std::invalid_argument("partition_sum needs beta > 2");
    Real sum = 0;
    for (UInt x = N; x >= 1; --x) sum += power(static_cast<Int>(x), 1 - beta);
    return {sum, power(static_cast<Int>(N), 2 - beta) / (beta - 2)};
}

namespace {

const PsiBetaMu* finite_psi_mu(const StateEvaluator& phi)
{
    const auto* q = std::get_if<PsiBetaMu>(&phi.spec());
    return (q && std::isfinite(q->beta)) ? q : nullptr;
}

Int prime_product_gcd_free(Int x, const PrimeSet& E)
{
    for (UInt p : E) {
        if (x % static_cast<Int>(p) == 0) return 0;
    }
    return x;
}

}  // namespace

Complex conditional_state_sk(const StateEvaluator& phi, const PrimeSet& E, Int k, ConditionalModel model)
{
    if (std::holds_alternative<PsiBeta>(phi.spec())) {
        if (!(phi.beta() > 1)) throw std::invalid_argument("conditional state needs beta > 1");
        return k == 0 ? 1 : 0;
    }
    const auto* q = finite_psi_mu(phi);
    if (!q) throw std::invalid_argument("conditional state is defined for psi_beta and finite-beta psi_beta_mu");
    if (k == 0) return 1;
    if (model == ConditionalModel::MomentLimit) return q->mu.moment(k);
    // Q_E projects onto the e_{r,x} with x coprime to E; the trace over
    // those vectors leaves the divisors of k coprime to E.
    Complex sum = 0;
    for (Int x : divisors(std::abs(k))) {
        if (prime_product_gcd_free(x, E) == 0) continue;
        sum += power(x, 1 - q->beta) * q->mu.moment(k / x);
    }
    return zeta_E(q->beta - 1, E) / phi.partition_value() * sum;
}

Reconstruction reconstruct_sn(const StateEvaluator& phi, const PrimeSet& E, Int n, ConditionalModel model)
{
    const Real beta = phi.beta();
    if (!(beta > 1) || !std::isfinite(beta)) throw std::invalid_argument("reconstruct_sn needs a finite beta > 1");
    Reconstruction out;
    out.lhs = phi(s_power(n));
    if (n == 0) {
        // Every a in N^x_E divides 0: the weights sum to zeta_E(beta - 1).
        out.rhs = conditional_state_sk(phi, E, 0, model);
    } else {
        Complex sum = 0;
        for (Int a : divisors(std::abs(n))) {
            if (!supported_on(a, E)) continue;
            sum += power(a, 1 - beta) * conditional_state_sk(phi, E, n / a, model);
        }
        out.rhs = sum / zeta_E(beta - 1, E);
    }
    out.defect = std::abs(out.lhs - out.rhs);
    return out;
}

std::vector<Complex> recover_moments(const StateEvaluator& phi, Int count)
{
    const auto* q = finite_psi_mu(phi);
    if (!q) throw std::invalid_argument("recover_moments needs a finite-beta psi_beta_mu");
    std::vector<Complex> moments(static_cast<std::size_t>(count) + 1);
    moments[0] = 1;
    for (Int n = 1; n <= count; ++n) {
        Complex value = phi.partition_value() * phi(s_power(n));
        for (Int x : divisors(n)) {
            if (x > 1) value -= power(x, 1 - q->beta) * moments[static_cast<std::size_t>(n / x)];
        }
        moments[static_cast<std::size_t>(n)] = value;
    }
    moments.erase(moments.begin());
    return moments;
}

GramResult gram_matrix(const StateEvaluator& phi, const std::vector<Monomial>& family)
{
    const std::size_t size = family.size();
    GramResult out;
    out.matrix.assign(size, std::vector<Complex>(size));
    Eigen::MatrixXcd g(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
    for (std::size_t i = 0; i < size; ++i) {
        for (std::size_t j = 0; j < size; ++j) {
            Complex v = value_or_zero(phi, adjoint(family[i]) * family[j]);
            out.matrix[i][j] = v;
            g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                std::complex<double>(static_cast<double>(v.real()), static_cast<double>(v.imag()));
        }
    }
    if (size == 0) return out;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(g, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = static_cast<Real>(solver.eigenvalues().minCoeff());
    return out;
}

}  // namespace nnx
