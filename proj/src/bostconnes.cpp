#include "nnx/bostconnes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "nnx/states.hpp"

namespace nnx {

namespace {

Rational reduce_turns(Rational angle)
{
    angle.canonicalize();
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), angle.get_num_mpz_t(), angle.get_den_mpz_t());
    Rational out = angle - Rational(fl);
    out.canonicalize();
    return out;
}

std::vector<Int> units_mod(Int m)
{
    std::vector<Int> out;
    for (Int u = 0; u < m; ++u) {
        if (gcd(u, m) == 1) out.push_back(u);
    }
    return out;
}

Real power(Int base, Real exponent) { return std::pow(static_cast<Real>(base), exponent); }

}  // namespace

DirichletCharacter::DirichletCharacter(Int modulus, std::map<Int, Rational> angles)
    : modulus_(modulus)
{
    if (modulus < 1 || modulus > 100) throw std::invalid_argument("character modulus must be between 1 and 100");
    for (auto& [u, angle] : angles) {
        Int unit = mod(u, modulus);
        if (gcd(unit, modulus) != 1) throw std::invalid_argument("character value given at a non-unit " + std::to_string(u));
        angles_[unit] = reduce_turns(angle);
    }
    for (Int u : units_mod(modulus)) {
        if (!angles_.count(u)) throw std::invalid_argument("character table misses the unit " + std::to_string(u));
    }
    for (const auto& [u, x] : angles_) {
        for (const auto& [v, y] : angles_) {
            if (angles_.at(mod(u * v, modulus)) != reduce_turns(x + y)) {
                throw std::invalid_argument("character table is not multiplicative");
            }
        }
    }
}

DirichletCharacter DirichletCharacter::trivial(Int modulus)
{
    std::map<Int, Rational> angles;
    for (Int u : units_mod(modulus)) angles[u] = 0;
    return {modulus, angles};
}

DirichletCharacter DirichletCharacter::from_generator(Int modulus, Int generator, const Rational& angle)
{
    std::map<Int, Rational> angles;
    Int power_of_g = 1 % modulus;
    Rational turns = 0;
    const std::size_t order = units_mod(modulus).size();
    for (std::size_t k = 0; k < order; ++k) {
        if (angles.count(power_of_g)) throw std::invalid_argument("generator does not generate the unit group");
        angles[power_of_g] = turns;
        power_of_g = mod(power_of_g * generator, modulus);
        turns += angle;
    }
    if (reduce_turns(turns) != 0) throw std::invalid_argument("angle times the group order must be an integer");
    return {modulus, angles};
}

bool DirichletCharacter::is_trivial() const
{
    return std::all_of(angles_.begin(), angles_.end(), [](const auto& kv) { return sgn(kv.second) == 0; });
}

Rational DirichletCharacter::angle_at(Int unit) const
{
    auto it = angles_.find(mod(unit, modulus_));
    if (it == angles_.end()) throw std::invalid_argument("character evaluated at a non-unit");
    return it->second;
}

Complex DirichletCharacter::value_at(Int unit) const { return unit_root(angle_at(unit)); }

Complex char_at_un(const DirichletCharacter& chi, Int n)
{
    if (n < 1) throw std::invalid_argument("char_at_un needs n >= 1");
    if (gcd(n, chi.modulus()) != 1) throw std::invalid_argument("n shares a prime with the character modulus");
    return chi.value_at(n);
}

namespace {

void check_disjoint(const DirichletCharacter& chi, const PrimeSet& E)
{
    for (UInt p : E) {
        if (chi.modulus() % static_cast<Int>(p) == 0) {
            throw std::invalid_argument("prime " + std::to_string(p) + " divides the character modulus");
        }
    }
}

}  // namespace

EulerSum char_euler_sum(const DirichletCharacter& chi, const PrimeSet& E, Real beta, UInt truncation)
{
    if (!(beta > 0)) throw std::invalid_argument("char_euler_sum needs beta > 0");
    check_disjoint(chi, E);
    std::vector<Int> smooth{1};
    for (UInt p : E) {
        std::size_t size = smooth.size();
        for (std::size_t i = 0; i < size; ++i) {
            Int n = smooth[i];
            while (n <= static_cast<Int>(truncation) / static_cast<Int>(p)) {
                n *= static_cast<Int>(p);
                smooth.push_back(n);
            }
        }
    }
    std::sort(smooth.begin(), smooth.end(), std::greater<>());
    EulerSum out;
    Real absolute = 0;
    for (Int n : smooth) {
        Real w = power(n, -beta);
        out.series += w * char_at_un(chi, n);
        absolute += w;
    }
    out.product = 1;
    for (UInt p : E) out.product /= Complex(1) - power(static_cast<Int>(p), -beta) * char_at_un(chi, static_cast<Int>(p));
    out.tail_bound = zeta_E(beta, E) - absolute;
    out.terms = smooth.size();
    return out;
}

std::vector<Real> invariance_ratio(const DirichletCharacter& chi, Real beta, Int K)
{
    if (!(beta > 0 && beta <= 1)) throw std::invalid_argument("invariance_ratio needs beta in (0, 1]");
    std::vector<Real> out;
    Complex product = 1;
    Real zeta_part = 1;
    for (UInt p = 2; static_cast<Int>(out.size()) < K; ++p) {
        if (!is_prime(p) || chi.modulus() % static_cast<Int>(p) == 0) continue;
        const Real w = power(static_cast<Int>(p), -beta);
        product /= Complex(1) - w * char_at_un(chi, static_cast<Int>(p));
        zeta_part /= 1 - w;
        out.push_back(std::abs(product) / zeta_part);
    }
    return out;
}

namespace {

Int exponent_of(Int n, Int p)
{
    Int e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

// phi(mu_k mu_k^*) = k^{-beta}
Real model_state(Int k, Real beta) { return power(k, -beta); }

// phi_{Q_E}(mu_j mu_j^*) = zeta_E(beta) phi(Q_E mu_j mu_j^*), expanding
// Q_E = prod_{p in E} (1 - mu_p mu_p^*) and multiplying range projections
// by lcm.
Real conditional_model_state(Int j, const PrimeSet& E, Real beta)
{
    Real sum = 0;
    const std::size_t subsets = std::size_t{1} << E.size();
    for (std::size_t mask = 0; mask < subsets; ++mask) {
        Int l = j;
        int sign = 1;
        for (std::size_t i = 0; i < E.size(); ++i) {
            if (mask & (std::size_t{1} << i)) {
                l = lcm(l, static_cast<Int>(E[i]));
                sign = -sign;
            }
        }
        sum += sign * model_state(l, beta);
    }
    return zeta_E(beta, E) * sum;
}

}  // namespace

BcReconstruction bc_reconstruct_check(const PrimeSet& E, Real beta, const ProjectionCombination& element)
{
    if (!(beta > 1)) throw std::invalid_argument("bc_reconstruct_check needs beta > 1");
    if (E.size() > 16) throw std::invalid_argument("bc_reconstruct_check supports at most 16 primes");
    BcReconstruction out;
    const Real zE = zeta_E(beta, E);
    for (const auto& [k, c] : element) {
        if (k < 1) throw std::invalid_argument("unsupported element: mu_k mu_k^* needs k >= 1");
        out.lhs += c * model_state(k, beta);
        // mu_n^* mu_k mu_k^* mu_n = mu_{k/g} mu_{k/g}^*, g = gcd(k, n), depends on
        // min(e_p(n), e_p(k)); exponents at or beyond e_p(k) are summed as a
        // geometric tail.
        std::vector<Int> caps;
        for (UInt p : E) caps.push_back(exponent_of(k, static_cast<Int>(p)));
        std::vector<Int> j(E.size(), 0);
        Real sum = 0;
        while (true) {
            Real weight = 1;
            Int g = 1;
            for (std::size_t i = 0; i < E.size(); ++i) {
                const Int p = static_cast<Int>(E[i]);
                weight *= power(checked_pow(p, static_cast<unsigned>(j[i])), -beta);
                if (j[i] == caps[i]) weight /= 1 - power(p, -beta);
                g *= checked_pow(p, static_cast<unsigned>(j[i]));
            }
            sum += weight * conditional_model_state(k / g, E, beta);
            std::size_t i = 0;
            while (i < E.size() && j[i] == caps[i]) j[i++] = 0;
            if (i == E.size()) break;
            ++j[i];
        }
        out.rhs += c * sum / zE;
    }
    out.defect = std::abs(out.lhs - out.rhs);
    return out;
}

}  // namespace nnx
