#pragma once

#include <map>
#include <vector>

#include "nnx/numtheory.hpp"

namespace nnx {

// A Dirichlet character mod m, stored as angles (in turns) on (Z/m)^*.
class DirichletCharacter {
public:
    DirichletCharacter(Int modulus, std::map<Int, Rational> angles);

    static DirichletCharacter trivial(Int modulus);
    // chi(g^k) = e^{2 pi i k angle} for a generator g of a cyclic (Z/m)^*.
    static DirichletCharacter from_generator(Int modulus, Int generator, const Rational& angle);

    Int modulus() const { return modulus_; }
    const std::map<Int, Rational>& angles() const { return angles_; }
    bool is_trivial() const;

    Rational angle_at(Int unit) const;
    Complex value_at(Int unit) const;

private:
    Int modulus_;
    std::map<Int, Rational> angles_;
};

// chi(u_n) = chi(n mod m) for n supported off the primes of m.
Complex char_at_un(const DirichletCharacter& chi, Int n);

struct EulerSum {
    Complex series;
    Complex product;
    // zeta_E(beta) minus the truncated sum of n^{-beta}; bounds |series tail|.
    Real tail_bound = 0;
    UInt terms = 0;
};

// sum_{n in N^x_E, n <= truncation} n^{-beta} chi(u_n) against
// prod_{p in E} (1 - p^{-beta} chi(u_p))^{-1}.
EulerSum char_euler_sum(const DirichletCharacter& chi, const PrimeSet& E, Real beta, UInt truncation);

// |prod_{p in E} (1 - p^{-beta} chi(u_p))^{-1}| / zeta_E(beta) for E the first
// k primes not dividing the modulus, k = 1..K.
std::vector<Real> invariance_ratio(const DirichletCharacter& chi, Real beta, Int K);

// Linear combination sum_k c_k mu_k mu_k^* (k = 1 is the identity).
using ProjectionCombination = std::map<Int, Real>;

struct BcReconstruction {
    Real lhs = 0;
    Real rhs = 0;
    Real defect = 0;
};

// phi(T) against sum_{n in N^x_E} n^{-beta}/zeta_E(beta) phi_{Q_E}(mu_n^* T mu_n)
// for the model state phi(mu_k mu_k^*) = k^{-beta}.
BcReconstruction bc_reconstruct_check(const PrimeSet& E, Real beta, const ProjectionCombination& element);

}  // namespace nnx
