#pragma once

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "nnx/numtheory.hpp"

namespace nnx {

// (m, a) in N ⋊ N^x, the affine map n |-> m + a n.
class SemigroupElement {
public:
    SemigroupElement() = default;
    SemigroupElement(Int m, Int a);

    Int m() const { return m_; }
    Int a() const { return a_; }

    friend auto operator<=>(const SemigroupElement&, const SemigroupElement&) = default;

private:
    Int m_ = 0;
    Int a_ = 1;
};

SemigroupElement operator*(const SemigroupElement& x, const SemigroupElement& y);
// x <= y iff x^{-1} y lies in the semigroup.
bool leq(const SemigroupElement& x, const SemigroupElement& y);
std::string to_string(const SemigroupElement& x);

// (r, x) in Q ⋊ Q^*_+.
class GroupElement {
public:
    GroupElement();
    GroupElement(Rational r, Rational x);
    explicit GroupElement(const SemigroupElement& s);

    const Rational& r() const { return r_; }
    const Rational& x() const { return x_; }

    friend bool operator==(const GroupElement& g, const GroupElement& h) { return g.r_ == h.r_ && g.x_ == h.x_; }

private:
    Rational r_;
    Rational x_;
};

GroupElement operator*(const GroupElement& g, const GroupElement& h);
GroupElement inverse(const GroupElement& g);
bool in_semigroup(const GroupElement& g);
bool leq(const GroupElement& g, const GroupElement& h);

struct EuclidSolution {
    Int alpha = 0;
    Int beta = 0;

    friend bool operator==(const EuclidSolution&, const EuclidSolution&) = default;
};

// The alternating correction sequences for k >= 0.
struct EuclidTrace {
    std::vector<Int> alphas;
    std::vector<Int> betas;
    EuclidSolution total;
};

EuclidTrace euclid_trace(Int c, Int d, Int k);

// Smallest (alpha, beta) in N^2 with k = alpha c - beta d, gcd(c, d) = 1.
// Negative k is solved as -k = beta d - alpha c with the roles swapped.
EuclidSolution euclid_smallest(Int c, Int d, Int k);
// Same answer from modular inversion.
EuclidSolution euclid_smallest_direct(Int c, Int d, Int k);

struct Join {
    SemigroupElement upper;
    // upper = x * left_complement = y * right_complement
    SemigroupElement left_complement;
    SemigroupElement right_complement;
};

// Least common upper bound; nullopt when there is none.
std::optional<Join> join(const SemigroupElement& x, const SemigroupElement& y);

}  // namespace nnx
