#pragma once

#include <compare>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nnx/numtheory.hpp"

namespace nnx {

// s^m v_a v_b^* s^{*n}, or the zero element.
class Monomial {
public:
    Monomial() = default;  // identity
    Monomial(Int m, Int a, Int b, Int n);

    static Monomial zero();

    bool is_zero() const { return zero_; }
    Int m() const { return m_; }
    Int a() const { return a_; }
    Int b() const { return b_; }
    Int n() const { return n_; }

    friend auto operator<=>(const Monomial&, const Monomial&) = default;

private:
    bool zero_ = false;
    Int m_ = 0;
    Int a_ = 1;
    Int b_ = 1;
    Int n_ = 0;
};

Monomial gen_s();
Monomial gen_s_star();
Monomial gen_v(Int p);
Monomial gen_v_star(Int p);
// s^k for k >= 0 and s^{*(-k)} for k < 0.
Monomial s_power(Int k);

// Normal form of v_a^* s^{*m} s^n v_b.
Monomial covariance_reduce(Int a, Int m, Int n, Int b);
Monomial operator*(const Monomial& x, const Monomial& y);
Monomial adjoint(const Monomial& x);
std::string to_string(const Monomial& x);

// Gaussian rationals.
struct ComplexRational {
    Rational re;
    Rational im;

    ComplexRational() = default;
    ComplexRational(long v)
        : re(v), im(0)
    {
    }
    ComplexRational(Rational r, Rational i)
        : re(std::move(r)), im(std::move(i))
    {
    }

    friend bool operator==(const ComplexRational& x, const ComplexRational& y) { return x.re == y.re && x.im == y.im; }
    friend ComplexRational operator+(const ComplexRational& x, const ComplexRational& y) { return {x.re + y.re, x.im + y.im}; }
    friend ComplexRational operator-(const ComplexRational& x, const ComplexRational& y) { return {x.re - y.re, x.im - y.im}; }
    friend ComplexRational operator*(const ComplexRational& x, const ComplexRational& y)
    {
        return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
    }
};

inline bool is_zero_scalar(const ComplexRational& z) { return sgn(z.re) == 0 && sgn(z.im) == 0; }
inline bool is_zero_scalar(const Complex& z) { return z == Complex(0); }
inline ComplexRational conjugate(const ComplexRational& z) { return {z.re, -z.im}; }
inline Complex conjugate(const Complex& z) { return std::conj(z); }
inline Complex to_complex(const ComplexRational& z) { return {to_real(z.re), to_real(z.im)}; }

// Finite linear combination of non-zero monomials.
template <class Scalar>
class BasicElement {
public:
    BasicElement() = default;
    explicit BasicElement(const Monomial& x, Scalar c = Scalar(1)) { add(x, std::move(c)); }

    void add(const Monomial& x, const Scalar& c)
    {
        if (x.is_zero() || is_zero_scalar(c)) return;
        auto [it, inserted] = terms_.try_emplace(x, c);
        if (!inserted) {
            it->second = it->second + c;
            if (is_zero_scalar(it->second)) terms_.erase(it);
        }
    }

    const std::map<Monomial, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend BasicElement operator+(BasicElement x, const BasicElement& y)
    {
        for (const auto& [mono, c] : y.terms_) x.add(mono, c);
        return x;
    }
    friend BasicElement operator-(BasicElement x, const BasicElement& y)
    {
        for (const auto& [mono, c] : y.terms_) x.add(mono, Scalar(0) - c);
        return x;
    }
    friend BasicElement operator*(const BasicElement& x, const BasicElement& y)
    {
        BasicElement out;
        for (const auto& [p, c] : x.terms_) {
            for (const auto& [q, d] : y.terms_) out.add(p * q, c * d);
        }
        return out;
    }
    friend BasicElement operator*(const Scalar& c, const BasicElement& x)
    {
        BasicElement out;
        for (const auto& [mono, d] : x.terms_) out.add(mono, c * d);
        return out;
    }
    friend bool operator==(const BasicElement&, const BasicElement&) = default;

private:
    std::map<Monomial, Scalar> terms_;
};

using AlgebraElement = BasicElement<ComplexRational>;
using FloatAlgebraElement = BasicElement<Complex>;

template <class Scalar>
BasicElement<Scalar> adjoint(const BasicElement<Scalar>& x)
{
    BasicElement<Scalar> out;
    for (const auto& [mono, c] : x.terms()) out.add(adjoint(mono), conjugate(c));
    return out;
}

// Keeps the monomials with a = b and m = n.
template <class Scalar>
BasicElement<Scalar> expectation_coaction(const BasicElement<Scalar>& x)
{
    BasicElement<Scalar> out;
    for (const auto& [mono, c] : x.terms()) {
        if (mono.a() == mono.b() && mono.m() == mono.n()) out.add(mono, c);
    }
    return out;
}

// Keeps the monomials with a = b.
template <class Scalar>
BasicElement<Scalar> expectation_dual_action(const BasicElement<Scalar>& x)
{
    BasicElement<Scalar> out;
    for (const auto& [mono, c] : x.terms()) {
        if (mono.a() == mono.b()) out.add(mono, c);
    }
    return out;
}

// sigma_t(x) = (a/b)^{it} x
Complex sigma_phase(const Monomial& x, Real t);
// sigma_{i beta}(x) = (a/b)^{-beta} x
Real sigma_analytic_factor(const Monomial& x, Real beta);

struct GeneratorToken {
    enum class Kind { S, V };

    Kind kind = Kind::S;
    Int index = 0;  // prime for V
    Int power = 1;
    bool star = false;

    friend bool operator==(const GeneratorToken&, const GeneratorToken&) = default;
};

struct ParseOptions {
    // Accept v_a for composite a as the product of its prime factors.
    bool expand_composite = false;
};

class ParseError : public std::invalid_argument {
public:
    ParseError(const std::string& what, std::size_t position);
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// word := term (ws term)* ; term := base power? star? ; base := "s" | "v" uint
std::vector<GeneratorToken> parse_word(std::string_view text, const ParseOptions& options = {});
// Left-to-right rewriting, one generator factor at a time.
Monomial reduce_word(const std::vector<GeneratorToken>& tokens);
Monomial reduce(std::string_view text, const ParseOptions& options = {});
std::string to_string(const std::vector<GeneratorToken>& tokens);

}  // namespace nnx

namespace nnx {

// One instance of a defining relation, lhs = rhs, both as words.
struct RelationInstance {
    enum class Rhs { Word, Identity, Zero };

    std::string name;
    std::string lhs;
    Rhs rhs_kind = Rhs::Word;
    std::string rhs;
};

// (T1)-(T5) for p, q in primes, the isometry relations, and (T1')-(T5')
// for 2 <= a, b <= max_composite (0 skips them).
std::vector<RelationInstance> toeplitz_relations(const PrimeSet& primes, Int max_composite);

}  // namespace nnx

namespace nnx {

// s^m v_a v_b^* s^{*n} with m, n <= max_exponent and a, b drawn from parts.
std::vector<Monomial> monomial_grid(Int max_exponent, const std::vector<Int>& parts = {1, 2, 3, 4, 6});

}  // namespace nnx
