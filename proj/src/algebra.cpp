#include "nnx/algebra.hpp"

#include <cctype>
#include <cmath>

#include "nnx/semigroup.hpp"

namespace nnx {

Monomial::Monomial(Int m, Int a, Int b, Int n)
    : m_(m), a_(a), b_(b), n_(n)
{
    if (m < 0 || n < 0) throw std::invalid_argument("monomial exponents must be non-negative");
    if (a < 1 || b < 1) throw std::invalid_argument("monomial multiplicative parts must be positive");
}

Monomial Monomial::zero()
{
    Monomial x;
    x.zero_ = true;
    return x;
}

Monomial gen_s() { return {1, 1, 1, 0}; }
Monomial gen_s_star() { return {0, 1, 1, 1}; }
Monomial gen_v(Int p) { return {0, p, 1, 0}; }
Monomial gen_v_star(Int p) { return {0, 1, p, 0}; }

Monomial s_power(Int k)
{
    if (k >= 0) return {k, 1, 1, 0};
    return {0, 1, 1, checked_sub(0, k)};
}

Monomial covariance_reduce(Int a, Int m, Int n, Int b)
{
    Int g = gcd(a, b);
    Int diff = checked_sub(n, m);
    if (diff % g != 0) return Monomial::zero();
    Int a1 = a / g;
    Int b1 = b / g;
    EuclidSolution e = euclid_smallest(a1, b1, diff / g);
    return {e.alpha, b1, a1, e.beta};
}

Monomial operator*(const Monomial& x, const Monomial& y)
{
    if (x.is_zero() || y.is_zero()) return Monomial::zero();
    // s^m v_a [v_b^* s^{*n} s^q v_c] v_d^* s^{*r}
    Monomial middle = covariance_reduce(x.b(), x.n(), y.m(), y.a());
    if (middle.is_zero()) return middle;
    return {checked_add(x.m(), checked_mul(x.a(), middle.m())), checked_mul(x.a(), middle.a()),
            checked_mul(y.b(), middle.b()), checked_add(y.n(), checked_mul(y.b(), middle.n()))};
}

Monomial adjoint(const Monomial& x)
{
    if (x.is_zero()) return x;
    return {x.n(), x.b(), x.a(), x.m()};
}

std::string to_string(const Monomial& x)
{
    if (x.is_zero()) return "0";
    std::string out;
    auto put = [&out](const std::string& piece) {
        if (!out.empty()) out += ' ';
        out += piece;
    };
    auto pow = [](Int k) { return k == 1 ? std::string() : "^" + std::to_string(k); };
    if (x.m() > 0) put("s" + pow(x.m()));
    if (x.a() > 1) put("v" + std::to_string(x.a()));
    if (x.b() > 1) put("v" + std::to_string(x.b()) + "*");
    if (x.n() > 0) put("s" + pow(x.n()) + "*");
    return out.empty() ? "1" : out;
}

Complex sigma_phase(const Monomial& x, Real t)
{
    if (x.is_zero()) return 0;
    Real angle = t * std::log(static_cast<Real>(x.a()) / static_cast<Real>(x.b()));
    return {std::cos(angle), std::sin(angle)};
}

Real sigma_analytic_factor(const Monomial& x, Real beta)
{
    return std::pow(static_cast<Real>(x.a()) / static_cast<Real>(x.b()), -beta);
}

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position)
{
}

namespace {

bool read_uint(std::string_view text, std::size_t& pos, Int& value)
{
    std::size_t start = pos;
    value = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        Int digit = text[pos] - '0';
        if (value > (INT64_MAX - digit) / 10) throw ParseError("number too large", start);
        value = value * 10 + digit;
        ++pos;
    }
    return pos > start;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

}  // namespace

std::vector<GeneratorToken> parse_word(std::string_view text, const ParseOptions& options)
{
    std::vector<GeneratorToken> tokens;
    std::size_t pos = 0;
    while (pos < text.size() && is_space(text[pos])) ++pos;
    if (pos == text.size()) throw ParseError("expected a term", pos);
    while (pos < text.size()) {
        std::size_t term_start = pos;
        GeneratorToken token;
        Int index = 0;
        if (text[pos] == 's') {
            token.kind = GeneratorToken::Kind::S;
            ++pos;
        } else if (text[pos] == 'v') {
            token.kind = GeneratorToken::Kind::V;
            ++pos;
            if (!read_uint(text, pos, index)) throw ParseError("expected an index after 'v'", pos);
            if (index < 1) throw ParseError("generator index must be positive", term_start + 1);
            if (!is_prime(static_cast<UInt>(index)) && !options.expand_composite) {
                throw ParseError("v" + std::to_string(index) + " is not a prime generator", term_start);
            }
        } else {
            throw ParseError(std::string("unexpected character '") + text[pos] + "'", pos);
        }
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            if (!read_uint(text, pos, token.power)) throw ParseError("expected an exponent after '^'", pos);
        }
        if (pos < text.size() && text[pos] == '*') {
            token.star = true;
            ++pos;
        }
        if (pos < text.size() && !is_space(text[pos])) {
            throw ParseError(std::string("unexpected character '") + text[pos] + "'", pos);
        }
        while (pos < text.size() && is_space(text[pos])) ++pos;

        if (token.kind == GeneratorToken::Kind::S) {
            tokens.push_back(token);
        } else if (is_prime(static_cast<UInt>(index))) {
            token.index = index;
            tokens.push_back(token);
        } else {
            for (auto [p, e] : factorize(static_cast<UInt>(index))) {
                GeneratorToken part = token;
                part.index = static_cast<Int>(p);
                part.power = checked_mul(token.power, e);
                tokens.push_back(part);
            }
        }
    }
    return tokens;
}

Monomial reduce_word(const std::vector<GeneratorToken>& tokens)
{
    Monomial acc;
    for (const auto& token : tokens) {
        Monomial factor;
        if (token.kind == GeneratorToken::Kind::S) factor = token.star ? gen_s_star() : gen_s();
        else factor = token.star ? gen_v_star(token.index) : gen_v(token.index);
        for (Int i = 0; i < token.power; ++i) acc = acc * factor;
    }
    return acc;
}

Monomial reduce(std::string_view text, const ParseOptions& options)
{
    return reduce_word(parse_word(text, options));
}

std::string to_string(const std::vector<GeneratorToken>& tokens)
{
    std::string out;
    for (const auto& token : tokens) {
        if (!out.empty()) out += ' ';
        out += token.kind == GeneratorToken::Kind::S ? "s" : "v" + std::to_string(token.index);
        if (token.power != 1) out += "^" + std::to_string(token.power);
        if (token.star) out += '*';
    }
    return out;
}

}  // namespace nnx

namespace nnx {

namespace {

std::string v(Int a) { return "v" + std::to_string(a); }
std::string s_pow(Int k) { return k == 1 ? "s" : "s^" + std::to_string(k); }

}  // namespace

std::vector<RelationInstance> toeplitz_relations(const PrimeSet& prime_set, Int max_composite)
{
    using R = RelationInstance::Rhs;
    std::vector<RelationInstance> out;
    std::vector<Int> primes(prime_set.begin(), prime_set.end());

    out.push_back({"isometry", "s* s", R::Identity, ""});
    for (Int p : primes) out.push_back({"isometry", v(p) + "* " + v(p), R::Identity, ""});
    for (Int p : primes) out.push_back({"T1", v(p) + " s", R::Word, s_pow(p) + " " + v(p)});
    for (Int p : primes) {
        for (Int q : primes) out.push_back({"T2", v(p) + " " + v(q), R::Word, v(q) + " " + v(p)});
    }
    for (Int p : primes) {
        for (Int q : primes) {
            if (p != q) out.push_back({"T3", v(p) + "* " + v(q), R::Word, v(q) + " " + v(p) + "*"});
        }
    }
    for (Int p : primes) out.push_back({"T4", "s* " + v(p), R::Word, s_pow(p - 1) + " " + v(p) + " s*"});
    for (Int p : primes) {
        for (Int k = 1; k < p; ++k) out.push_back({"T5", v(p) + "* " + s_pow(k) + " " + v(p), R::Zero, ""});
    }

    for (Int a = 2; a <= max_composite; ++a) out.push_back({"T1'", v(a) + " s", R::Word, s_pow(a) + " " + v(a)});
    for (Int a = 2; a <= max_composite; ++a) {
        for (Int b = 2; b <= max_composite; ++b) out.push_back({"T2'", v(a) + " " + v(b), R::Word, v(b) + " " + v(a)});
    }
    for (Int a = 2; a <= max_composite; ++a) {
        for (Int b = 2; b <= max_composite; ++b) {
            if (gcd(a, b) == 1) out.push_back({"T3'", v(a) + "* " + v(b), R::Word, v(b) + " " + v(a) + "*"});
        }
    }
    for (Int a = 2; a <= max_composite; ++a) {
        out.push_back({"T4'", "s* " + v(a), R::Word, s_pow(a - 1) + " " + v(a) + " s*"});
    }
    for (Int a = 2; a <= max_composite; ++a) {
        for (Int k = 1; k < a; ++k) out.push_back({"T5'", v(a) + "* " + s_pow(k) + " " + v(a), R::Zero, ""});
    }
    return out;
}

}  // namespace nnx

namespace nnx {

std::vector<Monomial> monomial_grid(Int max_exponent, const std::vector<Int>& parts)
{
    std::vector<Monomial> out;
    for (Int m = 0; m <= max_exponent; ++m) {
        for (Int a : parts) {
            for (Int b : parts) {
                for (Int n = 0; n <= max_exponent; ++n) out.emplace_back(m, a, b, n);
            }
        }
    }
    return out;
}

}  // namespace nnx
