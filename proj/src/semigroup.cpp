#include "nnx/semigroup.hpp"

#include <stdexcept>

namespace nnx {

SemigroupElement::SemigroupElement(Int m, Int a)
    : m_(m), a_(a)
{
    if (m < 0) throw std::invalid_argument("semigroup element needs m >= 0");
    if (a < 1) throw std::invalid_argument("semigroup element needs a >= 1");
}

SemigroupElement operator*(const SemigroupElement& x, const SemigroupElement& y)
{
    return {checked_add(x.m(), checked_mul(x.a(), y.m())), checked_mul(x.a(), y.a())};
}

bool leq(const SemigroupElement& x, const SemigroupElement& y)
{
    Int diff = y.m() - x.m();
    return diff >= 0 && diff % x.a() == 0 && y.a() % x.a() == 0;
}

std::string to_string(const SemigroupElement& x)
{
    return "(" + std::to_string(x.m()) + "," + std::to_string(x.a()) + ")";
}

GroupElement::GroupElement()
    : r_(0), x_(1)
{
}

GroupElement::GroupElement(Rational r, Rational x)
    : r_(std::move(r)), x_(std::move(x))
{
    r_.canonicalize();
    x_.canonicalize();
    if (sgn(x_) <= 0) throw std::invalid_argument("group element needs x > 0");
}

GroupElement::GroupElement(const SemigroupElement& s)
    : r_(static_cast<long>(s.m())), x_(static_cast<long>(s.a()))
{
}

GroupElement operator*(const GroupElement& g, const GroupElement& h)
{
    return {g.r() + g.x() * h.r(), g.x() * h.x()};
}

GroupElement inverse(const GroupElement& g)
{
    return {-g.r() / g.x(), 1 / g.x()};
}

bool in_semigroup(const GroupElement& g)
{
    return g.r().get_den() == 1 && sgn(g.r()) >= 0 && g.x().get_den() == 1;
}

bool leq(const GroupElement& g, const GroupElement& h)
{
    return in_semigroup(inverse(g) * h);
}

namespace {

void check_coprime(Int c, Int d)
{
    if (c < 1 || d < 1) throw std::invalid_argument("euclid: c and d must be positive");
    if (gcd(c, d) != 1) throw std::invalid_argument("euclid: c and d must be coprime");
}

}  // namespace

EuclidTrace euclid_trace(Int c, Int d, Int k)
{
    check_coprime(c, d);
    if (k < 0) throw std::invalid_argument("euclid_trace: k must be non-negative");
    EuclidTrace trace;
    // remainder = k - (sum alpha) c + (sum beta) d
    Int alpha = ceil_div(k, c);
    trace.alphas.push_back(alpha);
    Int remainder = checked_sub(k, checked_mul(alpha, c));
    Int sum_alpha = alpha;
    Int sum_beta = 0;
    while (true) {
        Int beta = ceil_div(-remainder, d);
        remainder = checked_add(remainder, checked_mul(beta, d));
        alpha = ceil_div(remainder, c);
        remainder = checked_sub(remainder, checked_mul(alpha, c));
        if (alpha == 0 && beta == 0) break;
        trace.betas.push_back(beta);
        trace.alphas.push_back(alpha);
        sum_beta = checked_add(sum_beta, beta);
        sum_alpha = checked_add(sum_alpha, alpha);
    }
    trace.total = {sum_alpha, sum_beta};
    return trace;
}

EuclidSolution euclid_smallest(Int c, Int d, Int k)
{
    if (k >= 0) return euclid_trace(c, d, k).total;
    EuclidSolution swapped = euclid_trace(d, c, checked_sub(0, k)).total;
    return {swapped.beta, swapped.alpha};
}

EuclidSolution euclid_smallest_direct(Int c, Int d, Int k)
{
    check_coprime(c, d);
    if (k < 0) {
        EuclidSolution swapped = euclid_smallest_direct(d, c, checked_sub(0, k));
        return {swapped.beta, swapped.alpha};
    }
    // alpha c == k (mod d) and alpha c >= k.
    mpz_class inv, cc(static_cast<long>(c)), dd(static_cast<long>(d));
    Int base = 0;
    if (d > 1) {
        mpz_invert(inv.get_mpz_t(), cc.get_mpz_t(), dd.get_mpz_t());
        base = static_cast<Int>((static_cast<__int128>(mod(k, d)) * inv.get_si()) % d);
    }
    Int lower = ceil_div(k, c);
    Int alpha = checked_add(lower, mod(base - lower, d));
    Int beta = checked_sub(checked_mul(alpha, c), k) / d;
    return {alpha, beta};
}

std::optional<Join> join(const SemigroupElement& x, const SemigroupElement& y)
{
    Int g = gcd(x.a(), y.a());
    Int diff = checked_sub(y.m(), x.m());
    if (diff % g != 0) return std::nullopt;
    Int a1 = x.a() / g;
    Int b1 = y.a() / g;
    EuclidSolution e = euclid_smallest(a1, b1, diff / g);
    Int l = checked_add(x.m(), checked_mul(x.a(), e.alpha));
    Int top = checked_mul(a1, y.a());
    return Join{{l, top}, {e.alpha, b1}, {e.beta, a1}};
}

}  // namespace nnx
