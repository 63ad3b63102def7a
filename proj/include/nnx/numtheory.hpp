#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace nnx {

using Int = std::int64_t;
using UInt = std::uint64_t;
using Real = long double;
using Complex = std::complex<Real>;
using Rational = mpq_class;

// Checked 64-bit arithmetic; overflow throws std::overflow_error.
// Nearest long double when numerator and denominator fit in 64 bits.
Real to_real(const Rational& q);

Int checked_add(Int x, Int y);
Int checked_sub(Int x, Int y);
Int checked_mul(Int x, Int y);
Int checked_pow(Int base, unsigned exponent);

Int gcd(Int x, Int y);
Int lcm(Int x, Int y);
// Floor division and the non-negative remainder, for any sign of x and d > 0.
Int floor_div(Int x, Int d);
Int ceil_div(Int x, Int d);
Int mod(Int x, Int d);

bool is_prime(UInt n);
// Prime factorisation as (prime, exponent) pairs in increasing prime order.
std::vector<std::pair<UInt, unsigned>> factorize(UInt n);
std::vector<UInt> primes_up_to(UInt n);
std::vector<UInt> first_primes(std::size_t count);
// Positive divisors in increasing order.
std::vector<Int> divisors(Int n);

// A finite set of primes, sorted and deduplicated.
using PrimeSet = std::vector<UInt>;
PrimeSet make_prime_set(std::vector<UInt> primes);
bool supported_on(Int n, const PrimeSet& primes);

using Exponent = std::uint32_t;
inline constexpr Exponent kInfiniteExponent = 0xffffffffu;

// Formal product of prime powers with exponents in N ∪ {∞}. Primes not
// listed carry the default exponent, which is 0 or ∞.
class SupernaturalNumber {
public:
    SupernaturalNumber() = default;
    explicit SupernaturalNumber(std::map<UInt, Exponent> listed, Exponent default_exponent = 0);

    static SupernaturalNumber from_integer(UInt n);
    static SupernaturalNumber nabla();

    Exponent exponent(UInt p) const;
    Exponent default_exponent() const { return default_; }
    const std::map<UInt, Exponent>& listed() const { return listed_; }

    bool is_finite() const;
    // Integer value when finite and representable.
    std::optional<UInt> value() const;
    // True when the integer a divides this supernatural number.
    bool admits_divisor(UInt a) const;
    bool divides(const SupernaturalNumber& other) const;

    std::string to_string() const;

    friend bool operator==(const SupernaturalNumber&, const SupernaturalNumber&) = default;

private:
    void canonicalise();

    std::map<UInt, Exponent> listed_;
    Exponent default_ = 0;
};

SupernaturalNumber gcd(const SupernaturalNumber& x, const SupernaturalNumber& y);
SupernaturalNumber lcm(const SupernaturalNumber& x, const SupernaturalNumber& y);

// n mod modulus with the value held in [0, modulus).
struct ResidueClass {
    Int modulus = 1;
    Int value = 0;

    ResidueClass() = default;
    ResidueClass(Int modulus, Int value);

    friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
};

// An integral adele known modulo its level.
using TruncatedAdele = ResidueClass;

// Image under Z/modulus -> Z/b, b | modulus.
ResidueClass reduce(const ResidueClass& r, Int b);
// The map Z/b -> Z/ab, n mod b |-> an mod ab.
ResidueClass times_embed(const ResidueClass& r, Int a);
// Components at the prime powers of the level, in increasing prime order.
std::vector<TruncatedAdele> crt_split(const TruncatedAdele& t);
// Inverse of crt_split; moduli must be pairwise coprime.
TruncatedAdele crt_combine(const std::vector<TruncatedAdele>& parts);
// Glue two coherent residues into one modulo the lcm; nullopt if incoherent.
std::optional<ResidueClass> merge(const ResidueClass& x, const ResidueClass& y);

struct ZetaValue {
    Real value = 0;
    Real error_bound = 0;
    UInt terms = 0;
};

// Riemann zeta for real s > 1: partial sum to N-1 plus the integral tail
// N^{1-s}/(s-1) and Euler-Maclaurin boundary terms. error_bound covers the
// first omitted term and summation rounding.
ZetaValue zeta_truncated(Real s, UInt N);
ZetaValue zeta(Real s, Real target_error);
Real target_error(unsigned precision_bits);

// prod_{p in E} (1 - p^{-s})^{-1}, s > 0.
Real zeta_E(Real s, const PrimeSet& E);

}  // namespace nnx
