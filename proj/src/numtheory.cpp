#include "nnx/numtheory.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nnx {

namespace {

using u128 = unsigned __int128;

UInt mulmod(UInt a, UInt b, UInt m) { return static_cast<UInt>(static_cast<u128>(a) * b % m); }

UInt powmod(UInt base, UInt e, UInt m)
{
    UInt result = 1 % m;
    base %= m;
    while (e > 0) {
        if (e & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        e >>= 1;
    }
    return result;
}

bool miller_rabin_witness(UInt n, UInt a, UInt d, int s)
{
    UInt x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return false;
    for (int i = 1; i < s; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return false;
    }
    return true;
}

UInt pollard_brent(UInt n)
{
    if (n % 2 == 0) return 2;
    for (UInt c = 1;; ++c) {
        UInt y = 2, x = 2, g = 1, q = 1, ys = 2;
        UInt r = 1;
        const UInt m = 128;
        auto f = [&](UInt v) { return (mulmod(v, v, n) + c) % n; };
        do {
            x = y;
            for (UInt i = 0; i < r; ++i) y = f(y);
            UInt k = 0;
            do {
                ys = y;
                for (UInt i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

void factor_into(UInt n, std::map<UInt, unsigned>& out)
{
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    UInt d = pollard_brent(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

}  // namespace

Real to_real(const Rational& q)
{
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
        return static_cast<Real>(q.get_num().get_si()) / static_cast<Real>(q.get_den().get_si());
    }
    return static_cast<Real>(q.get_d());
}

Int checked_add(Int x, Int y)
{
    Int r;
    if (__builtin_add_overflow(x, y, &r)) throw std::overflow_error("integer overflow in addition");
    return r;
}

Int checked_sub(Int x, Int y)
{
    Int r;
    if (__builtin_sub_overflow(x, y, &r)) throw std::overflow_error("integer overflow in subtraction");
    return r;
}

Int checked_mul(Int x, Int y)
{
    Int r;
    if (__builtin_mul_overflow(x, y, &r)) throw std::overflow_error("integer overflow in multiplication");
    return r;
}

Int checked_pow(Int base, unsigned exponent)
{
    Int r = 1;
    for (unsigned i = 0; i < exponent; ++i) r = checked_mul(r, base);
    return r;
}

Int gcd(Int x, Int y) { return std::gcd(x, y); }

Int lcm(Int x, Int y)
{
    if (x == 0 || y == 0) return 0;
    Int g = std::gcd(x, y);
    return checked_mul(std::abs(x / g), std::abs(y));
}

Int floor_div(Int x, Int d)
{
    if (d <= 0) throw std::invalid_argument("floor_div: divisor must be positive");
    Int q = x / d;
    if ((x % d) < 0) --q;
    return q;
}

Int ceil_div(Int x, Int d) { return -floor_div(-x, d); }

Int mod(Int x, Int d)
{
    if (d <= 0) throw std::invalid_argument("mod: modulus must be positive");
    Int r = x % d;
    return r < 0 ? r + d : r;
}

bool is_prime(UInt n)
{
    if (n < 2) return false;
    for (UInt p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    UInt d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is deterministic for all 64-bit n.
    for (UInt a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (miller_rabin_witness(n, a, d, s)) return false;
    }
    return true;
}

std::vector<std::pair<UInt, unsigned>> factorize(UInt n)
{
    if (n == 0) throw std::invalid_argument("factorize: zero has no factorisation");
    std::map<UInt, unsigned> found;
    for (UInt p = 2; p < 1000 && p * p <= n; ++p) {
        while (n % p == 0) {
            ++found[p];
            n /= p;
        }
    }
    factor_into(n, found);
    return {found.begin(), found.end()};
}

std::vector<UInt> primes_up_to(UInt n)
{
    std::vector<UInt> primes;
    if (n < 2) return primes;
    std::vector<bool> composite(n + 1, false);
    for (UInt i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (UInt j = i * i; j <= n; j += i) composite[j] = true;
    }
    return primes;
}

std::vector<UInt> first_primes(std::size_t count)
{
    std::vector<UInt> primes;
    for (UInt n = 2; primes.size() < count; ++n) {
        if (is_prime(n)) primes.push_back(n);
    }
    return primes;
}

std::vector<Int> divisors(Int n)
{
    if (n <= 0) throw std::invalid_argument("divisors: argument must be positive");
    std::vector<Int> out{1};
    for (auto [p, e] : factorize(static_cast<UInt>(n))) {
        std::size_t size = out.size();
        Int power = 1;
        for (unsigned k = 1; k <= e; ++k) {
            power *= static_cast<Int>(p);
            for (std::size_t i = 0; i < size; ++i) out.push_back(out[i] * power);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

PrimeSet make_prime_set(std::vector<UInt> primes)
{
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    for (UInt p : primes) {
        if (!is_prime(p)) throw std::invalid_argument("prime set contains non-prime " + std::to_string(p));
    }
    return primes;
}

bool supported_on(Int n, const PrimeSet& primes)
{
    if (n <= 0) return false;
    for (UInt p : primes) {
        while (n % static_cast<Int>(p) == 0) n /= static_cast<Int>(p);
    }
    return n == 1;
}

SupernaturalNumber::SupernaturalNumber(std::map<UInt, Exponent> listed, Exponent default_exponent)
    : listed_(std::move(listed)), default_(default_exponent)
{
    if (default_ != 0 && default_ != kInfiniteExponent) {
        throw std::invalid_argument("supernatural default exponent must be 0 or infinity");
    }
    for (const auto& [p, e] : listed_) {
        if (!is_prime(p)) throw std::invalid_argument("supernatural number keyed by non-prime " + std::to_string(p));
    }
    canonicalise();
}

SupernaturalNumber SupernaturalNumber::from_integer(UInt n)
{
    std::map<UInt, Exponent> listed;
    for (auto [p, e] : factorize(n)) listed[p] = e;
    return SupernaturalNumber(std::move(listed));
}

SupernaturalNumber SupernaturalNumber::nabla() { return SupernaturalNumber({}, kInfiniteExponent); }

void SupernaturalNumber::canonicalise()
{
    std::erase_if(listed_, [this](const auto& kv) { return kv.second == default_; });
}

Exponent SupernaturalNumber::exponent(UInt p) const
{
    auto it = listed_.find(p);
    return it == listed_.end() ? default_ : it->second;
}

bool SupernaturalNumber::is_finite() const
{
    if (default_ != 0) return false;
    return std::none_of(listed_.begin(), listed_.end(),
                        [](const auto& kv) { return kv.second == kInfiniteExponent; });
}

std::optional<UInt> SupernaturalNumber::value() const
{
    if (!is_finite()) return std::nullopt;
    Int v = 1;
    try {
        for (const auto& [p, e] : listed_) v = checked_mul(v, checked_pow(static_cast<Int>(p), e));
    } catch (const std::overflow_error&) {
        return std::nullopt;
    }
    return static_cast<UInt>(v);
}

bool SupernaturalNumber::admits_divisor(UInt a) const
{
    if (a == 0) return false;
    for (auto [p, e] : factorize(a)) {
        Exponent have = exponent(p);
        if (have != kInfiniteExponent && have < e) return false;
    }
    return true;
}

bool SupernaturalNumber::divides(const SupernaturalNumber& other) const
{
    if (default_ > other.default_) return false;
    for (const auto& [p, e] : listed_) {
        if (e > other.exponent(p)) return false;
    }
    for (const auto& [p, e] : other.listed_) {
        if (exponent(p) > e) return false;
    }
    return true;
}

std::string SupernaturalNumber::to_string() const
{
    std::ostringstream out;
    bool first = true;
    for (const auto& [p, e] : listed_) {
        if (!first) out << ' ';
        first = false;
        out << p << '^';
        if (e == kInfiniteExponent) out << "inf";
        else out << e;
    }
    if (default_ == kInfiniteExponent) out << (first ? "" : " ") << "(others)^inf";
    else if (first) out << '1';
    return out.str();
}

namespace {

template <class Pick>
SupernaturalNumber combine(const SupernaturalNumber& x, const SupernaturalNumber& y, Pick pick)
{
    std::map<UInt, Exponent> listed;
    for (const auto& [p, e] : x.listed()) listed[p] = pick(e, y.exponent(p));
    for (const auto& [p, e] : y.listed()) listed[p] = pick(x.exponent(p), e);
    return SupernaturalNumber(std::move(listed), pick(x.default_exponent(), y.default_exponent()));
}

}  // namespace

SupernaturalNumber gcd(const SupernaturalNumber& x, const SupernaturalNumber& y)
{
    return combine(x, y, [](Exponent a, Exponent b) { return std::min(a, b); });
}

SupernaturalNumber lcm(const SupernaturalNumber& x, const SupernaturalNumber& y)
{
    return combine(x, y, [](Exponent a, Exponent b) { return std::max(a, b); });
}

ResidueClass::ResidueClass(Int modulus_, Int value_)
    : modulus(modulus_)
{
    if (modulus_ < 1) throw std::invalid_argument("residue modulus must be positive");
    value = nnx::mod(value_, modulus_);
}

ResidueClass reduce(const ResidueClass& r, Int b)
{
    if (b < 1 || r.modulus % b != 0) throw std::invalid_argument("reduce: target modulus must divide the source modulus");
    return {b, r.value};
}

ResidueClass times_embed(const ResidueClass& r, Int a)
{
    if (a < 1) throw std::invalid_argument("times_embed: multiplier must be positive");
    return {checked_mul(a, r.modulus), checked_mul(a, r.value)};
}

std::vector<TruncatedAdele> crt_split(const TruncatedAdele& t)
{
    std::vector<TruncatedAdele> parts;
    for (auto [p, e] : factorize(static_cast<UInt>(t.modulus))) {
        Int q = checked_pow(static_cast<Int>(p), e);
        parts.emplace_back(q, t.value);
    }
    return parts;
}

namespace {

// Inverse of x modulo m, gcd(x, m) = 1.
Int inverse_mod(Int x, Int m)
{
    mpz_class inv;
    mpz_class xx(static_cast<long>(x)), mm(static_cast<long>(m));
    if (mpz_invert(inv.get_mpz_t(), xx.get_mpz_t(), mm.get_mpz_t()) == 0) {
        if (m == 1) return 0;
        throw std::invalid_argument("no modular inverse");
    }
    return inv.get_si();
}

}  // namespace

std::optional<ResidueClass> merge(const ResidueClass& x, const ResidueClass& y)
{
    Int g = gcd(x.modulus, y.modulus);
    if (mod(x.value - y.value, g) != 0) return std::nullopt;
    Int l = lcm(x.modulus, y.modulus);
    // x.value + x.modulus * t == y.value (mod y.modulus)
    Int m2 = y.modulus / g;
    Int t = static_cast<Int>(static_cast<__int128>(mod((y.value - x.value) / g, m2)) *
                             inverse_mod(mod(x.modulus / g, m2), m2) % m2);
    __int128 v = static_cast<__int128>(x.value) + static_cast<__int128>(x.modulus) * t;
    return ResidueClass(l, static_cast<Int>(v % l));
}

TruncatedAdele crt_combine(const std::vector<TruncatedAdele>& parts)
{
    ResidueClass acc(1, 0);
    for (const auto& part : parts) {
        if (gcd(acc.modulus, part.modulus) != 1) {
            throw std::invalid_argument("crt_combine: moduli are not pairwise coprime");
        }
        acc = *merge(acc, part);
    }
    return acc;
}

ZetaValue zeta_truncated(Real s, UInt N)
{
    if (!(s > 1)) throw std::domain_error("zeta: argument must exceed 1");
    if (N < 2) throw std::invalid_argument("zeta: truncation must be at least 2");
    // Sum small terms first.
    Real sum = 0;
    for (UInt n = N - 1; n >= 1; --n) sum += std::pow(static_cast<Real>(n), -s);
    const Real n = static_cast<Real>(N);
    const Real ns = std::pow(n, -s);
    Real tail = n * ns / (s - 1) + ns / 2 + s * ns / n / 12;
    Real rising = s * (s + 1) * (s + 2);
    Real n3 = ns / (n * n * n);
    tail -= rising * n3 / 720;
    rising *= (s + 3) * (s + 4);
    Real n5 = n3 / (n * n);
    tail += rising * n5 / 30240;
    rising *= (s + 5) * (s + 6);
    Real omitted = rising * n5 / (n * n) / 1209600;
    ZetaValue out;
    out.value = sum + tail;
    // Worst-case rounding for a sum of N positive terms.
    out.error_bound = omitted + static_cast<Real>(N) * LDBL_EPSILON * out.value;
    out.terms = N - 1;
    return out;
}

ZetaValue zeta(Real s, Real target)
{
    if (!(s > 1)) throw std::domain_error("zeta: argument must exceed 1");
    // Doubling N stops paying once rounding dominates the bound.
    ZetaValue best = zeta_truncated(s, 16);
    for (UInt N = 32; best.error_bound > target && N <= (UInt{1} << 24); N *= 2) {
        ZetaValue z = zeta_truncated(s, N);
        if (z.error_bound >= best.error_bound) break;
        best = z;
    }
    return best;
}

Real target_error(unsigned precision_bits)
{
    if (precision_bits < 1 || precision_bits > 64) throw std::invalid_argument("precision must be between 1 and 64 bits");
    return std::max(std::ldexp(Real{1}, -static_cast<int>(precision_bits)), Real{1e-15L});
}

Real zeta_E(Real s, const PrimeSet& E)
{
    if (!(s > 0)) throw std::domain_error("zeta_E: argument must be positive");
    Real product = 1;
    for (UInt p : E) product /= (1 - std::pow(static_cast<Real>(p), -s));
    return product;
}

}  // namespace nnx
