#include "nnx/spectrum.hpp"

#include <algorithm>

namespace nnx {

ResidueFamily ResidueFamily::from_generator(Int g)
{
    ResidueFamily r;
    r.generator_ = g;
    return r;
}

ResidueFamily ResidueFamily::from_table(const ResidueClass& table)
{
    ResidueFamily r;
    r.generator_.reset();
    r.table_ = table;
    return r;
}

ResidueFamily ResidueFamily::from_values(const std::map<Int, Int>& values)
{
    ResidueClass acc(1, 0);
    for (const auto& [a, v] : values) {
        auto merged = merge(acc, ResidueClass(a, v));
        if (!merged) throw std::invalid_argument("residue table is not coherent at level " + std::to_string(a));
        acc = *merged;
    }
    return from_table(acc);
}

std::optional<Int> ResidueFamily::level() const
{
    if (generator_) return std::nullopt;
    return table_->modulus;
}

bool ResidueFamily::known_at(Int a) const
{
    if (a < 1) return false;
    return generator_.has_value() || table_->modulus % a == 0;
}

Int ResidueFamily::at(Int a) const
{
    if (!known_at(a)) {
        throw LevelExceeded("residue requested at level " + std::to_string(a) + " beyond declared level " +
                            std::to_string(table_->modulus));
    }
    return generator_ ? mod(*generator_, a) : mod(table_->value, a);
}

std::string to_string(const SpectrumPoint& w)
{
    if (const auto* p = std::get_if<APoint>(&w)) return "A(" + std::to_string(p->k) + ", " + p->N.to_string() + ")";
    const auto& b = std::get<BPoint>(w);
    std::string r = b.r.generator() ? std::to_string(*b.r.generator())
                                    : std::to_string(b.r.table()->value) + " mod " + std::to_string(b.r.table()->modulus);
    return "B(" + r + ", " + b.N.to_string() + ")";
}

bool contains(const SpectrumPoint& w, const SemigroupElement& x)
{
    if (const auto* p = std::get_if<APoint>(&w)) {
        return p->N.admits_divisor(static_cast<UInt>(x.a())) && x.m() <= p->k && (p->k - x.m()) % x.a() == 0;
    }
    const auto& b = std::get<BPoint>(w);
    return b.N.admits_divisor(static_cast<UInt>(x.a())) && mod(x.m(), x.a()) == b.r.at(x.a());
}

namespace {

// The divisors a of N the inclusion quantifiers range over.
std::vector<Int> quantified_divisors(const SupernaturalNumber& N, Int level)
{
    if (N.is_finite()) {
        auto value = N.value();
        if (!value || *value > static_cast<UInt>(INT64_MAX)) throw std::overflow_error("supernatural number too large");
        return divisors(static_cast<Int>(*value));
    }
    std::vector<Int> out;
    for (Int a = 1; a <= level; ++a) {
        if (N.admits_divisor(static_cast<UInt>(a))) out.push_back(a);
    }
    return out;
}

}  // namespace

bool includes(const SpectrumPoint& outer, const SpectrumPoint& inner, Int level)
{
    if (level < 1) throw std::invalid_argument("includes: level must be positive");
    if (std::holds_alternative<BPoint>(inner) && std::holds_alternative<APoint>(outer)) return false;

    const SupernaturalNumber& N = std::visit([](const auto& p) -> const SupernaturalNumber& { return p.N; }, inner);
    const SupernaturalNumber& M = std::visit([](const auto& p) -> const SupernaturalNumber& { return p.N; }, outer);
    if (!N.divides(M)) return false;

    if (const auto* b = std::get_if<BPoint>(&inner)) {
        const auto& r = std::get<BPoint>(outer).r;
        for (Int a : quantified_divisors(N, level)) {
            if (b->r.at(a) != r.at(a)) return false;
        }
        return true;
    }
    const auto& a_inner = std::get<APoint>(inner);
    if (const auto* b = std::get_if<BPoint>(&outer)) {
        for (Int a : quantified_divisors(N, level)) {
            if (mod(a_inner.k, a) != b->r.at(a)) return false;
        }
        return true;
    }
    const auto& a_outer = std::get<APoint>(outer);
    Int diff = a_outer.k - a_inner.k;
    if (!N.is_finite()) return diff == 0;
    if (diff < 0) return false;
    for (Int a : quantified_divisors(N, level)) {
        if (diff % a != 0) return false;
    }
    return true;
}

ResidueFamily boundary_act(const SemigroupElement& x, const ResidueFamily& r)
{
    if (r.generator()) return ResidueFamily::from_generator(checked_add(x.m(), checked_mul(x.a(), *r.generator())));
    const ResidueClass& t = *r.table();
    ResidueClass scaled = times_embed(t, x.a());
    return ResidueFamily::from_table(ResidueClass(scaled.modulus, checked_add(scaled.value, x.m())));
}

std::vector<PrimeComponent> decompose(const BPoint& b, Int level)
{
    std::vector<UInt> primes;
    for (const auto& [p, e] : b.N.listed()) primes.push_back(p);
    if (b.N.default_exponent() != 0) {
        for (UInt p : primes_up_to(static_cast<UInt>(std::max<Int>(level, 1)))) primes.push_back(p);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    std::vector<PrimeComponent> out;
    for (UInt p : primes) {
        Exponent e = b.N.exponent(p);
        if (e == 0) continue;
        Int q = 1;
        if (e == kInfiniteExponent) {
            while (q <= level / static_cast<Int>(p)) q *= static_cast<Int>(p);
            if (q == 1) continue;
        } else {
            q = checked_pow(static_cast<Int>(p), e);
        }
        out.push_back({p, e, ResidueClass(q, b.r.at(q))});
    }
    return out;
}

BPoint recompose(const std::vector<PrimeComponent>& components)
{
    std::map<UInt, Exponent> listed;
    std::vector<TruncatedAdele> parts;
    for (const auto& c : components) {
        if (!listed.emplace(c.prime, c.exponent).second) throw std::invalid_argument("recompose: repeated prime");
        parts.push_back(c.residue);
    }
    return {ResidueFamily::from_table(crt_combine(parts)), SupernaturalNumber(std::move(listed))};
}

VerifyResult verify_hereditary_directed(const std::function<bool(const SemigroupElement&)>& member, Int bound)
{
    std::vector<SemigroupElement> members;
    for (Int a = 1; a <= bound; ++a) {
        for (Int m = 0; m <= bound; ++m) {
            if (member({m, a})) members.emplace_back(m, a);
        }
    }
    if (members.empty()) return {false, "empty on the window"};
    for (const auto& x : members) {
        for (Int b : divisors(x.a())) {
            for (Int n = x.m() % b; n <= x.m(); n += b) {
                SemigroupElement y(n, b);
                if (!member(y)) return {false, "not hereditary: " + to_string(y) + " <= " + to_string(x)};
            }
        }
    }
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            auto upper = join(members[i], members[j]);
            if (!upper || !member(upper->upper)) {
                return {false, "not directed: " + to_string(members[i]) + " and " + to_string(members[j])};
            }
        }
    }
    return {};
}

VerifyResult verify_hereditary_directed(const SpectrumPoint& w, Int bound)
{
    return verify_hereditary_directed([&w](const SemigroupElement& x) { return contains(w, x); }, bound);
}

}  // namespace nnx
