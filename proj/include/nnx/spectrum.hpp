#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "nnx/numtheory.hpp"
#include "nnx/semigroup.hpp"

namespace nnx {

class LevelExceeded : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// A coherent family a |-> r(a) in Z/a. Either every level is known (an
// integer generator) or only the divisors of a declared level (a table).
class ResidueFamily {
public:
    ResidueFamily() = default;

    static ResidueFamily from_generator(Int g);
    static ResidueFamily from_table(const ResidueClass& r);
    // Values r(a) for several levels; rejected when incoherent.
    static ResidueFamily from_values(const std::map<Int, Int>& values);

    const std::optional<Int>& generator() const { return generator_; }
    const std::optional<ResidueClass>& table() const { return table_; }
    // nullopt when every level is known.
    std::optional<Int> level() const;

    bool known_at(Int a) const;
    Int at(Int a) const;

    friend bool operator==(const ResidueFamily&, const ResidueFamily&) = default;

private:
    std::optional<Int> generator_ = 0;
    std::optional<ResidueClass> table_;
};

// A(k, N) = {(m, a) : a | N, m <= k, a | k - m}
struct APoint {
    Int k = 0;
    SupernaturalNumber N;
};

// B(r, N) = {(m, a) : a | N, m = r(a) mod a}
struct BPoint {
    ResidueFamily r;
    SupernaturalNumber N;
};

using SpectrumPoint = std::variant<APoint, BPoint>;

std::string to_string(const SpectrumPoint& w);

bool contains(const SpectrumPoint& w, const SemigroupElement& x);
// True when inner is a subset of outer. Divisor quantifiers over an
// infinite supernatural number run through a <= level.
bool includes(const SpectrumPoint& outer, const SpectrumPoint& inner, Int level);

// (m, a) . r = m + a r on the boundary.
ResidueFamily boundary_act(const SemigroupElement& x, const ResidueFamily& r);

struct PrimeComponent {
    UInt prime = 0;
    Exponent exponent = 0;
    ResidueClass residue;  // modulo p^k, k = exponent or its truncation

    friend bool operator==(const PrimeComponent&, const PrimeComponent&) = default;
};

// Prime-by-prime components; infinite exponents are truncated to the
// largest power not exceeding level.
std::vector<PrimeComponent> decompose(const BPoint& b, Int level);
BPoint recompose(const std::vector<PrimeComponent>& components);

struct VerifyResult {
    bool passed = true;
    std::string counterexample;
};

// Non-empty, hereditary and directed on the window m, a <= bound.
VerifyResult verify_hereditary_directed(const std::function<bool(const SemigroupElement&)>& member, Int bound);
VerifyResult verify_hereditary_directed(const SpectrumPoint& w, Int bound);

}  // namespace nnx
