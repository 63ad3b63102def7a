#include "nnx/representation.hpp"

#include <array>
#include <cmath>
#include <map>
#include <stdexcept>

#include "nnx/states.hpp"

namespace nnx {

namespace {

using Kind = GeneratorToken::Kind;

Int token_factor(const GeneratorToken& token)
{
    if (token.index < 1) throw std::invalid_argument("generator index must be positive");
    return checked_pow(token.index, static_cast<unsigned>(token.power));
}

// s^m v_a v_b^* s^{*n} as tokens, rightmost first in application order.
std::array<GeneratorToken, 4> monomial_tokens(const Monomial& x)
{
    return {{{Kind::S, 0, x.m(), false}, {Kind::V, x.a(), 1, false}, {Kind::V, x.b(), 1, true}, {Kind::S, 0, x.n(), true}}};
}

template <class Vector, class Word, class Step>
std::optional<Vector> apply_sequence(const Word& word, const Vector& e, Step step)
{
    std::optional<Vector> v = e;
    for (auto it = word.rbegin(); it != word.rend() && v; ++it) v = step(*it, *v);
    return v;
}

}  // namespace

std::optional<SemigroupElement> toeplitz_apply(const SemigroupElement& y, bool adjoint, const SemigroupElement& e)
{
    if (!adjoint) return y * e;
    if (!leq(y, e)) return std::nullopt;
    return SemigroupElement((e.m() - y.m()) / y.a(), e.a() / y.a());
}

std::optional<SemigroupElement> toeplitz_apply(const GeneratorToken& token, const SemigroupElement& e)
{
    SemigroupElement y = token.kind == Kind::S ? SemigroupElement(token.power, 1) : SemigroupElement(0, token_factor(token));
    return toeplitz_apply(y, token.star, e);
}

std::optional<SemigroupElement> toeplitz_apply(const Monomial& x, const SemigroupElement& e)
{
    if (x.is_zero()) return std::nullopt;
    return apply_sequence(monomial_tokens(x), e, [](const GeneratorToken& t, const SemigroupElement& v) {
        return toeplitz_apply(t, v);
    });
}

std::optional<SemigroupElement> toeplitz_apply_word(const std::vector<GeneratorToken>& word, const SemigroupElement& e)
{
    return apply_sequence(word, e, [](const GeneratorToken& t, const SemigroupElement& v) { return toeplitz_apply(t, v); });
}

std::optional<XVector> x_apply(const GeneratorToken& token, const XVector& e)
{
    if (token.kind == Kind::S) {
        Int shifted = token.star ? checked_sub(e.r, token.power) : checked_add(e.r, token.power);
        // Each pass through 0 in Z/x picks up z (or z-bar going down).
        return XVector{mod(shifted, e.x), e.x, checked_add(e.winding, floor_div(shifted, e.x))};
    }
    Int c = token_factor(token);
    if (!token.star) return XVector{checked_mul(c, e.r), checked_mul(c, e.x), e.winding};
    if (e.x % c != 0 || e.r % c != 0) return std::nullopt;
    return XVector{e.r / c, e.x / c, e.winding};
}

std::optional<XVector> x_apply(const Monomial& x, const XVector& e)
{
    if (x.is_zero()) return std::nullopt;
    return apply_sequence(monomial_tokens(x), e, [](const GeneratorToken& t, const XVector& v) { return x_apply(t, v); });
}

std::optional<XVector> x_apply_word(const std::vector<GeneratorToken>& word, const XVector& e)
{
    return apply_sequence(word, e, [](const GeneratorToken& t, const XVector& v) { return x_apply(t, v); });
}

Complex x_phase(const XVector& e, const Rational& z_angle)
{
    return unit_root(z_angle * Rational(static_cast<long>(e.winding)));
}

bool x_equal(const XVector& u, const XVector& v, const Rational& z_angle)
{
    if (u.r != v.r || u.x != v.x) return false;
    Rational diff = z_angle * Rational(static_cast<long>(u.winding - v.winding));
    diff.canonicalize();
    return diff.get_den() == 1;
}

std::optional<Int> z_apply(const GeneratorToken& token, Int n)
{
    if (token.kind == Kind::S) return token.star ? checked_sub(n, token.power) : checked_add(n, token.power);
    Int c = token_factor(token);
    if (!token.star) return checked_mul(c, n);
    if (n % c != 0) return std::nullopt;
    return n / c;
}

std::optional<Int> z_apply(const Monomial& x, Int n)
{
    if (x.is_zero()) return std::nullopt;
    return apply_sequence(monomial_tokens(x), n, [](const GeneratorToken& t, Int v) { return z_apply(t, v); });
}

std::optional<Int> z_apply_word(const std::vector<GeneratorToken>& word, Int n)
{
    return apply_sequence(word, n, [](const GeneratorToken& t, Int v) { return z_apply(t, v); });
}

bool RelationReport::passed() const
{
    for (const auto& e : entries) {
        if (!e.passed) return false;
    }
    return true;
}

namespace {

std::string describe(const std::optional<SemigroupElement>& v)
{
    return v ? "e" + to_string(*v) : "0";
}

std::string describe(const std::optional<XVector>& v)
{
    if (!v) return "0";
    return "z^" + std::to_string(v->winding) + " e(" + std::to_string(v->r) + "," + std::to_string(v->x) + ")";
}

std::string describe(const std::optional<Int>& v) { return v ? "e(" + std::to_string(*v) + ")" : "0"; }

RelationResult& entry_for(std::map<std::string, std::size_t>& index, RelationReport& report, const std::string& name)
{
    auto [it, inserted] = index.try_emplace(name, report.entries.size());
    if (inserted) report.entries.push_back({name, 0, true, ""});
    return report.entries[it->second];
}

template <class Vector, class Apply, class Equal>
void check_instances(const std::vector<RelationInstance>& instances, const std::vector<Vector>& window, Apply apply,
                     Equal equal, RelationReport& report)
{
    std::map<std::string, std::size_t> index;
    ParseOptions options{true};
    for (const auto& rel : instances) {
        auto lhs = parse_word(rel.lhs, options);
        std::vector<GeneratorToken> rhs;
        if (rel.rhs_kind == RelationInstance::Rhs::Word) rhs = parse_word(rel.rhs, options);
        RelationResult& entry = entry_for(index, report, rel.name);
        for (const auto& e : window) {
            auto left = apply(lhs, e);
            std::optional<Vector> right;
            if (rel.rhs_kind != RelationInstance::Rhs::Zero) right = apply(rhs, e);
            ++entry.checked;
            bool same = left.has_value() == right.has_value() && (!left || equal(*left, *right));
            if (!same && entry.passed) {
                entry.passed = false;
                std::string rhs_text = rel.rhs_kind == RelationInstance::Rhs::Zero       ? "0"
                                       : rel.rhs_kind == RelationInstance::Rhs::Identity ? "1"
                                                                                        : rel.rhs;
                entry.counterexample = rel.lhs + " = " + rhs_text + " fails on " + describe(std::optional<Vector>(e)) +
                                       ": " + describe(left) + " vs " + describe(right);
            }
        }
    }
}

}  // namespace

RelationReport relation_suite(Model model, const PrimeSet& primes, Int window, const Rational& z_angle, Int max_composite)
{
    if (window < 1) throw std::invalid_argument("relation_suite: window must be positive");
    RelationReport report;
    if (model == Model::Toeplitz) {
        std::vector<SemigroupElement> basis;
        for (Int a = 1; a <= window; ++a) {
            for (Int m = 0; m <= window; ++m) basis.emplace_back(m, a);
        }
        check_instances(toeplitz_relations(primes, max_composite), basis,
                        [](const auto& w, const SemigroupElement& e) { return toeplitz_apply_word(w, e); },
                        [](const SemigroupElement& u, const SemigroupElement& v) { return u == v; }, report);
        return report;
    }
    if (model == Model::X) {
        std::vector<XVector> basis;
        for (Int x = 1; x <= window; ++x) {
            for (Int r = 0; r < x; ++r) basis.push_back({r, x, 0});
        }
        check_instances(toeplitz_relations(primes, max_composite), basis,
                        [](const auto& w, const XVector& e) { return x_apply_word(w, e); },
                        [&z_angle](const XVector& u, const XVector& v) { return x_equal(u, v, z_angle); }, report);
        return report;
    }

    std::vector<Int> basis;
    for (Int n = -window; n <= window; ++n) basis.push_back(n);
    std::vector<RelationInstance> instances;
    using R = RelationInstance::Rhs;
    for (UInt p : primes) {
        std::string vp = "v" + std::to_string(p);
        instances.push_back({"Q1", vp + " s", R::Word, "s^" + std::to_string(p) + " " + vp});
    }
    for (UInt p : primes) {
        for (UInt q : primes) {
            instances.push_back({"Q2", "v" + std::to_string(p) + " v" + std::to_string(q), R::Word,
                                 "v" + std::to_string(q) + " v" + std::to_string(p)});
        }
    }
    instances.push_back({"Q6", "s s*", R::Identity, ""});
    instances.push_back({"Q6", "s* s", R::Identity, ""});
    check_instances(instances, basis, [](const auto& w, Int e) { return z_apply_word(w, e); },
                    [](Int u, Int v) { return u == v; }, report);

    // (Q5): the range projections of s^k v_p, 0 <= k < p, partition the basis.
    RelationResult q5{"Q5", 0, true, ""};
    for (UInt p : primes) {
        std::vector<std::vector<GeneratorToken>> projections;
        for (Int k = 0; k < static_cast<Int>(p); ++k) {
            std::string sk = "s^" + std::to_string(k);
            std::string vp = "v" + std::to_string(p);
            projections.push_back(parse_word(sk + " " + vp + " " + vp + "* " + sk + "*"));
        }
        for (Int n : basis) {
            int hits = 0;
            for (const auto& word : projections) {
                auto image = z_apply_word(word, n);
                if (image && *image == n) ++hits;
                else if (image && q5.passed) {
                    q5.passed = false;
                    q5.counterexample = "range projection moved e(" + std::to_string(n) + ")";
                }
            }
            ++q5.checked;
            if (hits != 1 && q5.passed) {
                q5.passed = false;
                q5.counterexample = "e(" + std::to_string(n) + ") lies in " + std::to_string(hits) + " ranges for p=" +
                                    std::to_string(p);
            }
        }
    }
    report.entries.push_back(q5);
    return report;
}

TraceProfile::TraceProfile(const Monomial& x, const Rational& z_angle, Int N, const PrimeSet* compress)
{
    if (N < 1) throw std::invalid_argument("trace truncation must be positive");
    diagonal_.assign(static_cast<std::size_t>(N) + 1, Complex(0));
    if (x.is_zero()) return;
    for (Int size = 1; size <= N; ++size) {
        std::map<Int, Int> windings;
        for (Int r = 0; r < size; ++r) {
            XVector e{r, size, 0};
            if (compress && !q_projector_apply(*compress, e)) continue;
            auto image = x_apply(x, e);
            if (image && image->r == r && image->x == size) ++windings[image->winding];
        }
        Complex sum = 0;
        for (const auto& [w, count] : windings) sum += static_cast<Real>(count) * x_phase({0, 1, w}, z_angle);
        diagonal_[static_cast<std::size_t>(size)] = sum;
    }
}

TraceResult trace_state(const TraceProfile& profile, Real beta, unsigned precision_bits)
{
    if (!(beta > 2) || !std::isfinite(beta)) throw std::invalid_argument("trace_state needs a finite beta > 2");
    const Real z = zeta(beta - 1, target_error(precision_bits)).value;
    Complex sum = 0;
    const auto& d = profile.diagonal();
    for (std::size_t size = d.size() - 1; size >= 1; --size) {
        if (d[size] != Complex(0)) sum += std::pow(static_cast<Real>(size), -beta) * d[size];
    }
    const Real N = static_cast<Real>(profile.truncation());
    return {sum / z, std::pow(N, 2 - beta) / ((beta - 2) * z)};
}

TraceResult trace_state(const Monomial& x, Real beta, const Rational& z_angle, Int N, unsigned precision_bits)
{
    return trace_state(TraceProfile(x, z_angle, N), beta, precision_bits);
}

std::optional<XVector> q_projector_apply(const PrimeSet& E, const XVector& e)
{
    for (UInt p : E) {
        for (UInt j = 0; j < p; ++j) {
            std::vector<GeneratorToken> range{{Kind::S, 0, static_cast<Int>(j), false},
                                              {Kind::V, static_cast<Int>(p), 1, false},
                                              {Kind::V, static_cast<Int>(p), 1, true},
                                              {Kind::S, 0, static_cast<Int>(j), true}};
            auto image = x_apply_word(range, e);
            if (!image) continue;
            if (!(*image == e)) throw std::logic_error("range projection moved a basis vector");
            return std::nullopt;  // (1 - P) e = 0
        }
    }
    return e;
}

ProjectorCheck q_projector_check(const PrimeSet& E, Int window)
{
    ProjectorCheck out;
    for (Int x = 1; x <= window; ++x) {
        bool smooth = supported_on(x, E);
        bool coprime = true;
        for (UInt p : E) coprime = coprime && x % static_cast<Int>(p) != 0;
        for (Int r = 0; r < x; ++r) {
            XVector e{r, x, 0};
            auto image = q_projector_apply(E, e);
            ++out.checked;
            bool ok = true;
            if (x == 1 || coprime) ok = image && *image == e;
            else if (smooth) ok = !image;
            if (!ok && out.passed) {
                out.passed = false;
                out.counterexample = "Q_E misbehaves on e(" + std::to_string(r) + "," + std::to_string(x) + ")";
            }
        }
    }
    return out;
}

}  // namespace nnx
