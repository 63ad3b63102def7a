#include "nnx/io.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace nnx {

namespace {

std::string beta_text(Real beta, unsigned bits)
{
    if (std::isinf(beta)) return "inf";
    return format_real(beta, bits);
}

Exponent parse_exponent(const Json& j)
{
    if (j.is_string() && (j.get<std::string>() == "inf" || j.get<std::string>() == "infinity")) return kInfiniteExponent;
    if (j.is_number_unsigned() || (j.is_number_integer() && j.get<Int>() >= 0)) {
        Int e = j.get<Int>();
        if (e >= static_cast<Int>(kInfiniteExponent)) throw std::invalid_argument("exponent too large");
        return static_cast<Exponent>(e);
    }
    throw std::invalid_argument("exponent must be a non-negative integer or \"inf\"");
}

Json exponent_json(Exponent e)
{
    if (e == kInfiniteExponent) return "inf";
    return e;
}

Int parse_int(const Json& j, const char* what)
{
    if (!j.is_number_integer()) throw std::invalid_argument(std::string(what) + " must be an integer");
    return j.get<Int>();
}

}  // namespace

std::string format_real(Real x, unsigned precision_bits)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    int digits = static_cast<int>(std::ceil(precision_bits * 0.30102999566398120L));
    if (digits < 1) digits = 1;
    if (x == 0) x = 0;  // drop the sign of negative zero
    char buffer[96];
    std::snprintf(buffer, sizeof buffer, "%.*Le", digits - 1, x);
    return buffer;
}

std::string format_rational(const Rational& q)
{
    Rational c = q;
    c.canonicalize();
    return c.get_str();
}

Json complex_json(const Complex& z, unsigned precision_bits)
{
    return Json{{"re", format_real(z.real(), precision_bits)}, {"im", format_real(z.imag(), precision_bits)}};
}

Json complex_json(const ComplexRational& z)
{
    return Json{{"re", format_rational(z.re)}, {"im", format_rational(z.im)}};
}

Rational parse_rational(const Json& j)
{
    if (j.is_number_integer()) return Rational(static_cast<long>(j.get<Int>()));
    if (!j.is_string()) throw std::invalid_argument("expected an integer or a \"p/q\" string");
    Rational q;
    if (q.set_str(j.get<std::string>(), 10) != 0) throw std::invalid_argument("bad rational \"" + j.get<std::string>() + "\"");
    if (q.get_den() == 0) throw std::invalid_argument("rational with zero denominator");
    q.canonicalize();
    return q;
}

Real parse_real(const std::string& text)
{
    if (text == "inf" || text == "infinity") return kInfiniteBeta;
    if (text.find('/') != std::string::npos) {
        Rational q = parse_rational(Json(text));
        return to_real(q);
    }
    std::size_t used = 0;
    Real value;
    try {
        value = std::stold(text, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad real \"" + text + "\"");
    }
    if (used != text.size()) throw std::invalid_argument("bad real \"" + text + "\"");
    return value;
}

Real parse_real(const Json& j)
{
    if (j.is_number_integer()) return static_cast<Real>(j.get<Int>());
    if (j.is_number()) return parse_real(j.dump());
    if (j.is_string()) return parse_real(j.get<std::string>());
    throw std::invalid_argument("expected a real number");
}

Json to_json(const Monomial& x)
{
    if (x.is_zero()) return Json{{"kind", "zero"}};
    return Json{{"kind", "mono"}, {"m", x.m()}, {"a", x.a()}, {"b", x.b()}, {"n", x.n()}};
}

Monomial monomial_from_json(const Json& j)
{
    if (!j.is_object() || !j.contains("kind")) throw std::invalid_argument("monomial JSON needs a \"kind\"");
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "zero") return Monomial::zero();
    if (kind != "mono") throw std::invalid_argument("monomial kind must be \"mono\" or \"zero\"");
    return {parse_int(j.at("m"), "m"), parse_int(j.at("a"), "a"), parse_int(j.at("b"), "b"), parse_int(j.at("n"), "n")};
}

Json to_json(const SemigroupElement& x) { return Json{{"m", x.m()}, {"a", x.a()}}; }

Json to_json(const SupernaturalNumber& N)
{
    Json factors = Json::object();
    for (const auto& [p, e] : N.listed()) factors[std::to_string(p)] = exponent_json(e);
    return Json{{"factors", factors}, {"default", exponent_json(N.default_exponent())}};
}

SupernaturalNumber supernatural_from_json(const Json& j)
{
    if (j.is_number_integer()) {
        Int n = j.get<Int>();
        if (n < 1) throw std::invalid_argument("supernatural number from an integer needs n >= 1");
        return SupernaturalNumber::from_integer(static_cast<UInt>(n));
    }
    if (j.is_string() && j.get<std::string>() == "nabla") return SupernaturalNumber::nabla();
    if (!j.is_object()) throw std::invalid_argument("supernatural number must be an object, an integer or \"nabla\"");
    std::map<UInt, Exponent> listed;
    if (j.contains("factors")) {
        for (const auto& [key, value] : j.at("factors").items()) {
            UInt p = std::stoull(key);
            listed[p] = parse_exponent(value);
        }
    }
    Exponent def = j.contains("default") ? parse_exponent(j.at("default")) : 0;
    return SupernaturalNumber(std::move(listed), def);
}

Json to_json(const ResidueFamily& r)
{
    if (r.generator()) return Json{{"generator", *r.generator()}};
    return Json{{"modulus", r.table()->modulus}, {"value", r.table()->value}};
}

ResidueFamily residue_family_from_json(const Json& j)
{
    if (j.contains("generator")) {
        Int g = parse_int(j.at("generator"), "generator");
        if (j.contains("level")) return ResidueFamily::from_table(ResidueClass(parse_int(j.at("level"), "level"), g));
        return ResidueFamily::from_generator(g);
    }
    if (j.contains("residue")) return residue_family_from_json(j.at("residue"));
    if (j.contains("modulus")) {
        return ResidueFamily::from_table(ResidueClass(parse_int(j.at("modulus"), "modulus"), parse_int(j.at("value"), "value")));
    }
    if (j.contains("values")) {
        std::map<Int, Int> values;
        for (const auto& [key, value] : j.at("values").items()) values[std::stoll(key)] = parse_int(value, "residue value");
        return ResidueFamily::from_values(values);
    }
    throw std::invalid_argument("residue family needs a generator, a residue or a table of values");
}

Json to_json(const SpectrumPoint& w)
{
    if (const auto* p = std::get_if<APoint>(&w)) return Json{{"kind", "A"}, {"k", p->k}, {"N", to_json(p->N)}};
    const auto& b = std::get<BPoint>(w);
    Json out{{"kind", "B"}};
    if (b.r.generator()) out["generator"] = *b.r.generator();
    else out["residue"] = to_json(b.r);
    out["N"] = to_json(b.N);
    return out;
}

SpectrumPoint spectrum_point_from_json(const Json& j)
{
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "A") {
        Int k = parse_int(j.at("k"), "k");
        if (k < 0) throw std::invalid_argument("A-point needs k >= 0");
        return APoint{k, supernatural_from_json(j.at("N"))};
    }
    if (kind == "B") return BPoint{residue_family_from_json(j), supernatural_from_json(j.at("N"))};
    throw std::invalid_argument("spectrum point kind must be \"A\" or \"B\"");
}

Json to_json(const CircleMeasure& mu)
{
    if (mu.is_lebesgue()) return Json{{"lebesgue", true}};
    Json atoms = Json::array();
    for (const auto& atom : mu.atom_list()) atoms.push_back(Json::array({format_rational(atom.angle), format_rational(atom.weight)}));
    return Json{{"atoms", atoms}};
}

CircleMeasure measure_from_json(const Json& j)
{
    if ((j.is_string() && j.get<std::string>() == "lebesgue") || (j.is_object() && j.value("lebesgue", false))) {
        return CircleMeasure::lebesgue();
    }
    if (!j.is_object() || !j.contains("atoms")) throw std::invalid_argument("measure needs \"atoms\" or \"lebesgue\"");
    std::vector<CircleMeasure::Atom> atoms;
    for (const auto& atom : j.at("atoms")) {
        if (!atom.is_array() || atom.size() != 2) throw std::invalid_argument("atom must be [angle, weight]");
        atoms.push_back({parse_rational(atom[0]), parse_rational(atom[1])});
    }
    return CircleMeasure::atoms(std::move(atoms));
}

Json to_json(const ToeplitzState& omega)
{
    if (const auto* v = std::get_if<VectorState>(&omega)) return Json{{"vector", v->k}};
    return Json{{"evaluation", format_rational(std::get<EvaluationState>(omega).angle)}};
}

ToeplitzState toeplitz_state_from_json(const Json& j)
{
    if (j.contains("vector")) return VectorState{parse_int(j.at("vector"), "vector")};
    if (j.contains("evaluation")) return EvaluationState{parse_rational(j.at("evaluation"))};
    throw std::invalid_argument("omega needs \"vector\" or \"evaluation\"");
}

Json to_json(const StateSpec& spec)
{
    if (const auto* p = std::get_if<PsiBeta>(&spec)) return Json{{"variant", "psi_beta"}, {"beta", beta_text(p->beta, 64)}};
    if (const auto* q = std::get_if<PsiBetaMu>(&spec)) {
        return Json{{"variant", "psi_beta_mu"}, {"beta", beta_text(q->beta, 64)}, {"mu", to_json(q->mu)}};
    }
    return Json{{"variant", "ground"}, {"omega", to_json(std::get<Ground>(spec).omega)}};
}

StateSpec state_from_json(const Json& j)
{
    const std::string variant = j.at("variant").get<std::string>();
    StateSpec spec;
    if (variant == "psi_beta") spec = PsiBeta{parse_real(j.at("beta"))};
    else if (variant == "psi_beta_mu") spec = PsiBetaMu{parse_real(j.at("beta")), measure_from_json(j.at("mu"))};
    else if (variant == "ground") spec = Ground{toeplitz_state_from_json(j.at("omega"))};
    else throw std::invalid_argument("unknown state variant \"" + variant + "\"");
    validate(spec);
    return spec;
}

Json to_json(const DirichletCharacter& chi)
{
    Json values = Json::object();
    for (const auto& [u, angle] : chi.angles()) values[std::to_string(u)] = format_rational(angle);
    return Json{{"modulus", chi.modulus()}, {"values", values}};
}

DirichletCharacter character_from_json(const Json& j)
{
    Int modulus = parse_int(j.at("modulus"), "modulus");
    if (j.value("trivial", false)) return DirichletCharacter::trivial(modulus);
    if (j.contains("generator")) {
        return DirichletCharacter::from_generator(modulus, parse_int(j.at("generator"), "generator"),
                                                  parse_rational(j.at("angle")));
    }
    std::map<Int, Rational> angles;
    for (const auto& [key, value] : j.at("values").items()) angles[std::stoll(key)] = parse_rational(value);
    return {modulus, angles};
}

}  // namespace nnx
