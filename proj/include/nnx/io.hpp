#pragma once

#include <string>

#include <json.hpp>

#include "nnx/algebra.hpp"
#include "nnx/bostconnes.hpp"
#include "nnx/semigroup.hpp"
#include "nnx/spectrum.hpp"
#include "nnx/states.hpp"

namespace nnx {

using Json = nlohmann::ordered_json;

// Scientific notation with as many significant digits as precision_bits carries.
std::string format_real(Real x, unsigned precision_bits = 64);
std::string format_rational(const Rational& q);
Json complex_json(const Complex& z, unsigned precision_bits = 64);
Json complex_json(const ComplexRational& z);

// Integer, decimal string, or "p/q".
Rational parse_rational(const Json& j);
// Number, numeric string, "p/q" or "inf".
Real parse_real(const Json& j);
Real parse_real(const std::string& text);

Json to_json(const Monomial& x);
Monomial monomial_from_json(const Json& j);
Json to_json(const SemigroupElement& x);

// {"factors":{"2":2,"3":"inf"},"default":0}; also an integer or "nabla".
Json to_json(const SupernaturalNumber& N);
SupernaturalNumber supernatural_from_json(const Json& j);

// {"generator":7} or {"modulus":12,"value":7}
Json to_json(const ResidueFamily& r);
ResidueFamily residue_family_from_json(const Json& j);

// {"kind":"A","k":4,"N":...} / {"kind":"B","generator":7,"N":...,"level":12}
Json to_json(const SpectrumPoint& w);
SpectrumPoint spectrum_point_from_json(const Json& j);

// {"atoms":[["0",1],["1/2","1/2"]]} or {"lebesgue":true}
Json to_json(const CircleMeasure& mu);
CircleMeasure measure_from_json(const Json& j);
// {"vector":3} or {"evaluation":"1/4"}
Json to_json(const ToeplitzState& omega);
ToeplitzState toeplitz_state_from_json(const Json& j);
// {"variant":"psi_beta","beta":1.5}, {"variant":"psi_beta_mu",...}, {"variant":"ground",...}
Json to_json(const StateSpec& spec);
StateSpec state_from_json(const Json& j);

// {"modulus":4,"values":{"1":0,"3":"1/2"}}
Json to_json(const DirichletCharacter& chi);
DirichletCharacter character_from_json(const Json& j);

}  // namespace nnx
