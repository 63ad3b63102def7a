#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "nnx/cli.hpp"
#include "nnx/io.hpp"
#include "nnx/representation.hpp"

namespace py = pybind11;
using namespace nnx;

namespace {

// Python dicts and strings cross over as JSON text.
Json to_cpp_json(const py::object& obj)
{
    if (py::isinstance<py::str>(obj)) {
        std::string text = obj.cast<std::string>();
        try {
            return Json::parse(text);
        } catch (const Json::parse_error&) {
            return Json(text);
        }
    }
    auto dumps = py::module_::import("json").attr("dumps");
    return Json::parse(dumps(obj).cast<std::string>());
}

py::object fraction(const Rational& q)
{
    return py::module_::import("fractions").attr("Fraction")(format_rational(q));
}

py::object exact_value(const std::optional<ComplexRational>& z)
{
    if (!z) return py::none();
    if (sgn(z->im) == 0) return fraction(z->re);
    return py::make_tuple(fraction(z->re), fraction(z->im));
}

Model model_from(const std::string& name)
{
    if (name == "toeplitz") return Model::Toeplitz;
    if (name == "x") return Model::X;
    if (name == "z") return Model::Z;
    throw py::value_error("model must be 'toeplitz', 'x' or 'z'");
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Toeplitz algebra of N x| N^x: normal forms, KMS states and relation checks";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<LevelExceeded>(m, "LevelExceeded", PyExc_IndexError);

    py::class_<Monomial>(m, "Monomial")
        .def(py::init<>())
        .def(py::init<Int, Int, Int, Int>(), py::arg("m"), py::arg("a"), py::arg("b"), py::arg("n"))
        .def_static("zero", &Monomial::zero)
        .def_property_readonly("m", &Monomial::m)
        .def_property_readonly("a", &Monomial::a)
        .def_property_readonly("b", &Monomial::b)
        .def_property_readonly("n", &Monomial::n)
        .def("is_zero", &Monomial::is_zero)
        .def("adjoint", [](const Monomial& x) { return adjoint(x); })
        .def("__mul__", [](const Monomial& x, const Monomial& y) { return x * y; })
        .def("__eq__", [](const Monomial& x, const Monomial& y) { return x == y; })
        .def("__hash__", [](const Monomial& x) {
            return py::hash(py::make_tuple(x.is_zero(), x.m(), x.a(), x.b(), x.n()));
        })
        .def("__str__", [](const Monomial& x) { return to_string(x); })
        .def("__repr__", [](const Monomial& x) {
            if (x.is_zero()) return std::string("Monomial.zero()");
            std::ostringstream out;
            out << "Monomial(" << x.m() << ", " << x.a() << ", " << x.b() << ", " << x.n() << ")";
            return out.str();
        });

    m.def("reduce", [](const std::string& word, bool expand) { return reduce(word, ParseOptions{expand}); },
          py::arg("word"), py::arg("expand_composite") = false, "Normal form of a word in s, s*, v_p, v_p*.");
    m.def("monomial_grid", &monomial_grid, py::arg("max_exponent"), py::arg("parts") = std::vector<Int>{1, 2, 3, 4, 6});

    m.def(
        "euclid_smallest",
        [](Int c, Int d, Int k, const std::string& method) {
            if (method != "iterative" && method != "direct") throw py::value_error("method must be 'iterative' or 'direct'");
            auto e = method == "direct" ? euclid_smallest_direct(c, d, k) : euclid_smallest(c, d, k);
            return py::make_tuple(e.alpha, e.beta);
        },
        py::arg("c"), py::arg("d"), py::arg("k"), py::arg("method") = "iterative");
    m.def(
        "join",
        [](Int m_, Int a, Int n, Int b) -> py::object {
            auto j = join(SemigroupElement(m_, a), SemigroupElement(n, b));
            if (!j) return py::none();
            py::dict out;
            out["l"] = j->upper.m();
            out["lcm"] = j->upper.a();
            out["left_complement"] = py::make_tuple(j->left_complement.m(), j->left_complement.a());
            out["right_complement"] = py::make_tuple(j->right_complement.m(), j->right_complement.a());
            return out;
        },
        py::arg("m"), py::arg("a"), py::arg("n"), py::arg("b"), "Join of (m,a) and (n,b), or None when infinite.");

    m.def(
        "zeta",
        [](Real s, Real target) {
            auto z = zeta(s, target);
            return py::make_tuple(z.value, z.error_bound);
        },
        py::arg("s"), py::arg("target") = 1e-15L);

    py::class_<StateEvaluator>(m, "State")
        .def(py::init([](const py::object& spec, unsigned bits) { return StateEvaluator(state_from_json(to_cpp_json(spec)), bits); }),
             py::arg("spec"), py::arg("precision") = 64,
             "spec: {'variant': 'psi_beta', 'beta': 2} and the like, as a dict or JSON text.")
        .def_property_readonly("beta", &StateEvaluator::beta)
        .def("__call__", [](const StateEvaluator& phi, const Monomial& x) { return x.is_zero() ? Complex(0) : phi(x); })
        .def("exact", [](const StateEvaluator& phi, const Monomial& x) {
            return x.is_zero() ? exact_value(ComplexRational(0)) : exact_value(phi.exact(x));
        })
        .def("spec", [](const StateEvaluator& phi) { return py::module_::import("json").attr("loads")(to_json(phi.spec()).dump()); });

    m.def("kms_defect", &kms_defect, py::arg("state"), py::arg("X"), py::arg("Y"), py::arg("beta"));
    m.def("kms_characterisation_check", &kms_characterisation_check, py::arg("state"), py::arg("x"), py::arg("beta"));
    m.def("ground_check", &ground_check, py::arg("state"), py::arg("x"));
    m.def("no_kms_witness", &no_kms_witness, py::arg("beta"), py::arg("a"));
    m.def(
        "reconstruct_sn",
        [](const StateEvaluator& phi, const PrimeSet& E, Int n) {
            auto r = reconstruct_sn(phi, make_prime_set(E), n);
            return py::make_tuple(r.lhs, r.rhs, r.defect);
        },
        py::arg("state"), py::arg("primes"), py::arg("n"));

    m.def(
        "relation_suite",
        [](const std::string& model, const PrimeSet& primes, Int window, const std::string& z, Int composites) {
            auto report = relation_suite(model_from(model), make_prime_set(primes), window, parse_rational(Json(z)), composites);
            py::list out;
            for (const auto& e : report.entries) {
                py::dict d;
                d["relation"] = e.relation;
                d["checked"] = e.checked;
                d["passed"] = e.passed;
                d["counterexample"] = e.counterexample;
                out.append(d);
            }
            return out;
        },
        py::arg("model"), py::arg("primes"), py::arg("window"), py::arg("z") = "0", py::arg("composites") = 0);

    m.def(
        "spectrum_contains",
        [](const py::object& point, Int m_, Int a) { return contains(spectrum_point_from_json(to_cpp_json(point)), {m_, a}); },
        py::arg("point"), py::arg("m"), py::arg("a"));
    m.def(
        "spectrum_includes",
        [](const py::object& outer, const py::object& inner, Int level) {
            return includes(spectrum_point_from_json(to_cpp_json(outer)), spectrum_point_from_json(to_cpp_json(inner)), level);
        },
        py::arg("outer"), py::arg("inner"), py::arg("level") = 64);

    m.def(
        "char_euler_sum",
        [](const py::object& chi, const PrimeSet& E, Real beta, UInt truncation) {
            auto s = char_euler_sum(character_from_json(to_cpp_json(chi)), make_prime_set(E), beta, truncation);
            py::dict out;
            out["series"] = s.series;
            out["product"] = s.product;
            out["tail_bound"] = s.tail_bound;
            out["terms"] = s.terms;
            return out;
        },
        py::arg("character"), py::arg("primes"), py::arg("beta"), py::arg("truncation") = 100000);
    m.def(
        "invariance_ratio",
        [](const py::object& chi, Real beta, Int K) { return invariance_ratio(character_from_json(to_cpp_json(chi)), beta, K); },
        py::arg("character"), py::arg("beta"), py::arg("count"));

    m.def(
        "run_cli",
        [](std::vector<std::string> args) {
            args.insert(args.begin(), "nnx");
            std::ostringstream out, err;
            int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line front end in-process; returns (exit code, stdout, stderr).");
}
