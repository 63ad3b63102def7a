#include "nnx/cli.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include <CLI11.hpp>

#include "nnx/io.hpp"
#include "nnx/representation.hpp"

namespace nnx {

namespace {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Output {
    unsigned precision = 64;
    std::string format = "json";
};

struct StateOptions {
    std::string variant;
    std::string beta;
    std::string mu;
    std::string omega;
    std::string spec;

    StateSpec build() const
    {
        if (!spec.empty()) return state_from_json(Json::parse(spec));
        if (variant.empty()) throw UsageError("a state is required: --state or --spec");
        Json j{{"variant", variant}};
        if (variant == "psi_beta" || variant == "psi_beta_mu") {
            if (beta.empty()) throw UsageError("--beta is required for " + variant);
            j["beta"] = beta;
        }
        if (variant == "psi_beta_mu") {
            if (mu.empty()) throw UsageError("--mu is required for psi_beta_mu");
            j["mu"] = Json::parse(mu);
        }
        if (variant == "ground") {
            if (omega.empty()) throw UsageError("--omega is required for ground");
            j["omega"] = Json::parse(omega);
        }
        return state_from_json(j);
    }
};

void add_output_options(CLI::App* sub, Output& o)
{
    sub->add_option("--precision", o.precision, "Working precision in bits (1-64)")->check(CLI::Range(1u, 64u));
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

void add_state_options(CLI::App* sub, StateOptions& s)
{
    sub->add_option("--state", s.variant, "State variant")->check(CLI::IsMember({"psi_beta", "psi_beta_mu", "ground"}));
    sub->add_option("--beta", s.beta, "Inverse temperature (real, p/q or inf)");
    sub->add_option("--mu", s.mu, "Circle measure as JSON");
    sub->add_option("--omega", s.omega, "Toeplitz state as JSON");
    sub->add_option("--spec", s.spec, "Full state specification as JSON");
}

PrimeSet parse_primes(const std::string& csv)
{
    std::vector<UInt> primes;
    std::stringstream in(csv);
    std::string item;
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        unsigned long long p = 0;
        try {
            p = std::stoull(item, &used);
        } catch (const std::exception&) {
            throw UsageError("bad prime \"" + item + "\"");
        }
        if (used != item.size()) throw UsageError("bad prime \"" + item + "\"");
        primes.push_back(p);
    }
    return make_prime_set(std::move(primes));
}

Json primes_json(const PrimeSet& E)
{
    Json out = Json::array();
    for (UInt p : E) out.push_back(p);
    return out;
}

std::string csv_field(const Json& v)
{
    std::string text = v.is_string() ? v.get<std::string>() : v.dump();
    if (text.find_first_of(",\"\n") == std::string::npos) return text;
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

void emit(std::ostream& out, const Json& j, const Output& o)
{
    if (o.format == "json") {
        out << j.dump() << '\n';
        return;
    }
    std::string header, row;
    for (const auto& [key, value] : j.items()) {
        if (!header.empty()) {
            header += ',';
            row += ',';
        }
        header += csv_field(key);
        row += csv_field(value);
    }
    out << header << '\n' << row << '\n';
}

Real parse_tolerance(const std::string& text)
{
    Real t = parse_real(text);
    if (!(t >= 0)) throw UsageError("tolerance must be non-negative");
    return t;
}

Real finite_beta(const StateEvaluator& phi, const char* command)
{
    Real beta = phi.beta();
    if (!std::isfinite(beta)) throw UsageError(std::string(command) + " needs a finite-beta state");
    return beta;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Toeplitz algebra of N ⋊ N^x: rewriting, KMS states and verification suites", "nnx"};
    app.require_subcommand(1, 1);
    std::function<int()> action;

    // reduce
    Output reduce_out;
    std::string word;
    bool expand = false;
    auto* reduce_cmd = app.add_subcommand("reduce", "Reduce a word in s, s*, v_p, v_p* to its normal form");
    reduce_cmd->add_option("word", word, "Word, e.g. \"v2* s v2\"")->required();
    reduce_cmd->add_flag("--expand-composite", expand, "Accept v_a for composite a");
    add_output_options(reduce_cmd, reduce_out);
    reduce_cmd->callback([&] {
        action = [&] {
            emit(out, to_json(reduce(word, ParseOptions{expand})), reduce_out);
            return 0;
        };
    });

    // join
    Output join_out;
    Int jm = 0, ja = 1, jn = 0, jb = 1;
    bool complements = false;
    auto* join_cmd = app.add_subcommand("join", "Least upper bound of (m,a) and (n,b)");
    join_cmd->add_option("m", jm)->required();
    join_cmd->add_option("a", ja)->required();
    join_cmd->add_option("n", jn)->required();
    join_cmd->add_option("b", jb)->required();
    join_cmd->add_flag("--complements", complements, "Also print the complements");
    add_output_options(join_cmd, join_out);
    join_cmd->callback([&] {
        action = [&] {
            auto j = join(SemigroupElement(jm, ja), SemigroupElement(jn, jb));
            Json o;
            if (!j) {
                o["join"] = "inf";
            } else {
                o["l"] = j->upper.m();
                o["lcm"] = j->upper.a();
                if (complements) {
                    o["left_complement"] = to_json(j->left_complement);
                    o["right_complement"] = to_json(j->right_complement);
                }
            }
            emit(out, o, join_out);
            return 0;
        };
    });

    // euclid
    Output euclid_out;
    Int ec = 1, ed = 1, ek = 0;
    std::string method = "iterative";
    auto* euclid_cmd = app.add_subcommand("euclid", "Smallest (alpha, beta) >= 0 with k = alpha c - beta d");
    euclid_cmd->add_option("c", ec)->required();
    euclid_cmd->add_option("d", ed)->required();
    euclid_cmd->add_option("k", ek)->required()->allow_extra_args(false);
    euclid_cmd->add_option("--method", method)->check(CLI::IsMember({"iterative", "direct"}));
    add_output_options(euclid_cmd, euclid_out);
    euclid_cmd->callback([&] {
        action = [&] {
            EuclidSolution e = method == "direct" ? euclid_smallest_direct(ec, ed, ek) : euclid_smallest(ec, ed, ek);
            emit(out, Json{{"alpha", e.alpha}, {"beta", e.beta}}, euclid_out);
            return 0;
        };
    });

    // state-eval
    Output eval_out;
    StateOptions eval_state;
    std::string eval_word, eval_mono;
    bool eval_expand = false;
    auto* eval_cmd = app.add_subcommand("state-eval", "Evaluate a state on a word or monomial");
    eval_cmd->add_option("word", eval_word, "Word to evaluate");
    eval_cmd->add_option("--monomial", eval_mono, "Monomial as JSON");
    eval_cmd->add_flag("--expand-composite", eval_expand);
    add_state_options(eval_cmd, eval_state);
    add_output_options(eval_cmd, eval_out);
    eval_cmd->callback([&] {
        action = [&] {
            if (eval_word.empty() == eval_mono.empty()) throw UsageError("give exactly one of a word or --monomial");
            Monomial x = eval_mono.empty() ? reduce(eval_word, ParseOptions{eval_expand})
                                           : monomial_from_json(Json::parse(eval_mono));
            StateEvaluator phi(eval_state.build(), eval_out.precision);
            Json o{{"state", to_json(phi.spec())}, {"monomial", to_json(x)}};
            if (x.is_zero()) {
                o["value"] = complex_json(Complex(0), eval_out.precision);
                o["exact"] = complex_json(ComplexRational(0));
            } else {
                o["value"] = complex_json(phi(x), eval_out.precision);
                if (auto exact = phi.exact(x)) o["exact"] = complex_json(*exact);
            }
            o["precision"] = eval_out.precision;
            emit(out, o, eval_out);
            return 0;
        };
    });

    // kms-check
    Output kms_out;
    StateOptions kms_state;
    Int kms_grid = 5;
    std::string kms_tol = "1e-9";
    auto* kms_cmd = app.add_subcommand("kms-check", "KMS identity and characterisation over the monomial grid");
    add_state_options(kms_cmd, kms_state);
    kms_cmd->add_option("--grid", kms_grid, "Largest exponent in the grid")->check(CLI::Range(Int{0}, Int{20}));
    kms_cmd->add_option("--tolerance", kms_tol);
    add_output_options(kms_cmd, kms_out);
    kms_cmd->callback([&] {
        action = [&] {
            StateEvaluator phi(kms_state.build(), kms_out.precision);
            const Real beta = finite_beta(phi, "kms-check");
            const Real tol = parse_tolerance(kms_tol);
            auto grid = monomial_grid(kms_grid);
            Real max_defect = 0, max_char = 0;
            Json counterexample;
            Int pairs = 0;
            for (const auto& X : grid) {
                Real c = kms_characterisation_check(phi, X, beta);
                if (c > max_char) max_char = c;
                if (c > tol && counterexample.is_null()) {
                    counterexample = Json{{"check", "characterisation"}, {"x", to_json(X)}, {"defect", format_real(c, kms_out.precision)}};
                }
                for (const auto& Y : grid) {
                    ++pairs;
                    Real d = kms_defect(phi, X, Y, beta);
                    if (d > max_defect) max_defect = d;
                    if (d > tol && counterexample.is_null()) {
                        counterexample = Json{{"check", "kms"}, {"X", to_json(X)}, {"Y", to_json(Y)},
                                              {"defect", format_real(d, kms_out.precision)}};
                    }
                    Monomial XY = X * Y;
                    if (!XY.is_zero()) {
                        Real cxy = kms_characterisation_check(phi, XY, beta);
                        if (cxy > max_char) max_char = cxy;
                        if (cxy > tol && counterexample.is_null()) {
                            counterexample = Json{{"check", "characterisation"}, {"x", to_json(XY)},
                                                  {"defect", format_real(cxy, kms_out.precision)}};
                        }
                    }
                }
            }
            const bool passed = counterexample.is_null();
            Json o{{"state", to_json(phi.spec())},
                   {"grid", kms_grid},
                   {"pairs", pairs},
                   {"max_defect", format_real(max_defect, kms_out.precision)},
                   {"max_characterisation", format_real(max_char, kms_out.precision)},
                   {"tolerance", format_real(tol, kms_out.precision)},
                   {"passed", passed},
                   {"precision", kms_out.precision}};
            if (!passed) o["counterexample"] = counterexample;
            emit(out, o, kms_out);
            return passed ? 0 : 1;
        };
    });

    // ground-check
    Output ground_out;
    StateOptions ground_state;
    Int ground_grid = 5;
    auto* ground_cmd = app.add_subcommand("ground-check", "Ground-state vanishing conditions over the monomial grid");
    add_state_options(ground_cmd, ground_state);
    ground_cmd->add_option("--grid", ground_grid)->check(CLI::Range(Int{0}, Int{20}));
    add_output_options(ground_cmd, ground_out);
    ground_cmd->callback([&] {
        action = [&] {
            StateEvaluator phi(ground_state.build(), ground_out.precision);
            auto grid = monomial_grid(ground_grid);
            Json counterexample;
            Int checked = 0;
            for (const auto& X : grid) {
                ++checked;
                if (!ground_check(phi, X) && counterexample.is_null()) {
                    counterexample = Json{{"x", to_json(X)}, {"value", complex_json(phi(X), ground_out.precision)}};
                }
                for (const auto& Y : grid) {
                    ++checked;
                    if (!ground_pair_check(phi, Y, X) && counterexample.is_null()) {
                        counterexample = Json{{"Y", to_json(Y)}, {"X", to_json(X)},
                                              {"value", complex_json(phi(Y * X), ground_out.precision)}};
                    }
                }
            }
            const bool passed = counterexample.is_null();
            Json o{{"state", to_json(phi.spec())}, {"checked", checked}, {"passed", passed}};
            if (!passed) o["counterexample"] = counterexample;
            emit(out, o, ground_out);
            return passed ? 0 : 1;
        };
    });

    // rep-check
    Output rep_out;
    std::string rep_model = "x", rep_primes = "2,3,5,7", rep_z = "0";
    Int rep_window = 12, rep_composites = 0;
    auto* rep_cmd = app.add_subcommand("rep-check", "Check the defining relations in a concrete representation");
    rep_cmd->add_option("--model", rep_model)->check(CLI::IsMember({"toeplitz", "x", "z"}));
    rep_cmd->add_option("--primes", rep_primes, "Comma-separated primes");
    rep_cmd->add_option("--window", rep_window)->check(CLI::PositiveNumber);
    rep_cmd->add_option("--z", rep_z, "Fibre point as a rational turn (x model)");
    rep_cmd->add_option("--composites", rep_composites, "Largest a for the primed relations");
    add_output_options(rep_cmd, rep_out);
    rep_cmd->callback([&] {
        action = [&] {
            Model model = rep_model == "toeplitz" ? Model::Toeplitz : rep_model == "z" ? Model::Z : Model::X;
            auto report = relation_suite(model, parse_primes(rep_primes), rep_window, parse_rational(Json(rep_z)), rep_composites);
            Json relations = Json::array();
            for (const auto& e : report.entries) {
                Json r{{"relation", e.relation}, {"checked", e.checked}, {"passed", e.passed}};
                if (!e.passed) r["counterexample"] = e.counterexample;
                relations.push_back(r);
            }
            Json o{{"model", rep_model}, {"window", rep_window}, {"passed", report.passed()}, {"relations", relations}};
            emit(out, o, rep_out);
            return report.passed() ? 0 : 1;
        };
    });

    // measure
    Output measure_out;
    std::string measure_beta;
    Int measure_m = 0, measure_a = 1;
    auto* measure_cmd = app.add_subcommand("measure", "Mass of the cylinder m + a Z-hat under the beta measure");
    measure_cmd->add_option("--beta", measure_beta)->required();
    measure_cmd->add_option("--m", measure_m)->check(CLI::NonNegativeNumber);
    measure_cmd->add_option("--a", measure_a)->required()->check(CLI::PositiveNumber);
    add_output_options(measure_cmd, measure_out);
    measure_cmd->callback([&] {
        action = [&] {
            const Real beta = parse_real(measure_beta);
            auto series = measure_cylinder(beta, measure_m, measure_a, target_error(measure_out.precision));
            Real closed = std::isinf(beta) ? (measure_a == 1 ? 1 : 0) : std::pow(static_cast<Real>(measure_a), -beta);
            Json o{{"beta", format_real(beta, measure_out.precision)},
                   {"m", measure_m},
                   {"a", measure_a},
                   {"series", format_real(series.value, measure_out.precision)},
                   {"tail_bound", format_real(series.tail_bound, measure_out.precision)},
                   {"closed_form", format_real(closed, measure_out.precision)},
                   {"precision", measure_out.precision}};
            emit(out, o, measure_out);
            return 0;
        };
    });

    // reconstruct
    Output rec_out;
    StateOptions rec_state;
    std::string rec_primes, rec_model = "exact", rec_tol = "1e-9";
    Int rec_n = 12;
    auto* rec_cmd = app.add_subcommand("reconstruct", "Reconstruction of phi(s^n) from the conditional state");
    add_state_options(rec_cmd, rec_state);
    rec_cmd->add_option("--primes", rec_primes, "The finite prime set E")->required();
    rec_cmd->add_option("--n", rec_n, "Largest n")->check(CLI::NonNegativeNumber);
    rec_cmd->add_option("--model", rec_model)->check(CLI::IsMember({"exact", "moment-limit"}));
    rec_cmd->add_option("--tolerance", rec_tol);
    add_output_options(rec_cmd, rec_out);
    rec_cmd->callback([&] {
        action = [&] {
            StateEvaluator phi(rec_state.build(), rec_out.precision);
            const Real beta = finite_beta(phi, "reconstruct");
            const Real tol = parse_tolerance(rec_tol);
            const PrimeSet E = parse_primes(rec_primes);
            const auto model = rec_model == "exact" ? ConditionalModel::Exact : ConditionalModel::MomentLimit;
            Json rows = Json::array();
            Real max_defect = 0;
            for (Int n = 0; n <= rec_n; ++n) {
                auto r = reconstruct_sn(phi, E, n, model);
                max_defect = std::max(max_defect, r.defect);
                rows.push_back(Json{{"n", n},
                                    {"lhs", complex_json(r.lhs, rec_out.precision)},
                                    {"rhs", complex_json(r.rhs, rec_out.precision)},
                                    {"defect", format_real(r.defect, rec_out.precision)}});
            }
            Json o{{"state", to_json(phi.spec())}, {"primes", primes_json(E)},
                   {"conditional_mass", format_real(conditional_mass(beta, E), rec_out.precision)}};
            if (beta == std::floor(beta)) o["conditional_mass_exact"] = format_rational(conditional_mass_exact(static_cast<Int>(beta), E));
            const bool passed = max_defect <= tol;
            o["max_defect"] = format_real(max_defect, rec_out.precision);
            o["tolerance"] = format_real(tol, rec_out.precision);
            o["passed"] = passed;
            o["rows"] = rows;
            emit(out, o, rec_out);
            return passed ? 0 : 1;
        };
    });

    // bc
    auto* bc_cmd = app.add_subcommand("bc", "Bost-Connes appendix computations");
    bc_cmd->require_subcommand(1, 1);

    Output euler_out;
    std::string euler_chi, euler_primes, euler_beta = "1", euler_tol;
    UInt euler_trunc = 100000;
    auto* euler_cmd = bc_cmd->add_subcommand("euler", "Truncated character sum against its Euler product");
    euler_cmd->add_option("--character", euler_chi, "Character as JSON")->required();
    euler_cmd->add_option("--primes", euler_primes)->required();
    euler_cmd->add_option("--beta", euler_beta);
    euler_cmd->add_option("--truncation", euler_trunc)->check(CLI::PositiveNumber);
    euler_cmd->add_option("--tolerance", euler_tol, "Required agreement (default: the tail bound)");
    add_output_options(euler_cmd, euler_out);
    euler_cmd->callback([&] {
        action = [&] {
            auto chi = character_from_json(Json::parse(euler_chi));
            auto s = char_euler_sum(chi, parse_primes(euler_primes), parse_real(euler_beta), euler_trunc);
            const Real diff = std::abs(s.series - s.product);
            const Real tol = euler_tol.empty() ? s.tail_bound : parse_tolerance(euler_tol);
            const bool passed = diff <= tol;
            Json o{{"series", complex_json(s.series, euler_out.precision)},
                   {"product", complex_json(s.product, euler_out.precision)},
                   {"difference", format_real(diff, euler_out.precision)},
                   {"tail_bound", format_real(s.tail_bound, euler_out.precision)},
                   {"terms", s.terms},
                   {"tolerance", format_real(tol, euler_out.precision)},
                   {"passed", passed}};
            emit(out, o, euler_out);
            return passed ? 0 : 1;
        };
    });

    Output ratio_out;
    std::string ratio_chi, ratio_beta = "1";
    Int ratio_count = 40;
    auto* ratio_cmd = bc_cmd->add_subcommand("ratio", "|Euler product| / zeta_E along the admissible primes");
    ratio_cmd->add_option("--character", ratio_chi)->required();
    ratio_cmd->add_option("--beta", ratio_beta);
    ratio_cmd->add_option("--count", ratio_count)->check(CLI::PositiveNumber);
    add_output_options(ratio_cmd, ratio_out);
    ratio_cmd->callback([&] {
        action = [&] {
            auto ratios = invariance_ratio(character_from_json(Json::parse(ratio_chi)), parse_real(ratio_beta), ratio_count);
            Json list = Json::array();
            for (Real r : ratios) list.push_back(format_real(r, ratio_out.precision));
            emit(out, Json{{"ratios", list}}, ratio_out);
            return 0;
        };
    });

    Output bcr_out;
    std::string bcr_primes, bcr_beta = "2", bcr_element = R"({"1":1})", bcr_tol = "1e-9";
    auto* bcr_cmd = bc_cmd->add_subcommand("reconstruct", "Reconstruction formula on combinations of mu_k mu_k^*");
    bcr_cmd->add_option("--primes", bcr_primes)->required();
    bcr_cmd->add_option("--beta", bcr_beta);
    bcr_cmd->add_option("--element", bcr_element, "Coefficients {\"k\": c} of mu_k mu_k^*");
    bcr_cmd->add_option("--tolerance", bcr_tol);
    add_output_options(bcr_cmd, bcr_out);
    bcr_cmd->callback([&] {
        action = [&] {
            ProjectionCombination element;
            const Json parsed = Json::parse(bcr_element);
            for (const auto& [key, value] : parsed.items()) element[std::stoll(key)] = parse_real(value);
            auto r = bc_reconstruct_check(parse_primes(bcr_primes), parse_real(bcr_beta), element);
            const bool passed = r.defect <= parse_tolerance(bcr_tol);
            Json o{{"lhs", format_real(r.lhs, bcr_out.precision)},
                   {"rhs", format_real(r.rhs, bcr_out.precision)},
                   {"defect", format_real(r.defect, bcr_out.precision)},
                   {"passed", passed}};
            emit(out, o, bcr_out);
            return passed ? 0 : 1;
        };
    });

    // spectrum
    auto* spec_cmd = app.add_subcommand("spectrum", "Points A(k,N), B(r,N) of the Nica spectrum");
    spec_cmd->require_subcommand(1, 1);

    Output contains_out;
    std::string contains_point;
    Int cm = 0, ca = 1;
    auto* contains_cmd = spec_cmd->add_subcommand("contains", "Membership of (m,a)");
    contains_cmd->add_option("--point", contains_point)->required();
    contains_cmd->add_option("m", cm)->required();
    contains_cmd->add_option("a", ca)->required();
    add_output_options(contains_cmd, contains_out);
    contains_cmd->callback([&] {
        action = [&] {
            bool c = contains(spectrum_point_from_json(Json::parse(contains_point)), SemigroupElement(cm, ca));
            emit(out, Json{{"contains", c}}, contains_out);
            return 0;
        };
    });

    Output includes_out;
    std::string outer_point, inner_point;
    Int includes_level = 64;
    auto* includes_cmd = spec_cmd->add_subcommand("includes", "Whether --inner is a subset of --outer");
    includes_cmd->add_option("--outer", outer_point)->required();
    includes_cmd->add_option("--inner", inner_point)->required();
    includes_cmd->add_option("--level", includes_level)->check(CLI::PositiveNumber);
    add_output_options(includes_cmd, includes_out);
    includes_cmd->callback([&] {
        action = [&] {
            bool c = includes(spectrum_point_from_json(Json::parse(outer_point)),
                              spectrum_point_from_json(Json::parse(inner_point)), includes_level);
            emit(out, Json{{"includes", c}}, includes_out);
            return 0;
        };
    });

    Output act_out;
    std::string act_residue;
    Int act_m = 0, act_a = 1;
    auto* act_cmd = spec_cmd->add_subcommand("act", "Action of (m,a) on a boundary residue family");
    act_cmd->add_option("--m", act_m)->check(CLI::NonNegativeNumber);
    act_cmd->add_option("--a", act_a)->check(CLI::PositiveNumber);
    act_cmd->add_option("--residue", act_residue)->required();
    add_output_options(act_cmd, act_out);
    act_cmd->callback([&] {
        action = [&] {
            auto r = boundary_act(SemigroupElement(act_m, act_a), residue_family_from_json(Json::parse(act_residue)));
            emit(out, Json{{"residue", to_json(r)}}, act_out);
            return 0;
        };
    });

    Output dec_out;
    std::string dec_point;
    Int dec_level = 64;
    auto* dec_cmd = spec_cmd->add_subcommand("decompose", "Prime-by-prime components of a B-point");
    dec_cmd->add_option("--point", dec_point)->required();
    dec_cmd->add_option("--level", dec_level)->check(CLI::PositiveNumber);
    add_output_options(dec_cmd, dec_out);
    dec_cmd->callback([&] {
        action = [&] {
            auto w = spectrum_point_from_json(Json::parse(dec_point));
            const auto* b = std::get_if<BPoint>(&w);
            if (!b) throw UsageError("decompose needs a B-point");
            Json comps = Json::array();
            for (const auto& c : decompose(*b, dec_level)) {
                comps.push_back(Json{{"prime", c.prime},
                                     {"exponent", c.exponent == kInfiniteExponent ? Json("inf") : Json(c.exponent)},
                                     {"modulus", c.residue.modulus},
                                     {"value", c.residue.value}});
            }
            emit(out, Json{{"components", comps}}, dec_out);
            return 0;
        };
    });

    Output ver_out;
    std::string ver_point;
    Int ver_bound = 20;
    auto* ver_cmd = spec_cmd->add_subcommand("verify", "Hereditary and directed on a finite window");
    ver_cmd->add_option("--point", ver_point)->required();
    ver_cmd->add_option("--bound", ver_bound)->check(CLI::PositiveNumber);
    add_output_options(ver_cmd, ver_out);
    ver_cmd->callback([&] {
        action = [&] {
            auto r = verify_hereditary_directed(spectrum_point_from_json(Json::parse(ver_point)), ver_bound);
            Json o{{"passed", r.passed}};
            if (!r.passed) o["counterexample"] = r.counterexample;
            emit(out, o, ver_out);
            return r.passed ? 0 : 1;
        };
    });

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return 2;
    }
    try {
        return action ? action() : 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace nnx
