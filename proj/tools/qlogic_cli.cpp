// qlogic: command-line front end.
//
// Exit codes: 0 all checks pass, 1 a property or golden check failed,
// 2 invalid input (bad flags, unreadable or malformed files).

#include "qlogic/hilbert.hpp"
#include "qlogic/hilbert_io.hpp"
#include "qlogic/jordan.hpp"
#include "qlogic/logic_core.hpp"
#include "qlogic/seeding.hpp"
#include "qlogic/survey.hpp"
#include "qlogic/survey_io.hpp"
#include "qlogic/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;
namespace hilbert = qlogic::hilbert;
namespace logic = qlogic::logic;
namespace survey = qlogic::survey;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

struct RunConfig {
    std::string subcommand;
    long long dim = 2;
    long long seed = 42;
    long long trials = 1000;
    double tol = 1e-10;
    std::string format;
    std::string out;
    std::string svg;
    std::string input;
    std::string connective = "all";
    double confidence = 0.95;
    bool example = false;
};

class InputError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

json meta(const RunConfig& c) {
    return {{"tool", "qlogic"}, {"version", QLOGIC_VERSION}, {"subcommand", c.subcommand}, {"dim", c.dim},
            {"seed", c.seed},   {"trials", c.trials},        {"tol", c.tol}};
}

void validate(const RunConfig& c) {
    if (c.dim < 2 || c.dim > hilbert::kDefaultMaxDim) {
        throw InputError("--dim must lie in [2, " + std::to_string(hilbert::kDefaultMaxDim) + "]");
    }
    if (c.trials <= 0) throw InputError("--trials must be positive");
    if (c.seed < 0) throw InputError("--seed must be non-negative");
    if (!(c.tol > 0.0)) throw InputError("--tol must be positive");
}

void emit(const RunConfig& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(c.out, std::ios::binary);
    if (!f) throw InputError("cannot write '" + c.out + "'");
    f << text;
}

std::string fmt(double x, const char* spec = "%.12g") {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

// ---------------------------------------------------------------- truth-table

int cmd_truth_table(const RunConfig& c) {
    std::vector<logic::Connective> which;
    if (c.connective == "all" || c.connective == "conjunction") which.push_back(logic::Connective::conjunction);
    if (c.connective == "all" || c.connective == "or") which.push_back(logic::Connective::inclusive_or);
    if (c.connective == "all" || c.connective == "xor") which.push_back(logic::Connective::xor_);
    if (which.empty()) throw InputError("--connective must be conjunction, or, xor or all");
    if (c.format == "csv" && which.size() > 1 && !c.out.empty()) {
        throw InputError("csv output to a file needs a single --connective");
    }

    const auto conj = logic::truth_table(logic::Connective::conjunction);
    const auto disj = logic::truth_table(logic::Connective::inclusive_or);
    int matches = 0;
    for (std::size_t i = 0; i < 8; ++i) {
        matches += conj[i].value == logic::golden_conjunction_table()[i];
        matches += disj[i].value == logic::golden_disjunction_table()[i];
    }
    const bool ok = matches == 16;

    std::string text;
    if (c.format == "json") {
        json j{{"meta", meta(c)}, {"golden_matches", matches}, {"golden_total", 16}, {"passed", ok}};
        for (auto k : which) {
            json rows = json::array();
            for (const auto& r : logic::truth_table(k)) {
                rows.push_back({{"a", logic::value(r.record.a)},
                                {"b_alone", logic::value(r.record.b_alone)},
                                {"b_after", logic::value(r.record.b_after)},
                                {"value", r.value.fraction()}});
            }
            j["tables"][std::string(logic::name(k))] = rows;
        }
        text = j.dump(2) + "\n";
    } else if (c.format == "csv") {
        for (auto k : which) {
            if (which.size() > 1) text += "# " + std::string(logic::name(k)) + "\n";
            text += logic::to_csv(logic::truth_table(k));
        }
    } else {
        for (auto k : which) text += logic::to_text(k, logic::truth_table(k)) + "\n";
        text += "golden entries matched: " + std::to_string(matches) + "/16\n";
    }
    emit(c, text);
    if (!ok) std::cerr << "truth-table: value table differs from the built-in golden table\n";
    return ok ? kExitPass : kExitFail;
}

// --------------------------------------------------------------------- verify

int cmd_verify(const RunConfig& c) {
    qlogic::verify::Config vc;
    vc.max_dim = c.dim;
    vc.trials = static_cast<std::uint64_t>(c.trials);
    vc.seed = static_cast<std::uint64_t>(c.seed);
    vc.tol = c.tol;
    const auto results = qlogic::verify::run_all(vc);
    bool ok = true;
    std::uint64_t tolerance_failures = 0;
    std::uint64_t identity_failures = 0;
    double worst = 0.0;
    for (const auto& r : results) {
        ok = ok && r.passed();
        // formal_reality reports the size of a violation witness, not an identity residual.
        if (r.name != "formal_reality") worst = std::max(worst, r.max_residual);
        if (r.failure_kind == qlogic::verify::FailureKind::tolerance) ++tolerance_failures;
        if (r.failure_kind == qlogic::verify::FailureKind::identity_violation) ++identity_failures;
    }

    std::string text;
    if (c.format == "text") {
        std::ostringstream s;
        for (const auto& r : results) {
            s << (r.passed() ? "PASS " : "FAIL ") << r.module << '/' << r.name;
            if (r.dim > 0) s << " d=" << r.dim;
            s << "  checks=" << r.checks << "  max_residual=" << fmt(r.max_residual, "%.3e");
            if (!r.passed()) s << "  (" << qlogic::verify::to_string(r.failure_kind) << ")";
            s << '\n';
        }
        s << (ok ? "all suites passed" : "FAILURES") << ", max identity residual " << fmt(worst, "%.3e") << '\n';
        text = s.str();
    } else {
        json j{{"meta", meta(c)},
               {"passed", ok},
               {"max_identity_residual", worst},
               {"tolerance_failures", tolerance_failures},
               {"identity_violations", identity_failures},
               {"suites", qlogic::verify::to_json(results)}};
        text = j.dump(2) + "\n";
    }
    emit(c, text);
    return ok ? kExitPass : kExitFail;
}

// ----------------------------------------------------------------------- demo

struct Example {
    hilbert::DensityState rho;
    hilbert::Projector a;
    hilbert::Projector b;
    std::vector<hilbert::ComplexVector> basis_a;
    std::vector<hilbert::ComplexVector> basis_b;
};

// ρ = |ψ><ψ|, ψ = (|0> − 3|1>)/√10, A = |0><0|, B = |+><+|.
Example fixed_example() {
    hilbert::ComplexVector psi(2), zero(2), one(2), plus(2), minus(2);
    psi << 1.0, -3.0;
    zero << 1.0, 0.0;
    one << 0.0, 1.0;
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    minus << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    return {hilbert::DensityState::pure(psi), hilbert::Projector::rank_one(zero), hilbert::Projector::rank_one(plus),
            {zero, one}, {plus, minus}};
}

int cmd_demo(const RunConfig& c) {
    const Example ex = fixed_example();
    const double pa = hilbert::born_probability(ex.rho, ex.a);
    const double pb = hilbert::born_probability(ex.rho, ex.b);
    const double pb_after_a = hilbert::nonselective_probability(ex.rho, ex.a, ex.b);
    const double seq_ab = hilbert::sequential_probability(ex.rho, ex.a, ex.b);
    const double seq_ba = hilbert::sequential_probability(ex.rho, ex.b, ex.a);
    const double joint_op = hilbert::logical_joint(ex.rho, ex.a, ex.b, hilbert::JointMethod::operational);
    const double joint_jordan = hilbert::logical_joint(ex.rho, ex.a, ex.b, hilbert::JointMethod::jordan);
    const double joint_ba = hilbert::logical_joint(ex.rho, ex.b, ex.a);
    const auto table = hilbert::quasi_prob_table(ex.rho, ex.a, ex.b);
    const auto weak = hilbert::weak_value(ex.rho, ex.a, ex.b);
    const double xor_ab = hilbert::xor_expectation(ex.rho, ex.a, ex.b);
    const auto search = hilbert::random_negativity_search(2, static_cast<std::uint64_t>(c.trials),
                                                          static_cast<std::uint64_t>(c.seed));

    const bool ok = std::abs(table.at(1, 1) + 0.1) <= 1e-12 && std::abs(joint_jordan + 0.1) <= 1e-12 &&
                    std::abs(weak.real() + 0.5) <= 1e-12 && std::abs(pa - 0.1) <= 1e-12 && std::abs(pb - 0.2) <= 1e-12;

    std::string text;
    if (c.format == "json") {
        json cells = json::array();
        for (int a = 1; a >= 0; --a)
            for (int b = 1; b >= 0; --b) cells.push_back({{"a", a}, {"b", b}, {"value", table.at(a, b)}});
        json j{{"meta", meta(c)},
               {"state", "(|0> - 3|1>)/sqrt(10)"},
               {"A", "|0><0|"},
               {"B", "|+><+|"},
               {"born_A", pa},
               {"born_B", pb},
               {"B_after_nonselective_A", pb_after_a},
               {"sequential_AB", seq_ab},
               {"sequential_BA", seq_ba},
               {"logical_joint_operational", joint_op},
               {"logical_joint_jordan", joint_jordan},
               {"logical_joint_BA", joint_ba},
               {"xor_AB", xor_ab},
               {"quasi_probability", cells},
               {"quasi_probability_csv", hilbert::quasi_prob_to_csv(table)},
               {"weak_value", {{"re", weak.real()}, {"im", weak.imag()}}},
               {"random_search",
                {{"dim", 2},
                 {"draws", search.draws},
                 {"seed", search.seed},
                 {"best_draw", search.best_draw},
                 {"min_cell", search.best.min_cell},
                 {"cell", {search.best.a, search.best.b}},
                 {"at_most_minus_0.09", search.best.min_cell <= -0.09}}},
               {"passed", ok}};
        text = j.dump(2) + "\n";
    } else {
        std::ostringstream s;
        s << "state rho = |psi><psi|, psi = (|0> - 3|1>)/sqrt(10); A = |0><0|, B = |+><+|\n\n";
        s << "<A>                      = " << fmt(pa) << '\n';
        s << "<B>                      = " << fmt(pb) << '\n';
        s << "<B_A> (after nonsel. A)  = " << fmt(pb_after_a) << '\n';
        s << "<A then B>               = " << fmt(seq_ab) << '\n';
        s << "<B then A>               = " << fmt(seq_ba) << '\n';
        s << "<A and B> operational    = " << fmt(joint_op) << "   = <A then B> + (<B> - <B_A>)/2\n";
        s << "<A and B> Jordan         = " << fmt(joint_jordan) << "   = Tr(rho (AB+BA)/2)\n";
        s << "<B and A>                = " << fmt(joint_ba) << '\n';
        s << "<A xor B>                = " << fmt(xor_ab) << '\n';
        s << "weak value Tr(BA rho)/Tr(B rho) = " << fmt(weak.real()) << (weak.imag() >= 0 ? " + " : " - ")
          << fmt(std::abs(weak.imag())) << "i\n\n";
        s << "logical joint probabilities (a, b): value   [report value clamped to [0,1]]\n";
        for (int a = 1; a >= 0; --a)
            for (int b = 1; b >= 0; --b)
                s << "  (" << a << ", " << b << "): " << fmt(table.at(a, b), "%+.12f") << "   ["
                  << fmt(hilbert::clamp_for_report(table.at(a, b)), "%.4f") << "]\n";
        s << "\nrandom search, d=2, " << search.draws << " draws, seed " << search.seed << ": min cell "
          << fmt(search.best.min_cell) << " at (" << search.best.a << ", " << search.best.b << "), draw "
          << search.best_draw << '\n';
        s << (ok ? "example checks passed\n" : "EXAMPLE CHECKS FAILED\n");
        text = s.str();
    }
    emit(c, text);
    return ok ? kExitPass : kExitFail;
}

// ------------------------------------------------------------------------- kd

int cmd_kd(const RunConfig& c) {
    std::optional<Example> ex;
    if (c.example) {
        ex = fixed_example();
    } else {
        const auto d = static_cast<hilbert::Index>(c.dim);
        const auto seed = static_cast<std::uint64_t>(c.seed);
        auto rng_a = qlogic::make_rng(qlogic::derive_seed(seed, 1, 503));
        auto rng_b = qlogic::make_rng(qlogic::derive_seed(seed, 2, 503));
        ex = Example{hilbert::sample_state(d, hilbert::Purity::mixed, qlogic::derive_seed(seed, 0, 503)),
                     hilbert::Projector::identity(d),
                     hilbert::Projector::identity(d),
                     hilbert::basis_from_columns(hilbert::sample_unitary(d, rng_a)),
                     hilbert::basis_from_columns(hilbert::sample_unitary(d, rng_b))};
    }
    const auto q = hilbert::kd_distribution(ex->rho, ex->basis_a, ex->basis_b, 1e-9);
    const hilbert::Complex total = q.sum();
    double real_part_gap = 0.0;
    double min_real = 1.0;
    for (hilbert::Index i = 0; i < q.rows(); ++i) {
        for (hilbert::Index j = 0; j < q.cols(); ++j) {
            const auto pa = hilbert::Projector::rank_one(ex->basis_a[static_cast<std::size_t>(i)]);
            const auto pb = hilbert::Projector::rank_one(ex->basis_b[static_cast<std::size_t>(j)]);
            real_part_gap = std::max(real_part_gap, std::abs(q(i, j).real() - hilbert::logical_joint(ex->rho, pa, pb)));
            min_real = std::min(min_real, q(i, j).real());
        }
    }
    const double sum_error = std::abs(total - hilbert::Complex(1.0, 0.0));
    const bool ok = sum_error <= c.tol && real_part_gap <= c.tol;

    std::string text;
    if (c.format == "text") {
        std::ostringstream s;
        s << "Kirkwood-Dirac distribution q(i,j) = <b_j|a_i><a_i|rho|b_j>, d=" << q.rows()
          << (c.example ? " (fixed example: a = {|0>,|1>}, b = {|+>,|->})" : "") << "\n";
        for (hilbert::Index i = 0; i < q.rows(); ++i) {
            for (hilbert::Index j = 0; j < q.cols(); ++j)
                s << "  " << fmt(q(i, j).real(), "%+.6f") << fmt(q(i, j).imag(), "%+.6f") << "i";
            s << '\n';
        }
        s << "sum = " << fmt(total.real()) << " + " << fmt(total.imag()) << "i\n";
        s << "max |Re q - logical joint| = " << fmt(real_part_gap, "%.3e") << ", min Re q = " << fmt(min_real) << '\n';
        text = s.str();
    } else {
        json re = json::array(), im = json::array();
        for (hilbert::Index i = 0; i < q.rows(); ++i) {
            json rr = json::array(), ii = json::array();
            for (hilbert::Index j = 0; j < q.cols(); ++j) {
                rr.push_back(q(i, j).real());
                ii.push_back(q(i, j).imag());
            }
            re.push_back(rr);
            im.push_back(ii);
        }
        json j{{"meta", meta(c)},
               {"example", c.example},
               {"state", hilbert::matrix_to_json(ex->rho.matrix())},
               {"distribution", {{"dim", q.rows()}, {"re", re}, {"im", im}}},
               {"sum", {{"re", total.real()}, {"im", total.imag()}}},
               {"max_real_part_vs_logical_joint", real_part_gap},
               {"min_real_part", min_real},
               {"passed", ok}};
        text = j.dump(2) + "\n";
    }
    emit(c, text);
    return ok ? kExitPass : kExitFail;
}

// -------------------------------------------------------------- jordan-verify

int cmd_jordan_verify(const RunConfig& c) {
    namespace jordan = qlogic::jordan;
    json reports = json::array();
    bool ok = true;
    const auto trials = static_cast<std::uint64_t>(c.trials);
    const auto seed = static_cast<std::uint64_t>(c.seed);
    for (hilbert::Index d = 2; d <= c.dim; ++d) {
        for (const auto& r : {jordan::formal_reality_sweep(d, trials, seed, c.tol),
                              jordan::xor_symmetry_sweep(d, trials, seed, c.tol),
                              jordan::marginality_sweep(d, trials, seed, c.tol),
                              jordan::commutativity_sweep(d, trials, seed, c.tol),
                              jordan::power_associativity_sweep(d, trials, seed, c.tol)}) {
            ok = ok && (r.verdict == "pass" || r.verdict == "consistent");
            reports.push_back(jordan::to_json(r));
        }
    }
    std::string text;
    if (c.format == "text") {
        std::ostringstream s;
        for (const auto& r : reports) {
            s << r["verdict"].get<std::string>() << "  " << r["check"].get<std::string>() << " d=" << r["dim"]
              << " trials=" << r["trials"] << " max_residual=" << fmt(r["max_residual"].get<double>(), "%.3e")
              << " min_residual=" << fmt(r["min_residual"].get<double>(), "%.3e") << '\n';
        }
        text = s.str();
    } else {
        text = json{{"meta", meta(c)}, {"passed", ok}, {"sweeps", reports}}.dump(2) + "\n";
    }
    emit(c, text);
    return ok ? kExitPass : kExitFail;
}

// --------------------------------------------------------------------- survey

int cmd_survey(const RunConfig& c) {
    const auto table = survey::parse_counts_file(c.input);
    survey::BootstrapOptions options;
    options.iterations = static_cast<std::uint64_t>(c.trials);
    options.seed = static_cast<std::uint64_t>(c.seed);
    options.confidence = c.confidence;
    const auto report = survey::classicality_report(table, options);

    std::string text;
    if (c.format == "csv") {
        text = survey::plot_data_csv(report);
    } else if (c.format == "text") {
        text = survey::report_to_text(report);
    } else {
        json m = meta(c);
        m["input"] = c.input;
        text = survey::report_to_json(report, m).dump(2) + "\n";
    }
    const std::string svg = c.svg.empty() ? std::string() : survey::render_svg(report);
    emit(c, text);
    if (!c.svg.empty()) {
        std::ofstream f(c.svg, std::ios::binary);
        if (!f) throw InputError("cannot write '" + c.svg + "'");
        f << svg;
    }
    return kExitPass;
}

void add_common(CLI::App* sub, RunConfig& c, bool with_dim = true) {
    if (with_dim) sub->add_option("--dim", c.dim, "Hilbert-space dimension (largest swept for verify/jordan-verify)");
    sub->add_option("--seed", c.seed, "base seed");
    sub->add_option("--trials", c.trials, "random trials / bootstrap iterations / search draws");
    sub->add_option("--tol", c.tol, "numerical tolerance");
    sub->add_option("--format", c.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--out", c.out, "write output to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Logic of ordered yes-no questions: value tables, Lüders-rule quasi-probabilities, "
                 "Jordan-product checks and two-order survey reconstruction"};
    app.set_version_flag("--version", QLOGIC_VERSION);
    app.require_subcommand(1);
    RunConfig c;

    auto* truth = app.add_subcommand("truth-table", "print and check the connective value tables");
    add_common(truth, c, false);
    truth->add_option("--connective", c.connective, "conjunction, or, xor or all");

    auto* verify = app.add_subcommand("verify", "run the invariant suites");
    add_common(verify, c);

    auto* demo = app.add_subcommand("demo", "worked negative logical joint probability example");
    add_common(demo, c, false);

    auto* surv = app.add_subcommand("survey", "reconstruct logical joint probabilities from a two-order survey");
    add_common(surv, c, false);
    surv->add_option("input", c.input, "counts CSV")->required();
    surv->add_option("--svg", c.svg, "also write a grouped bar chart");
    surv->add_option("--confidence", c.confidence, "bootstrap confidence level");

    auto* kd = app.add_subcommand("kd", "Kirkwood-Dirac distribution of a random (or the fixed example) state");
    add_common(kd, c);
    kd->add_flag("--example", c.example, "use the fixed two-dimensional example");

    auto* jv = app.add_subcommand("jordan-verify", "Jordan-product sweeps");
    add_common(jv, c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    CLI::App* chosen = app.get_subcommands().front();
    c.subcommand = chosen->get_name();
    if (c.format.empty()) c.format = (chosen == truth || chosen == demo) ? "text" : "json";

    try {
        validate(c);
        if (chosen == truth) return cmd_truth_table(c);
        if (chosen == verify) return cmd_verify(c);
        if (chosen == demo) return cmd_demo(c);
        if (chosen == surv) return cmd_survey(c);
        if (chosen == kd) return cmd_kd(c);
        if (chosen == jv) return cmd_jordan_verify(c);
    } catch (const InputError& e) {
        std::cerr << "qlogic: " << e.what() << '\n';
        return kExitInput;
    } catch (const survey::SurveyError& e) {
        std::cerr << "qlogic: " << c.input << ": " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "qlogic: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitInput;
}
