// Acceptance suite: one PASS/FAIL line per criterion, with measured values
// and wall time. Exit status is the number of failed criteria.

#include "qlogic/hilbert.hpp"
#include "qlogic/jordan.hpp"
#include "qlogic/logic_core.hpp"
#include "qlogic/seeding.hpp"
#include "qlogic/survey.hpp"
#include "qlogic/survey_io.hpp"

#include "oracles.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>

namespace {

using namespace qlogic;
using hilbert::ComplexMatrix;
using hilbert::Index;

struct Outcome {
    bool ok = false;
    std::string detail;
};

struct Criterion {
    int id;
    const char* title;
    double budget_s;  // 0 when no runtime bound applies
    std::function<Outcome()> run;
};

std::string format(const char* spec, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, x);
    return buf;
}

hilbert::ComplexVector vec(double x, double y) {
    hilbert::ComplexVector v(2);
    v << x, y;
    return v;
}

hilbert::Purity alternate(std::uint64_t t) { return t % 2 ? hilbert::Purity::mixed : hilbert::Purity::pure; }

constexpr std::uint64_t kSeed = 42;

Outcome value_table() {
    using logic::HalfInteger;
    constexpr std::array<int, 8> conj2{0, -1, 1, 0, 0, 1, 1, 2};
    constexpr std::array<int, 8> disj2{0, 1, 1, 2, 2, 1, 3, 2};
    const auto conj = logic::truth_table(logic::Connective::conjunction);
    const auto disj = logic::truth_table(logic::Connective::inclusive_or);
    int matched = 0;
    for (std::size_t i = 0; i < 8; ++i) {
        matched += conj[i].value == HalfInteger::from_twice(conj2[i]);
        matched += disj[i].value == HalfInteger::from_twice(disj2[i]);
    }
    return {matched == 16, std::to_string(matched) + "/16 entries exact"};
}

Outcome value_identities() {
    int pairs = 0;
    int checks = 0;
    int failed = 0;
    for (const auto& r_ab : logic::all_records()) {
        for (const auto& r_ba : logic::all_records()) {
            for (const auto& c : logic::identity_suite(r_ab, r_ba).checks) {
                ++checks;
                failed += !c.passed();
            }
            ++pairs;
        }
    }
    return {pairs == 64 && failed == 0,
            std::to_string(pairs) + " pairs, " + std::to_string(checks) + " exact checks, " + std::to_string(failed) +
                " failed"};
}

double trace_joint(const ComplexMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b) {
    return (rho * a * b).trace().real();
}

Outcome oracle_equivalence() {
    double worst = 0.0;
    int triples = 0;
    for (Index d = 2; d <= 8; ++d) {
        for (std::uint64_t t = 0; t < 1000; ++t) {
            const auto x = hilbert::sample_triple(d, alternate(t), derive_seed(kSeed, t, 1000 + d));
            const double op = hilbert::logical_joint(x.rho, x.a, x.b, hilbert::JointMethod::operational);
            const double jo = hilbert::logical_joint(x.rho, x.a, x.b, hilbert::JointMethod::jordan);
            const double ref = trace_joint(x.rho.matrix(), x.a.matrix(), x.b.matrix());
            worst = std::max({worst, std::abs(op - jo), std::abs(op - ref), std::abs(jo - ref)});
            ++triples;
        }
    }
    return {worst <= 1e-10, std::to_string(triples) + " triples, max residual " + format("%.2e", worst)};
}

Outcome commutativity() {
    double conj = 0.0;
    double xr = 0.0;
    double op = 0.0;
    for (Index d = 2; d <= 8; ++d) {
        const ComplexMatrix id = ComplexMatrix::Identity(d, d);
        for (std::uint64_t t = 0; t < 1000; ++t) {
            const auto x = hilbert::sample_triple(d, alternate(t), derive_seed(kSeed, t, 1000 + d));
            conj = std::max(conj, std::abs(hilbert::logical_joint(x.rho, x.a, x.b) - hilbert::logical_joint(x.rho, x.b, x.a)));
            xr = std::max(xr, std::abs(hilbert::xor_expectation(x.rho, x.a, x.b) - hilbert::xor_expectation(x.rho, x.b, x.a)));
            const ComplexMatrix& a = x.a.matrix();
            const ComplexMatrix& b = x.b.matrix();
            const ComplexMatrix lhs = a * (id - b) * a + (id - a) * b * (id - a);
            op = std::max(op, hilbert::operator_norm(lhs - (a + b - a * b - b * a)));
        }
    }
    return {conj <= 1e-10 && xr <= 1e-10 && op <= 1e-10,
            "conj " + format("%.2e", conj) + ", xor " + format("%.2e", xr) + ", operator " + format("%.2e", op)};
}

Outcome negativity_witness() {
    const auto rho = hilbert::DensityState::pure(vec(1, -3));
    const auto a = hilbert::Projector::rank_one(vec(1, 0));
    const auto b = hilbert::Projector::rank_one(vec(1, 1));
    const double joint = hilbert::logical_joint(rho, a, b);
    const double weak = hilbert::weak_value(rho, a, b).real();
    const oracle::SqrtTen o;
    const bool values = std::abs(joint + 0.1) <= 1e-12 && std::abs(weak + 0.5) <= 1e-12;
    const bool agree = std::abs(joint - o.joint()) <= 1e-12 && std::abs(weak - o.weak_value().real()) <= 1e-12;
    const auto search = hilbert::random_negativity_search(2, 10000, kSeed);
    return {values && agree && search.best.min_cell <= -0.09,
            "joint " + format("%.15f", joint) + ", weak " + format("%.15f", weak) + ", search min " +
                format("%.4f", search.best.min_cell)};
}

Outcome classicality_baseline() {
    double lowest = 1.0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        const auto x = hilbert::sample_commuting_triple(2 + static_cast<Index>(t % 7), derive_seed(kSeed, t, 1100));
        lowest = std::min(lowest, hilbert::negativity_search(x.rho, x.a, x.b).min_cell);
    }
    return {lowest >= -1e-12, "1000 commuting triples, min cell " + format("%.3e", lowest)};
}

Outcome formal_reality() {
    std::uint64_t violations = 0;
    double ratio = 1e300;
    for (Index d = 2; d <= 8; ++d) {
        const auto s = jordan::formal_reality_sweep(d, 1000, kSeed);
        violations += s.verdict != "consistent";
        ratio = std::min(ratio, s.min_relative_residual);
    }
    return {violations == 0 && ratio > 0.01,
            "7 x 1000 pairs, min ||X∘X+Y∘Y||/max(||X||²,||Y||²) = " + format("%.4f", ratio)};
}

Outcome synthetic_survey() {
    using survey::Rational;
    const auto t = survey::parse_counts_file(QLOGIC_DATA_DIR "/synthetic_n100.csv");
    const auto l = survey::reconstruct_logical_joint(t);
    const auto x = survey::xor_estimates(t);
    const Rational pa = Rational(t.ab().row_sum(1), t.total_ab());
    const Rational pb = Rational(t.ba().row_sum(1), t.total_ba());
    const bool values = l.ab.at(1, 1) == Rational(2, 5) && l.ba.at(1, 1) == Rational(9, 20) &&
                        x.ab == Rational(3, 10) && x.ba == Rational(1, 5);
    const bool ledger = x.ab == pa + pb - 2 * l.ab.at(1, 1) && x.ba == pb + pa - 2 * l.ba.at(1, 1) &&
                        x.ab - x.ba == -2 * (l.ab.at(1, 1) - l.ba.at(1, 1));
    return {values && ledger, "A∧B " + l.ab.at(1, 1).str() + ", B∧A " + l.ba.at(1, 1).str() + ", A⊕B " + x.ab.str() +
                                  ", B⊕A " + x.ba.str() + (ledger ? ", ledger exact" : ", LEDGER BROKEN")};
}

Outcome clinton_gore() {
    const auto t = survey::parse_counts_file(QLOGIC_DATA_DIR "/clinton_gore_1997.csv");
    survey::BootstrapOptions o;
    o.iterations = 10000;
    o.seed = kSeed;
    const auto r = survey::classicality_report(t, o);
    const bool order_effect = r.order_effect.p_value < 0.05;

    // Small relative to CI width: at most a quarter of the order-difference
    // interval width, and that interval contains zero.
    bool identical = true;
    double worst_ratio = 0.0;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const auto& ci = r.bootstrap.order_difference[survey::cell_index(a, b)];
            const double diff = std::abs(static_cast<double>(r.logical.order_difference(a, b)));
            worst_ratio = std::max(worst_ratio, diff / ci.width());
            identical = identical && diff <= 0.25 * ci.width() && ci.contains(0.0);
        }
    }
    const auto& cab = r.bootstrap.logical_ab[survey::cell_index(1, 0)];
    const auto& cba = r.bootstrap.logical_ba[survey::cell_index(0, 1)];
    const bool negative = r.logical.ab.at(1, 0) < 0 && r.logical.ba.at(0, 1) < 0;
    const bool insignificant = cab.contains(0.0) && cba.contains(0.0);
    return {order_effect && identical && negative && insignificant,
            "order-effect p " + format("%.4g", r.order_effect.p_value) + ", max |diff|/CI width " +
                format("%.3f", worst_ratio) + ", (C=1,G=0) " + format("%.4f", cab.point) + " [" +
                format("%.4f", cab.lower) + ", " + format("%.4f", cab.upper) + "] / " + format("%.4f", cba.point) +
                " [" + format("%.4f", cba.lower) + ", " + format("%.4f", cba.upper) + "]"};
}

Outcome model_round_trip() {
    constexpr survey::Count kPerOrder = 1'000'000'000'000ULL;
    double worst = 0.0;
    for (std::uint64_t t = 0; t < 1000; ++t) {
        const auto x = hilbert::sample_triple(2, alternate(t), derive_seed(kSeed, t, 1200));
        const auto counts = survey::expected_counts(survey::model_sequential_distribution(x.rho, x.a, x.b), kPerOrder);
        const auto l = survey::reconstruct_logical_joint(counts);
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                const auto pa = a ? x.a : hilbert::complement_projector(x.a);
                const auto pb = b ? x.b : hilbert::complement_projector(x.b);
                const double model_ab = hilbert::logical_joint(x.rho, pa, pb);
                const double model_ba = hilbert::logical_joint(x.rho, pb, pa);
                worst = std::max(worst, std::abs(static_cast<double>(l.ab.at(a, b)) - model_ab));
                worst = std::max(worst, std::abs(static_cast<double>(l.ba.at(b, a)) - model_ba));
            }
        }
    }
    return {worst <= 1e-10, "1000 triples at 1e12 counts per order, max residual " + format("%.2e", worst)};
}

}  // namespace

int main() {
    const Criterion criteria[] = {
        {1, "value table exactness", 1.0, value_table},
        {2, "value-level identity suite", 1.0, value_identities},
        {3, "oracle equivalence, d = 2..8", 10.0, oracle_equivalence},
        {4, "commutativity of ideal connectives", 0.0, commutativity},
        {5, "negativity witness", 0.0, negativity_witness},
        {6, "classicality baseline", 0.0, classicality_baseline},
        {7, "formal reality probe, d = 2..8", 0.0, formal_reality},
        {8, "survey reconstruction, synthetic", 0.0, synthetic_survey},
        {9, "survey reconstruction, Clinton/Gore", 30.0, clinton_gore},
        {10, "model round trip", 0.0, model_round_trip},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.budget_s == 0.0 || secs < c.budget_s;
        const bool ok = out.ok && in_time;
        failures += !ok;
        std::printf("%s  criterion %2d  %-38s %s  (%.3f s%s)\n", ok ? "PASS" : "FAIL", c.id, c.title,
                    out.detail.c_str(), secs,
                    c.budget_s > 0.0 ? (in_time ? format(" < %.0f s", c.budget_s).c_str() : " OVER BUDGET") : "");
    }
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures;
}
