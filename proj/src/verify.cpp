#include "qlogic/verify.hpp"

#include "qlogic/jordan.hpp"
#include "qlogic/logic_core.hpp"
#include "qlogic/seeding.hpp"
#include "qlogic/survey.hpp"

#include <algorithm>
#include <cmath>

namespace qlogic::verify {

namespace {

using hilbert::Index;

class Tally {
public:
    Tally(std::string module, std::string name, Index dim, double tol)
        : tol_(tol) {
        r_.module = std::move(module);
        r_.name = std::move(name);
        r_.dim = dim;
    }

    void add(double residual) {
        ++r_.checks;
        r_.max_residual = std::max(r_.max_residual, residual);
        if (!(residual <= tol_)) ++r_.failures;
    }

    void add_exact(bool ok, double residual) {
        ++r_.checks;
        r_.max_residual = std::max(r_.max_residual, residual);
        if (!ok) ++r_.failures;
    }

    SuiteResult finish() {
        if (r_.failures > 0) {
            r_.failure_kind = r_.max_residual < kRoundingFloor ? FailureKind::tolerance : FailureKind::identity_violation;
        }
        return r_;
    }

private:
    double tol_;
    SuiteResult r_;
};

SuiteResult from_sweep(const jordan::SweepReport& s, double tol) {
    SuiteResult r;
    r.module = "jordan";
    r.name = s.check;
    r.dim = s.dim;
    r.checks = s.trials;
    r.max_residual = s.max_residual;
    const bool ok = s.verdict == "pass" || s.verdict == "consistent";
    r.failures = ok ? 0 : 1;
    if (!ok) {
        const bool rounding = s.check != "formal_reality" && s.max_residual < kRoundingFloor && s.max_residual > tol;
        r.failure_kind = rounding ? FailureKind::tolerance : FailureKind::identity_violation;
    }
    return r;
}

hilbert::Purity alternate(std::uint64_t t) { return t % 2 == 0 ? hilbert::Purity::pure : hilbert::Purity::mixed; }

}  // namespace

const char* to_string(FailureKind k) noexcept {
    switch (k) {
        case FailureKind::none: return "none";
        case FailureKind::tolerance: return "tolerance";
        case FailureKind::identity_violation: return "identity_violation";
    }
    return "unknown";
}

std::vector<SuiteResult> run_logic_suites() {
    using namespace qlogic::logic;
    std::vector<SuiteResult> out;

    Tally table("logic_core", "golden_value_table", 0, 0.0);
    const auto conj = truth_table(Connective::conjunction);
    const auto disj = truth_table(Connective::inclusive_or);
    for (std::size_t i = 0; i < 8; ++i) {
        table.add_exact(conj[i].value == golden_conjunction_table()[i],
                        std::abs((conj[i].value - golden_conjunction_table()[i]).to_double()));
        table.add_exact(disj[i].value == golden_disjunction_table()[i],
                        std::abs((disj[i].value - golden_disjunction_table()[i]).to_double()));
    }
    out.push_back(table.finish());

    Tally ids("logic_core", "value_identities", 0, 0.0);
    for (const auto& r_ab : all_records()) {
        for (const auto& r_ba : all_records()) {
            for (const auto& c : identity_suite(r_ab, r_ba).checks) {
                ids.add_exact(c.passed(), std::abs((c.lhs - c.rhs).to_double()));
            }
        }
    }
    out.push_back(ids.finish());

    Tally boolean("logic_core", "boolean_reduction", 0, 0.0);
    for (const auto& r : all_records()) {
        if (r.b_alone != r.b_after) continue;
        const int a = value(r.a);
        const int b = value(r.b_alone);
        boolean.add_exact(conjunction_value(r) == HalfInteger(a & b), 0.0);
        boolean.add_exact(or_value(r) == HalfInteger(a | b), 0.0);
        boolean.add_exact(xor_value(r) == HalfInteger(a ^ b), 0.0);
    }
    out.push_back(boolean.finish());
    return out;
}

std::vector<SuiteResult> run_hilbert_suites(Index dim, const Config& config) {
    using namespace qlogic::hilbert;
    Tally oracle("hilbert", "oracle_equivalence", dim, config.tol);
    Tally symmetry("hilbert", "order_symmetry", dim, config.tol);
    Tally identity("hilbert", "xor_operator_identity", dim, config.tol);
    Tally marginal("hilbert", "marginality", dim, config.tol);
    Tally repeat("hilbert", "repeatability", dim, config.tol);
    Tally classical("hilbert", "classicality_baseline", dim, config.tol);

    for (std::uint64_t t = 0; t < config.trials; ++t) {
        const Triple x = sample_triple(dim, alternate(t), derive_seed(config.seed, t, 101 + static_cast<std::uint64_t>(dim)));
        const double op = logical_joint(x.rho, x.a, x.b, JointMethod::operational);
        const double jo = logical_joint(x.rho, x.a, x.b, JointMethod::jordan);
        const double kd = kirkwood_dirac_real(x.rho, x.a, x.b);
        oracle.add(std::max(std::abs(op - jo), std::abs(op - kd)));

        const double xor_ab = xor_expectation(x.rho, x.a, x.b);
        const double xor_ba = xor_expectation(x.rho, x.b, x.a);
        const double xor_mapped = (x.rho.matrix() * xor_operator(x.a, x.b)).trace().real();
        symmetry.add(std::max({std::abs(op - logical_joint(x.rho, x.b, x.a)), std::abs(xor_ab - xor_ba),
                               std::abs(xor_ab - xor_mapped)}));

        identity.add(xor_operator_residual(x.a, x.b));

        const QuasiProbTable q = quasi_prob_table(x.rho, x.a, x.b);
        const double pa = born_probability(x.rho, x.a);
        const double pb = born_probability(x.rho, x.b);
        marginal.add(std::max({std::abs(q.sum() - 1.0), std::abs(q.row_sum(1) - pa), std::abs(q.row_sum(0) - (1.0 - pa)),
                               std::abs(q.column_sum(1) - pb), std::abs(q.column_sum(0) - (1.0 - pb))}));

        repeat.add(std::abs(sequential_probability(x.rho, x.a, x.a) - pa));

        const Triple c = sample_commuting_triple(dim, derive_seed(config.seed, t, 201 + static_cast<std::uint64_t>(dim)));
        classical.add(std::max(0.0, -negativity_search(c.rho, c.a, c.b).min_cell));
    }

    std::vector<SuiteResult> out{oracle.finish(), symmetry.finish(), identity.finish(),
                                 marginal.finish(), repeat.finish(), classical.finish()};

    if (dim == 2) {
        // Order-dependent sequential probabilities with order-invariant logical joints.
        ComplexVector psi(2);
        psi << 1.0, -3.0;
        const DensityState rho = DensityState::pure(psi);
        ComplexVector zero(2), plus(2);
        zero << 1.0, 0.0;
        plus << 1.0, 1.0;
        const Projector a = Projector::rank_one(zero);
        const Projector b = Projector::rank_one(plus);
        Tally witness("hilbert", "order_dependence_witness", 2, config.tol);
        const double gap = std::abs(sequential_probability(rho, a, b) - sequential_probability(rho, b, a));
        witness.add_exact(gap > 0.01, 0.0);
        witness.add(std::abs(logical_joint(rho, a, b) - logical_joint(rho, b, a)));
        out.push_back(witness.finish());
    }
    return out;
}

std::vector<SuiteResult> run_jordan_suites(Index dim, const Config& config) {
    const std::uint64_t seed = derive_seed(config.seed, static_cast<std::uint64_t>(dim), 301);
    return {from_sweep(jordan::commutativity_sweep(dim, config.trials, seed, config.tol), config.tol),
            from_sweep(jordan::marginality_sweep(dim, config.trials, seed, config.tol), config.tol),
            from_sweep(jordan::xor_symmetry_sweep(dim, config.trials, seed, config.tol), config.tol),
            from_sweep(jordan::power_associativity_sweep(dim, config.trials, seed, config.tol), config.tol),
            from_sweep(jordan::formal_reality_sweep(dim, config.trials, seed, config.tol), config.tol)};
}

SuiteResult run_survey_round_trip(const Config& config) {
    using namespace qlogic::hilbert;
    // Expected counts at 1e12 respondents per order; rounding contributes < 1e-11.
    constexpr survey::Count kPerOrder = 1'000'000'000'000ULL;
    Tally tally("survey", "model_round_trip", 2, std::max(config.tol, 1e-10));
    const std::uint64_t trials = std::min<std::uint64_t>(config.trials, 200);
    for (std::uint64_t t = 0; t < trials; ++t) {
        const Triple x = sample_triple(2, alternate(t), derive_seed(config.seed, t, 401));
        const auto counts = survey::expected_counts(survey::model_sequential_distribution(x.rho, x.a, x.b), kPerOrder);
        const auto logical = survey::reconstruct_logical_joint(counts);
        const QuasiProbTable model_ab = quasi_prob_table(x.rho, x.a, x.b);
        const QuasiProbTable model_ba = quasi_prob_table(x.rho, x.b, x.a);
        double worst = 0.0;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                worst = std::max(worst, std::abs(static_cast<double>(logical.ab.at(i, j)) - model_ab.at(i, j)));
                worst = std::max(worst, std::abs(static_cast<double>(logical.ba.at(i, j)) - model_ba.at(i, j)));
            }
        }
        tally.add(worst);
    }
    return tally.finish();
}

std::vector<SuiteResult> run_all(const Config& config) {
    std::vector<SuiteResult> out = run_logic_suites();
    for (Index d = 2; d <= config.max_dim; ++d) {
        auto h = run_hilbert_suites(d, config);
        out.insert(out.end(), h.begin(), h.end());
        auto j = run_jordan_suites(d, config);
        out.insert(out.end(), j.begin(), j.end());
    }
    out.push_back(run_survey_round_trip(config));
    return out;
}

nlohmann::json to_json(const std::vector<SuiteResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) {
        arr.push_back({{"module", r.module},
                       {"suite", r.name},
                       {"dim", r.dim},
                       {"checks", r.checks},
                       {"failures", r.failures},
                       {"max_residual", r.max_residual},
                       {"passed", r.passed()},
                       {"failure_kind", to_string(r.failure_kind)}});
    }
    return arr;
}

}  // namespace qlogic::verify
