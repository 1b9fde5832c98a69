#include "qlogic/survey.hpp"

#include "qlogic/seeding.hpp"

#include <boost/math/distributions/chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

namespace qlogic::survey {

namespace {

constexpr std::uint64_t kBootstrapStream = 23;
constexpr std::uint64_t kSimulationStream = 29;

using RealCells = std::array<double, 4>;

struct RealLogical {
    RealCells ab;
    RealCells ba;
};

// Same formulas as reconstruct_logical_joint, in doubles, for resampling.
RealLogical real_logical(const OrderCounts& ab, const OrderCounts& ba) {
    const double nab = static_cast<double>(ab.sum());
    const double nba = static_cast<double>(ba.sum());
    RealLogical out{};
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            // ab cell (a = x, b = y); ba cell (b = x, a = y).
            const double ba_first_y = static_cast<double>(ba.row_sum(y)) / nba;
            const double ab_second_y = static_cast<double>(ab.column_sum(y)) / nab;
            out.ab[cell_index(x, y)] = static_cast<double>(ab.at(x, y)) / nab + (ba_first_y - ab_second_y) / 2.0;
            const double ab_first_y = static_cast<double>(ab.row_sum(y)) / nab;
            const double ba_second_y = static_cast<double>(ba.column_sum(y)) / nba;
            out.ba[cell_index(x, y)] = static_cast<double>(ba.at(x, y)) / nba + (ab_first_y - ba_second_y) / 2.0;
        }
    }
    return out;
}

OrderCounts multinomial(Count n, const std::array<double, 4>& p, std::mt19937_64& rng) {
    OrderCounts out;
    Count remaining = n;
    double mass = 1.0;
    for (std::size_t k = 0; k < 3; ++k) {
        if (remaining == 0 || mass <= 0.0) break;
        const double q = std::clamp(p[k] / mass, 0.0, 1.0);
        std::binomial_distribution<Count> draw(remaining, q);
        const Count got = q >= 1.0 ? remaining : draw(rng);
        out.cells[k] = got;
        remaining -= got;
        mass -= p[k];
    }
    out.cells[3] += remaining;
    return out;
}

std::array<double, 4> frequencies(const OrderCounts& c) {
    const double n = static_cast<double>(c.sum());
    std::array<double, 4> p{};
    for (std::size_t k = 0; k < 4; ++k) p[k] = static_cast<double>(c.cells[k]) / n;
    return p;
}

double quantile(const std::vector<double>& sorted, double q) {
    const double h = static_cast<double>(sorted.size() - 1) * q;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

Interval percentile_interval(std::vector<double> samples, double point, double confidence) {
    std::sort(samples.begin(), samples.end());
    return {point, quantile(samples, (1.0 - confidence) / 2.0), quantile(samples, (1.0 + confidence) / 2.0)};
}

void check_options(const BootstrapOptions& o) {
    if (!(o.confidence > 0.0 && o.confidence < 1.0)) {
        throw SurveyError(ErrorKind::bad_confidence, "confidence must lie in (0, 1)");
    }
    if (o.iterations < 100) throw SurveyError(ErrorKind::too_few_iterations, "bootstrap needs at least 100 iterations");
}

// 12 resampled series: logical_ab[4], logical_ba[4], order_difference[4].
std::array<std::vector<double>, 12> resample(const SequentialCountTable& t, const BootstrapOptions& o) {
    std::array<std::vector<double>, 12> series;
    for (auto& s : series) s.reserve(o.iterations);
    const auto p_ab = frequencies(t.ab());
    const auto p_ba = frequencies(t.ba());
    for (std::uint64_t i = 0; i < o.iterations; ++i) {
        auto rng = make_rng(derive_seed(o.seed, i, kBootstrapStream));
        const OrderCounts ab = multinomial(t.total_ab(), p_ab, rng);
        const OrderCounts ba = multinomial(t.total_ba(), p_ba, rng);
        const RealLogical l = real_logical(ab, ba);
        for (int a = 0; a < 2; ++a) {
            for (int b = 0; b < 2; ++b) {
                const std::size_t k = cell_index(a, b);
                series[k].push_back(l.ab[k]);
                series[4 + k].push_back(l.ba[k]);
                series[8 + k].push_back(l.ab[k] - l.ba[cell_index(b, a)]);
            }
        }
    }
    return series;
}

Rational ratio(Count n, Count d) { return Rational(n) / Rational(d); }

}  // namespace

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::schema: return "SchemaError";
        case ErrorKind::negative_count: return "NegativeCount";
        case ErrorKind::missing_cell: return "MissingCell";
        case ErrorKind::duplicate_cell: return "DuplicateCell";
        case ErrorKind::zero_variance: return "ZeroVariance";
        case ErrorKind::bad_confidence: return "BadConfidence";
        case ErrorKind::too_few_iterations: return "TooFewIterations";
    }
    return "Unknown";
}

SurveyError::SurveyError(ErrorKind kind, const std::string& message, int line)
    : std::runtime_error(std::string(to_string(kind)) + (line > 0 ? " (line " + std::to_string(line) + ")" : "") +
                         ": " + message),
      kind_(kind),
      line_(line) {}

RealTable to_real(const ExactTable& t) {
    RealTable out;
    for (std::size_t k = 0; k < 4; ++k) out.cells[k] = static_cast<double>(t.cells[k]);
    return out;
}

SequentialCountTable SequentialCountTable::create(const OrderCounts& ab, const OrderCounts& ba, std::string label_a,
                                                  std::string label_b) {
    if (ab.sum() == 0) throw SurveyError(ErrorKind::schema, "order AB has no respondents");
    if (ba.sum() == 0) throw SurveyError(ErrorKind::schema, "order BA has no respondents");
    return SequentialCountTable(ab, ba, std::move(label_a), std::move(label_b));
}

SequentialProbs sequential_probs(const SequentialCountTable& t) {
    SequentialProbs p;
    for (std::size_t k = 0; k < 4; ++k) {
        p.ab.cells[k] = ratio(t.ab().cells[k], t.total_ab());
        p.ba.cells[k] = ratio(t.ba().cells[k], t.total_ba());
    }
    return p;
}

LogicalTables reconstruct_logical_joint(const SequentialCountTable& t) {
    const SequentialProbs p = sequential_probs(t);
    LogicalTables out;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            out.ab.at(a, b) = p.ab.at(a, b) + (p.ba.row_sum(b) - p.ab.column_sum(b)) / 2;
            out.ba.at(b, a) = p.ba.at(b, a) + (p.ab.row_sum(a) - p.ba.column_sum(a)) / 2;
        }
    }
    return out;
}

XorEstimates xor_estimates(const SequentialCountTable& t) {
    const SequentialProbs p = sequential_probs(t);
    return {p.ab.at(1, 0) + p.ab.at(0, 1), p.ba.at(1, 0) + p.ba.at(0, 1)};
}

TestResult qq_equality_stat(const SequentialCountTable& t) {
    const XorEstimates x = xor_estimates(t);
    const LogicalTables l = reconstruct_logical_joint(t);
    if (x.ab - x.ba != -2 * (l.ab.at(1, 1) - l.ba.at(1, 1))) {
        throw std::logic_error("xor difference is not -2 x conjunction difference");
    }

    TestResult r;
    r.degrees_of_freedom = 1;
    const Rational var_exact = x.ab * (1 - x.ab) / t.total_ab() + x.ba * (1 - x.ba) / t.total_ba();
    if (var_exact == 0) {
        if (x.ab == x.ba) return r;
        throw SurveyError(ErrorKind::zero_variance, "both XOR estimates are 0 or 1 and differ");
    }
    const double diff = static_cast<double>(Rational(x.ab - x.ba));
    r.statistic = diff / std::sqrt(static_cast<double>(var_exact));
    r.p_value = std::erfc(std::abs(r.statistic) / std::sqrt(2.0));
    return r;
}

TestResult order_effect_stat(const SequentialCountTable& t) {
    // Rows: order groups; columns: common cells (a, b).
    std::array<std::array<double, 4>, 2> observed{};
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            observed[0][cell_index(a, b)] = static_cast<double>(t.ab().at(a, b));
            observed[1][cell_index(a, b)] = static_cast<double>(t.ba().at(b, a));
        }
    }
    const double row0 = static_cast<double>(t.total_ab());
    const double row1 = static_cast<double>(t.total_ba());
    const double n = row0 + row1;

    TestResult r;
    int columns = 0;
    bool low = false;
    for (std::size_t j = 0; j < 4; ++j) {
        const double col = observed[0][j] + observed[1][j];
        if (col == 0.0) continue;
        ++columns;
        const std::array<double, 2> expected{row0 * col / n, row1 * col / n};
        for (std::size_t g = 0; g < 2; ++g) {
            if (expected[g] < 5.0) low = true;
            const double dev = observed[g][j] - expected[g];
            r.statistic += dev * dev / expected[g];
        }
    }
    if (low) r.warnings.emplace_back("LowExpectedCount: an expected cell count is below 5");
    r.degrees_of_freedom = std::max(columns - 1, 0);
    if (r.degrees_of_freedom == 0 || r.statistic <= 0.0) {
        r.p_value = 1.0;
        return r;
    }
    const boost::math::chi_squared dist(r.degrees_of_freedom);
    r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
    return r;
}

Interval bootstrap_ci(const SequentialCountTable& t, Target target, int first, int second,
                      const BootstrapOptions& options) {
    const BootstrapSet all = bootstrap_all(t, options);
    const std::size_t k = cell_index(first, second);
    switch (target) {
        case Target::logical_ab: return all.logical_ab[k];
        case Target::logical_ba: return all.logical_ba[k];
        case Target::order_difference: return all.order_difference[k];
    }
    return {};
}

BootstrapSet bootstrap_all(const SequentialCountTable& t, const BootstrapOptions& options) {
    check_options(options);
    auto series = resample(t, options);
    const LogicalTables l = reconstruct_logical_joint(t);
    BootstrapSet out;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const std::size_t k = cell_index(a, b);
            out.logical_ab[k] =
                percentile_interval(std::move(series[k]), static_cast<double>(l.ab.cells[k]), options.confidence);
            out.logical_ba[k] =
                percentile_interval(std::move(series[4 + k]), static_cast<double>(l.ba.cells[k]), options.confidence);
            out.order_difference[k] = percentile_interval(
                std::move(series[8 + k]), static_cast<double>(l.order_difference(a, b)), options.confidence);
        }
    }
    return out;
}

bool ReconstructionReport::any_nonclassical() const noexcept {
    return std::any_of(nonclassical_ab.begin(), nonclassical_ab.end(), [](bool f) { return f; }) ||
           std::any_of(nonclassical_ba.begin(), nonclassical_ba.end(), [](bool f) { return f; });
}

ReconstructionReport classicality_report(const SequentialCountTable& t, const BootstrapOptions& options) {
    ReconstructionReport r;
    r.label_a = t.label_a();
    r.label_b = t.label_b();
    r.counts_ab = t.ab();
    r.counts_ba = t.ba();
    r.sequential = sequential_probs(t);
    r.logical = reconstruct_logical_joint(t);
    r.xor_ = xor_estimates(t);
    r.qq = qq_equality_stat(t);
    r.order_effect = order_effect_stat(t);
    r.bootstrap_options = options;
    r.bootstrap = bootstrap_all(t, options);
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            const std::size_t k = cell_index(x, y);
            r.nonclassical_ab[k] = r.logical.ab.cells[k] < 0 && r.bootstrap.logical_ab[k].upper < 0.0;
            r.nonclassical_ba[k] = r.logical.ba.cells[k] < 0 && r.bootstrap.logical_ba[k].upper < 0.0;
            r.order_gap[k] = std::abs(static_cast<double>(r.logical.order_difference(x, y)));
        }
    }
    return r;
}

ModelDistribution model_sequential_distribution(const hilbert::DensityState& rho, const hilbert::Projector& a,
                                                const hilbert::Projector& b) {
    const std::array<hilbert::Projector, 2> as{hilbert::complement_projector(a), a};
    const std::array<hilbert::Projector, 2> bs{hilbert::complement_projector(b), b};
    ModelDistribution m;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            m.ab.at(x, y) = hilbert::sequential_probability(rho, as[x], bs[y]);
            m.ba.at(y, x) = hilbert::sequential_probability(rho, bs[y], as[x]);
        }
    }
    return m;
}

namespace {

OrderCounts apportion(const RealTable& p, Count n) {
    OrderCounts out;
    std::array<long double, 4> remainder{};
    Count assigned = 0;
    for (std::size_t k = 0; k < 4; ++k) {
        const long double exact = static_cast<long double>(std::max(p.cells[k], 0.0)) * static_cast<long double>(n);
        const auto whole = static_cast<Count>(std::floor(exact));
        out.cells[k] = whole;
        remainder[k] = exact - static_cast<long double>(whole);
        assigned += whole;
    }
    std::array<std::size_t, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return remainder[i] > remainder[j]; });
    for (std::size_t i = 0; assigned < n; i = (i + 1) % 4, ++assigned) ++out.cells[order[i]];
    // Rounding can overshoot only when the probabilities sum above 1.
    for (std::size_t i = 0; assigned > n; i = (i + 1) % 4) {
        const std::size_t k = order[3 - i];
        if (out.cells[k] > 0) {
            --out.cells[k];
            --assigned;
        }
    }
    return out;
}

}  // namespace

SequentialCountTable expected_counts(const ModelDistribution& model, Count per_order) {
    return SequentialCountTable::create(apportion(model.ab, per_order), apportion(model.ba, per_order));
}

SequentialCountTable simulate_counts(const ModelDistribution& model, Count per_order, std::uint64_t seed) {
    auto rng_ab = make_rng(derive_seed(seed, 0, kSimulationStream));
    auto rng_ba = make_rng(derive_seed(seed, 1, kSimulationStream));
    auto clean = [](const RealTable& t) {
        std::array<double, 4> p{};
        double total = 0.0;
        for (std::size_t k = 0; k < 4; ++k) total += p[k] = std::max(t.cells[k], 0.0);
        for (auto& x : p) x /= total;
        return p;
    };
    return SequentialCountTable::create(multinomial(per_order, clean(model.ab), rng_ab),
                                        multinomial(per_order, clean(model.ba), rng_ba));
}

}  // namespace qlogic::survey
