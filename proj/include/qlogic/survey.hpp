#pragma once

// Reconstruction of logical joint probabilities from a two-order survey.
//
// Half of the respondents answer A then B, the other half B then A. Each
// order group is a 2x2 table of counts indexed by (first answer, second
// answer). The logical joint probability of (A^a, B^b) is
//
//   <A^a ∧ B^b> = p_AB(a, b) + (p_BA-first(b) − p_AB-second(b)) / 2
//
// and symmetrically for the B-first order. Point estimates are computed in
// exact rational arithmetic on the counts; statistics and bootstrap
// intervals in double precision.

#include "qlogic/hilbert.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlogic::survey {

using Rational = boost::multiprecision::cpp_rational;
using Count = std::uint64_t;

enum class ErrorKind {
    schema,
    negative_count,
    missing_cell,
    duplicate_cell,
    zero_variance,
    bad_confidence,
    too_few_iterations,
};

const char* to_string(ErrorKind kind) noexcept;

class SurveyError : public std::runtime_error {
public:
    SurveyError(ErrorKind kind, const std::string& message, int line = 0);

    ErrorKind kind() const noexcept { return kind_; }
    /// 1-based input line, 0 when not tied to a line.
    int line() const noexcept { return line_; }

private:
    ErrorKind kind_;
    int line_;
};

inline constexpr std::size_t cell_index(int first, int second) {
    return static_cast<std::size_t>(2 * first + second);
}

template <class T>
struct Table2x2 {
    std::array<T, 4> cells{};  // index 2 * first + second

    const T& at(int first, int second) const { return cells[cell_index(first, second)]; }
    T& at(int first, int second) { return cells[cell_index(first, second)]; }
    T sum() const { return cells[0] + cells[1] + cells[2] + cells[3]; }
    T row_sum(int first) const { return at(first, 0) + at(first, 1); }
    T column_sum(int second) const { return at(0, second) + at(1, second); }
};

using OrderCounts = Table2x2<Count>;
using ExactTable = Table2x2<Rational>;
using RealTable = Table2x2<double>;

RealTable to_real(const ExactTable& t);

class SequentialCountTable {
public:
    /// `ab` is indexed (a, b), `ba` is indexed (b, a). Both totals must be > 0.
    static SequentialCountTable create(const OrderCounts& ab, const OrderCounts& ba, std::string label_a = "A",
                                       std::string label_b = "B");

    const OrderCounts& ab() const noexcept { return ab_; }
    const OrderCounts& ba() const noexcept { return ba_; }
    Count total_ab() const noexcept { return ab_.sum(); }
    Count total_ba() const noexcept { return ba_.sum(); }
    const std::string& label_a() const noexcept { return label_a_; }
    const std::string& label_b() const noexcept { return label_b_; }

private:
    SequentialCountTable(const OrderCounts& ab, const OrderCounts& ba, std::string label_a, std::string label_b)
        : ab_(ab), ba_(ba), label_a_(std::move(label_a)), label_b_(std::move(label_b)) {}

    OrderCounts ab_;
    OrderCounts ba_;
    std::string label_a_;
    std::string label_b_;
};

struct SequentialProbs {
    ExactTable ab;  // (a, b)
    ExactTable ba;  // (b, a)
};

SequentialProbs sequential_probs(const SequentialCountTable& t);

struct LogicalTables {
    ExactTable ab;  // <A^a ∧ B^b>, indexed (a, b)
    ExactTable ba;  // <B^b ∧ A^a>, indexed (b, a)

    /// <A^a ∧ B^b> − <B^b ∧ A^a> on the common cell (a, b).
    Rational order_difference(int a, int b) const { return ab.at(a, b) - ba.at(b, a); }
};

LogicalTables reconstruct_logical_joint(const SequentialCountTable& t);

struct XorEstimates {
    Rational ab;  // p_AB(1,0) + p_AB(0,1)
    Rational ba;  // p_BA(1,0) + p_BA(0,1)
};

XorEstimates xor_estimates(const SequentialCountTable& t);

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int degrees_of_freedom = 0;
    std::vector<std::string> warnings;
};

/// Two-proportion z-test of <A ⊕ B> = <B ⊕ A> with unpooled variance. Also
/// checks, exactly, that the XOR difference is −2 times the conjunction
/// difference; a mismatch throws std::logic_error.
TestResult qq_equality_stat(const SequentialCountTable& t);

/// Chi-square homogeneity of the joint outcome distribution across the two
/// order groups on common (a, b) cells. Warns when an expected count is < 5.
TestResult order_effect_stat(const SequentialCountTable& t);

enum class Target { logical_ab, logical_ba, order_difference };

struct BootstrapOptions {
    std::uint64_t iterations = 1000;
    double confidence = 0.95;
    std::uint64_t seed = 42;
};

struct Interval {
    double point = 0.0;
    double lower = 0.0;
    double upper = 0.0;

    double width() const noexcept { return upper - lower; }
    bool contains(double x) const noexcept { return lower <= x && x <= upper; }
};

/// Percentile interval from multinomial resampling of each order group at its
/// own size. Iteration i draws from substream i of the seed.
///
/// `first`, `second` index the cell in the target's own table: (a, b) for
/// logical_ab and order_difference, (b, a) for logical_ba.
Interval bootstrap_ci(const SequentialCountTable& t, Target target, int first, int second,
                      const BootstrapOptions& options);

struct BootstrapSet {
    std::array<Interval, 4> logical_ab;        // (a, b)
    std::array<Interval, 4> logical_ba;        // (b, a)
    std::array<Interval, 4> order_difference;  // common (a, b)
};

BootstrapSet bootstrap_all(const SequentialCountTable& t, const BootstrapOptions& options);

struct ReconstructionReport {
    std::string label_a;
    std::string label_b;
    OrderCounts counts_ab;
    OrderCounts counts_ba;
    SequentialProbs sequential;
    LogicalTables logical;
    XorEstimates xor_;
    TestResult qq;
    TestResult order_effect;
    BootstrapOptions bootstrap_options;
    BootstrapSet bootstrap;
    std::array<bool, 4> nonclassical_ab{};  // (a, b)
    std::array<bool, 4> nonclassical_ba{};  // (b, a)
    std::array<double, 4> order_gap{};      // |order_difference| on common (a, b)

    bool any_nonclassical() const noexcept;
};

/// A cell is flagged non-classical only if its point estimate is negative and
/// its bootstrap interval lies entirely below zero.
ReconstructionReport classicality_report(const SequentialCountTable& t, const BootstrapOptions& options);

/// Sequential outcome distributions a Hilbert-space model predicts for both
/// orders: ab(a, b) = Tr(B^b A^a ρ A^a), ba(b, a) = Tr(A^a B^b ρ B^b).
struct ModelDistribution {
    RealTable ab;
    RealTable ba;
};

ModelDistribution model_sequential_distribution(const hilbert::DensityState& rho, const hilbert::Projector& a,
                                                const hilbert::Projector& b);

/// Counts closest to `per_order` × probabilities (largest remainder).
SequentialCountTable expected_counts(const ModelDistribution& model, Count per_order);

/// Multinomial draws of `per_order` simulated respondents per order.
SequentialCountTable simulate_counts(const ModelDistribution& model, Count per_order, std::uint64_t seed);

}  // namespace qlogic::survey
