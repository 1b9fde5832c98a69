#include "qlogic/logic_core.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace qlogic::logic {

namespace {

HalfInteger as_value(Answer a) noexcept { return HalfInteger(value(a)); }

std::string pad(const std::string& s, std::size_t width) {
    if (s.size() >= width) return s;
    const std::size_t left = (width - s.size() + 1) / 2;
    return std::string(left, ' ') + s + std::string(width - s.size() - left, ' ');
}

}  // namespace

std::string HalfInteger::fraction() const {
    if (is_integer()) return std::to_string(twice_ / 2) + "/1";
    return std::to_string(twice_) + "/2";
}

std::string HalfInteger::str() const {
    if (is_integer()) return std::to_string(twice_ / 2);
    return std::to_string(twice_) + "/2";
}

std::array<CounterfactualRecord, 8> all_records() {
    std::array<CounterfactualRecord, 8> out{};
    for (int i = 0; i < 8; ++i) out[i] = make_record((i >> 2) & 1, (i >> 1) & 1, i & 1);
    return out;
}

Answer complement(Answer a) noexcept { return answer(value(a) == 0); }

HalfInteger sequential_conjunction_value(Answer a, Answer b_after) noexcept {
    return HalfInteger(value(a) * value(b_after));
}

HalfInteger conjunction_value(const CounterfactualRecord& r) noexcept {
    const HalfInteger correction = HalfInteger::from_twice(value(r.b_alone) - value(r.b_after));
    return sequential_conjunction_value(r.a, r.b_after) + correction;
}

HalfInteger xor_value(const CounterfactualRecord& r) noexcept {
    return as_value(r.a) + as_value(r.b_alone) - 2 * conjunction_value(r);
}

HalfInteger sequential_xor_value(const CounterfactualRecord& r) noexcept {
    return sequential_conjunction_value(r.a, complement(r.b_after)) +
           sequential_conjunction_value(complement(r.a), r.b_after);
}

HalfInteger or_value(const CounterfactualRecord& r) noexcept {
    return as_value(r.a) + as_value(r.b_alone) - conjunction_value(r);
}

std::string_view name(Connective c) noexcept {
    switch (c) {
        case Connective::conjunction: return "conjunction";
        case Connective::xor_: return "xor";
        case Connective::inclusive_or: return "inclusive_or";
    }
    return "unknown";
}

HalfInteger evaluate(Connective c, const CounterfactualRecord& r) noexcept {
    switch (c) {
        case Connective::conjunction: return conjunction_value(r);
        case Connective::xor_: return xor_value(r);
        case Connective::inclusive_or: return or_value(r);
    }
    return {};
}

TruthTable truth_table(Connective c) {
    TruthTable table{};
    const auto records = all_records();
    for (std::size_t i = 0; i < records.size(); ++i) table[i] = {records[i], evaluate(c, records[i])};
    return table;
}

const std::array<HalfInteger, 8>& golden_conjunction_table() noexcept {
    using H = HalfInteger;
    // (a, b_alone, b_after) = 000 001 010 011 100 101 110 111
    static const std::array<HalfInteger, 8> table{
        H(0), H::from_twice(-1), H::from_twice(1), H(0),
        H(0), H::from_twice(1), H::from_twice(1), H(1)};
    return table;
}

const std::array<HalfInteger, 8>& golden_disjunction_table() noexcept {
    using H = HalfInteger;
    static const std::array<HalfInteger, 8> table{
        H(0), H::from_twice(1), H::from_twice(1), H(1),
        H(1), H::from_twice(1), H::from_twice(3), H(1)};
    return table;
}

std::string to_csv(const TruthTable& table) {
    std::ostringstream out;
    out << "a,b_alone,b_after,value\n";
    for (const auto& row : table) {
        out << value(row.record.a) << ',' << value(row.record.b_alone) << ','
            << value(row.record.b_after) << ',' << row.value.fraction() << '\n';
    }
    return out.str();
}

std::string to_text(Connective c, const TruthTable& table) {
    constexpr std::size_t cell = 9;
    std::ostringstream out;
    switch (c) {
        case Connective::conjunction: out << "Conjunction A ∧ B\n"; break;
        case Connective::xor_: out << "Exclusive disjunction A ⊕ B (derived)\n"; break;
        case Connective::inclusive_or: out << "Inclusive disjunction A ∨ B\n"; break;
    }
    out << std::string(7, ' ') << pad("B = 0", 2 * cell) << pad("B = 1", 2 * cell) << '\n';
    out << std::string(7, ' ');
    for (int b = 0; b < 2; ++b)
        for (int ba = 0; ba < 2; ++ba) out << pad("B_A = " + std::to_string(ba), cell);
    out << '\n';
    for (int a = 0; a < 2; ++a) {
        out << "A = " << a << "  ";
        for (int j = 0; j < 4; ++j) out << pad(table[static_cast<std::size_t>(4 * a + j)].value.str(), cell);
        out << '\n';
    }
    return out.str();
}

bool IdentityReport::all_passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck& c) { return c.passed(); });
}

namespace {

void single_order_checks(const std::string& order, const CounterfactualRecord& r,
                         std::vector<IdentityCheck>& out) {
    const HalfInteger a = as_value(r.a);
    const HalfInteger b = as_value(r.b_alone);
    const HalfInteger conj = conjunction_value(r);

    out.push_back({order + ": xor + 2 conj = A + B", xor_value(r) + 2 * conj, a + b});
    out.push_back({order + ": xor from sequential questions", xor_value(r), sequential_xor_value(r)});
    out.push_back({order + ": or = A + B - conj", or_value(r), a + b - conj});
    out.push_back({order + ": or = xor + conj", or_value(r), xor_value(r) + conj});

    const CounterfactualRecord not_b{r.a, complement(r.b_alone), complement(r.b_after)};
    out.push_back({order + ": conj(A,B) + conj(A,not B) = A", conj + conjunction_value(not_b), a});

    // Nonselective A and nonselective not-A are the same operation, so the
    // not-A record keeps b_after.
    const CounterfactualRecord not_a{complement(r.a), r.b_alone, r.b_after};
    out.push_back({order + ": conj(A,B) + conj(not A,B) = B", conj + conjunction_value(not_a), b});
}

}  // namespace

IdentityReport identity_suite(const CounterfactualRecord& r_ab, const CounterfactualRecord& r_ba) {
    IdentityReport report;
    report.consistent = r_ba.a == r_ab.b_alone && r_ba.b_alone == r_ab.a;

    single_order_checks("AB", r_ab, report.checks);
    single_order_checks("BA", r_ba, report.checks);

    const CounterfactualRecord ab_world{r_ab.a, r_ba.a, r_ab.b_after};
    const CounterfactualRecord ba_world{r_ba.a, r_ab.a, r_ba.b_after};
    report.checks.push_back({"order tautology: AxB - BxA = 2 (B^A - A^B)",
                             xor_value(r_ab) - xor_value(r_ba),
                             2 * (conjunction_value(ba_world) - conjunction_value(ab_world))});
    return report;
}

}  // namespace qlogic::logic
