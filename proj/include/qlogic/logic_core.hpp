#pragma once

// Value-level calculus of ordered yes-no questions.
//
// A run of the two-question experiment is described by a counterfactual
// triple: the answer to A asked first, the answer to B asked alone, and the
// answer to B asked after A with A's answer discarded (B_A). The connectives
// below are functions of that triple. Values are half-integers, so they are
// held exactly as twice their value.

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qlogic::logic {

enum class Answer : std::uint8_t { no = 0, yes = 1 };

constexpr int value(Answer a) noexcept { return static_cast<int>(a); }
constexpr Answer answer(bool yes) noexcept { return yes ? Answer::yes : Answer::no; }

/// Exact number with denominator 1 or 2.
class HalfInteger {
public:
    constexpr HalfInteger() = default;
    constexpr HalfInteger(int whole) noexcept : twice_(2 * whole) {}  // NOLINT: implicit by intent

    static constexpr HalfInteger from_twice(int twice) noexcept {
        HalfInteger h;
        h.twice_ = twice;
        return h;
    }

    constexpr int twice() const noexcept { return twice_; }
    constexpr bool is_integer() const noexcept { return twice_ % 2 == 0; }
    constexpr double to_double() const noexcept { return twice_ / 2.0; }

    /// "p/q" with q in {1, 2}, e.g. "-1/2", "3/2", "1/1", "0/1".
    std::string fraction() const;
    /// Shortest form: "-1/2", "3/2", "1", "0".
    std::string str() const;

    friend constexpr HalfInteger operator+(HalfInteger x, HalfInteger y) noexcept {
        return from_twice(x.twice_ + y.twice_);
    }
    friend constexpr HalfInteger operator-(HalfInteger x, HalfInteger y) noexcept {
        return from_twice(x.twice_ - y.twice_);
    }
    friend constexpr HalfInteger operator-(HalfInteger x) noexcept { return from_twice(-x.twice_); }
    friend constexpr HalfInteger operator*(int k, HalfInteger x) noexcept {
        return from_twice(k * x.twice_);
    }
    friend constexpr bool operator==(HalfInteger, HalfInteger) noexcept = default;
    friend constexpr auto operator<=>(HalfInteger, HalfInteger) noexcept = default;

private:
    int twice_ = 0;
};

struct CounterfactualRecord {
    Answer a = Answer::no;        // A, asked first
    Answer b_alone = Answer::no;  // B without a preceding A
    Answer b_after = Answer::no;  // B after a nonselective A

    friend constexpr bool operator==(const CounterfactualRecord&, const CounterfactualRecord&) = default;
};

constexpr CounterfactualRecord make_record(int a, int b_alone, int b_after) noexcept {
    return {answer(a != 0), answer(b_alone != 0), answer(b_after != 0)};
}

/// All 8 records, lexicographic in (a, b_alone, b_after).
std::array<CounterfactualRecord, 8> all_records();

Answer complement(Answer a) noexcept;

/// Value of A ⊓ B: the first answer times the answer obtained afterwards.
HalfInteger sequential_conjunction_value(Answer a, Answer b_after) noexcept;

/// A ∧ B = A ⊓ B + (B − B_A)/2.
HalfInteger conjunction_value(const CounterfactualRecord& r) noexcept;

/// A ⊕ B = A + B − 2 (A ∧ B).
HalfInteger xor_value(const CounterfactualRecord& r) noexcept;

/// A ⊕ B built from sequential questions: A ⊓ B̄ + Ā ⊓ B.
HalfInteger sequential_xor_value(const CounterfactualRecord& r) noexcept;

/// A ∨ B = A + B − A ∧ B.
HalfInteger or_value(const CounterfactualRecord& r) noexcept;

enum class Connective { conjunction, xor_, inclusive_or };

std::string_view name(Connective c) noexcept;
HalfInteger evaluate(Connective c, const CounterfactualRecord& r) noexcept;

struct TruthRow {
    CounterfactualRecord record;
    HalfInteger value;
};

using TruthTable = std::array<TruthRow, 8>;

TruthTable truth_table(Connective c);

/// Golden conjunction and inclusive-disjunction value tables,
/// hard-coded in all_records() order.
const std::array<HalfInteger, 8>& golden_conjunction_table() noexcept;
const std::array<HalfInteger, 8>& golden_disjunction_table() noexcept;

/// CSV with header `a,b_alone,b_after,value`, value as "p/q".
std::string to_csv(const TruthTable& table);

/// Plain-text layout: rows A = 0/1, columns grouped by B then B_A.
std::string to_text(Connective c, const TruthTable& table);

struct IdentityCheck {
    std::string name;
    HalfInteger lhs;
    HalfInteger rhs;
    bool passed() const noexcept { return lhs == rhs; }
};

struct IdentityReport {
    /// True when the records agree on the redundant single-question answers
    /// (r_ba.a == r_ab.b_alone and r_ba.b_alone == r_ab.a).
    bool consistent = false;
    std::vector<IdentityCheck> checks;

    bool all_passed() const noexcept;
};

/// Exact checks of the value-level identities for the pair of orders.
///
/// `r_ab` is a record of the A-then-B experiment, `r_ba` one of B-then-A with
/// the roles of A and B swapped. In the order-tautology check the single
/// questions are taken from the run in which each is asked first: A from
/// r_ab.a and B from r_ba.a.
IdentityReport identity_suite(const CounterfactualRecord& r_ab, const CounterfactualRecord& r_ba);

}  // namespace qlogic::logic
