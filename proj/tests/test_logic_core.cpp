#include "qlogic/logic_core.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <sstream>

using namespace qlogic::logic;

namespace {

HalfInteger half(int twice) { return HalfInteger::from_twice(twice); }

}  // namespace

TEST_CASE("half-integer arithmetic is exact", "[logic_core]") {
    CHECK(half(1) + half(1) == HalfInteger(1));
    CHECK(half(-1).fraction() == "-1/2");
    CHECK(HalfInteger(1).fraction() == "1/1");
    CHECK(HalfInteger(0).fraction() == "0/1");
    CHECK(half(3).str() == "3/2");
    CHECK(2 * half(3) == HalfInteger(3));
    CHECK(half(-1) < HalfInteger(0));
    CHECK_FALSE(half(1).is_integer());
}

TEST_CASE("records enumerate in lexicographic order", "[logic_core]") {
    const auto recs = all_records();
    for (int i = 0; i < 8; ++i) {
        CHECK(value(recs[i].a) == (i >> 2 & 1));
        CHECK(value(recs[i].b_alone) == (i >> 1 & 1));
        CHECK(value(recs[i].b_after) == (i & 1));
    }
}

TEST_CASE("conjunction and disjunction match the golden value table", "[logic_core][golden]") {
    // Rows (a, b_alone, b_after) = 000 .. 111, doubled values.
    constexpr std::array<int, 8> conj2{0, -1, 1, 0, 0, 1, 1, 2};
    constexpr std::array<int, 8> disj2{0, 1, 1, 2, 2, 1, 3, 2};
    const auto conj = truth_table(Connective::conjunction);
    const auto disj = truth_table(Connective::inclusive_or);
    for (std::size_t i = 0; i < 8; ++i) {
        INFO("row " << i);
        CHECK(conj[i].value == half(conj2[i]));
        CHECK(disj[i].value == half(disj2[i]));
        CHECK(golden_conjunction_table()[i] == half(conj2[i]));
        CHECK(golden_disjunction_table()[i] == half(disj2[i]));
    }
}

TEST_CASE("the only negative value is the -1/2 conjunction cell", "[logic_core]") {
    int negatives = 0;
    for (const auto& r : all_records()) {
        if (conjunction_value(r) < HalfInteger(0)) {
            ++negatives;
            CHECK(r == make_record(0, 0, 1));
            CHECK(conjunction_value(r) == half(-1));
        }
    }
    CHECK(negatives == 1);
}

TEST_CASE("xor is two-valued and does not depend on b_alone", "[logic_core]") {
    for (const auto& r : all_records()) {
        const HalfInteger x = xor_value(r);
        CHECK((x == HalfInteger(0) || x == HalfInteger(1)));
        CHECK(x == sequential_xor_value(r));
        CHECK(x == HalfInteger(value(r.a) ^ value(r.b_after)));
    }
}

TEST_CASE("connectives reduce to Boolean logic when B is undisturbed", "[logic_core]") {
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const auto r = make_record(a, b, b);
            CHECK(conjunction_value(r) == HalfInteger(a & b));
            CHECK(or_value(r) == HalfInteger(a | b));
            CHECK(xor_value(r) == HalfInteger(a ^ b));
            CHECK(sequential_conjunction_value(r.a, r.b_after) == HalfInteger(a & b));
        }
    }
}

TEST_CASE("identity suite passes on every ordered record pair", "[logic_core][property]") {
    int pairs = 0;
    int consistent = 0;
    std::set<std::string> names;
    for (const auto& r_ab : all_records()) {
        for (const auto& r_ba : all_records()) {
            const auto rep = identity_suite(r_ab, r_ba);
            for (const auto& c : rep.checks) {
                INFO(c.name << ": " << c.lhs.str() << " vs " << c.rhs.str());
                CHECK(c.passed());
                names.insert(c.name);
            }
            ++pairs;
            consistent += rep.consistent;
        }
    }
    CHECK(pairs == 64);
    CHECK(consistent == 16);
    CHECK(names.size() >= 6);
}

TEST_CASE("identity checks detect a planted violation", "[logic_core]") {
    IdentityCheck c{"planted", half(1), HalfInteger(0)};
    CHECK_FALSE(c.passed());
    IdentityReport rep;
    rep.checks.push_back(c);
    CHECK_FALSE(rep.all_passed());
}

TEST_CASE("csv rendering has a header and eight rows", "[logic_core][io]") {
    for (auto k : {Connective::conjunction, Connective::xor_, Connective::inclusive_or}) {
        std::istringstream in(to_csv(truth_table(k)));
        std::string line;
        std::getline(in, line);
        CHECK(line == "a,b_alone,b_after,value");
        int rows = 0;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            ++rows;
            CHECK(std::count(line.begin(), line.end(), ',') == 3);
        }
        CHECK(rows == 8);
    }
    const std::string csv = to_csv(truth_table(Connective::conjunction));
    CHECK(csv.find("0,0,1,-1/2") != std::string::npos);
}

TEST_CASE("text rendering groups columns by B and B_A", "[logic_core][io]") {
    const std::string t = to_text(Connective::inclusive_or, truth_table(Connective::inclusive_or));
    CHECK(t.find("B = 0") != std::string::npos);
    CHECK(t.find("B_A = 1") != std::string::npos);
    CHECK(t.find("3/2") != std::string::npos);
    CHECK(name(Connective::xor_).size() > 0);
}
