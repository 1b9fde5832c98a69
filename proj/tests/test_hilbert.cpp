#include "qlogic/hilbert.hpp"
#include "qlogic/hilbert_io.hpp"
#include "qlogic/seeding.hpp"

#include "oracles.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qlogic::hilbert;
using Catch::Matchers::WithinAbs;

namespace {

ComplexVector vec(Complex x, Complex y) {
    ComplexVector v(2);
    v << x, y;
    return v;
}

struct Fixed {
    DensityState rho = DensityState::pure(vec(1.0, -3.0));
    Projector a = Projector::rank_one(vec(1.0, 0.0));
    Projector b = Projector::rank_one(vec(1.0, 1.0));
};

// Re Tr(ρAB) by explicit index loops.
double loop_joint(const ComplexMatrix& rho, const ComplexMatrix& a, const ComplexMatrix& b) {
    Complex t = 0.0;
    const Index d = rho.rows();
    for (Index i = 0; i < d; ++i)
        for (Index j = 0; j < d; ++j)
            for (Index k = 0; k < d; ++k) t += rho(i, j) * a(j, k) * b(k, i);
    return t.real();
}

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const HilbertError& e) {
        return e.kind();
    }
    FAIL("no HilbertError thrown");
    return ErrorKind::identity_violation;
}

}  // namespace

TEST_CASE("fixed example matches the dense-matrix oracle", "[hilbert][golden]") {
    const Fixed f;
    const oracle::SqrtTen o;
    CHECK_THAT(born_probability(f.rho, f.a), WithinAbs(o.born_a(), 1e-15));
    CHECK_THAT(born_probability(f.rho, f.b), WithinAbs(o.born_b(), 1e-15));
    CHECK_THAT(logical_joint(f.rho, f.a, f.b), WithinAbs(o.joint(), 1e-15));
    CHECK_THAT(weak_value(f.rho, f.a, f.b).real(), WithinAbs(o.weak_value().real(), 1e-15));

    CHECK_THAT(o.born_a(), WithinAbs(0.1, 1e-15));
    CHECK_THAT(o.born_b(), WithinAbs(0.2, 1e-15));
    CHECK_THAT(o.joint(), WithinAbs(-0.1, 1e-15));
    CHECK_THAT(o.weak_value().real(), WithinAbs(-0.5, 1e-15));
}

TEST_CASE("fixed example intermediate quantities", "[hilbert][golden]") {
    const Fixed f;
    CHECK_THAT(nonselective_probability(f.rho, f.a, f.b), WithinAbs(0.5, 1e-12));
    CHECK_THAT(sequential_probability(f.rho, f.a, f.b), WithinAbs(0.05, 1e-12));
    CHECK_THAT(sequential_probability(f.rho, f.b, f.a), WithinAbs(0.1, 1e-12));
    for (auto m : {JointMethod::operational, JointMethod::jordan})
        CHECK_THAT(logical_joint(f.rho, f.a, f.b, m), WithinAbs(-0.1, 1e-12));
    CHECK_THAT(logical_joint(f.rho, f.b, f.a), WithinAbs(-0.1, 1e-12));
    CHECK_THAT(kirkwood_dirac_real(f.rho, f.a, f.b), WithinAbs(-0.1, 1e-12));

    const auto q = quasi_prob_table(f.rho, f.a, f.b);
    CHECK_THAT(q.at(1, 1), WithinAbs(-0.1, 1e-12));
    CHECK_THAT(q.at(1, 0), WithinAbs(0.2, 1e-12));
    CHECK_THAT(q.at(0, 1), WithinAbs(0.3, 1e-12));
    CHECK_THAT(q.at(0, 0), WithinAbs(0.6, 1e-12));
    CHECK_THAT(q.sum(), WithinAbs(1.0, 1e-12));

    for (auto m : {XorMethod::operational, XorMethod::mapped_operator})
        CHECK_THAT(xor_expectation(f.rho, f.a, f.b, m), WithinAbs(0.5, 1e-12));
    const ComplexMatrix x = xor_operator(f.a, f.b);
    CHECK(operator_norm(x - 0.5 * ComplexMatrix::Identity(2, 2)) < 1e-12);

    const auto w = negativity_search(f.rho, f.a, f.b);
    CHECK_THAT(w.min_cell, WithinAbs(-0.1, 1e-12));
    CHECK(w.a == 1);
    CHECK(w.b == 1);
    CHECK(clamp_for_report(-0.1) == 0.0);
    CHECK(clamp_for_report(1.2) == 1.0);
}

TEST_CASE("Lüders update branches", "[hilbert]") {
    const Fixed f;
    const auto yes = lueders_update(f.rho, f.a, MeasurementMode::selective_yes);
    CHECK_THAT(yes.probability, WithinAbs(0.1, 1e-12));
    CHECK_THAT(born_probability(yes.post_state, f.a), WithinAbs(1.0, 1e-12));
    const auto no = lueders_update(f.rho, f.a, MeasurementMode::selective_no);
    CHECK_THAT(no.probability, WithinAbs(0.9, 1e-12));
    const auto mix = lueders_update(f.rho, f.a, MeasurementMode::nonselective);
    CHECK_THAT(mix.post_state.matrix().trace().real(), WithinAbs(1.0, 1e-12));
    CHECK_THAT(born_probability(mix.post_state, f.b), WithinAbs(0.5, 1e-12));

    const auto zero_state = DensityState::pure(vec(0.0, 1.0));
    CHECK(kind_of([&] { lueders_update(zero_state, f.a, MeasurementMode::selective_yes); }) ==
          ErrorKind::zero_probability_branch);
}

TEST_CASE("validation rejects malformed operators", "[hilbert][errors]") {
    ComplexMatrix m(2, 2);
    m << 1.0, 1.0, 0.0, 0.0;
    CHECK(kind_of([&] { Projector::validate(m); }) == ErrorKind::not_hermitian);
    m << 0.5, 0.0, 0.0, 0.0;
    CHECK(kind_of([&] { Projector::validate(m); }) == ErrorKind::not_idempotent);
    CHECK(kind_of([&] { Projector::validate(ComplexMatrix::Identity(2, 3)); }) == ErrorKind::not_square);
    CHECK(kind_of([&] { Projector::validate(ComplexMatrix::Identity(1, 1)); }) == ErrorKind::bad_dimension);
    CHECK(kind_of([&] { Projector::validate(ComplexMatrix::Identity(65, 65)); }) == ErrorKind::bad_dimension);

    m << 1.5, 0.0, 0.0, -0.5;
    CHECK(kind_of([&] { DensityState::validate(m); }) == ErrorKind::not_positive);
    m << 0.6, 0.0, 0.0, 0.6;
    CHECK(kind_of([&] { DensityState::validate(m); }) == ErrorKind::bad_trace);

    const Fixed f;
    const auto big = Projector::identity(3);
    CHECK(kind_of([&] { born_probability(f.rho, big); }) == ErrorKind::dimension_mismatch);
    CHECK(kind_of([&] { sample_projector(3, 3, 1); }) == ErrorKind::bad_rank);
    CHECK(kind_of([&] { sample_projector(3, 0, 1); }) == ErrorKind::bad_rank);
    CHECK(kind_of([&] { weak_value(f.rho, f.a, Projector::zero(2)); }) == ErrorKind::zero_post_selection);
}

TEST_CASE("validation accepts within tolerance and never repairs", "[hilbert]") {
    ComplexMatrix m(2, 2);
    m << 1.0 + 1e-13, 0.0, 0.0, 0.0;
    const auto p = Projector::validate(m);
    CHECK(p.matrix()(0, 0).real() == 1.0 + 1e-13);
    const auto c = complement_projector(p);
    CHECK(operator_norm(c.matrix() + p.matrix() - ComplexMatrix::Identity(2, 2)) == 0.0);
}

TEST_CASE("Kirkwood-Dirac distribution", "[hilbert]") {
    const Fixed f;
    const std::vector<ComplexVector> za{vec(1.0, 0.0), vec(0.0, 1.0)};
    const double s = 1.0 / std::sqrt(2.0);
    const std::vector<ComplexVector> pm{vec(s, s), vec(s, -s)};
    const ComplexMatrix q = kd_distribution(f.rho, za, pm);
    CHECK_THAT(q(0, 0).real(), WithinAbs(-0.1, 1e-12));
    CHECK_THAT(q.sum().real(), WithinAbs(1.0, 1e-12));

    const std::vector<ComplexVector> short_basis{vec(1.0, 0.0)};
    CHECK(kind_of([&] { kd_distribution(f.rho, short_basis, pm); }) == ErrorKind::incomplete_basis);
    const std::vector<ComplexVector> skew{vec(1.0, 0.0), vec(s, s)};
    CHECK(kind_of([&] { kd_distribution(f.rho, skew, pm); }) == ErrorKind::not_orthonormal);

    // Marginals of a random distribution reproduce both Born distributions.
    for (Index d : {2, 3, 5}) {
        auto rng = qlogic::make_rng(static_cast<std::uint64_t>(d));
        const auto rho = sample_state(d, Purity::mixed, 9);
        const auto ba = basis_from_columns(sample_unitary(d, rng));
        const auto bb = basis_from_columns(sample_unitary(d, rng));
        const ComplexMatrix k = kd_distribution(rho, ba, bb);
        for (Index i = 0; i < d; ++i) {
            const auto pa = Projector::rank_one(ba[static_cast<std::size_t>(i)]);
            const auto pb = Projector::rank_one(bb[static_cast<std::size_t>(i)]);
            CHECK(std::abs(k.row(i).sum() - born_probability(rho, pa)) < 1e-12);
            CHECK(std::abs(k.col(i).sum() - born_probability(rho, pb)) < 1e-12);
        }
    }
}

TEST_CASE("joint probability routes agree with an index-loop oracle", "[hilbert][property]") {
    for (Index d = 2; d <= 8; ++d) {
        for (std::uint64_t t = 0; t < 50; ++t) {
            const auto x = sample_triple(d, t % 2 ? Purity::mixed : Purity::pure, qlogic::derive_seed(7, t, d));
            const double ref = loop_joint(x.rho.matrix(), x.a.matrix(), x.b.matrix());
            CHECK(std::abs(logical_joint(x.rho, x.a, x.b, JointMethod::operational) - ref) <= 1e-10);
            CHECK(std::abs(logical_joint(x.rho, x.a, x.b, JointMethod::jordan) - ref) <= 1e-10);
            CHECK(std::abs(logical_joint(x.rho, x.b, x.a) - ref) <= 1e-10);
            CHECK(xor_operator_residual(x.a, x.b) <= 1e-10);
            const auto q = quasi_prob_table(x.rho, x.a, x.b);
            CHECK(std::abs(q.sum() - 1.0) <= 1e-10);
        }
    }
}

TEST_CASE("commuting triples have non-negative tables", "[hilbert][property]") {
    for (std::uint64_t t = 0; t < 300; ++t) {
        const auto x = sample_commuting_triple(2 + static_cast<Index>(t % 7), t);
        CHECK(operator_norm(x.a.matrix() * x.b.matrix() - x.b.matrix() * x.a.matrix()) < 1e-10);
        CHECK(negativity_search(x.rho, x.a, x.b).min_cell >= -1e-12);
    }
}

TEST_CASE("samplers are deterministic and valid", "[hilbert]") {
    const auto x1 = sample_triple(4, Purity::mixed, 123);
    const auto x2 = sample_triple(4, Purity::mixed, 123);
    CHECK(x1.rho.matrix() == x2.rho.matrix());
    CHECK(x1.a.matrix() == x2.a.matrix());
    const auto y = sample_triple(4, Purity::mixed, 124);
    CHECK(x1.rho.matrix() != y.rho.matrix());

    auto rng = qlogic::make_rng(5);
    const ComplexMatrix u = sample_unitary(6, rng);
    CHECK(operator_norm(u.adjoint() * u - ComplexMatrix::Identity(6, 6)) < 1e-12);
    const auto p = sample_projector(6, 2, 3);
    CHECK_THAT(p.matrix().trace().real(), WithinAbs(2.0, 1e-12));
    const auto pure = sample_state(3, Purity::pure, 1);
    CHECK_THAT((pure.matrix() * pure.matrix()).trace().real(), WithinAbs(1.0, 1e-12));
}

TEST_CASE("random search at d=2 finds a negative cell", "[hilbert]") {
    const auto r = random_negativity_search(2, 10000, 42);
    CHECK(r.draws == 10000);
    CHECK(r.best.min_cell <= -0.09);
    CHECK(r.best.min_cell >= -0.125 - 1e-9);
    const auto again = random_negativity_search(2, 10000, 42);
    CHECK(again.best.min_cell == r.best.min_cell);
    CHECK(again.best_draw == r.best_draw);
}

TEST_CASE("matrix json round trip", "[hilbert][io]") {
    auto rng = qlogic::make_rng(11);
    const ComplexMatrix m = sample_hermitian(3, rng);
    const auto back = matrix_from_json(matrix_to_json(m));
    CHECK(back == m);
    CHECK_THROWS_AS(matrix_from_json(nlohmann::json{{"dim", 2}}), std::invalid_argument);
    CHECK_THROWS_AS(matrix_from_json(nlohmann::json{{"dim", 2}, {"re", {{1, 0}}}, {"im", {{0, 0}}}}),
                    std::invalid_argument);
}

TEST_CASE("quasi-probability csv round trip", "[hilbert][io]") {
    const Fixed f;
    const auto q = quasi_prob_table(f.rho, f.a, f.b);
    const std::string csv = quasi_prob_to_csv(q);
    CHECK(csv.rfind("a,b,value\n1,1,", 0) == 0);
    const auto back = quasi_prob_from_csv(csv);
    for (std::size_t i = 0; i < 4; ++i) CHECK(back.cells[i] == q.cells[i]);
}
