#include "qlogic/jordan.hpp"

#include "qlogic/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace qlogic::jordan {

using hilbert::operator_norm;

namespace {

ComplexMatrix circle(const ComplexMatrix& x, const ComplexMatrix& y) { return (x * y + y * x) / 2.0; }

void require_same_dim(Index x, Index y) {
    if (x != y) {
        throw hilbert::HilbertError(hilbert::ErrorKind::dimension_mismatch,
                                    "jordan: dimension mismatch (" + std::to_string(x) + " vs " +
                                        std::to_string(y) + ")");
    }
}

struct Extremes {
    double max = 0.0;
    double min = std::numeric_limits<double>::infinity();

    void add(double r) {
        max = std::max(max, r);
        min = std::min(min, r);
    }
};

SweepReport make_report(std::string check, Index dim, std::uint64_t trials, std::uint64_t seed,
                        const Extremes& e, bool ok) {
    SweepReport r;
    r.check = std::move(check);
    r.dim = dim;
    r.trials = trials;
    r.seed = seed;
    r.max_residual = e.max;
    r.min_residual = trials > 0 ? e.min : 0.0;
    r.verdict = ok ? "pass" : "fail";
    return r;
}

hilbert::Triple projector_pair(Index dim, std::uint64_t seed, std::uint64_t trial) {
    return hilbert::sample_triple(dim, hilbert::Purity::pure, derive_seed(seed, trial, 11));
}

}  // namespace

JordanElement JordanElement::validate(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) {
        throw hilbert::HilbertError(hilbert::ErrorKind::not_square, "jordan element must be square");
    }
    const double herm = hilbert::hermiticity_residual(m);
    if (herm > tol) {
        throw hilbert::HilbertError(hilbert::ErrorKind::not_hermitian, "jordan element is not Hermitian", herm);
    }
    return JordanElement(m);
}

JordanElement JordanElement::from_projector(const Projector& p) { return JordanElement(p.matrix()); }

JordanElement JordanElement::zero(Index dim) { return JordanElement(ComplexMatrix::Zero(dim, dim)); }

JordanElement jordan_product(const JordanElement& x, const JordanElement& y) {
    require_same_dim(x.dim(), y.dim());
    return JordanElement(circle(x.matrix(), y.matrix()));
}

JordanElement mapped_conjunction(const Projector& a, const Projector& b) {
    return jordan_product(JordanElement::from_projector(a), JordanElement::from_projector(b));
}

double marginality_residual(const Projector& a, const Projector& b) {
    require_same_dim(a.dim(), b.dim());
    const ComplexMatrix ab = mapped_conjunction(a, b).matrix();
    const ComplexMatrix a_nb = mapped_conjunction(a, hilbert::complement_projector(b)).matrix();
    const ComplexMatrix na_b = mapped_conjunction(hilbert::complement_projector(a), b).matrix();
    return std::max(operator_norm(ab + a_nb - a.matrix()), operator_norm(ab + na_b - b.matrix()));
}

double power_associativity_residual(const JordanElement& x) {
    const ComplexMatrix& m = x.matrix();
    const ComplexMatrix sq = circle(m, m);
    return operator_norm(circle(sq, sq) - circle(m, circle(m, sq)));
}

IdempotencyReport idempotency_transfer_check(const ComplexMatrix& a, double tol) {
    IdempotencyReport r;
    r.cubic_residual = operator_norm(a * a * a - a);
    r.square_residual = operator_norm(circle(a, a) - a);
    r.passed = r.cubic_residual <= tol && r.square_residual <= tol;
    return r;
}

IdempotencyReport idempotency_transfer_check(const Projector& a, double tol) {
    return idempotency_transfer_check(a.matrix(), tol);
}

const char* to_string(Verdict v) noexcept { return v == Verdict::consistent ? "consistent" : "violated"; }

RealityProbe formal_reality_probe(const JordanElement& x, const JordanElement& y, double tol) {
    require_same_dim(x.dim(), y.dim());
    const ComplexMatrix& mx = x.matrix();
    const ComplexMatrix& my = y.matrix();
    RealityProbe p;
    p.residual = operator_norm(circle(mx, mx) + circle(my, my));
    const double nx = operator_norm(mx);
    const double ny = operator_norm(my);
    p.scale = std::max(nx * nx, ny * ny);
    p.verdict = (p.residual <= tol && std::max(nx, ny) > tol) ? Verdict::violated : Verdict::consistent;
    return p;
}

XorSymmetryReport xor_operator_symmetry_check(const Projector& a, const Projector& b, double tol) {
    require_same_dim(a.dim(), b.dim());
    const ComplexMatrix ab = hilbert::xor_operator(a, b);
    const ComplexMatrix ba = hilbert::xor_operator(b, a);
    const ComplexMatrix& pa = a.matrix();
    const ComplexMatrix& pb = b.matrix();
    const ComplexMatrix expanded = pa + pb - pa * pb - pb * pa;
    XorSymmetryReport r;
    r.order_residual = operator_norm(ab - ba);
    r.expansion_residual = std::max(operator_norm(ab - expanded), operator_norm(ba - expanded));
    r.passed = r.order_residual <= tol && r.expansion_residual <= tol;
    return r;
}

nlohmann::json to_json(const SweepReport& r) {
    nlohmann::json j{{"check", r.check},
                     {"dim", r.dim},
                     {"trials", r.trials},
                     {"seed", r.seed},
                     {"max_residual", r.max_residual},
                     {"min_residual", r.min_residual},
                     {"verdict", r.verdict}};
    if (r.check == "formal_reality") j["min_relative_residual"] = r.min_relative_residual;
    return j;
}

SweepReport formal_reality_sweep(Index dim, std::uint64_t trials, std::uint64_t seed, double tol) {
    Extremes e;
    double min_relative = std::numeric_limits<double>::infinity();
    bool ok = true;
    for (std::uint64_t t = 0; t < trials; ++t) {
        auto rng = make_rng(derive_seed(seed, t, 13));
        const auto x = JordanElement::validate(hilbert::sample_hermitian(dim, rng));
        const auto y = JordanElement::validate(hilbert::sample_hermitian(dim, rng));
        const RealityProbe p = formal_reality_probe(x, y, tol);
        e.add(p.residual);
        min_relative = std::min(min_relative, p.residual / p.scale);
        if (p.verdict == Verdict::violated || !(p.residual > 0.01 * p.scale)) ok = false;
    }
    SweepReport r = make_report("formal_reality", dim, trials, seed, e, ok);
    r.verdict = ok ? "consistent" : "violated";
    r.min_relative_residual = trials > 0 ? min_relative : 0.0;
    return r;
}

SweepReport xor_symmetry_sweep(Index dim, std::uint64_t trials, std::uint64_t seed, double tol) {
    Extremes e;
    bool ok = true;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto pair = projector_pair(dim, seed, t);
        const XorSymmetryReport x = xor_operator_symmetry_check(pair.a, pair.b, tol);
        e.add(std::max(x.order_residual, x.expansion_residual));
        ok = ok && x.passed;
    }
    return make_report("xor_symmetry", dim, trials, seed, e, ok);
}

SweepReport marginality_sweep(Index dim, std::uint64_t trials, std::uint64_t seed, double tol) {
    Extremes e;
    bool ok = true;
    for (std::uint64_t t = 0; t < trials; ++t) {
        const auto pair = projector_pair(dim, seed, t);
        const double r = marginality_residual(pair.a, pair.b);
        e.add(r);
        ok = ok && r <= tol;
    }
    return make_report("operator_marginality", dim, trials, seed, e, ok);
}

SweepReport commutativity_sweep(Index dim, std::uint64_t trials, std::uint64_t seed, double tol) {
    Extremes e;
    bool ok = true;
    for (std::uint64_t t = 0; t < trials; ++t) {
        auto rng = make_rng(derive_seed(seed, t, 17));
        const auto x = JordanElement::validate(hilbert::sample_hermitian(dim, rng));
        const auto y = JordanElement::validate(hilbert::sample_hermitian(dim, rng));
        const ComplexMatrix xy = jordan_product(x, y).matrix();
        const ComplexMatrix yx = jordan_product(y, x).matrix();
        const double r = std::max(operator_norm(xy - yx), hilbert::hermiticity_residual(xy));
        e.add(r);
        ok = ok && r <= tol;
    }
    return make_report("jordan_commutativity", dim, trials, seed, e, ok);
}

SweepReport power_associativity_sweep(Index dim, std::uint64_t trials, std::uint64_t seed, double tol) {
    Extremes e;
    bool ok = true;
    for (std::uint64_t t = 0; t < trials; ++t) {
        auto rng = make_rng(derive_seed(seed, t, 19));
        const auto x = JordanElement::validate(hilbert::sample_hermitian(dim, rng));
        // Relative to ‖X‖⁴ so the check is scale free.
        const double n = operator_norm(x.matrix());
        const double r = power_associativity_residual(x) / (n * n * n * n);
        e.add(r);
        ok = ok && r <= tol;
    }
    return make_report("power_associativity", dim, trials, seed, e, ok);
}

}  // namespace qlogic::jordan
