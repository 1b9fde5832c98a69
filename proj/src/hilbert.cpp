#include "qlogic/hilbert.hpp"

#include "qlogic/seeding.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qlogic::hilbert {

namespace {

std::string residual_message(const char* what, double residual, double tol) {
    std::ostringstream s;
    s.precision(3);
    s << what << " (residual " << std::scientific << residual << " > tol " << tol << ")";
    return s.str();
}

void require_same_dim(Index x, Index y, const char* where) {
    if (x != y) {
        throw HilbertError(ErrorKind::dimension_mismatch,
                           std::string(where) + ": dimension mismatch (" + std::to_string(x) + " vs " +
                               std::to_string(y) + ")");
    }
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) { return (m + m.adjoint()) / 2.0; }

ComplexVector gaussian_vector(Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexVector v(dim);
    for (Index i = 0; i < dim; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        v(i) = Complex(re, im);
    }
    return v;
}

ComplexMatrix ginibre(Index dim, std::mt19937_64& rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix g(dim, dim);
    for (Index j = 0; j < dim; ++j) {
        for (Index i = 0; i < dim; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            g(i, j) = Complex(re, im);
        }
    }
    return g;
}

Projector projector_from_columns(const ComplexMatrix& columns) {
    return Projector::validate(hermitian_part(columns * columns.adjoint()), 1e-9);
}

Index uniform_rank(Index dim, std::mt19937_64& rng) {
    std::uniform_int_distribution<Index> pick(1, dim - 1);
    return pick(rng);
}

double trace_real(const ComplexMatrix& m) { return m.trace().real(); }

}  // namespace

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::not_square: return "NotSquare";
        case ErrorKind::bad_dimension: return "BadDimension";
        case ErrorKind::not_hermitian: return "NotHermitian";
        case ErrorKind::not_idempotent: return "NotIdempotent";
        case ErrorKind::not_positive: return "NotPositive";
        case ErrorKind::bad_trace: return "BadTrace";
        case ErrorKind::dimension_mismatch: return "DimensionMismatch";
        case ErrorKind::zero_probability_branch: return "ZeroProbabilityBranch";
        case ErrorKind::bad_rank: return "BadRank";
        case ErrorKind::not_orthonormal: return "NotOrthonormal";
        case ErrorKind::incomplete_basis: return "IncompleteBasis";
        case ErrorKind::zero_post_selection: return "ZeroPostSelection";
        case ErrorKind::identity_violation: return "IdentityViolation";
    }
    return "Unknown";
}

HilbertError::HilbertError(ErrorKind kind, const std::string& message, double residual)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), residual_(residual) {}

double operator_norm(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues()(0);
}

double hermiticity_residual(const ComplexMatrix& m) { return operator_norm(m - m.adjoint()); }

void check_dimension(const ComplexMatrix& m, Index max_dim) {
    if (m.rows() != m.cols()) {
        throw HilbertError(ErrorKind::not_square, "matrix is " + std::to_string(m.rows()) + "x" +
                                                      std::to_string(m.cols()));
    }
    if (m.rows() < 2 || m.rows() > max_dim) {
        throw HilbertError(ErrorKind::bad_dimension, "dimension " + std::to_string(m.rows()) +
                                                         " outside [2, " + std::to_string(max_dim) + "]");
    }
}

Projector Projector::validate(const ComplexMatrix& m, double tol, Index max_dim) {
    check_dimension(m, max_dim);
    const double herm = hermiticity_residual(m);
    if (herm > tol) throw HilbertError(ErrorKind::not_hermitian, residual_message("M != M^dagger", herm, tol), herm);
    const double idem = operator_norm(m * m - m);
    if (idem > tol) throw HilbertError(ErrorKind::not_idempotent, residual_message("M^2 != M", idem, tol), idem);
    return Projector(m);
}

Projector Projector::identity(Index dim) { return Projector(ComplexMatrix::Identity(dim, dim)); }

Projector Projector::zero(Index dim) { return Projector(ComplexMatrix::Zero(dim, dim)); }

Projector Projector::rank_one(const ComplexVector& v) {
    const ComplexVector u = v.normalized();
    return Projector(hermitian_part(u * u.adjoint()));
}

DensityState DensityState::validate(const ComplexMatrix& m, double tol, Index max_dim) {
    check_dimension(m, max_dim);
    const double herm = hermiticity_residual(m);
    if (herm > tol) throw HilbertError(ErrorKind::not_hermitian, residual_message("rho != rho^dagger", herm, tol), herm);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(hermitian_part(m), Eigen::EigenvaluesOnly);
    const double lowest = eig.eigenvalues().minCoeff();
    if (lowest < -tol) {
        throw HilbertError(ErrorKind::not_positive, residual_message("negative eigenvalue", -lowest, tol), -lowest);
    }
    const double trace_error = std::abs(m.trace() - Complex(1.0, 0.0));
    if (trace_error > tol) {
        throw HilbertError(ErrorKind::bad_trace, residual_message("Tr(rho) != 1", trace_error, tol), trace_error);
    }
    return DensityState(m);
}

DensityState DensityState::pure(const ComplexVector& psi) {
    const ComplexVector u = psi.normalized();
    return DensityState(hermitian_part(u * u.adjoint()));
}

Projector complement_projector(const Projector& p) {
    const Index d = p.dim();
    return Projector(ComplexMatrix::Identity(d, d) - p.matrix());
}

ComplexMatrix sample_unitary(Index dim, std::mt19937_64& rng) {
    const ComplexMatrix g = ginibre(dim, rng);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the column phases so that Q is Haar distributed.
    for (Index j = 0; j < dim; ++j) {
        const Complex rjj = r(j, j);
        const double mag = std::abs(rjj);
        if (mag > 0.0) q.col(j) *= rjj / mag;
    }
    return q;
}

ComplexMatrix sample_hermitian(Index dim, std::mt19937_64& rng) { return hermitian_part(ginibre(dim, rng)); }

DensityState sample_state(Index dim, Purity purity, std::uint64_t seed) {
    auto rng = make_rng(seed);
    if (purity == Purity::pure) return DensityState::pure(gaussian_vector(dim, rng));
    const ComplexMatrix g = ginibre(dim, rng);
    const ComplexMatrix w = hermitian_part(g * g.adjoint());
    return DensityState::validate(w / trace_real(w));
}

Projector sample_projector(Index dim, Index rank, std::uint64_t seed) {
    if (rank < 1 || rank >= dim) {
        throw HilbertError(ErrorKind::bad_rank, "rank " + std::to_string(rank) + " outside [1, " +
                                                    std::to_string(dim - 1) + "]");
    }
    auto rng = make_rng(seed);
    return projector_from_columns(sample_unitary(dim, rng).leftCols(rank));
}

Triple sample_triple(Index dim, Purity purity, std::uint64_t seed) {
    auto rng = make_rng(derive_seed(seed, 0, 1));
    const Index rank_a = uniform_rank(dim, rng);
    const Index rank_b = uniform_rank(dim, rng);
    return {sample_state(dim, purity, derive_seed(seed, 1, 1)),
            sample_projector(dim, rank_a, derive_seed(seed, 2, 1)),
            sample_projector(dim, rank_b, derive_seed(seed, 3, 1))};
}

Triple sample_commuting_triple(Index dim, std::uint64_t seed) {
    auto rng = make_rng(seed);
    const ComplexMatrix u = sample_unitary(dim, rng);

    std::exponential_distribution<double> weight(1.0);
    Eigen::VectorXd spectrum(dim);
    for (Index i = 0; i < dim; ++i) spectrum(i) = weight(rng);
    spectrum /= spectrum.sum();

    auto diagonal_projector = [&](Index rank) {
        std::vector<Index> order(static_cast<std::size_t>(dim));
        for (Index i = 0; i < dim; ++i) order[static_cast<std::size_t>(i)] = i;
        std::shuffle(order.begin(), order.end(), rng);
        ComplexMatrix columns(dim, rank);
        for (Index k = 0; k < rank; ++k) columns.col(k) = u.col(order[static_cast<std::size_t>(k)]);
        return projector_from_columns(columns);
    };

    const ComplexMatrix rho = hermitian_part(u * spectrum.cast<Complex>().asDiagonal() * u.adjoint());
    Projector a = diagonal_projector(uniform_rank(dim, rng));
    Projector b = diagonal_projector(uniform_rank(dim, rng));
    return {DensityState::validate(rho / trace_real(rho), 1e-9), std::move(a), std::move(b)};
}

double born_probability(const DensityState& rho, const Projector& p) {
    require_same_dim(rho.dim(), p.dim(), "born_probability");
    return trace_real(rho.matrix() * p.matrix());
}

double clamp_for_report(double p) noexcept { return std::clamp(p, 0.0, 1.0); }

LuedersOutcome lueders_update(const DensityState& rho, const Projector& p, MeasurementMode mode, double tol) {
    require_same_dim(rho.dim(), p.dim(), "lueders_update");
    const ComplexMatrix& r = rho.matrix();
    const ComplexMatrix& yes = p.matrix();
    const ComplexMatrix no = ComplexMatrix::Identity(p.dim(), p.dim()) - yes;

    if (mode == MeasurementMode::nonselective) {
        const ComplexMatrix post = hermitian_part(yes * r * yes + no * r * no);
        return {1.0, DensityState::validate(post / trace_real(post), 1e-9)};
    }
    const ComplexMatrix& proj = mode == MeasurementMode::selective_yes ? yes : no;
    const ComplexMatrix branch = hermitian_part(proj * r * proj);
    const double q = trace_real(branch);
    if (q <= tol) {
        throw HilbertError(ErrorKind::zero_probability_branch,
                           "branch probability " + std::to_string(q) + " <= tol", q);
    }
    return {q, DensityState::validate(branch / q, 1e-9)};
}

double sequential_probability(const DensityState& rho, const Projector& a, const Projector& b) {
    require_same_dim(rho.dim(), a.dim(), "sequential_probability");
    require_same_dim(a.dim(), b.dim(), "sequential_probability");
    const ComplexMatrix& pa = a.matrix();
    return trace_real(b.matrix() * (pa * rho.matrix() * pa));
}

double nonselective_probability(const DensityState& rho, const Projector& a, const Projector& b) {
    require_same_dim(rho.dim(), a.dim(), "nonselective_probability");
    require_same_dim(a.dim(), b.dim(), "nonselective_probability");
    const ComplexMatrix& pa = a.matrix();
    const ComplexMatrix na = ComplexMatrix::Identity(a.dim(), a.dim()) - pa;
    const ComplexMatrix& r = rho.matrix();
    return trace_real(b.matrix() * (pa * r * pa + na * r * na));
}

double logical_joint(const DensityState& rho, const Projector& a, const Projector& b, JointMethod method) {
    require_same_dim(rho.dim(), a.dim(), "logical_joint");
    require_same_dim(a.dim(), b.dim(), "logical_joint");
    if (method == JointMethod::jordan) {
        const ComplexMatrix& pa = a.matrix();
        const ComplexMatrix& pb = b.matrix();
        return trace_real(rho.matrix() * ((pa * pb + pb * pa) / 2.0));
    }
    return sequential_probability(rho, a, b) +
           (born_probability(rho, b) - nonselective_probability(rho, a, b)) / 2.0;
}

double kirkwood_dirac_real(const DensityState& rho, const Projector& a, const Projector& b) {
    require_same_dim(rho.dim(), a.dim(), "kirkwood_dirac_real");
    require_same_dim(a.dim(), b.dim(), "kirkwood_dirac_real");
    return trace_real(rho.matrix() * a.matrix() * b.matrix());
}

ComplexMatrix xor_operator(const Projector& a, const Projector& b) {
    require_same_dim(a.dim(), b.dim(), "xor_operator");
    const ComplexMatrix id = ComplexMatrix::Identity(a.dim(), a.dim());
    const ComplexMatrix& pa = a.matrix();
    const ComplexMatrix& pb = b.matrix();
    const ComplexMatrix na = id - pa;
    const ComplexMatrix nb = id - pb;
    return pa * nb * pa + na * pb * na;
}

double xor_operator_residual(const Projector& a, const Projector& b) {
    const ComplexMatrix& pa = a.matrix();
    const ComplexMatrix& pb = b.matrix();
    return operator_norm(xor_operator(a, b) - (pa + pb - pa * pb - pb * pa));
}

double xor_expectation(const DensityState& rho, const Projector& a, const Projector& b, XorMethod method,
                       double tol) {
    require_same_dim(rho.dim(), a.dim(), "xor_expectation");
    require_same_dim(a.dim(), b.dim(), "xor_expectation");
    if (method == XorMethod::mapped_operator) {
        const double residual = xor_operator_residual(a, b);
        if (residual > tol) {
            throw HilbertError(ErrorKind::identity_violation,
                               residual_message("A.nB.A + nA.B.nA != A + B - AB - BA", residual, tol), residual);
        }
        return trace_real(rho.matrix() * xor_operator(a, b));
    }
    return sequential_probability(rho, a, complement_projector(b)) +
           sequential_probability(rho, complement_projector(a), b);
}

QuasiProbTable quasi_prob_table(const DensityState& rho, const Projector& a, const Projector& b) {
    require_same_dim(rho.dim(), a.dim(), "quasi_prob_table");
    require_same_dim(a.dim(), b.dim(), "quasi_prob_table");
    const std::array<Projector, 2> as{complement_projector(a), a};
    const std::array<Projector, 2> bs{complement_projector(b), b};
    QuasiProbTable t;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) t.at(i, j) = logical_joint(rho, as[i], bs[j]);
    return t;
}

namespace {

void check_basis(std::span<const ComplexVector> basis, Index dim, double tol, const char* which) {
    if (static_cast<Index>(basis.size()) != dim) {
        throw HilbertError(ErrorKind::incomplete_basis, std::string(which) + " has " + std::to_string(basis.size()) +
                                                            " vectors, expected " + std::to_string(dim));
    }
    ComplexMatrix v(dim, dim);
    for (Index j = 0; j < dim; ++j) {
        const auto& col = basis[static_cast<std::size_t>(j)];
        if (col.size() != dim) {
            throw HilbertError(ErrorKind::incomplete_basis,
                               std::string(which) + " vector " + std::to_string(j) + " has wrong length");
        }
        v.col(j) = col;
    }
    const double gram = operator_norm(v.adjoint() * v - ComplexMatrix::Identity(dim, dim));
    if (gram > tol) {
        throw HilbertError(ErrorKind::not_orthonormal, residual_message(which, gram, tol), gram);
    }
}

}  // namespace

ComplexMatrix kd_distribution(const DensityState& rho, std::span<const ComplexVector> basis_a,
                              std::span<const ComplexVector> basis_b, double tol) {
    const Index d = rho.dim();
    check_basis(basis_a, d, tol, "basis_a");
    check_basis(basis_b, d, tol, "basis_b");
    ComplexMatrix q(d, d);
    for (Index i = 0; i < d; ++i) {
        const ComplexVector& ai = basis_a[static_cast<std::size_t>(i)];
        const Eigen::RowVectorXcd ai_rho = ai.adjoint() * rho.matrix();
        for (Index j = 0; j < d; ++j) {
            const ComplexVector& bj = basis_b[static_cast<std::size_t>(j)];
            q(i, j) = bj.dot(ai) * (ai_rho * bj)(0);
        }
    }
    return q;
}

std::vector<ComplexVector> basis_from_columns(const ComplexMatrix& u) {
    std::vector<ComplexVector> out;
    out.reserve(static_cast<std::size_t>(u.cols()));
    for (Index j = 0; j < u.cols(); ++j) out.emplace_back(u.col(j));
    return out;
}

Complex weak_value(const DensityState& rho, const Projector& a, const Projector& post, double tol) {
    require_same_dim(rho.dim(), a.dim(), "weak_value");
    require_same_dim(a.dim(), post.dim(), "weak_value");
    const double norm = born_probability(rho, post);
    if (norm <= tol) {
        throw HilbertError(ErrorKind::zero_post_selection, "Tr(rho post) = " + std::to_string(norm) + " <= tol", norm);
    }
    return (post.matrix() * a.matrix() * rho.matrix()).trace() / norm;
}

NegativityWitness negativity_search(const DensityState& rho, const Projector& a, const Projector& b) {
    const QuasiProbTable t = quasi_prob_table(rho, a, b);
    NegativityWitness w{t.at(1, 1), 1, 1};
    for (int i = 1; i >= 0; --i) {
        for (int j = 1; j >= 0; --j) {
            if (t.at(i, j) < w.min_cell) w = {t.at(i, j), i, j};
        }
    }
    return w;
}

RandomSearchResult random_negativity_search(Index dim, std::uint64_t draws, std::uint64_t seed) {
    RandomSearchResult result;
    result.draws = draws;
    result.seed = seed;
    result.best.min_cell = 1.0;
    for (std::uint64_t i = 0; i < draws; ++i) {
        const Triple t = sample_triple(dim, Purity::pure, derive_seed(seed, i, 7));
        const NegativityWitness w = negativity_search(t.rho, t.a, t.b);
        if (w.min_cell < result.best.min_cell) {
            result.best = w;
            result.best_draw = i;
        }
    }
    return result;
}

}  // namespace qlogic::hilbert
