#pragma once

// Finite-dimensional complex Hilbert-space model of yes-no questions.
//
// Questions are orthogonal projectors, states are density matrices, and the
// sequential question "A then B" is evaluated with the Lüders rule A·B·A.
// All functions are pure; validated types are immutable after construction.

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qlogic::hilbert {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr Index kDefaultMaxDim = 64;

enum class ErrorKind {
    not_square,
    bad_dimension,
    not_hermitian,
    not_idempotent,
    not_positive,
    bad_trace,
    dimension_mismatch,
    zero_probability_branch,
    bad_rank,
    not_orthonormal,
    incomplete_basis,
    zero_post_selection,
    identity_violation,
};

const char* to_string(ErrorKind kind) noexcept;

class HilbertError : public std::runtime_error {
public:
    HilbertError(ErrorKind kind, const std::string& message, double residual = 0.0);

    ErrorKind kind() const noexcept { return kind_; }
    /// Norm of the violated invariant, when one applies.
    double residual() const noexcept { return residual_; }

private:
    ErrorKind kind_;
    double residual_;
};

/// Largest singular value.
double operator_norm(const ComplexMatrix& m);

double hermiticity_residual(const ComplexMatrix& m);

/// Square with 2 <= d <= max_dim, otherwise throws.
void check_dimension(const ComplexMatrix& m, Index max_dim = kDefaultMaxDim);

class Projector {
public:
    /// Rejects matrices that are not Hermitian or not idempotent within `tol`
    /// in operator norm. Never repairs its input.
    static Projector validate(const ComplexMatrix& m, double tol = kDefaultTolerance,
                              Index max_dim = kDefaultMaxDim);
    static Projector identity(Index dim);
    static Projector zero(Index dim);
    /// |v><v| / <v|v>.
    static Projector rank_one(const ComplexVector& v);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    Index dim() const noexcept { return m_.rows(); }

private:
    friend Projector complement_projector(const Projector& p);
    explicit Projector(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

class DensityState {
public:
    /// Hermitian, eigenvalues >= -tol, unit trace within tol.
    static DensityState validate(const ComplexMatrix& m, double tol = kDefaultTolerance,
                                 Index max_dim = kDefaultMaxDim);
    /// |psi><psi| for a normalised copy of psi.
    static DensityState pure(const ComplexVector& psi);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    Index dim() const noexcept { return m_.rows(); }

private:
    explicit DensityState(ComplexMatrix m) : m_(std::move(m)) {}
    ComplexMatrix m_;
};

/// I - P.
Projector complement_projector(const Projector& p);

enum class Purity { pure, mixed };

/// Unitarily invariant pure state, or a Hilbert-Schmidt mixed state.
DensityState sample_state(Index dim, Purity purity, std::uint64_t seed);
/// Projector onto the span of `rank` columns of a Haar-random unitary.
Projector sample_projector(Index dim, Index rank, std::uint64_t seed);
ComplexMatrix sample_unitary(Index dim, std::mt19937_64& rng);
/// GUE-like Hermitian matrix with standard normal entries.
ComplexMatrix sample_hermitian(Index dim, std::mt19937_64& rng);

struct Triple {
    DensityState rho;
    Projector a;
    Projector b;
};

/// Random state and two projectors with uniformly chosen ranks in [1, dim-1].
Triple sample_triple(Index dim, Purity purity, std::uint64_t seed);
/// State and projectors diagonal in one random basis (mutually commuting).
Triple sample_commuting_triple(Index dim, std::uint64_t seed);

/// Tr(ρP), real part, unclamped.
double born_probability(const DensityState& rho, const Projector& p);

/// Clamp into [0, 1] for human-readable reports only.
double clamp_for_report(double p) noexcept;

enum class MeasurementMode { selective_yes, selective_no, nonselective };

struct LuedersOutcome {
    double probability;
    DensityState post_state;
};

LuedersOutcome lueders_update(const DensityState& rho, const Projector& p, MeasurementMode mode,
                              double tol = kDefaultTolerance);

/// ⟨A ⊓ B⟩ = Tr(B·AρA).
double sequential_probability(const DensityState& rho, const Projector& a, const Projector& b);

/// ⟨B_A⟩ = Tr(B·(AρA + ĀρĀ)), B after a nonselective A.
double nonselective_probability(const DensityState& rho, const Projector& a, const Projector& b);

enum class JointMethod { operational, jordan };

/// ⟨A ∧ B⟩ = ⟨A ⊓ B⟩ + (⟨B⟩ − ⟨B_A⟩)/2, or Tr(ρ(AB + BA)/2).
double logical_joint(const DensityState& rho, const Projector& a, const Projector& b,
                     JointMethod method = JointMethod::operational);

/// Re Tr(ρAB), the real part of the Kirkwood-Dirac value.
double kirkwood_dirac_real(const DensityState& rho, const Projector& a, const Projector& b);

enum class XorMethod { operational, mapped_operator };

/// A·B̄·A + Ā·B·Ā.
ComplexMatrix xor_operator(const Projector& a, const Projector& b);
/// ‖(A·B̄·A + Ā·B·Ā) − (A + B − AB − BA)‖.
double xor_operator_residual(const Projector& a, const Projector& b);

/// ⟨A ⊕ B⟩. The mapped-operator route also checks the operator against
/// A + B − AB − BA and throws identity_violation if it is off by more than tol.
double xor_expectation(const DensityState& rho, const Projector& a, const Projector& b,
                       XorMethod method = XorMethod::operational, double tol = kDefaultTolerance);

/// Logical joint probabilities of (A^(a), B^(b)) with A^(1) = A, A^(0) = Ā.
struct QuasiProbTable {
    std::array<double, 4> cells{};  // index 2a + b

    double at(int a, int b) const { return cells[static_cast<std::size_t>(2 * a + b)]; }
    double& at(int a, int b) { return cells[static_cast<std::size_t>(2 * a + b)]; }
    double sum() const noexcept { return cells[0] + cells[1] + cells[2] + cells[3]; }
    double row_sum(int a) const { return at(a, 0) + at(a, 1); }
    double column_sum(int b) const { return at(0, b) + at(1, b); }
};

QuasiProbTable quasi_prob_table(const DensityState& rho, const Projector& a, const Projector& b);

/// Cell (i, j) = ⟨b_j|a_i⟩⟨a_i|ρ|b_j⟩.
ComplexMatrix kd_distribution(const DensityState& rho, std::span<const ComplexVector> basis_a,
                              std::span<const ComplexVector> basis_b, double tol = kDefaultTolerance);

/// Columns of a unitary as a basis list.
std::vector<ComplexVector> basis_from_columns(const ComplexMatrix& u);

/// Tr(post·A·ρ) / Tr(post·ρ).
Complex weak_value(const DensityState& rho, const Projector& a, const Projector& post,
                   double tol = kDefaultTolerance);

struct NegativityWitness {
    double min_cell = 0.0;
    int a = 1;
    int b = 1;
};

NegativityWitness negativity_search(const DensityState& rho, const Projector& a, const Projector& b);

struct RandomSearchResult {
    NegativityWitness best;
    std::uint64_t best_draw = 0;
    std::uint64_t draws = 0;
    std::uint64_t seed = 0;
};

/// Brute-force search over random pure states and projectors at fixed dim.
/// Reports the most negative cell found; no claim of a global optimum.
RandomSearchResult random_negativity_search(Index dim, std::uint64_t draws, std::uint64_t seed);

}  // namespace qlogic::hilbert
