#pragma once

// Special Jordan algebra of Hermitian matrices, X ∘ Y = (XY + YX)/2, and
// numerical checks of the properties the Lüders image of the connectives
// carries into it. Universally quantified statements are probed by seeded
// sweeps; reports say "consistent", never "proved".

#include "qlogic/hilbert.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace qlogic::jordan {

using hilbert::ComplexMatrix;
using hilbert::Index;
using hilbert::Projector;
using hilbert::kDefaultTolerance;

class JordanElement {
public:
    static JordanElement validate(const ComplexMatrix& m, double tol = kDefaultTolerance);
    static JordanElement from_projector(const Projector& p);
    static JordanElement zero(Index dim);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    Index dim() const noexcept { return m_.rows(); }

private:
    explicit JordanElement(ComplexMatrix m) : m_(std::move(m)) {}
    friend JordanElement jordan_product(const JordanElement& x, const JordanElement& y);
    ComplexMatrix m_;
};

JordanElement jordan_product(const JordanElement& x, const JordanElement& y);

/// Image of A ∧ B under the Lüders rule: A ∘ B.
JordanElement mapped_conjunction(const Projector& a, const Projector& b);

/// max(‖A∘B + A∘B̄ − A‖, ‖A∘B + Ā∘B − B‖).
double marginality_residual(const Projector& a, const Projector& b);

/// ‖X²∘X² − X∘(X∘X²)‖ with X² = X∘X (the Jordan identity at y = x).
double power_associativity_residual(const JordanElement& x);

struct IdempotencyReport {
    double cubic_residual = 0.0;   // ‖A·A·A − A‖
    double square_residual = 0.0;  // ‖A∘A − A‖
    bool passed = false;
};

IdempotencyReport idempotency_transfer_check(const ComplexMatrix& a, double tol = kDefaultTolerance);
IdempotencyReport idempotency_transfer_check(const Projector& a, double tol = kDefaultTolerance);

enum class Verdict { consistent, violated };

const char* to_string(Verdict v) noexcept;

struct RealityProbe {
    double residual = 0.0;  // ‖X∘X + Y∘Y‖
    double scale = 0.0;     // max(‖X‖², ‖Y‖²)
    Verdict verdict = Verdict::consistent;
};

RealityProbe formal_reality_probe(const JordanElement& x, const JordanElement& y, double tol = kDefaultTolerance);

struct XorSymmetryReport {
    double order_residual = 0.0;      // ‖(A·B̄·A + Ā·B·Ā) − (B·Ā·B + B̄·A·B̄)‖
    double expansion_residual = 0.0;  // max over both orders of ‖· − (A + B − AB − BA)‖
    bool passed = false;
};

XorSymmetryReport xor_operator_symmetry_check(const Projector& a, const Projector& b,
                                              double tol = kDefaultTolerance);

struct SweepReport {
    std::string check;
    Index dim = 0;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    double max_residual = 0.0;
    double min_residual = 0.0;
    std::string verdict;
    /// Formal-reality sweeps only: min over trials of residual / scale.
    double min_relative_residual = 0.0;
};

nlohmann::json to_json(const SweepReport& r);

/// Nonzero random Hermitian pairs; verdict "consistent" iff no probe is
/// violated and every residual exceeds 0.01·max(‖X‖², ‖Y‖²).
SweepReport formal_reality_sweep(Index dim, std::uint64_t trials, std::uint64_t seed,
                                 double tol = kDefaultTolerance);
/// Random projector pairs through xor_operator_symmetry_check.
SweepReport xor_symmetry_sweep(Index dim, std::uint64_t trials, std::uint64_t seed,
                               double tol = kDefaultTolerance);
SweepReport marginality_sweep(Index dim, std::uint64_t trials, std::uint64_t seed,
                              double tol = kDefaultTolerance);
/// Hermiticity and commutativity of the Jordan product on random Hermitian pairs.
SweepReport commutativity_sweep(Index dim, std::uint64_t trials, std::uint64_t seed,
                                double tol = kDefaultTolerance);
SweepReport power_associativity_sweep(Index dim, std::uint64_t trials, std::uint64_t seed,
                                      double tol = kDefaultTolerance);

}  // namespace qlogic::jordan
