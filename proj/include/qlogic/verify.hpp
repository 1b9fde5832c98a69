#pragma once

// Invariant suites run by `qlogic verify`.

#include "qlogic/hilbert.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace qlogic::verify {

/// Residuals below this are attributed to floating-point rounding rather than
/// to a violated identity when a check fails.
inline constexpr double kRoundingFloor = 1e-8;

struct Config {
    hilbert::Index max_dim = 2;  // suites run for every d in [2, max_dim]
    std::uint64_t trials = 1000;
    std::uint64_t seed = 42;
    double tol = 1e-10;
};

enum class FailureKind { none, tolerance, identity_violation };

const char* to_string(FailureKind k) noexcept;

struct SuiteResult {
    std::string module;
    std::string name;
    hilbert::Index dim = 0;  // 0 when not dimension dependent
    std::uint64_t checks = 0;
    std::uint64_t failures = 0;
    double max_residual = 0.0;
    FailureKind failure_kind = FailureKind::none;

    bool passed() const noexcept { return failures == 0; }
};

std::vector<SuiteResult> run_logic_suites();
std::vector<SuiteResult> run_hilbert_suites(hilbert::Index dim, const Config& config);
std::vector<SuiteResult> run_jordan_suites(hilbert::Index dim, const Config& config);
SuiteResult run_survey_round_trip(const Config& config);

std::vector<SuiteResult> run_all(const Config& config);

nlohmann::json to_json(const std::vector<SuiteResult>& results);

}  // namespace qlogic::verify
