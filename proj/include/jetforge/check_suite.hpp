#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "jetforge/dsl.hpp"

namespace jetforge {

/// Names of every theorem suite, in report order.
const std::vector<std::string>& suite_names();

struct CheckConfig {
    std::uint64_t seed = 0;
    std::uint32_t trials = 100;
    std::uint32_t max_vars = 3;
    std::uint32_t max_relations = 2;
    std::uint32_t max_degree = 3;
    std::uint32_t max_level = 4;
    std::uint32_t max_bilevel = 2;
    int coeff_min = -9;
    int coeff_max = 9;
    std::vector<std::string> suites; ///< empty means all
    std::uint32_t jobs = 1;

    /// Throws UnknownSuite or InvalidConfig.
    void validate() const;
    std::vector<std::string> selected_suites() const;
};

/// One randomized input: the document plus the levels and twist it is
/// checked at.
struct SuiteInstance {
    InputDocument doc;
    std::uint32_t n = 0;
    std::uint32_t m = 0;
    int d = 0;
};

/// Instance for trial `trial` of `suite`; trials 0 and 1 are degenerate.
SuiteInstance random_instance(const std::string& suite, const CheckConfig& config, std::uint32_t trial);

/// Seed of the random-point stream used for trial `trial` of `suite`.
std::uint64_t oracle_seed(const CheckConfig& config, const std::string& suite, std::uint32_t trial);

struct TrialResult {
    bool ok = true;
    std::string detail;
    bool oracle_used = false;
    bool oracle_agrees = true;
};

/// Checks one instance. Used by run_suite and by CLI replay.
TrialResult evaluate_suite(const std::string& suite, const SuiteInstance& instance, std::uint64_t oracle_seed);

struct TrialFailure {
    std::uint32_t trial;
    std::string instance; ///< canonical input text
    std::string replay;   ///< CLI command reproducing the failure
    std::string detail;
};

struct SuiteReport {
    std::string name;
    std::uint32_t trials = 0;
    std::vector<TrialFailure> failures;
    std::uint32_t oracle_checks = 0;
    std::uint32_t oracle_disagreements = 0;
    double wall_ms = 0;

    bool passed() const { return failures.empty(); }
};

struct CheckReport {
    std::uint64_t seed = 0;
    std::uint32_t trials = 0;
    std::vector<SuiteReport> suites;
    double wall_ms = 0;

    bool passed() const;
    nlohmann::ordered_json to_json(bool with_timings = true) const;
    std::string to_text() const;
};

CheckReport run_suite(const CheckConfig& config);

} // namespace jetforge
