#pragma once

#include "polyflow/darboux.hpp"
#include "polyflow/model.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace polyflow {

struct ExpectedPair {
    std::string g;
    std::string cofactor;
};

struct ExpectedClaim {
    std::string name;
    bool pass = true;
    /// Expected residual components of the main identity, as expressions.
    std::vector<std::string> residual;
    /// Per-identity verdicts keyed by identity name.
    std::map<std::string, bool> identities;
};

struct ExpectedSearch {
    int degree = 2;
    SearchMethod method = SearchMethod::Numeric;
};

/// One parameter instance of a corpus model and everything it should reproduce.
struct CorpusCase {
    std::string id;
    std::filesystem::path model;
    Bindings bindings;
    std::optional<ExpectedSearch> search;
    std::vector<ExpectedPair> pairs;
    std::vector<std::string> integrals;
    std::vector<ExpectedClaim> claims;
};

/// $POLYFLOW_CORPUS if set, else the directory the build was configured with.
std::filesystem::path corpus_dir();

/// Reads cases.json from `dir`.
std::vector<CorpusCase> list_cases(const std::filesystem::path& dir = corpus_dir());

struct CaseOutcome {
    std::string id;
    std::vector<std::string> failures;
    [[nodiscard]] bool passed() const { return failures.empty(); }
};

/// Runs every exact expectation of the case (pairs, integrals, claims and the
/// optional search). Numeric drift is left to the ODE checks.
CaseOutcome run_case(const CorpusCase& c, const SearchConfig& base = {});

}  // namespace polyflow
