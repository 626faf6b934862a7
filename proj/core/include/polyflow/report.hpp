#pragma once

#include "polyflow/polynomial.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace polyflow {

/// One exactly-checked identity. `residual` holds the cleared numerators,
/// one entry per component; the identity holds iff all of them are zero.
struct Identity {
    std::string name;
    std::vector<Polynomial> residual;
    /// Denominators cleared to obtain the residual; the verdict says nothing
    /// about their zero sets.
    std::vector<Polynomial> excluded;
    /// Diagnostics are reported but never affect the verdict.
    bool diagnostic = false;
    std::string note;

    [[nodiscard]] bool passed() const;
};

/// Outcome of a certification: a list of identities plus free-form notes.
/// Serialized with stable keys "status", "residual" and "witness".
struct Report {
    std::string subject;
    std::vector<Identity> identities;
    std::vector<std::string> notes;
    nlohmann::json witness = nlohmann::json::object();
    VarNames names = kDefaultNames;

    [[nodiscard]] bool passed() const;
    [[nodiscard]] const Identity* find(const std::string& name) const;
    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] std::string to_text() const;
};

}  // namespace polyflow
