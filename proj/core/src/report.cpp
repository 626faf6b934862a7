#include "polyflow/report.hpp"

#include <sstream>

namespace polyflow {

bool Identity::passed() const {
    for (const auto& r : residual)
        if (!r.is_zero()) return false;
    return true;
}

bool Report::passed() const {
    for (const auto& id : identities)
        if (!id.diagnostic && !id.passed()) return false;
    return true;
}

const Identity* Report::find(const std::string& name) const {
    for (const auto& id : identities)
        if (id.name == name) return &id;
    return nullptr;
}

nlohmann::json Report::to_json() const {
    nlohmann::json j;
    j["subject"] = subject;
    j["status"] = passed() ? "pass" : "fail";
    auto ids = nlohmann::json::array();
    for (const auto& id : identities) {
        nlohmann::json e;
        e["name"] = id.name;
        e["status"] = id.passed() ? "pass" : "fail";
        e["diagnostic"] = id.diagnostic;
        auto res = nlohmann::json::array();
        for (const auto& r : id.residual) res.push_back(r.to_string(names));
        e["residual"] = res;
        if (!id.excluded.empty()) {
            auto ex = nlohmann::json::array();
            for (const auto& d : id.excluded) ex.push_back(d.to_string(names) + " = 0");
            e["excluded"] = ex;
        }
        if (!id.note.empty()) e["note"] = id.note;
        ids.push_back(std::move(e));
    }
    j["identities"] = ids;
    // Top-level residual: the main (first) identity.
    j["residual"] = ids.empty() ? nlohmann::json::array() : ids.front()["residual"];
    j["witness"] = witness;
    j["notes"] = notes;
    return j;
}

std::string Report::to_text() const {
    std::ostringstream out;
    out << subject << ": " << (passed() ? "PASS" : "FAIL") << "\n";
    for (const auto& id : identities) {
        out << "  [" << (id.passed() ? "ok" : (id.diagnostic ? "diag" : "FAIL")) << "] " << id.name;
        if (id.residual.size() == 1) {
            out << "  residual = " << id.residual[0].to_string(names);
        } else if (!id.residual.empty()) {
            out << "  residual = (";
            for (std::size_t i = 0; i < id.residual.size(); ++i)
                out << (i ? ", " : "") << id.residual[i].to_string(names);
            out << ")";
        }
        out << "\n";
        for (const auto& d : id.excluded) out << "      excludes " << d.to_string(names) << " = 0\n";
        if (!id.note.empty()) out << "      note: " << id.note << "\n";
    }
    for (const auto& n : notes) out << "  note: " << n << "\n";
    return out.str();
}

}  // namespace polyflow
