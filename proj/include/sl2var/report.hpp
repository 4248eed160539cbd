#pragma once

#include <string>
#include <vector>

namespace sl2var {

enum class CheckStatus {
    Pass,
    Fail,             // the verified statement is violated
    NotApplicable,    // hypotheses do not cover this input (benign)
    HypothesisNotMet  // caller asked for a check whose gate rejects the input
};

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::NotApplicable: return "not-applicable";
        case CheckStatus::HypothesisNotMet: return "hypothesis-not-met";
    }
    return "?";
}

/// Result of one named check.  Hypothesis gates are reported, never thrown:
/// the theorems verified here have sharp characteristic gates and a caller
/// must be able to tell "statement false" from "statement not applicable".
struct CheckReport {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::vector<std::string> notes;
    size_t checked = 0;

    explicit CheckReport(std::string n = {}) : name(std::move(n)) {}

    bool passed() const { return status == CheckStatus::Pass; }

    void require(bool cond, const std::string& witness) {
        ++checked;
        if (!cond) {
            status = CheckStatus::Fail;
            notes.push_back(witness);
        }
    }
    void gate(const std::string& why) {
        status = CheckStatus::HypothesisNotMet;
        notes.push_back(why);
    }
    void not_applicable(const std::string& why) {
        status = CheckStatus::NotApplicable;
        notes.push_back(why);
    }
    void note(const std::string& msg) { notes.push_back(msg); }
};

}  // namespace sl2var
