#pragma once

#include "ellrec/exactnum.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ellrec {

inline constexpr const char* kVersion = "0.3.0";

enum class CheckStatus { Pass, Fail, Skip };

struct Check {
    std::string name;
    CheckStatus status = CheckStatus::Pass;
    std::string details;
    nlohmann::json witness;  // null when there is none
};

inline Check make_check(std::string name, bool ok, std::string details = {},
                        nlohmann::json witness = nullptr) {
    return {std::move(name), ok ? CheckStatus::Pass : CheckStatus::Fail, std::move(details),
            std::move(witness)};
}

struct Report {
    std::string command;
    nlohmann::json params = nlohmann::json::object();
    std::string version = kVersion;
    std::vector<Check> checks;

    bool passed() const {
        for (const auto& c : checks)
            if (c.status == CheckStatus::Fail) return false;
        return true;
    }
    void add(Check c) { checks.push_back(std::move(c)); }
    void add_all(const std::vector<Check>& cs) { checks.insert(checks.end(), cs.begin(), cs.end()); }
};

std::string to_string(CheckStatus s);
CheckStatus status_from_string(const std::string& s);

nlohmann::json to_json(const Report& r);
Report report_from_json(const nlohmann::json& j);

nlohmann::json rational_json(const Rational& q);  // "num/den"
Rational rational_from_json(const nlohmann::json& j);
nlohmann::json fp_json(const Fp& a);  // {"value": v, "p": p}
Fp fp_from_json(const nlohmann::json& j);

}  // namespace ellrec
