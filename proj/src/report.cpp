#include "ellrec/report.hpp"

namespace ellrec {

std::string to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::Pass: return "pass";
        case CheckStatus::Fail: return "fail";
        case CheckStatus::Skip: return "skip";
    }
    return "fail";
}

CheckStatus status_from_string(const std::string& s) {
    if (s == "pass") return CheckStatus::Pass;
    if (s == "fail") return CheckStatus::Fail;
    if (s == "skip") return CheckStatus::Skip;
    throw std::invalid_argument("unknown check status: " + s);
}

nlohmann::json to_json(const Report& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"status", to_string(c.status)}, {"details", c.details},
                          {"witness", c.witness}});
    return {{"command", r.command}, {"params", r.params}, {"version", r.version}, {"checks", checks}};
}

Report report_from_json(const nlohmann::json& j) {
    Report r;
    r.command = j.at("command").get<std::string>();
    r.params = j.at("params");
    r.version = j.at("version").get<std::string>();
    for (const auto& c : j.at("checks"))
        r.checks.push_back({c.at("name").get<std::string>(), status_from_string(c.at("status").get<std::string>()),
                            c.at("details").get<std::string>(), c.at("witness")});
    return r;
}

nlohmann::json rational_json(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_json(const nlohmann::json& j) { return parse_rational(j.get<std::string>()); }

nlohmann::json fp_json(const Fp& a) { return {{"value", a.value()}, {"p", a.modulus()}}; }

Fp fp_from_json(const nlohmann::json& j) {
    return Fp(static_cast<std::int64_t>(j.at("value").get<std::uint64_t>()), j.at("p").get<std::uint64_t>());
}

}  // namespace ellrec
