#include "lup/report.hpp"

namespace lup {

VerificationReport make_report(std::string identity, std::map<std::string, std::string> params,
                               double observed_error, double tolerance, std::uint64_t effort,
                               double wall_time) {
    VerificationReport r;
    r.identity = std::move(identity);
    r.params = std::move(params);
    r.observed_error = observed_error;
    r.tolerance = tolerance;
    r.passed = observed_error <= tolerance;
    r.effort = effort;
    r.wall_time = wall_time;
    return r;
}

nlohmann::ordered_json report_to_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["identity"] = r.identity;
    j["params"] = r.params;
    j["observed_error"] = r.observed_error;
    j["tolerance"] = r.tolerance;
    j["passed"] = r.passed;
    j["effort"] = r.effort;
    return j;
}

}  // namespace lup
