#pragma once

#include <cstdint>
#include <map>
#include <string>

#include <json.hpp>

namespace lup {

// One identity check: what was tested, with which knobs, how far off it was.
// passed is derived, never set by hand: passed <=> observed_error <= tolerance.
struct VerificationReport {
    std::string identity;
    std::map<std::string, std::string> params;
    double observed_error = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::uint64_t effort = 0;  // sample count or node count
    double wall_time = 0.0;    // seconds; diagnostic only, kept out of files
};

VerificationReport make_report(std::string identity, std::map<std::string, std::string> params,
                               double observed_error, double tolerance, std::uint64_t effort,
                               double wall_time);

// wall_time is deliberately omitted so that byte-identical runs produce
// byte-identical serialized reports.
nlohmann::ordered_json report_to_json(const VerificationReport& r);

}  // namespace lup
