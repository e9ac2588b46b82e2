#pragma once

#include <chrono>
#include <string>
#include <vector>

namespace pherm::crcalc {

/// One verified identity. The anchor restates what was checked as a plain
/// ASCII formula so the report is self contained.
struct CaseResult {
    std::string id;
    std::string anchor;
    std::string status;  // "pass", "fail" or "skipped"
    std::string expected;
    std::string actual;
    std::string residual;
    double wall_ms = 0.0;

    bool ok() const { return status != "fail"; }
};

struct SuiteResult {
    std::string suite;
    std::vector<CaseResult> cases;

    int passed() const {
        int c = 0;
        for (const auto& r : cases) c += r.status == "pass";
        return c;
    }
    int failed() const {
        int c = 0;
        for (const auto& r : cases) c += r.status == "fail";
        return c;
    }
    bool all_ok() const { return failed() == 0; }
};

/// Stopwatch helper; wall time in milliseconds since construction.
class WallTimer {
public:
    WallTimer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline CaseResult make_case(std::string id, std::string anchor, bool ok, std::string expected,
                            std::string actual, std::string residual, double wall_ms) {
    return CaseResult{std::move(id),    std::move(anchor), ok ? "pass" : "fail", std::move(expected),
                      std::move(actual), std::move(residual), wall_ms};
}

}  // namespace pherm::crcalc
