#pragma once

#include "purity/complex.hpp"

#include <optional>
#include <string>

namespace purity {

inline constexpr int kReportSchemaVersion = 1;

// Named "omega" or explicit "alpha,a_0,...": missing trailing a_d are zero.
struct DivisorArg {
    bool omega = true;
    Rational alpha;
    std::vector<Rational> a;

    static DivisorArg parse(const std::string& text);  // throws std::invalid_argument
    std::string describe() const;
};

// Every report carries "schema_version", "command" and "status" ("pass", "fail" or "refused").
Json ring_report(int n, int q, std::optional<int> pairing_degree, const ResourceLimits& limits);
Json hodge_report(int n, int q, const DivisorArg& divisor, bool skip_positivity, const ResourceLimits& limits);

struct WssOptions {
    bool lemmas = false;
    bool zeta = false;
};

Json wss_report(const SemistableComplex& cx, const std::string& label, const WssOptions& opts);

std::string render_text(const Json& report);
int exit_code(const Json& report);  // 0 pass, 1 otherwise

Json rational_json(const Rational& x);  // "p/q", or "p" when integral

}  // namespace purity
