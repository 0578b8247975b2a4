#pragma once

#include <complex>
#include <cstdio>
#include <string>

#include "json.hpp"

#include "finsum/cli/job.hpp"
#include "finsum/formulae/types.hpp"

namespace finsum {
namespace cli {

/// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

inline json complex_json(std::complex<double> z) {
    return json{{"re", format_double(z.real())}, {"im", format_double(z.imag())}};
}

inline json report_json(const SumJob& job, const IdentityResult& out, double tolerance,
                        bool pass) {
    json stages = json::array();
    for (const auto& [name, value] : out.terms) {
        json stage = complex_json(value);
        stage["name"] = name;
        stages.push_back(stage);
    }
    return json{
        {"job", job.echo},
        {"lhs", complex_json(out.lhs)},
        {"rhs", complex_json(out.rhs)},
        {"residual", format_double(out.residual())},
        {"terms", stages},
        {"diagnostics",
         json{{"tail_estimate", format_double(out.diagnostics.tail_estimate)},
              {"quad_error", format_double(out.diagnostics.quad_error)},
              {"quadrature_converged", out.diagnostics.quadrature_converged},
              {"panels", out.diagnostics.panels}}},
        {"tolerance", format_double(tolerance)},
        {"status", pass ? "pass" : "tolerance-exceeded"},
    };
}

inline json error_json(const std::string& kind, const std::string& where,
                       const std::string& detail) {
    json body{{"kind", kind}, {"detail", detail}};
    if (kind == "guard")
        body["guard"] = where;
    else
        body["path"] = where;
    return json{{"error", body}};
}

}  // namespace cli
}  // namespace finsum
