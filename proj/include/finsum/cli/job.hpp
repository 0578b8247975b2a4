#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "finsum/error.hpp"
#include "finsum/formulae/types.hpp"

namespace finsum {
namespace cli {

using nlohmann::json;

/// One batch job: which identity to check, the summand, the interval, the
/// weight data, and the truncation knobs. Floating-point inputs travel as
/// decimal strings so that grid endpoints like "10.5" parse to the exact
/// binary value the guards expect.
struct SumJob {
    std::string identity;
    std::string f_source;
    double a = 0.0;
    double b = 0.0;
    double y_lo = 0.0;
    double y_hi = 0.0;
    std::int64_t k = 0;
    std::int64_t r = 0;
    std::int64_t m = 1;
    std::vector<std::complex<double>> chi;
    std::vector<double> nodes;
    std::vector<std::complex<double>> coeffs;
    std::optional<double> lambda0;
    TruncationParams truncation;
    std::vector<int> sweep;
    std::optional<double> tolerance;
    json echo;
};

namespace detail {

struct IdentityShape {
    bool chi = false;       // k + chi values
    bool klass = false;     // residue class r + k
    bool dilation = false;  // m
    bool nodes = false;     // abel nodes/coeffs/lambda0
    bool rect = false;      // interval_y
    bool depth = false;     // truncation.R
    bool series = false;    // truncation.N (and sweep support)
};

inline const IdentityShape* identity_shape(const std::string& name) {
    static const std::map<std::string, IdentityShape> table = {
        {"abel", {.nodes = true}},
        {"euler", {}},
        {"euler2d", {.rect = true}},
        {"residue_class", {.klass = true}},
        {"dilated", {.dilation = true}},
        {"dilated_residue", {.klass = true, .dilation = true}},
        {"em_chi", {.chi = true, .depth = true, .series = true}},
        {"em_divisor", {.depth = true, .series = true}},
        {"em_divisor_chi", {.chi = true, .depth = true, .series = true}},
        {"poisson_chi", {.chi = true, .series = true}},
        {"poisson_divisor", {.series = true}},
        {"poisson_divisor_chi", {.chi = true, .series = true}},
    };
    const auto it = table.find(name);
    return it == table.end() ? nullptr : &it->second;
}

inline double parse_decimal(const json& node, const std::string& path) {
    if (!node.is_string())
        throw SchemaError(path, "expected a number written as a decimal string");
    const std::string text = node.get<std::string>();
    if (text.empty()) throw SchemaError(path, "empty number string");
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (end != text.c_str() + text.size())
        throw SchemaError(path, "could not parse number: '" + text + "'");
    if (!std::isfinite(value)) throw SchemaError(path, "number must be finite");
    return value;
}

inline std::int64_t parse_count(const json& node, const std::string& path) {
    if (!node.is_number_integer()) throw SchemaError(path, "expected a JSON integer");
    return node.get<std::int64_t>();
}

inline std::complex<double> parse_complex(const json& node, const std::string& path) {
    if (!node.is_array() || node.size() != 2)
        throw SchemaError(path, "expected an [re, im] pair of decimal strings");
    return {parse_decimal(node[0], path + "/0"), parse_decimal(node[1], path + "/1")};
}

inline const json& require_field(const json& root, const std::string& key) {
    const auto it = root.find(key);
    if (it == root.end()) throw SchemaError("/" + key, "required field is missing");
    return *it;
}

}  // namespace detail

inline SumJob parse_job(const json& root) {
    if (!root.is_object()) throw SchemaError("/", "job must be a JSON object");

    SumJob job;
    job.echo = root;

    const json& id = detail::require_field(root, "identity");
    if (!id.is_string()) throw SchemaError("/identity", "expected a string");
    job.identity = id.get<std::string>();
    const detail::IdentityShape* shape = detail::identity_shape(job.identity);
    if (shape == nullptr)
        throw SchemaError("/identity", "unknown identity '" + job.identity + "'");

    std::set<std::string> allowed = {"identity", "f", "interval", "truncation", "tolerance"};
    if (shape->chi || shape->klass) allowed.insert("k");
    if (shape->chi) allowed.insert("chi");
    if (shape->klass) allowed.insert("r");
    if (shape->dilation) allowed.insert("m");
    if (shape->nodes) {
        allowed.insert("nodes");
        allowed.insert("coeffs");
        allowed.insert("lambda0");
    }
    if (shape->rect) allowed.insert("interval_y");
    if (shape->series) allowed.insert("sweep");
    for (const auto& item : root.items())
        if (allowed.find(item.key()) == allowed.end())
            throw SchemaError("/" + item.key(), "unknown field for identity '" + job.identity + "'");

    const json& f = detail::require_field(root, "f");
    if (!f.is_string()) throw SchemaError("/f", "expected an expression string");
    job.f_source = f.get<std::string>();

    const json& interval = detail::require_field(root, "interval");
    if (!interval.is_array() || interval.size() != 2)
        throw SchemaError("/interval", "expected [a, b] as two decimal strings");
    job.a = detail::parse_decimal(interval[0], "/interval/0");
    job.b = detail::parse_decimal(interval[1], "/interval/1");

    if (shape->rect) {
        const json& rect = detail::require_field(root, "interval_y");
        if (!rect.is_array() || rect.size() != 2)
            throw SchemaError("/interval_y", "expected [c, d] as two decimal strings");
        job.y_lo = detail::parse_decimal(rect[0], "/interval_y/0");
        job.y_hi = detail::parse_decimal(rect[1], "/interval_y/1");
    }

    if (shape->chi || shape->klass) {
        job.k = detail::parse_count(detail::require_field(root, "k"), "/k");
        if (job.k < 1) throw SchemaError("/k", "period must be >= 1");
    }
    if (shape->klass) job.r = detail::parse_count(detail::require_field(root, "r"), "/r");
    if (shape->dilation) job.m = detail::parse_count(detail::require_field(root, "m"), "/m");

    if (shape->chi) {
        const json& chi = detail::require_field(root, "chi");
        if (!chi.is_array()) throw SchemaError("/chi", "expected an array of [re, im] pairs");
        if (static_cast<std::int64_t>(chi.size()) != job.k)
            throw SchemaError("/chi", "length must equal k");
        for (std::size_t l = 0; l < chi.size(); ++l)
            job.chi.push_back(detail::parse_complex(chi[l], "/chi/" + std::to_string(l)));
    }

    if (shape->nodes) {
        const json& nodes = detail::require_field(root, "nodes");
        const json& coeffs = detail::require_field(root, "coeffs");
        if (!nodes.is_array()) throw SchemaError("/nodes", "expected an array of decimal strings");
        if (!coeffs.is_array() || coeffs.size() != nodes.size())
            throw SchemaError("/coeffs", "expected one [re, im] pair per node");
        for (std::size_t i = 0; i < nodes.size(); ++i)
            job.nodes.push_back(detail::parse_decimal(nodes[i], "/nodes/" + std::to_string(i)));
        for (std::size_t i = 0; i < coeffs.size(); ++i)
            job.coeffs.push_back(detail::parse_complex(coeffs[i], "/coeffs/" + std::to_string(i)));
        if (const auto it = root.find("lambda0"); it != root.end())
            job.lambda0 = detail::parse_decimal(*it, "/lambda0");
    }

    const json& truncation = detail::require_field(root, "truncation");
    if (!truncation.is_object()) throw SchemaError("/truncation", "expected an object");
    for (const auto& item : truncation.items()) {
        const std::string& key = item.key();
        if (key == "quad_tol") continue;
        if (key == "R" && shape->series) continue;
        if (key == "N" && shape->series) continue;
        throw SchemaError("/truncation/" + key,
                          "not accepted for identity '" + job.identity + "'");
    }
    job.truncation.quad_tol =
        detail::parse_decimal(detail::require_field(truncation, "quad_tol"), "/truncation/quad_tol");
    if (shape->series) {
        const auto n_it = truncation.find("N");
        if (n_it == truncation.end())
            throw SchemaError("/truncation/N", "required field is missing");
        const std::int64_t n = detail::parse_count(*n_it, "/truncation/N");
        if (n < 1) throw SchemaError("/truncation/N", "cutoff must be >= 1");
        job.truncation.N = static_cast<int>(n);
        const auto r_it = truncation.find("R");
        if (shape->depth && r_it == truncation.end())
            throw SchemaError("/truncation/R", "required field is missing");
        if (r_it != truncation.end()) {
            const std::int64_t depth = detail::parse_count(*r_it, "/truncation/R");
            if (depth < 0) throw SchemaError("/truncation/R", "depth must be >= 0");
            job.truncation.R = static_cast<int>(depth);
        }
    }

    if (const auto it = root.find("sweep"); it != root.end()) {
        if (!it->is_array() || it->empty())
            throw SchemaError("/sweep", "expected a non-empty array of integers");
        for (std::size_t i = 0; i < it->size(); ++i) {
            const std::string path = "/sweep/" + std::to_string(i);
            const std::int64_t n = detail::parse_count((*it)[i], path);
            if (n < 1) throw SchemaError(path, "cutoff must be >= 1");
            if (!job.sweep.empty() && n <= job.sweep.back())
                throw SchemaError(path, "cutoffs must be strictly ascending");
            job.sweep.push_back(static_cast<int>(n));
        }
    }

    if (const auto it = root.find("tolerance"); it != root.end()) {
        const double tol = detail::parse_decimal(*it, "/tolerance");
        if (!(tol > 0.0)) throw SchemaError("/tolerance", "must be > 0");
        job.tolerance = tol;
    }

    return job;
}

inline SumJob load_job(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SchemaError("/", "cannot open job file: " + path);
    std::ostringstream text;
    text << in.rdbuf();
    json root;
    try {
        root = json::parse(text.str());
    } catch (const json::parse_error& e) {
        throw ParseError(e.byte, e.what());
    }
    return parse_job(root);
}

}  // namespace cli
}  // namespace finsum
