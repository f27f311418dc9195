#pragma once

#include <optional>
#include <string>
#include <vector>

#include "effcurves/bounds.hpp"
#include "effcurves/projection.hpp"
#include "json.hpp"

namespace effcurves::report {

using Json = nlohmann::ordered_json;

// exit codes of the command-line contract
constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kUnresolved = 2;
constexpr int kBelowThreshold = 3;
constexpr int kUsage = 64;

// bad flag values; the CLI maps these to kUsage
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Settings {
    long precision = kDefaultPrecision;
    int digits = 12;
    bool timestamp = false;
};

struct Outcome {
    Json json;
    std::string text;
    int exit = kOk;
};

std::string enclosure(const IntervalScalar& x, int digits);
// an exact rational from a DSL constant expression ("1/10", "0.05", "2^-3")
mpq_class parse_exact(const std::string& text, const std::string& flag);

struct ThmAArgs {
    std::string eps0 = "1/10";
    long chi_s = 2;
    long chi_y = 1;
    std::string dy;  // may mention `threshold`
    std::string variant = "lemma";
};
Outcome thm_a(const ThmAArgs& a, const Settings& s);

struct ThmBArgs {
    std::string eps0 = "1/10";
    long chi_s = 2;
    std::string inj;
};
Outcome thm_b(const ThmBArgs& a, const Settings& s);

struct VerifyArgs {
    std::string chain = "all";
    std::string eps0_lo = "1/100";
    std::string eps0_hi = "247/1000";
    int max_depth = kDefaultMaxDepth;
    unsigned threads = 1;
    std::string chains_dir;  // empty: the shipped corpus
};
Outcome verify(const VerifyArgs& a, const Settings& s);

struct CurvesArgs {
    std::string action;  // distance, intersect, graph
    std::string surface = "s11";
    std::vector<std::string> curves;
    int radius = 12;
};
Outcome curves(const CurvesArgs& a, const Settings& s);

struct ProjectArgs {
    std::string fixture;
    std::string curve;
    long slice_bound = 20;
};
Outcome project(const ProjectArgs& a, const Settings& s);

// the envelope every report starts with
Json envelope(const std::string& command, const Settings& s);

} // namespace effcurves::report
