#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "report.hpp"

using namespace effcurves;
namespace rep = effcurves::report;

namespace {

long default_precision() {
    const char* env = std::getenv("EFFCURVES_PRECISION");
    if (!env || !*env)
        return kDefaultPrecision;
    char* end = nullptr;
    const long p = std::strtol(env, &end, 10);
    if (*end != '\0')
        throw rep::UsageError(std::string("EFFCURVES_PRECISION must be an integer, got '") + env + "'");
    return p;
}

bool is_surface(const std::string& s) { return s == "s11" || s == "s04" || s.rfind("fixture:", 0) == 0; }

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified evaluation of effective bounds on short curves in hyperbolic 3-manifolds", "effcurves"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json = false, timestamp = false;
    std::string out_path;
    std::optional<long> precision;
    int digits = 12;
    app.add_flag("--json", json, "print the JSON report instead of the table");
    app.add_option("--out", out_path, "also write the JSON report to this file");
    app.add_option("--precision", precision, "working precision in bits (default 128 or EFFCURVES_PRECISION)")
        ->check(CLI::Range(32L, 65536L));
    app.add_option("--digits", digits, "significant digits of rendered enclosures")->check(CLI::Range(3, 200));
    app.add_flag("--timestamp", timestamp, "add a generated_at field to the report");

    rep::ThmAArgs ta;
    auto* thm_a = app.add_subcommand("thm-a", "Theorem A threshold and length bound, with the staged pipeline");
    thm_a->add_option("--eps0", ta.eps0, "Margulis constant, exact (default 1/10)");
    thm_a->add_option("--chi-s", ta.chi_s, "|chi(S)|")->required();
    thm_a->add_option("--chi-y", ta.chi_y, "|chi(Y)|")->required();
    thm_a->add_option("--dy", ta.dy, "projection distance d_Y; may use `threshold`, e.g. 2*threshold")->required();
    thm_a->add_option("--variant", ta.variant, "lemma, sec76 or c1=..,c2=..,c3=..");

    rep::ThmBArgs tb;
    auto* thm_b = app.add_subcommand("thm-b", "Theorem B bound for a closed fibered manifold");
    thm_b->add_option("--eps0", tb.eps0, "Margulis constant, exact (default 1/10)");
    thm_b->add_option("--chi-s", tb.chi_s, "|chi(S)| of the fiber")->required();
    thm_b->add_option("--inj", tb.inj, "injectivity radius, exact")->required();

    rep::VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "certify the inequality chain corpus");
    verify->add_option("--chain", va.chain, "chain id or all");
    verify->add_option("--eps0-lo", va.eps0_lo, "lower end of the eps0 range (default 1/100)");
    verify->add_option("--eps0-hi", va.eps0_hi, "upper end of the eps0 range (default 247/1000)");
    verify->add_option("--max-depth", va.max_depth, "bisection depth limit");
    verify->add_option("--threads", va.threads, "worker threads of the certifier")->check(CLI::Range(1u, 256u));
    verify->add_option("--chains-dir", va.chains_dir, "chain corpus directory");

    rep::CurvesArgs ca;
    std::vector<std::string> curve_args;
    std::optional<std::string> surface;
    auto* curves = app.add_subcommand("curves", "curve graph distance, intersection number or graph slice");
    curves->add_option("action", ca.action, "distance, intersect or graph")->required();
    curves->add_option("args", curve_args, "[surface] curve specs: p/q slopes, edges:.., word:.. or a weights line");
    curves->add_option("--surface", surface, "s11, s04 or fixture:<file|name>");
    curves->add_option("--radius", ca.radius, "BFS radius (slopes) or slice weight bound (fixtures)");

    rep::ProjectArgs pa;
    auto* project = app.add_subcommand("project", "subsurface projection of a curve on a fixture");
    project->add_option("--fixture", pa.fixture, "fixture file or shipped name")->required();
    project->add_option("--curve", pa.curve, "curve on the ambient surface")->required();
    project->add_option("--slice", pa.slice_bound, "slice weight bound for the diameter oracle");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return rep::kUsage;
    }

    rep::Outcome res;
    try {
        rep::Settings st;
        st.precision = precision ? *precision : default_precision();
        if (st.precision < 32 || st.precision > 65536)
            throw rep::UsageError("precision must be in [32, 65536] bits");
        st.digits = digits;
        st.timestamp = timestamp;
        if (*thm_a)
            res = rep::thm_a(ta, st);
        else if (*thm_b)
            res = rep::thm_b(tb, st);
        else if (*verify)
            res = rep::verify(va, st);
        else if (*curves) {
            if (surface)
                ca.surface = *surface;
            else if (!curve_args.empty() && is_surface(curve_args.front())) {
                ca.surface = curve_args.front();
                curve_args.erase(curve_args.begin());
            }
            ca.curves = curve_args;
            res = rep::curves(ca, st);
        } else
            res = rep::project(pa, st);
    } catch (const rep::UsageError& e) {
        std::cerr << "effcurves: " << e.what() << "\n";
        return rep::kUsage;
    } catch (const std::exception& e) {
        std::cerr << "effcurves: " << e.what() << "\n";
        return rep::kUsage;
    }

    const std::string doc = res.json.dump(2) + "\n";
    if (!out_path.empty()) {
        std::ofstream f(out_path, std::ios::binary);
        if (!(f << doc)) {
            std::cerr << "effcurves: cannot write " << out_path << "\n";
            return rep::kUsage;
        }
    }
    std::cout << (json ? doc : res.text);
    return res.exit;
}
