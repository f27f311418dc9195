#include "report.hpp"

#include <ctime>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace effcurves::report {

namespace {

std::string status_name(CertStatus s) { return chain_status_name(s); }

Variants parse_variant(const std::string& v) {
    try {
        return Variants::parse(v);
    } catch (const DomainError& e) {
        throw UsageError(std::string("--variant: ") + e.what());
    }
}

ConstantLedger make_ledger(const mpq_class& eps0, const Variants& v, long prec) {
    try {
        return ConstantLedger(eps0, v, prec);
    } catch (const InvalidEps0& e) {
        throw UsageError(std::string("--eps0: ") + e.what());
    }
}

void require_positive(long v, const char* flag) {
    if (v < 1)
        throw UsageError(std::string(flag) + " must be a positive integer, got " + std::to_string(v));
}

Json box_json(const Box& b, int digits) {
    Json j = Json::object();
    for (const auto& [name, v] : b)
        j[name] = enclosure(v, digits);
    return j;
}

Json stats_json(const CertStats& st) {
    return Json{{"subdomains", st.subdomains}, {"max_depth_reached", st.max_depth_reached}, {"precision", st.precision}};
}

Json trace_json(const PipelineTrace& t, int digits) {
    Json stages = Json::array();
    for (const auto& st : t.stages) {
        Json values = Json::object();
        for (const auto& [name, v] : st.values)
            values[name] = enclosure(v, digits);
        Json checks = Json::array();
        for (const auto& c : st.checks)
            checks.push_back({{"name", c.name},
                              {"statement", c.statement},
                              {"kind", c.hypothesis ? "hypothesis" : "consistency"},
                              {"status", status_name(c.status)}});
        stages.push_back({{"name", st.name}, {"citation", st.citation}, {"values", values}, {"checks", checks}});
    }
    Json j{{"variants", t.variants.name()}, {"stage_count", t.stages.size()}, {"stages", stages}};
    j["final_bound"] = t.final_bound ? Json(enclosure(*t.final_bound, digits)) : Json(nullptr);
    j["composed_bound"] = t.composed_bound ? Json(enclosure(*t.composed_bound, digits)) : Json(nullptr);
    j["consistent"] = t.consistent;
    j["verdict"] = t.verdict;
    return j;
}

std::vector<std::string> failed_checks(const PipelineTrace& t) {
    std::vector<std::string> out;
    for (const auto& st : t.stages)
        for (const auto& c : st.checks)
            if (c.status != CertStatus::Proved)
                out.push_back(st.name + "/" + c.name + " " + status_name(c.status));
    return out;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
    std::string r;
    for (std::size_t i = 0; i < v.size(); ++i)
        r += (i ? sep : "") + v[i];
    return r;
}

// ------------------------------------------------------------ surfaces and curve specs

struct SurfaceSpec {
    std::string name;
    std::optional<Sporadic> slopes;  // set for s11 / s04
    std::optional<SubsurfaceEmbedding> fixture;
    SurfacePtr surface() const { return fixture ? fixture->sub() : SurfacePtr(); }
};

SubsurfaceEmbedding load_fixture(const std::string& ref) {
    std::string path = ref;
    if (!std::filesystem::exists(path)) {
        const std::string shipped = std::string(EFFCURVES_SOURCE_DIR) + "/fixtures/" + ref + ".fix";
        if (!std::filesystem::exists(shipped))
            throw UsageError("fixture not found: " + ref);
        path = shipped;
    }
    try {
        return SubsurfaceEmbedding::load(path);
    } catch (const CurveError& e) {
        throw UsageError(std::string("fixture ") + ref + ": " + e.what());
    }
}

SurfaceSpec parse_surface(const std::string& s) {
    SurfaceSpec r;
    r.name = s;
    if (s == "s11")
        r.slopes = Sporadic::OneHoledTorus;
    else if (s == "s04")
        r.slopes = Sporadic::FourHoledSphere;
    else if (s.rfind("fixture:", 0) == 0)
        r.fixture = load_fixture(s.substr(8));
    else
        throw UsageError("--surface must be s11, s04 or fixture:<file>, got '" + s + "'");
    return r;
}

std::vector<long> parse_list(const std::string& s, const std::string& spec) {
    std::vector<long> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stol(item, &pos));
            if (pos != item.size())
                throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw UsageError("bad integer '" + item + "' in curve spec '" + spec + "'");
        }
    }
    return out;
}

// edges:w0,w1,... | word:d0,d1,... | surface <id>; weights ...
NormalCurve parse_curve_spec(const std::string& spec, const SurfacePtr& s) {
    NormalCurve c;
    try {
        if (spec.rfind("edges:", 0) == 0)
            c = NormalCurve::from_edge_weights(s, parse_list(spec.substr(6), spec));
        else if (spec.rfind("word:", 0) == 0) {
            const auto w = parse_list(spec.substr(5), spec);
            c = NormalCurve::from_word(s, Word(w.begin(), w.end()));
        } else if (spec.rfind("surface", 0) == 0)
            c = parse_curve(spec, s);
        else
            throw UsageError("curve spec must start with edges:, word: or surface, got '" + spec + "'");
    } catch (const CurveError& e) {
        throw UsageError("curve '" + spec + "': " + e.what());
    } catch (const std::out_of_range&) {
        throw UsageError("curve '" + spec + "' does not fit surface " + s->id());
    }
    const Validity v = normal_is_valid(c);
    if (!v.ok)
        throw UsageError("curve '" + spec + "' is not an essential simple closed curve: " + v.diagnostic);
    return c;
}

Slope parse_slope(const std::string& spec) {
    try {
        return Slope::parse(spec);
    } catch (const std::exception& e) {
        throw UsageError("slope '" + spec + "': " + e.what());
    }
}

Json hempel_json(std::optional<int> d, std::uint64_t i, int digits) {
    Json j{{"statement", "d <= 2 + 2 log2 i"}, {"bound", enclosure(hempel_bound(i), digits)}};
    j["holds"] = d ? Json(hempel_holds(*d, i)) : Json(nullptr);
    return j;
}

} // namespace

std::string enclosure(const IntervalScalar& x, int digits) { return x.to_string(digits); }

mpq_class parse_exact(const std::string& text, const std::string& flag) {
    Expr e;
    try {
        e = parse_expr(text);
    } catch (const ParseError& err) {
        throw UsageError(flag + ": " + err.what());
    }
    if (e.node().op != Op::Const)
        throw UsageError(flag + " must be an exact rational constant, got '" + text + "'");
    return e.node().value;
}

Json envelope(const std::string& command, const Settings& s) {
    Json j{{"schema", "effcurves/" + command + "/v1"}, {"command", command}, {"precision_bits", s.precision},
           {"digits", s.digits}};
    if (s.timestamp) {
        const std::time_t now = std::time(nullptr);
        char buf[32];
        std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
        j["generated_at"] = buf;
    }
    return j;
}

// ------------------------------------------------------------ thm-a

Outcome thm_a(const ThmAArgs& a, const Settings& s) {
    Outcome out;
    Json& j = out.json;
    j = envelope("thm-a", s);
    j["inputs"] = {{"eps0", a.eps0}, {"chi_s", a.chi_s}, {"chi_y", a.chi_y}, {"dy", a.dy}, {"variant", a.variant}};
    const mpq_class eps0 = parse_exact(a.eps0, "--eps0");
    require_positive(a.chi_s, "--chi-s");
    require_positive(a.chi_y, "--chi-y");
    const Variants v = parse_variant(a.variant);
    const ConstantLedger L = make_ledger(eps0, v, s.precision);
    j["eps0"] = eps0.get_str();
    j["variant"] = v.name();

    const IntervalScalar th = thmA_threshold(L, a.chi_y, a.chi_s);
    Expr dy_expr;
    try {
        dy_expr = parse_expr(a.dy);
    } catch (const ParseError& e) {
        throw UsageError(std::string("--dy: ") + e.what());
    }
    for (const auto& name : dy_expr.variables())
        if (name != "threshold")
            throw UsageError("--dy may only mention `threshold`, got '" + name + "'");
    Box b;
    b["threshold"] = th;
    IntervalScalar dy;
    try {
        dy = eval(dy_expr, b, s.precision);
    } catch (const DomainError& e) {
        throw UsageError(std::string("--dy: ") + e.what());
    }
    if (!dy.certainly_nonneg())
        throw UsageError("--dy must be nonnegative, got " + enclosure(dy, s.digits));

    Json constants = Json::object();
    for (const char* name : {"a", "b", "c"}) {
        const LedgerEntry& en = L.entry(name);
        constants[name] = {{"formula", en.formula}, {"value", enclosure(L.value(name), s.digits)},
                           {"citation", en.citation}};
    }
    j["constants"] = constants;
    Json outputs{{"threshold", enclosure(th, s.digits)}, {"dy", enclosure(dy, s.digits)}};
    Json warnings = Json::array();
    warnings.push_back("variant selection: " + v.name());
    std::ostringstream text;
    text << "eps0        " << eps0.get_str() << "\nvariant     " << v.name() << "\n|chi(S)|    " << a.chi_s
         << "\n|chi(Y)|    " << a.chi_y << "\nthreshold   " << enclosure(th, s.digits) << "\nd_Y         "
         << enclosure(dy, s.digits) << "\n";

    try {
        const IntervalScalar bound = thmA_length_bound(L, a.chi_y, a.chi_s, dy);
        outputs["verdict"] = "bound";
        outputs["length_bound"] = enclosure(bound, s.digits);
        text << "verdict     bound\nlength      " << enclosure(bound, s.digits) << "\n";
    } catch (const BelowThreshold& e) {
        outputs["verdict"] = "BelowThreshold";
        outputs["length_bound"] = nullptr;
        outputs["message"] = e.what();
        text << "verdict     BelowThreshold\n            " << e.what() << "\n";
        out.exit = kBelowThreshold;
    }
    j["outputs"] = outputs;

    // the staged argument, run only when the closed form applies
    if (out.exit == kOk) {
        std::optional<PipelineTrace> trace;
        try {
            trace = theorem_a_pipeline(L, a.chi_s, a.chi_y, dy);
        } catch (const BelowThreshold& e) {
            warnings.push_back(std::string("pipeline stopped: ") + e.what());
            if (e.partial)
                trace = *e.partial;
        }
        if (trace) {
            j["pipeline"] = trace_json(*trace, s.digits);
            const auto bad = failed_checks(*trace);
            if (!bad.empty())
                warnings.push_back("pipeline checks not proved: " + join(bad, ", "));
            text << "pipeline    " << trace->stages.size() << " stages, "
                 << (trace->consistent ? "consistent" : "inconsistent") << "\n";
            for (const auto& w : bad)
                text << "            " << w << "\n";
        } else {
            j["pipeline"] = nullptr;
        }
    } else {
        j["pipeline"] = nullptr;
    }
    j["citations"] = {"Theorem A: threshold a |chi(Y)|^345 + b log |chi(S)|",
                      "Theorem A: length bound c |chi(Y)|^248 / (d_Y - b log |chi(S)|)"};
    j["warnings"] = warnings;
    out.text = text.str();
    return out;
}

// ------------------------------------------------------------ thm-b

Outcome thm_b(const ThmBArgs& a, const Settings& s) {
    Outcome out;
    Json& j = out.json;
    j = envelope("thm-b", s);
    j["inputs"] = {{"eps0", a.eps0}, {"chi_s", a.chi_s}, {"inj", a.inj}};
    const mpq_class eps0 = parse_exact(a.eps0, "--eps0");
    require_positive(a.chi_s, "--chi-s");
    const mpq_class inj = parse_exact(a.inj, "--inj");
    if (inj <= 0)
        throw UsageError("--inj must be positive, got " + inj.get_str());
    const ConstantLedger L = make_ledger(eps0, Variants::lemma(), s.precision);
    j["eps0"] = eps0.get_str();
    const ThmBResult r = thmB_bound(L, a.chi_s, IntervalScalar::point(inj, s.precision));
    j["constants"] = {{"k", {{"formula", L.entry("k").formula}, {"value", enclosure(L.value("k"), s.digits)},
                             {"citation", L.entry("k").citation}}}};
    j["outputs"] = {{"bound", enclosure(r.bound, s.digits)}};
    j["citations"] = {"Theorem B: k |chi(S)|^346 / inj"};
    j["warnings"] = r.warnings;
    std::ostringstream text;
    text << "eps0        " << eps0.get_str() << "\n|chi(S)|    " << a.chi_s << "\ninj         " << inj.get_str()
         << "\nk           " << enclosure(L.value("k"), s.digits) << "\nbound       "
         << enclosure(r.bound, s.digits) << "\n";
    for (const auto& w : r.warnings)
        text << "warning     " << w << "\n";
    out.text = text.str();
    return out;
}

// ------------------------------------------------------------ verify

namespace {

Json chain_json(const ChainCert& c, int digits) {
    Json steps = Json::array();
    Json witness = nullptr;
    Json exponents = Json::array();
    CertStats total;
    total.precision = 0;
    for (const auto& st : c.steps) {
        Json sj{{"kind", st.kind}, {"line", st.line}, {"text", st.text}, {"status", status_name(st.status)}};
        if (!st.detail.empty())
            sj["detail"] = st.detail;
        if (st.box)
            sj["domain"] = box_json(*st.box, digits);
        if (st.cert) {
            sj["stats"] = stats_json(st.cert->stats);
            total.subdomains += st.cert->stats.subdomains;
            total.max_depth_reached = std::max(total.max_depth_reached, st.cert->stats.max_depth_reached);
            total.precision = std::max(total.precision, st.cert->stats.precision);
            if (st.cert->witness) {
                Json w{{"box", box_json(*st.cert->witness, digits)}};
                w["value"] = st.cert->witness_value ? Json(enclosure(*st.cert->witness_value, digits)) : Json(nullptr);
                sj["witness"] = w;
                if (witness.is_null() && st.status == CertStatus::Disproved) {
                    witness = w;
                    witness["line"] = st.line;
                }
            }
        }
        if (st.identity) {
            const IdentityReport& r = *st.identity;
            Json ej{{"line", st.line}, {"lhs", r.lhs.render()}, {"rhs", r.rhs.render()},
                    {"ratio", r.ratio.render()}, {"holds", r.holds}};
            sj["identity"] = ej;
            exponents.push_back(ej);
        }
        steps.push_back(sj);
    }
    Json j{{"chain_id", c.id}, {"title", c.title}, {"citation", c.citation}, {"file", c.file},
           {"status", status_name(c.status)}};
    if (!witness.is_null())
        j["witness"] = witness;
    if (!exponents.empty())
        j["exponent_report"] = exponents;
    if (!c.variant_outcomes.empty()) {
        Json vo = Json::array();
        for (const auto& o : c.variant_outcomes)
            vo.push_back({{"variant", o.variant}, {"status", status_name(o.status)}, {"details", o.details}});
        j["variant_outcomes"] = vo;
    }
    j["notes"] = c.notes;
    j["steps"] = steps;
    j["stats"] = {{"steps", c.steps.size()}, {"subdomains", total.subdomains},
                  {"max_depth_reached", total.max_depth_reached}, {"precision", total.precision}};
    return j;
}

} // namespace

Outcome verify(const VerifyArgs& a, const Settings& s) {
    Outcome out;
    Json& j = out.json;
    j = envelope("verify", s);
    j["inputs"] = {{"chain", a.chain}, {"eps0_lo", a.eps0_lo}, {"eps0_hi", a.eps0_hi}, {"max_depth", a.max_depth}};
    ChainOptions opt;
    opt.eps0_lo = parse_exact(a.eps0_lo, "--eps0-lo");
    opt.eps0_hi = parse_exact(a.eps0_hi, "--eps0-hi");
    if (!(0 < opt.eps0_lo && opt.eps0_lo <= opt.eps0_hi))
        throw UsageError("need 0 < --eps0-lo <= --eps0-hi");
    if (a.max_depth < 0)
        throw UsageError("--max-depth must be nonnegative");
    opt.cert.precision = s.precision;
    opt.cert.max_depth = a.max_depth;
    opt.cert.threads = std::max(1u, a.threads);
    const std::string dir = a.chains_dir.empty() ? default_chains_dir() : a.chains_dir;
    if (!std::filesystem::is_directory(dir))
        throw UsageError("chain corpus directory not found: " + dir);
    const ConstantLedger L = make_ledger(mpq_class(1, 10), Variants::lemma(), s.precision);

    std::vector<ChainCert> certs;
    try {
        if (a.chain == "all") {
            certs = verify_assembly(L, opt, dir);
        } else {
            const auto defs = load_chain_corpus(dir);
            auto it = std::find_if(defs.begin(), defs.end(), [&](const ChainDef& d) { return d.id == a.chain; });
            if (it == defs.end())
                throw UsageError("unknown chain id '" + a.chain + "'");
            certs.push_back(run_chain(*it, L, opt));
        }
    } catch (const InvalidEps0& e) {
        throw UsageError(std::string("--eps0-hi: ") + e.what());
    } catch (const ParseError& e) {
        throw UsageError(std::string("chain corpus: ") + e.what());
    }

    Json chains = Json::array();
    int proved = 0, refuted = 0, unknown = 0;
    std::ostringstream text;
    for (const auto& c : certs) {
        chains.push_back(chain_json(c, s.digits));
        proved += c.status == CertStatus::Proved;
        refuted += c.status == CertStatus::Disproved;
        unknown += c.status == CertStatus::Unknown;
        text << status_name(c.status) << std::string(9 - status_name(c.status).size(), ' ') << c.id << "\n";
        for (const auto& st : c.steps)
            if (st.status != CertStatus::Proved)
                text << "         line " << st.line << " " << status_name(st.status) << ": " << st.text
                     << (st.detail.empty() ? "" : "\n           " + st.detail) << "\n";
        for (const auto& o : c.variant_outcomes)
            text << "         [" << o.variant << "] " << status_name(o.status) << "\n";
    }
    j["chains_dir"] = a.chains_dir.empty() ? "(shipped corpus)" : a.chains_dir;
    j["chains"] = chains;
    j["summary"] = {{"chains", certs.size()}, {"proved", proved}, {"refuted", refuted}, {"unknown", unknown}};
    text << proved << " proved, " << refuted << " refuted, " << unknown << " unknown\n";
    out.text = text.str();
    out.exit = refuted ? kRefuted : unknown ? kUnresolved : kOk;
    return out;
}

// ------------------------------------------------------------ curves

Outcome curves(const CurvesArgs& a, const Settings& s) {
    Outcome out;
    Json& j = out.json;
    j = envelope("curves", s);
    j["inputs"] = {{"action", a.action}, {"surface", a.surface}, {"curves", a.curves}, {"radius", a.radius}};
    if (a.radius < 0)
        throw UsageError("--radius must be nonnegative");
    const SurfaceSpec sf = parse_surface(a.surface);
    std::ostringstream text;
    j["surface"] = sf.slopes ? Json(sporadic_name(*sf.slopes)) : Json(sf.fixture->sub()->id());

    if (a.action == "graph") {
        if (!a.curves.empty())
            throw UsageError("graph takes no curves");
        CurveGraphSlice g;
        try {
            g = sf.slopes ? enumerate_curve_graph(*sf.slopes, a.radius) : enumerate_curve_graph(sf.surface(), a.radius);
        } catch (const ComplexityExceeded& e) {
            j["outputs"] = {{"status", "Unresolved"}, {"message", e.what()}};
            out.text = std::string("Unresolved: ") + e.what() + "\n";
            out.exit = kUnresolved;
            return out;
        }
        Json edges = Json::array();
        for (std::size_t u = 0; u < g.adjacency.size(); ++u)
            for (int w : g.adjacency[u])
                if (static_cast<int>(u) < w)
                    edges.push_back({u, w});
        j["outputs"] = {{"status", "Resolved"}, {"relation", g.relation}, {"bound", g.bound},
                        {"vertex_count", g.labels.size()}, {"edge_count", edges.size()},
                        {"vertices", g.labels}, {"edges", edges}};
        text << g.labels.size() << " vertices, " << edges.size() << " edges, relation " << g.relation << "\n"
             << g.to_edge_list();
        out.text = text.str();
        return out;
    }
    if (a.action != "distance" && a.action != "intersect")
        throw UsageError("curves action must be distance, intersect or graph, got '" + a.action + "'");
    if (a.curves.size() != 2)
        throw UsageError(a.action + " takes exactly two curves");

    std::uint64_t i = 0;
    std::optional<int> d;
    Json dist = nullptr;
    if (sf.slopes) {
        const Slope x = parse_slope(a.curves[0]), y = parse_slope(a.curves[1]);
        j["curves"] = {x.to_string(), y.to_string()};
        i = static_cast<std::uint64_t>(slope_intersection(x, y, *sf.slopes));
        if (a.action == "distance") {
            d = farey_distance(x, y, a.radius);
            dist = d ? Json{{"status", "Resolved"}, {"distance", *d}}
                     : Json{{"status", "Unresolved"}, {"distance", nullptr}, {"lower", a.radius + 1}};
        }
    } else {
        const NormalCurve x = parse_curve_spec(a.curves[0], sf.surface()), y = parse_curve_spec(a.curves[1], sf.surface());
        j["curves"] = {format_curve(x), format_curve(y)};
        i = normal_intersection(x, y);
        if (a.action == "distance") {
            try {
                const DistanceBounds db = CurveGraphOracle(sf.surface(), a.radius).distance(x, y);
                if (db.resolved())
                    d = db.hi;
                dist = {{"status", db.resolved() ? "Resolved" : "Unresolved"}, {"distance", d ? Json(*d) : Json(nullptr)},
                        {"lower", db.lo}, {"upper", db.hi}};
            } catch (const ComplexityExceeded& e) {
                dist = {{"status", "Unresolved"}, {"distance", nullptr}, {"message", e.what()}};
            }
        }
    }
    Json outputs{{"intersection", i}};
    text << "intersection  " << i << "\n";
    if (a.action == "distance") {
        outputs["distance"] = dist;
        const Json h = hempel_json(d, i, s.digits);
        outputs["hempel"] = h;
        if (d) {
            text << "distance      " << *d << "\nhempel bound  " << h["bound"].get<std::string>() << " "
                 << (h["holds"].get<bool>() ? "holds" : "FAILS") << "\n";
            if (!h["holds"].get<bool>())
                out.exit = kRefuted;
        } else {
            text << "distance      Unresolved\n";
            out.exit = kUnresolved;
        }
    }
    j["outputs"] = outputs;
    j["citations"] = {"intersection bound on curve graph distance: d <= 2 + 2 log2 i"};
    out.text = text.str();
    return out;
}

// ------------------------------------------------------------ project

Outcome project(const ProjectArgs& a, const Settings& s) {
    Outcome out;
    Json& j = out.json;
    j = envelope("project", s);
    j["inputs"] = {{"fixture", a.fixture}, {"curve", a.curve}, {"slice_bound", a.slice_bound}};
    if (a.fixture.empty() || a.curve.empty())
        throw UsageError("project needs --fixture and --curve");
    const SubsurfaceEmbedding emb = load_fixture(a.fixture);
    const NormalCurve alpha = parse_curve_spec(a.curve, emb.ambient());
    j["ambient"] = emb.ambient()->id();
    j["subsurface"] = emb.sub()->id();
    j["curve"] = format_curve(alpha);
    std::ostringstream text;
    ArcSystem sys;
    ProjectionSet ps;
    try {
        sys = split_into_arcs(emb, alpha);
        ps = project_curve(emb, alpha);
    } catch (const NoEssentialIntersection& e) {
        j["outputs"] = {{"status", "NoEssentialIntersection"}, {"message", e.what()}};
        out.text = std::string("NoEssentialIntersection: ") + e.what() + "\n";
        out.exit = kBelowThreshold;
        return out;
    } catch (const DegenerateSurgery& e) {
        j["outputs"] = {{"status", "DegenerateSurgery"}, {"message", e.what()}};
        out.text = std::string("DegenerateSurgery: ") + e.what() + "\n";
        out.exit = kUnresolved;
        return out;
    }
    Json set = Json::array();
    for (const auto& c : ps.curves)
        set.push_back(format_curve(c));
    std::uint64_t within = 0;
    for (const auto& arc : ps.per_arc)
        for (int x : arc)
            for (int y : arc)
                if (x < y)
                    within = std::max(within, normal_intersection(ps.curves[x], ps.curves[y]));
    const CurveGraphOracle oracle(emb.sub(), a.slice_bound);
    const DistanceBounds diam = projection_diameter(ps, oracle);
    const bool contained = sys.arcs.empty();
    const std::string diam_status = diam.hi <= 4 ? "Proved" : diam.lo > 4 ? "Refuted" : "Unknown";
    const std::string arc_status = within <= 2 ? "Proved" : "Refuted";
    j["outputs"] = {{"status", contained ? "Contained" : "Projected"},
                    {"arcs", sys.arcs.size()},
                    {"boundary_intersection", sys.endpoints},
                    {"projection", set},
                    {"per_arc", ps.per_arc},
                    {"max_intersection_within_arc", within},
                    {"diameter", {{"lower", diam.lo}, {"upper", diam.hi}, {"resolved", diam.resolved()}}},
                    {"checks",
                     {{"per_arc_intersection_le_2", arc_status}, {"diameter_le_4", diam_status}}}};
    j["citations"] = {"subsurface projection: diameter of pi_Y(alpha) at most 4"};
    text << (contained ? "contained in " : "projected to ") << emb.sub()->id() << ", " << sys.arcs.size()
         << " arcs, " << ps.curves.size() << " curves\n";
    for (const auto& c : set)
        text << "  " << c.get<std::string>() << "\n";
    text << "max i within an arc  " << within << " (" << arc_status << ")\ndiameter             " << diam.lo
         << (diam.resolved() ? "" : ".." + std::to_string(diam.hi)) << " (" << diam_status << ")\n";
    out.text = text.str();
    if (arc_status == "Refuted" || diam_status == "Refuted")
        out.exit = kRefuted;
    else if (diam_status == "Unknown")
        out.exit = kUnresolved;
    return out;
}

} // namespace effcurves::report
