#include "effcurves/bounds.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

namespace effcurves {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string replace_all(std::string s, const std::string& from, const std::string& to) {
    for (std::size_t pos = 0; (pos = s.find(from, pos)) != std::string::npos; pos += to.size())
        s.replace(pos, from.size(), to);
    return s;
}

std::string rational_text(const mpq_class& q) { return q.get_str(); }

CertStatus combine(CertStatus acc, CertStatus s) {
    if (acc == CertStatus::Disproved || s == CertStatus::Disproved)
        return CertStatus::Disproved;
    if (acc == CertStatus::Unknown || s == CertStatus::Unknown)
        return CertStatus::Unknown;
    return CertStatus::Proved;
}

// names the chain text may use besides the ledger entries
std::map<std::string, Expr> formula_names() {
    return {{"anosov_T", hyp::formula::anosov_T()}};
}

// top-level summands, with subtraction rejected
bool split_sum(const Expr& e, std::vector<Expr>& out) {
    if (e.op() == Op::Add)
        return split_sum(e.kids()[0], out) && split_sum(e.kids()[1], out);
    if (e.op() == Op::Sub || e.op() == Op::Neg)
        return false;
    out.push_back(e);
    return true;
}

class StepRunner {
public:
    StepRunner(const ConstantLedger& L, const ChainOptions& opt) : L_(L), opt_(opt) {
        subs_ = L.substitutions();
        for (auto& [k, v] : formula_names())
            subs_[k] = v;
        monos_ = L.monomials();
    }

    ChainStep run(const ChainStepDef& d, const std::string& file) {
        ChainStep s;
        s.kind = d.kind;
        s.line = d.line;
        s.text = replace_all(replace_all(d.text, "$eps0_lo", rational_text(opt_.eps0_lo)), "$eps0_hi",
                             rational_text(opt_.eps0_hi));
        try {
            if (d.kind == "let")
                run_let(s);
            else if (d.kind == "identity")
                run_identity(s);
            else if (d.kind == "dominate")
                run_dominate(s);
            else
                run_ineq(s);
        } catch (const ParseError& e) {
            throw ParseError(file + ": " + e.what(), d.line, e.column);
        } catch (const CertDomainError& e) {
            s.status = CertStatus::Unknown;
            s.detail = std::string("domain error during certification: ") + e.what();
        }
        return s;
    }

private:
    Expr expand(const Expr& e) const {
        // lets may mention ledger names, so expand them first
        return e.substitute(lets_).substitute(subs_);
    }

    void run_let(ChainStep& s) {
        const auto eq = s.text.find('=');
        if (eq == std::string::npos)
            throw ParseError("let needs NAME = EXPR", s.line, 1);
        const std::string name = trim(s.text.substr(0, eq));
        const Expr e = parse_expr(trim(s.text.substr(eq + 1)));
        lets_[name] = e.substitute(lets_);
        if (auto m = as_monomial(lets_[name], monos_))
            let_monos_[name] = *m;
        s.status = CertStatus::Proved;
        s.detail = name + " := " + lets_[name].render();
    }

    std::optional<Monomial> monomial(const Expr& e) const {
        std::map<std::string, Monomial> names = monos_;
        for (auto& [k, v] : let_monos_)
            names[k] = v;
        return as_monomial(e, names);
    }

    void run_identity(ChainStep& s) {
        const auto eq = s.text.find("==");
        if (eq == std::string::npos)
            throw ParseError("identity needs LHS == RHS", s.line, 1);
        const Expr lhs = parse_expr(trim(s.text.substr(0, eq)));
        const Expr rhs = parse_expr(trim(s.text.substr(eq + 2)));
        auto ml = monomial(lhs), mr = monomial(rhs);
        if (!ml || !mr) {
            s.status = CertStatus::Unknown;
            s.detail = "not a monomial identity";
            return;
        }
        s.identity = check_identity(*ml, *mr);
        s.status = s.identity->holds ? CertStatus::Proved : CertStatus::Disproved;
        s.detail = "lhs = " + ml->render() + "; rhs = " + mr->render() + "; lhs/rhs = " + s.identity->ratio.render();
    }

    void certify(ChainStep& s, const Expr& e, const Box& b) {
        s.expr = e;
        s.box = b;
        s.cert = certify_nonneg(e, b, opt_.cert);
        s.status = s.cert->status;
    }

    void run_ineq(ChainStep& s) {
        const Inequality q = parse_inequality(s.text, s.line);
        certify(s, expand(q.expr), inequality_box(q, opt_.cert.precision));
    }

    // "A1 + A2 + ... <= B on ..." with monomial summands: certify 1 - sum Ai/B >= 0,
    // each ratio again a monomial so the certifier sees no cancellation
    void run_dominate(ChainStep& s) {
        const auto le = s.text.find("<=");
        const auto on = s.text.find(" on ");
        if (le == std::string::npos || on == std::string::npos || on < le)
            throw ParseError("dominate needs LHS <= RHS on DOMAIN", s.line, 1);
        const Expr lhs = parse_expr(trim(s.text.substr(0, le)));
        const Expr rhs = parse_expr(trim(s.text.substr(le + 2, on - le - 2)));
        const Inequality dom = parse_inequality("0 >= 0" + s.text.substr(on), s.line);
        std::vector<Expr> terms;
        auto mr = monomial(rhs);
        if (!split_sum(lhs, terms) || !mr) {
            s.status = CertStatus::Unknown;
            s.detail = "dominate needs a sum of monomials against a monomial";
            return;
        }
        Expr acc = Expr::integer(1);
        std::vector<std::string> ratios;
        for (const Expr& t : terms) {
            auto mt = monomial(t);
            if (!mt) {
                s.status = CertStatus::Unknown;
                s.detail = "summand " + t.render() + " is not a monomial";
                return;
            }
            const Monomial r = *mt / *mr;
            ratios.push_back(r.render());
            acc = acc - r.to_expr();
        }
        std::ostringstream os;
        os << "ratios to rhs:";
        for (const auto& r : ratios)
            os << " [" << r << "]";
        s.detail = os.str();
        certify(s, acc, inequality_box(dom, opt_.cert.precision));
    }

    const ConstantLedger& L_;
    const ChainOptions& opt_;
    std::map<std::string, Expr> subs_;
    std::map<std::string, Monomial> monos_;
    std::map<std::string, Expr> lets_;
    std::map<std::string, Monomial> let_monos_;
};

std::vector<ChainStep> run_steps(const ChainDef& def, const ConstantLedger& L, const ChainOptions& opt) {
    StepRunner r(L, opt);
    std::vector<ChainStep> out;
    for (const auto& d : def.steps)
        out.push_back(r.run(d, def.file));
    return out;
}

CertStatus overall(const std::vector<ChainStep>& steps) {
    CertStatus s = CertStatus::Proved;
    for (const auto& st : steps)
        s = combine(s, st.status);
    return s;
}

// which variant flags the chain text depends on: c2 is built from c1
std::vector<int> variant_flags(const ChainDef& def) {
    std::set<int> f;
    static const std::regex c1(R"(\bc1\b)"), c2(R"(\bc2\b)"), c3(R"(\bc3\b)");
    for (const auto& d : def.steps) {
        if (std::regex_search(d.text, c1))
            f.insert(1);
        if (std::regex_search(d.text, c2)) {
            f.insert(1);
            f.insert(2);
        }
        if (std::regex_search(d.text, c3))
            f.insert(3);
    }
    return {f.begin(), f.end()};
}

void check_eps0_box(const ChainOptions& opt) {
    if (opt.eps0_lo <= 0 || opt.eps0_lo > opt.eps0_hi)
        throw DomainError("eps0 box must satisfy 0 < lo <= hi");
    MargulisEps hi(opt.eps0_hi);  // throws InvalidEps0 beyond arcsinh(1/4)
    (void)hi;
}

} // namespace

std::string chain_status_name(CertStatus s) {
    switch (s) {
    case CertStatus::Proved: return "Proved";
    case CertStatus::Disproved: return "Refuted";
    case CertStatus::Unknown: return "Unknown";
    }
    return "?";
}

std::vector<ChainDef> parse_chain_file(const std::string& text, const std::string& file) {
    std::vector<ChainDef> out;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    static const std::set<std::string> step_kinds{"identity", "ineq", "tail", "dominate", "let"};
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty() || line[0] == '#')
            continue;
        const auto sp = line.find_first_of(" \t");
        const std::string kw = line.substr(0, sp);
        const std::string rest = sp == std::string::npos ? "" : trim(line.substr(sp));
        if (kw == "chain") {
            ChainDef d;
            const auto bar = rest.find('|');
            d.id = trim(rest.substr(0, bar));
            d.title = bar == std::string::npos ? "" : trim(rest.substr(bar + 1));
            d.file = file;
            if (d.id.empty() || d.id.find_first_of(" \t") != std::string::npos)
                throw ParseError(file + ": bad chain id", line_no, 1);
            out.push_back(std::move(d));
            continue;
        }
        if (out.empty())
            throw ParseError(file + ": '" + kw + "' before any chain", line_no, 1);
        ChainDef& d = out.back();
        if (kw == "citation")
            d.citation = rest;
        else if (kw == "note")
            d.notes.push_back(rest);
        else if (step_kinds.count(kw)) {
            if (rest.empty())
                throw ParseError(file + ": empty " + kw + " step", line_no, 1);
            d.steps.push_back({kw, rest, line_no});
        } else
            throw ParseError(file + ": unknown keyword '" + kw + "'", line_no, 1);
    }
    for (const auto& d : out)
        if (d.steps.empty())
            throw ParseError(file + ": chain " + d.id + " has no steps", 0, 0);
    return out;
}

std::vector<ChainDef> load_chain_corpus(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir))
        throw DomainError("chain corpus directory " + dir + " not found");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".ineq")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    std::vector<ChainDef> all;
    std::set<std::string> ids;
    for (const auto& f : files) {
        std::ifstream in(f);
        std::stringstream ss;
        ss << in.rdbuf();
        for (auto& d : parse_chain_file(ss.str(), f.filename().string())) {
            if (!ids.insert(d.id).second)
                throw ParseError("duplicate chain id " + d.id + " in " + f.filename().string(), 0, 0);
            all.push_back(std::move(d));
        }
    }
    std::sort(all.begin(), all.end(), [](const ChainDef& a, const ChainDef& b) { return a.id < b.id; });
    return all;
}

std::string default_chains_dir() {
    if (const char* env = std::getenv("EFFCURVES_CHAINS_DIR"); env && *env)
        return env;
#ifdef EFFCURVES_SOURCE_DIR
    return std::string(EFFCURVES_SOURCE_DIR) + "/chains";
#else
    return "chains";
#endif
}

ChainCert run_chain(const ChainDef& def, const ConstantLedger& L, const ChainOptions& opt) {
    check_eps0_box(opt);
    ChainCert c;
    c.id = def.id;
    c.title = def.title;
    c.citation = def.citation;
    c.file = def.file;
    c.notes = def.notes;
    c.steps = run_steps(def, L, opt);
    c.status = overall(c.steps);

    const std::vector<int> flags = variant_flags(def);
    for (unsigned mask = 0; !flags.empty() && mask < (1u << flags.size()); ++mask) {
        Variants v = L.variants();
        for (std::size_t i = 0; i < flags.size(); ++i) {
            const bool alt = (mask >> i) & 1u;
            (flags[i] == 1 ? v.c1_alt : flags[i] == 2 ? v.c2_alt : v.c3_alt) = alt;
        }
        VariantOutcome o;
        std::ostringstream name;
        for (std::size_t i = 0; i < flags.size(); ++i)
            name << (i ? "," : "") << "c" << flags[i] << "=" << (((mask >> i) & 1u) ? "alt" : "lemma");
        o.variant = name.str();
        const std::vector<ChainStep> steps =
            v == L.variants() ? c.steps : run_steps(def, ConstantLedger(L.eps0().value(), v, L.precision()), opt);
        o.status = overall(steps);
        for (const auto& s : steps)
            if (s.kind == "identity" || s.kind == "dominate")
                o.details.push_back(s.detail);
        c.variant_outcomes.push_back(std::move(o));
    }
    return c;
}

std::vector<ChainCert> verify_assembly(const ConstantLedger& L, const ChainOptions& opt, const std::string& dir) {
    std::vector<ChainCert> out;
    for (const auto& d : load_chain_corpus(dir))
        out.push_back(run_chain(d, L, opt));
    return out;
}

} // namespace effcurves
