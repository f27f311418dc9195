#include "effcurves/bounds.hpp"

#include <sstream>

namespace effcurves {

namespace {

Expr q(long v) { return Expr::integer(v); }

Monomial two(long e) { return Monomial::two(e); }
Monomial e0(long e) { return Monomial::eps0(e); }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos)
        return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

} // namespace

Variants Variants::parse(const std::string& text) {
    const std::string t = trim(text);
    if (t == "lemma")
        return lemma();
    if (t == "sec76" || t == "assembly" || t == "alt")
        return assembly();
    Variants v;
    std::stringstream ss(t);
    std::string item;
    bool any = false;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        const auto eq = item.find('=');
        if (eq == std::string::npos)
            throw DomainError("bad variant item '" + item + "'");
        const std::string key = trim(item.substr(0, eq)), val = trim(item.substr(eq + 1));
        bool alt;
        if (val == "lemma")
            alt = false;
        else if (val == "alt" || val == "sec76" || val == "assembly")
            alt = true;
        else
            throw DomainError("variant value must be lemma or alt, got '" + val + "'");
        if (key == "c1")
            v.c1_alt = alt;
        else if (key == "c2")
            v.c2_alt = alt;
        else if (key == "c3")
            v.c3_alt = alt;
        else
            throw DomainError("unknown variant constant '" + key + "'");
        any = true;
    }
    if (!any)
        throw DomainError("empty variant selection");
    return v;
}

std::string Variants::name() const {
    if (*this == lemma())
        return "lemma";
    if (*this == assembly())
        return "sec76";
    auto f = [](bool alt) { return alt ? "alt" : "lemma"; };
    return std::string("c1=") + f(c1_alt) + ",c2=" + f(c2_alt) + ",c3=" + f(c3_alt);
}

ConstantLedger::ConstantLedger(const mpq_class& eps0, Variants v, long prec)
    : eps0_(eps0), variants_(v), prec_(prec) {
    const Expr e = Expr::var("eps0");

    auto add_mono = [&](const std::string& name, const std::string& formula, const std::string& cite,
                        const Monomial& m) {
        index_[name] = entries_.size();
        entries_.push_back({name, formula, cite, m, m.to_expr()});
    };
    auto add_expr = [&](const std::string& name, const std::string& formula, const std::string& cite,
                        const Expr& x) {
        index_[name] = entries_.size();
        entries_.push_back({name, formula, cite, std::nullopt, x});
    };

    const Monomial eps1 = e0(10) / (two(37) * Monomial::pi(8) * Monomial::chi(16));
    add_mono("eps1", "eps0^10/(2^37 pi^8 |chi|^16)", "thick-to-thick lemma", eps1);
    add_mono("epsY", "eps0^10/(2^37 pi^8 |chi(Y)|^16)", "covering proposition, area lemma", eps1);
    add_mono("eps3", "eps1/4", "thick-to-thick lemma", eps1 / two(2));
    add_mono("eps2", "eps3/8", "thick-to-thick lemma", eps1 / two(5));

    const Monomial c1_lemma = two(385) / e0(60), c1_alt = two(109) / e0(60);
    add_mono("c1_lemma", "2^385/eps0^60", "covering lemma for the beta curves", c1_lemma);
    add_mono("c1_alt", "2^109/eps0^60", "constant assembly prose", c1_alt);
    const Monomial c1 = v.c1_alt ? c1_alt : c1_lemma;
    add_mono("c1", v.c1_alt ? "2^109/eps0^60" : "2^385/eps0^60", v.c1_alt ? "constant assembly prose" : "covering lemma for the beta curves", c1);

    // c2 is a multiple of log2 of whichever c1 is selected
    const Expr log2_c1 = log2(c1.to_expr());
    add_expr("c2_lemma", "570 log2(c1)", "shorter curves remark", q(570) * log2_c1);
    add_expr("c2_alt", "230 log2(c1)", "constant assembly prose", q(230) * log2_c1);
    add_expr("c2", v.c2_alt ? "230 log2(c1)" : "570 log2(c1)", v.c2_alt ? "constant assembly prose" : "shorter curves remark",
             q(v.c2_alt ? 230 : 570) * log2_c1);

    const Monomial c3_lemma = e0(150) / two(870), c3_alt = e0(150) / two(270);
    add_mono("c3_lemma", "eps0^150/2^870", "meridian remark", c3_lemma);
    add_mono("c3_alt", "eps0^150/2^270", "constant assembly prose", c3_alt);
    add_mono("c3", v.c3_alt ? "eps0^150/2^270" : "eps0^150/2^870", v.c3_alt ? "constant assembly prose" : "meridian remark",
             v.c3_alt ? c3_alt : c3_lemma);

    add_expr("c4", "40 log(64/eps0)", "meridian remark", q(40) * log(q(64) / e));
    add_mono("c5", "eps0^150/2^868", "c5 remark", e0(150) / two(868));
    add_mono("c6", "2^223/eps0^50", "filling lower bound remark", two(223) / e0(50));
    add_mono("c7", "2^60 eps0^10", "tube radius conversion", two(60) * e0(10));

    const Monomial a = two(1095) / e0(200), c = two(331) / e0(160);
    add_mono("a", "2^1095/eps0^200", "Theorem A", a);
    const Expr b = q(1040) * log2(c1_lemma.to_expr());
    add_expr("b", "1040 log2(2^385/eps0^60)", "Theorem A", b);
    add_mono("c", "2^331/eps0^160", "Theorem A", c);
    add_expr("k", "2a + 3b + 2c", "Theorem B proof", q(2) * a.to_expr() + q(3) * b + q(2) * c.to_expr());

    // positivity of every entry at this eps0 and |chi| = 1
    for (const auto& en : entries_) {
        const IntervalScalar x = value(en.name, 1);
        if (!x.certainly_pos())
            throw DomainError("ledger entry " + en.name + " is not certainly positive: " + x.to_string(6));
    }
    facts_.push_back("every entry is positive at eps0 = " + eps0.get_str());

    // the eps ratios are exact
    auto m = [&](const std::string& n) { return *entry(n).monomial; };
    if (!check_identity(m("eps3") * two(2), m("eps1")).holds || !check_identity(m("eps2") * two(3), m("eps3")).holds ||
        !check_identity(m("epsY"), m("eps1")).holds)
        throw DomainError("eps ratios are not exact");
    facts_.push_back("eps3 = eps1/4, eps2 = eps3/8, epsY = eps1 (exact monomial arithmetic)");

    // eps1 is decreasing in |chi| (negative chi exponent), so eps1(1) < eps0 covers every |chi| >= 1
    if (m("eps1").exponent("chi") >= 0)
        throw DomainError("eps1 is not decreasing in |chi|");
    const IntervalScalar eps1_at_1 = value("eps1", 1);
    if (!eps1_at_1.certainly_lt(eps0_.interval(prec_)))
        throw DomainError("eps1 < eps0 could not be certified");
    facts_.push_back("eps2 < eps3 < eps1 <= eps1(|chi| = 1) = " + eps1_at_1.to_string(6) + " < eps0 for all |chi| >= 1");
}

const LedgerEntry& ConstantLedger::entry(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end())
        throw DomainError("no ledger entry named " + name);
    return entries_[it->second];
}

bool ConstantLedger::has(const std::string& name) const { return index_.count(name) != 0; }

std::map<std::string, Expr> ConstantLedger::substitutions() const {
    std::map<std::string, Expr> s;
    for (const auto& en : entries_)
        s[en.name] = en.expr;
    return s;
}

std::map<std::string, Monomial> ConstantLedger::monomials() const {
    std::map<std::string, Monomial> s;
    for (const auto& en : entries_)
        if (en.monomial)
            s[en.name] = *en.monomial;
    return s;
}

IntervalScalar ConstantLedger::value(const std::string& name, long abs_chi) const {
    if (abs_chi < 1)
        throw DomainError("|chi| must be at least 1");
    const LedgerEntry& en = entry(name);
    Box b;
    box_set(b, "eps0", eps0_.value(), eps0_.value(), prec_);
    box_set(b, "chi", abs_chi, abs_chi, prec_);
    return eval(en.expr, b, prec_);
}

} // namespace effcurves
