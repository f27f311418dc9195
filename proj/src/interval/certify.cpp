#include "effcurves/interval.hpp"

#include <algorithm>
#include <thread>

namespace effcurves {

const char* cert_status_name(CertStatus s) {
    switch (s) {
    case CertStatus::Proved: return "Proved";
    case CertStatus::Disproved: return "Disproved";
    case CertStatus::Unknown: return "Unknown";
    }
    return "?";
}

namespace {

// forward-mode value and gradient enclosures
struct Dual {
    IntervalScalar v;
    std::vector<IntervalScalar> g;
    bool smooth = true;
};

IntervalScalar sqrt_clamped(const IntervalScalar& x) {
    if (mpfr_sgn(x.lo_ptr()) >= 0)
        return sqrt(x);
    if (mpfr_sgn(x.hi_ptr()) < 0)
        throw DomainError("sqrt of a negative interval");
    IntervalScalar y = x;
    mpfr_set_zero(y.lo_ptr(), 1);
    return sqrt(y);
}

IntervalScalar sign_only(const IntervalScalar& g) {
    IntervalScalar r = IntervalScalar::entire(g.prec());
    if (g.certainly_nonneg())
        mpfr_set_zero(r.lo_ptr(), 1);
    else if (mpfr_sgn(g.hi_ptr()) <= 0)
        mpfr_set_zero(r.hi_ptr(), 1);
    return r;
}

class Differ {
public:
    Differ(const Box& b, const std::vector<std::string>& vars, long prec) : b_(b), vars_(vars), prec_(prec) {}

    Dual run(const Expr& e) {
        const ExprNode& n = e.node();
        const std::size_t nv = vars_.size();
        auto zero_grad = [&] { return std::vector<IntervalScalar>(nv, IntervalScalar(prec_)); };
        auto map1 = [&](const Dual& a, const IntervalScalar& factor, IntervalScalar value) {
            Dual r{std::move(value), {}, a.smooth};
            r.g.reserve(nv);
            for (const auto& gi : a.g)
                r.g.push_back(gi * factor);
            return r;
        };
        switch (n.op) {
        case Op::Const:
        case Op::Pi: {
            Box empty;
            return {eval(e, empty, prec_), zero_grad(), true};
        }
        case Op::Var: {
            auto it = b_.find(n.name);
            if (it == b_.end())
                throw DomainError("unbound variable '" + n.name + "'");
            Dual d{it->second, zero_grad(), true};
            for (std::size_t i = 0; i < nv; ++i)
                if (vars_[i] == n.name)
                    d.g[i] = IntervalScalar::from_int(1, prec_);
            return d;
        }
        case Op::Add:
        case Op::Sub: {
            Dual a = run(n.kids[0]), c = run(n.kids[1]);
            const bool add = n.op == Op::Add;
            Dual r{add ? a.v + c.v : a.v - c.v, {}, a.smooth && c.smooth};
            for (std::size_t i = 0; i < nv; ++i)
                r.g.push_back(add ? a.g[i] + c.g[i] : a.g[i] - c.g[i]);
            return r;
        }
        case Op::Mul: {
            Dual a = run(n.kids[0]), c = run(n.kids[1]);
            Dual r{a.v * c.v, {}, a.smooth && c.smooth};
            for (std::size_t i = 0; i < nv; ++i)
                r.g.push_back(a.g[i] * c.v + a.v * c.g[i]);
            return r;
        }
        case Op::Div: {
            Dual a = run(n.kids[0]), c = run(n.kids[1]);
            IntervalScalar q = a.v / c.v;
            Dual r{q, {}, a.smooth && c.smooth};
            for (std::size_t i = 0; i < nv; ++i)
                r.g.push_back((a.g[i] - q * c.g[i]) / c.v);
            return r;
        }
        case Op::Neg: {
            Dual a = run(n.kids[0]);
            Dual r{-a.v, {}, a.smooth};
            for (const auto& gi : a.g)
                r.g.push_back(-gi);
            return r;
        }
        case Op::Pow: {
            Dual a = run(n.kids[0]);
            if (n.power == 0)
                return {IntervalScalar::from_int(1, prec_), zero_grad(), true};
            IntervalScalar dv = IntervalScalar::from_int(n.power, prec_) * pow(a.v, n.power - 1);
            return map1(a, dv, pow(a.v, n.power));
        }
        case Op::Sqrt: {
            Dual a = run(n.kids[0]);
            IntervalScalar s = sqrt(a.v);
            IntervalScalar two_s = IntervalScalar::from_int(2, prec_) * s;
            Dual r{s, {}, a.smooth};
            for (const auto& gi : a.g)
                r.g.push_back(div_relaxed(gi, two_s));
            return r;
        }
        case Op::Exp: {
            Dual a = run(n.kids[0]);
            IntervalScalar v = exp(a.v);
            return map1(a, v, v);
        }
        case Op::Log:
        case Op::Log2: {
            Dual a = run(n.kids[0]);
            IntervalScalar v = n.op == Op::Log ? log(a.v) : log2(a.v);
            IntervalScalar den = a.v;
            if (n.op == Op::Log2)
                den = den * log(IntervalScalar::from_int(2, prec_));
            Dual r{v, {}, a.smooth};
            for (const auto& gi : a.g)
                r.g.push_back(gi / den);
            return r;
        }
        case Op::Sinh: {
            Dual a = run(n.kids[0]);
            return map1(a, cosh(a.v), sinh(a.v));
        }
        case Op::Cosh: {
            Dual a = run(n.kids[0]);
            return map1(a, sinh(a.v), cosh(a.v));
        }
        case Op::Asinh: {
            Dual a = run(n.kids[0]);
            IntervalScalar den = sqrt(pow(a.v, 2) + IntervalScalar::from_int(1, prec_));
            Dual r{asinh(a.v), {}, a.smooth};
            for (const auto& gi : a.g)
                r.g.push_back(gi / den);
            return r;
        }
        case Op::Acosh: {
            Dual a = run(n.kids[0]);
            IntervalScalar v = acosh(a.v);
            IntervalScalar den = sqrt_clamped(pow(a.v, 2) - IntervalScalar::from_int(1, prec_));
            Dual r{v, {}, a.smooth};
            for (const auto& gi : a.g)
                r.g.push_back(div_relaxed(gi, den));
            return r;
        }
        case Op::Floor: {
            Dual a = run(n.kids[0]);
            IntervalScalar v = floor(a.v);
            if (v.is_point())
                return {v, zero_grad(), a.smooth};
            Dual r{v, {}, false};
            for (const auto& gi : a.g)
                r.g.push_back(sign_only(gi));
            return r;
        }
        case Op::Abs: {
            Dual a = run(n.kids[0]);
            if (a.v.certainly_nonneg())
                return {a.v, a.g, a.smooth};
            if (mpfr_sgn(a.v.hi_ptr()) <= 0) {
                Dual r{-a.v, {}, a.smooth};
                for (const auto& gi : a.g)
                    r.g.push_back(-gi);
                return r;
            }
            Dual r{abs(a.v), {}, a.smooth};
            for (const auto& gi : a.g)
                r.g.push_back(gi.hull(-gi));
            return r;
        }
        case Op::Min:
        case Op::Max: {
            Dual a = run(n.kids[0]), c = run(n.kids[1]);
            const bool is_min = n.op == Op::Min;
            IntervalScalar v = is_min ? min(a.v, c.v) : max(a.v, c.v);
            const bool a_wins = is_min ? a.v.certainly_le(c.v) : c.v.certainly_le(a.v);
            const bool c_wins = is_min ? c.v.certainly_le(a.v) : a.v.certainly_le(c.v);
            if (a_wins)
                return {v, a.g, a.smooth};
            if (c_wins)
                return {v, c.g, c.smooth};
            Dual r{v, {}, a.smooth && c.smooth};
            for (std::size_t i = 0; i < nv; ++i)
                r.g.push_back(a.g[i].hull(c.g[i]));
            return r;
        }
        }
        throw DomainError("unknown node");
    }

private:
    const Box& b_;
    const std::vector<std::string>& vars_;
    long prec_;
};

enum class Verdict { Proved, Disproved, Undecided };

struct Outcome {
    Verdict verdict = Verdict::Undecided;
    Box witness;
    std::optional<IntervalScalar> witness_value;
    bool error = false;
    std::string error_msg;
    Box error_box;
    bool split = false;
    Box left, right;
};

class Certifier {
public:
    Certifier(const Expr& e, const CertOptions& opt) : e_(e), opt_(opt) {}

    // variables of e that are actually free inside the box
    void set_vars(const Box& b) {
        vars_.clear();
        for (const auto& v : e_.variables())
            if (b.count(v))
                vars_.push_back(v);
    }

    Outcome process(const Box& box0, int depth) const {
        Outcome out;
        try {
            Box box = box0;
            // each pass may pin monotone variables to an endpoint
            for (std::size_t pass = 0; pass <= vars_.size(); ++pass) {
                IntervalScalar natural = eval(e_, box, opt_.precision);
                if (natural.certainly_nonneg()) {
                    out.verdict = Verdict::Proved;
                    return out;
                }
                if (natural.certainly_neg()) {
                    out.verdict = Verdict::Disproved;
                    out.witness = box;
                    out.witness_value = natural;
                    return out;
                }
                std::vector<std::string> free;
                for (const auto& v : vars_)
                    if (!box.at(v).is_point())
                        free.push_back(v);
                if (free.empty())
                    break;
                Differ d(box, free, opt_.precision);
                Dual dual = d.run(e_);
                if (dual.smooth && mv_form_nonneg(box, free, dual)) {
                    out.verdict = Verdict::Proved;
                    return out;
                }
                bool pinned = false;
                for (std::size_t i = 0; i < free.size(); ++i) {
                    const IntervalScalar& gi = dual.g[i];
                    IntervalScalar& dom = box.at(free[i]);
                    if (gi.certainly_nonneg()) {
                        mpfr_set(dom.hi_ptr(), dom.lo_ptr(), MPFR_RNDN);
                        pinned = true;
                    } else if (mpfr_sgn(gi.hi_ptr()) <= 0) {
                        mpfr_set(dom.lo_ptr(), dom.hi_ptr(), MPFR_RNDN);
                        pinned = true;
                    }
                }
                if (!pinned)
                    break;
            }
            // a negative centre value refutes the claim outright
            Box centre = box;
            for (const auto& v : vars_)
                centre.at(v) = centre.at(v).midpoint();
            IntervalScalar cv = eval(e_, centre, opt_.precision);
            if (cv.certainly_neg()) {
                out.verdict = Verdict::Disproved;
                out.witness = centre;
                out.witness_value = cv;
                return out;
            }
            if (depth >= opt_.max_depth)
                return out;
            // split the widest variable, relative to its magnitude
            const std::string* pick = nullptr;
            double best = -1.0;
            for (const auto& v : vars_) {
                const IntervalScalar& dom = box.at(v);
                if (dom.is_point())
                    continue;
                const double w = dom.rel_width_double();
                if (w > best) {
                    best = w;
                    pick = &v;
                }
            }
            if (!pick)
                return out;
            // bisect the original box, not the pinned face
            const IntervalScalar& dom = box0.at(*pick);
            IntervalScalar mid = dom.midpoint();
            out.split = true;
            out.left = box0;
            out.right = box0;
            mpfr_set(out.left.at(*pick).hi_ptr(), mid.lo_ptr(), MPFR_RNDN);
            mpfr_set(out.right.at(*pick).lo_ptr(), mid.lo_ptr(), MPFR_RNDN);
            if (box0.at(*pick).is_point() || mpfr_equal_p(mid.lo_ptr(), dom.lo_ptr()) ||
                mpfr_equal_p(mid.lo_ptr(), dom.hi_ptr()))
                out.split = false;  // no representable midpoint left
        } catch (const DomainError& ex) {
            out.error = true;
            out.error_msg = ex.what();
            out.error_box = box0;
        }
        return out;
    }

    const std::vector<std::string>& vars() const { return vars_; }

private:
    bool mv_form_nonneg(const Box& box, const std::vector<std::string>& free, const Dual& dual) const {
        for (const auto& gi : dual.g)
            if (!gi.is_finite())
                return false;
        Box centre = box;
        for (const auto& v : free)
            centre.at(v) = centre.at(v).midpoint();
        IntervalScalar acc = eval(e_, centre, opt_.precision);
        for (std::size_t i = 0; i < free.size(); ++i)
            acc = acc + dual.g[i] * (box.at(free[i]) - centre.at(free[i]));
        return acc.certainly_nonneg();
    }

    const Expr& e_;
    const CertOptions& opt_;
    std::vector<std::string> vars_;
};

} // namespace

CertResult certify_nonneg(const Expr& e, const Box& b, const CertOptions& opt) {
    for (const auto& v : e.variables())
        if (!b.count(v))
            throw DomainError("unbound variable '" + v + "'");
    Certifier cert(e, opt);
    cert.set_vars(b);

    CertResult res;
    res.stats.precision = opt.precision;
    std::vector<Box> level{b};
    bool unknown = false;
    for (int depth = 0; !level.empty(); ++depth) {
        res.stats.max_depth_reached = depth;
        std::vector<Outcome> outs(level.size());
        const unsigned nt = std::max(1u, std::min<unsigned>(opt.threads, static_cast<unsigned>(level.size())));
        if (nt == 1) {
            for (std::size_t i = 0; i < level.size(); ++i)
                outs[i] = cert.process(level[i], depth);
        } else {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < nt; ++t)
                pool.emplace_back([&, t] {
                    for (std::size_t i = t; i < level.size(); i += nt)
                        outs[i] = cert.process(level[i], depth);
                });
            for (auto& th : pool)
                th.join();
        }
        res.stats.subdomains += level.size();
        std::vector<Box> next;
        for (auto& o : outs) {
            if (o.error)
                throw CertDomainError(o.error_msg + " on " + box_to_string(o.error_box), o.error_box);
            if (o.verdict == Verdict::Disproved) {
                res.status = CertStatus::Disproved;
                res.witness = std::move(o.witness);
                res.witness_value = std::move(o.witness_value);
                return res;
            }
            if (o.verdict == Verdict::Undecided) {
                if (o.split) {
                    next.push_back(std::move(o.left));
                    next.push_back(std::move(o.right));
                } else {
                    unknown = true;
                }
            }
        }
        if (res.stats.subdomains + next.size() > opt.max_subdomains) {
            res.status = CertStatus::Unknown;
            return res;
        }
        level = std::move(next);
    }
    res.status = unknown ? CertStatus::Unknown : CertStatus::Proved;
    return res;
}

CertResult certify_nonneg(const Expr& e, const Box& b, long precision, int max_depth) {
    CertOptions opt;
    opt.precision = precision;
    opt.max_depth = max_depth;
    return certify_nonneg(e, b, opt);
}

} // namespace effcurves
