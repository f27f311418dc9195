#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "effcurves/hypgeom.hpp"
#include "effcurves/interval.hpp"

namespace effcurves {

// ---------------------------------------------------------------- monomials

// coeff * 2^e * pi^e * eps0^e * chi^e with rational exponents. The
// coefficient is kept free of factors of 2, so equality is exact equality.
class Monomial {
public:
    Monomial() = default;  // 1
    explicit Monomial(const mpq_class& coeff);

    static Monomial two(const mpq_class& e);
    static Monomial pi(const mpq_class& e);
    static Monomial eps0(const mpq_class& e);
    static Monomial chi(const mpq_class& e);

    const mpq_class& coeff() const { return coeff_; }
    // bases "2", "pi", "eps0", "chi"; missing bases have exponent 0
    mpq_class exponent(const std::string& base) const;
    const std::map<std::string, mpq_class>& exponents() const { return exps_; }

    Monomial pow(long n) const;
    friend Monomial operator*(const Monomial& a, const Monomial& b);
    friend Monomial operator/(const Monomial& a, const Monomial& b);
    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.coeff_ == b.coeff_ && a.exps_ == b.exps_;
    }
    friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

    // "2^1095 * eps0^-200"
    std::string render() const;
    // expression in the variables eps0 and chi; needs integer exponents
    Expr to_expr() const;

private:
    void normalize();
    mpq_class coeff_ = 1;
    std::map<std::string, mpq_class> exps_;
};

// reads a product/quotient of rationals, powers, pi, eps0, chi and the given
// named monomials; nullopt if the expression is not a monomial
std::optional<Monomial> as_monomial(const Expr& e, const std::map<std::string, Monomial>& names = {});

struct IdentityReport {
    Monomial lhs, rhs;
    Monomial ratio;  // lhs / rhs
    bool holds = false;
};

IdentityReport check_identity(const Monomial& lhs, const Monomial& rhs);

// ---------------------------------------------------------------- ledger

// which reading of the three constants that appear twice with different values
struct Variants {
    bool c1_alt = false;  // 2^109/eps0^60 instead of 2^385/eps0^60
    bool c2_alt = false;  // 230 log2(c1) instead of 570 log2(c1)
    bool c3_alt = false;  // eps0^150/2^270 instead of eps0^150/2^870

    static Variants lemma() { return {}; }
    static Variants assembly() { return {true, true, true}; }
    // "lemma", "sec76" (alias "assembly"), or a list like "c1=lemma,c3=alt"
    static Variants parse(const std::string& text);
    std::string name() const;
    friend bool operator==(const Variants& a, const Variants& b) {
        return a.c1_alt == b.c1_alt && a.c2_alt == b.c2_alt && a.c3_alt == b.c3_alt;
    }
};

struct LedgerEntry {
    std::string name;
    std::string formula;
    std::string citation;
    std::optional<Monomial> monomial;
    Expr expr;  // in eps0 and (for the eps entries) chi
};

class ConstantLedger {
public:
    // throws InvalidEps0; certifies positivity and eps2 < eps3 < eps1 < eps0
    explicit ConstantLedger(const mpq_class& eps0, Variants v = Variants::lemma(), long prec = kDefaultPrecision);

    const MargulisEps& eps0() const { return eps0_; }
    const Variants& variants() const { return variants_; }
    long precision() const { return prec_; }

    // every entry, including the fixed lemma and alternate readings
    // (c1_lemma, c1_alt, ...); c1, c2, c3 follow the variant selection
    const std::vector<LedgerEntry>& entries() const { return entries_; }
    const LedgerEntry& entry(const std::string& name) const;
    bool has(const std::string& name) const;

    // name -> expression in eps0 (and chi), for chain text
    std::map<std::string, Expr> substitutions() const;
    std::map<std::string, Monomial> monomials() const;

    // certified value at this eps0 and |chi|
    IntervalScalar value(const std::string& name, long abs_chi = 1) const;
    // facts certified at construction, in words
    const std::vector<std::string>& certified_facts() const { return facts_; }

private:
    MargulisEps eps0_;
    Variants variants_;
    long prec_;
    std::vector<LedgerEntry> entries_;
    std::map<std::string, std::size_t> index_;
    std::vector<std::string> facts_;
};

// ---------------------------------------------------------------- evaluators

struct PipelineTrace;

// the theorem gives no conclusion; not a bound of zero
struct BelowThreshold : DomainError {
    std::string stage;
    std::shared_ptr<const PipelineTrace> partial;  // set by the pipeline
    BelowThreshold(std::string stage_name, const std::string& msg);
};

IntervalScalar thmA_threshold(const ConstantLedger& L, long chi_y, long chi_s);
// throws BelowThreshold unless dy >= threshold is certain
IntervalScalar thmA_length_bound(const ConstantLedger& L, long chi_y, long chi_s, const IntervalScalar& dy);

struct ThmBResult {
    IntervalScalar bound;
    std::vector<std::string> warnings;
};
// inj > 0 certainly, else DomainError
ThmBResult thmB_bound(const ConstantLedger& L, long chi_s, const IntervalScalar& inj);

// the displayed form, with the ball-volume surrogate; len >= 0
IntervalScalar efficiency_bound(const ConstantLedger& L, long chi_s, const IntervalScalar& len,
                                hyp::TChoice t = hyp::TChoice::Rounded);
IntervalScalar efficiency_bound_simplified(const ConstantLedger& L, long chi_s, const IntervalScalar& len);

// ball volume ratio in H^3; len >= 0, eps > 0
IntervalScalar curves_per_segment(const IntervalScalar& len, const IntervalScalar& eps);
// chi_y and eps0 enable the hypothesis checks on len and eps
IntervalScalar width_bound(const IntervalScalar& len, const IntervalScalar& eps, const IntervalScalar& kappa_len,
                           std::optional<long> chi_y = std::nullopt, std::optional<mpq_class> eps0 = std::nullopt);

// may be negative; meaningful only when positive
IntervalScalar meridian_lower(const ConstantLedger& L, long chi_y, const IntervalScalar& dy);

// 0 < eps <= log 3, J > 1
IntervalScalar dehn_filling_threshold(const IntervalScalar& eps, const IntervalScalar& J);

struct MeridianData {
    IntervalScalar flat_length;
    IntervalScalar normalized_length;
    std::string label;
};

enum class Verdict { Holds, Fails, Undecided };
const char* verdict_name(Verdict v);

struct DehnCheck {
    Verdict verdict = Verdict::Undecided;
    IntervalScalar total;      // 1 / sum 1/L^2
    IntervalScalar threshold;
    IntervalScalar margin;     // total - threshold
    IntervalScalar shortcut;   // min L^2 / n, a lower bound for total
    bool holds() const { return verdict == Verdict::Holds; }
};

DehnCheck dehn_filling_check(const std::vector<MeridianData>& meridians, const IntervalScalar& eps,
                             const IntervalScalar& J);

struct EndCurveBounds {
    IntervalScalar alpha_length;  // 4 pi |chi_S|
    IntervalScalar alpha_drift;   // 4
    IntervalScalar delta_length;  // 2 arccosh(|chi_Y| + 1)
    IntervalScalar delta_drift;   // c2 log |chi_S|
    IntervalScalar total_drift;   // 4 + c2 log |chi_S|
};

EndCurveBounds end_curve_bounds(const ConstantLedger& L, long chi_s, long chi_y);

// ---------------------------------------------------------------- pipeline

struct StageCheck {
    std::string name;
    std::string statement;
    CertStatus status = CertStatus::Unknown;
    bool hypothesis = false;  // failing hypotheses stop the pipeline; consistency checks are reported
};

struct StageRecord {
    std::string name;
    std::string citation;
    std::vector<std::pair<std::string, IntervalScalar>> values;
    std::vector<StageCheck> checks;
};

struct PipelineTrace {
    Variants variants;
    std::vector<StageRecord> stages;
    std::optional<IntervalScalar> final_bound;     // the closed form the theorem states
    std::optional<IntervalScalar> composed_bound;  // the bound the stages actually produce
    bool consistent = true;                         // every consistency check Proved
    std::string verdict;
};

constexpr int kPipelineStages = 8;

// throws BelowThreshold naming the first stage whose hypothesis fails
PipelineTrace theorem_a_pipeline(const ConstantLedger& L, long chi_s, long chi_y, const IntervalScalar& dy);

// ---------------------------------------------------------------- chains

struct ChainStep {
    std::string kind;  // identity, ineq, tail, dominate, let
    std::string text;  // after $eps0_lo / $eps0_hi substitution
    int line = 0;
    CertStatus status = CertStatus::Unknown;
    std::optional<Expr> expr;  // the certified expression, ledger names expanded
    std::optional<Box> box;
    std::optional<CertResult> cert;
    std::optional<IdentityReport> identity;
    std::string detail;  // exponent report or why the step is Unknown
};

struct ChainStepDef {
    std::string kind;
    std::string text;
    int line = 0;
};

struct ChainDef {
    std::string id;
    std::string title;
    std::string citation;
    std::string file;
    std::vector<ChainStepDef> steps;
    std::vector<std::string> notes;
};

// the chain re-run under one reading of the variant constants it mentions
struct VariantOutcome {
    std::string variant;
    CertStatus status = CertStatus::Unknown;
    std::vector<std::string> details;  // one per identity or dominate step
};

struct ChainCert {
    std::string id;
    std::string title;
    std::string citation;
    std::string file;
    std::vector<std::string> notes;
    std::vector<ChainStep> steps;
    CertStatus status = CertStatus::Unknown;  // Disproved means Refuted
    std::vector<VariantOutcome> variant_outcomes;  // empty unless c1, c2 or c3 appear
};

struct ChainOptions {
    mpq_class eps0_lo = mpq_class(1, 100);
    mpq_class eps0_hi = mpq_class(247, 1000);
    CertOptions cert;
};

// errors: ParseError with file line numbers
std::vector<ChainDef> parse_chain_file(const std::string& text, const std::string& file);
std::vector<ChainDef> load_chain_corpus(const std::string& dir);
std::string default_chains_dir();

// "Refuted" for Disproved
std::string chain_status_name(CertStatus s);
ChainCert run_chain(const ChainDef& def, const ConstantLedger& L, const ChainOptions& opt);
// every chain in the corpus, in id order
std::vector<ChainCert> verify_assembly(const ConstantLedger& L, const ChainOptions& opt, const std::string& dir);

} // namespace effcurves
