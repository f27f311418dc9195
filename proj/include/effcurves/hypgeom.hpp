#pragma once

#include <cstdint>

#include "effcurves/interval.hpp"

namespace effcurves {

struct InvalidEps0 : DomainError {
    using DomainError::DomainError;
};

struct SurfaceSig {
    long genus = 0;
    long punctures = 0;
    long boundary = 0;

    SurfaceSig() = default;
    SurfaceSig(long g, long p, long b);  // throws DomainError unless euler < 0

    // genus 0 with |chi| + 2 punctures
    static SurfaceSig with_abs_euler(long abs_chi);

    long euler() const { return 2 - 2 * genus - punctures - boundary; }
    long abs_euler() const { return -euler(); }
};

// An admissible Margulis constant: 0 < eps0 < arcsinh(1/4), checked with
// a certified enclosure of arcsinh(1/4).
class MargulisEps {
public:
    explicit MargulisEps(const mpq_class& eps0);
    const mpq_class& value() const { return eps0_; }
    IntervalScalar interval(long prec = kDefaultPrecision) const { return IntervalScalar::point(eps0_, prec); }

private:
    mpq_class eps0_;
};

namespace hyp {

// Constants of the cited closing/ball-packing estimates, kept exact.
mpq_class bilipschitz_factor();   // 7.256
mpq_class separation_slack();     // 0.042

// Default radius below which the ball-volume surrogate (2 pi / 3) eps^3 is used.
mpq_class default_volume_radius();  // 1/4

// Which value of T(pi/6) downstream formulas use.
enum class TChoice { ClosedForm, Rounded };

// Formula trees. Arguments are arbitrary expressions, usually variables.
namespace formula {
Expr shortest_loop(const Expr& chi);
Expr thick_two_loop(const Expr& chi, const Expr& eps0);
Expr bers(const Expr& chi);
// log coth(l/4), written as asinh(1/sinh(l/2)) so that l appears once and
// the value stays relatively tight for large l
Expr collar_width(const Expr& len);
Expr collar_width_lower(const Expr& len);
Expr inj_annulus(const Expr& core_len, const Expr& r);
Expr inj_cusp(const Expr& r);
Expr radius_at_injectivity_annulus(const Expr& eps, const Expr& core_len);
Expr tube_separation(const Expr& eps0, const Expr& eps1);
Expr cusp_separation(const Expr& eps0, const Expr& eps1);
Expr ball_volume_lower(const Expr& eps);
Expr anosov_T();
Expr recurrence_ratio(const Expr& m, const Expr& eps, const Expr& chi);
Expr flat_meridian_upper(const Expr& eps_y, const Expr& core_len);
Expr normalized_length_lower(const Expr& flat_len, const Expr& eps0);
} // namespace formula

IntervalScalar shortest_loop_bound(const SurfaceSig& sig, long prec = kDefaultPrecision);
IntervalScalar thick_two_loop_bound(const SurfaceSig& sig, const MargulisEps& eps, long prec = kDefaultPrecision);
IntervalScalar bers_bound(const SurfaceSig& sig, long prec = kDefaultPrecision);

// len > 0
IntervalScalar collar_width(const IntervalScalar& len);
IntervalScalar collar_width_lower(const IntervalScalar& len);

IntervalScalar inj_annulus(const IntervalScalar& core_len, const IntervalScalar& r);
// arcsinh(e^{-r}/2)
IntervalScalar inj_cusp(const IntervalScalar& r);
// inverse of inj_annulus in r; DomainError when sinh(eps) < sinh(core_len/2) certainly
IntervalScalar radius_at_injectivity_annulus(const IntervalScalar& eps, const IntervalScalar& core_len);

// need eps1 < eps0 and eps0^2 >= 7.256 eps1
IntervalScalar tube_separation(const IntervalScalar& eps0, const IntervalScalar& eps1);
// need eps1 <= eps0
IntervalScalar cusp_separation(const IntervalScalar& eps0, const IntervalScalar& eps1);

// 0 <= eps <= validity radius
IntervalScalar t1_ball_volume_lower(const IntervalScalar& eps, const mpq_class& radius = default_volume_radius());

IntervalScalar anosov_T(long prec = kDefaultPrecision);
IntervalScalar anosov_T(TChoice choice, long prec = kDefaultPrecision);

struct RecurrenceCount {
    std::uint64_t n = 0;
    IntervalScalar value;       // enclosure of the quantity being floored
    bool straddles = false;     // floor(lo) != floor(hi); n is then floor(lo)
    bool volume_surrogate = true;
};

// eps < eps0 / 2, eps/2 within the volume radius
RecurrenceCount recurrence_count(std::uint64_t m, const mpq_class& eps, const MargulisEps& eps0,
                                 const SurfaceSig& sig, long prec = kDefaultPrecision,
                                 const mpq_class& radius = default_volume_radius());

IntervalScalar flat_meridian_upper(const IntervalScalar& eps_y, const IntervalScalar& core_len);
IntervalScalar normalized_length_lower(const IntervalScalar& flat_len, const IntervalScalar& eps0);

} // namespace hyp
} // namespace effcurves
