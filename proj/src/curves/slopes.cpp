#include "effcurves/curves.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <unordered_map>

namespace effcurves {

const char* sporadic_name(Sporadic s) { return s == Sporadic::OneHoledTorus ? "s11" : "s04"; }

Slope::Slope(long p_, long q_) : p(p_), q(q_) {
    if (p == 0 && q == 0)
        throw CurveError("0/0 is not a slope");
    if (std::gcd(p, q) != 1)
        throw CurveError(std::to_string(p) + "/" + std::to_string(q) + " is not in lowest terms");
    if (q < 0 || (q == 0 && p < 0)) {
        p = -p;
        q = -q;
    }
}

Slope Slope::parse(const std::string& s) {
    const auto slash = s.find('/');
    try {
        std::size_t used = 0;
        const long p = std::stol(s.substr(0, slash), &used);
        if (used != (slash == std::string::npos ? s.size() : slash))
            throw CurveError("bad slope '" + s + "'");
        if (slash == std::string::npos)
            return Slope(p, 1);
        const std::string den = s.substr(slash + 1);
        const long q = std::stol(den, &used);
        if (used != den.size())
            throw CurveError("bad slope '" + s + "'");
        return Slope(p, q);
    } catch (const std::logic_error&) {
        throw CurveError("bad slope '" + s + "'");
    }
}

long Slope::height() const { return std::max(std::labs(p), std::labs(q)); }

std::string Slope::to_string() const { return std::to_string(p) + "/" + std::to_string(q); }

long slope_det(const Slope& a, const Slope& b) { return std::labs(a.p * b.q - a.q * b.p); }

long slope_intersection(const Slope& a, const Slope& b, Sporadic s) {
    const long d = slope_det(a, b);
    return s == Sporadic::OneHoledTorus ? d : 2 * d;
}

namespace {

// x, y with a*x + b*y = gcd(a, b)
void ext_gcd(long a, long b, long& x, long& y) {
    long x0 = 1, y0 = 0, x1 = 0, y1 = 1;
    while (b != 0) {
        const long t = a / b;
        std::tie(a, b) = std::pair{b, a - t * b};
        std::tie(x0, x1) = std::pair{x1, x0 - t * x1};
        std::tie(y0, y1) = std::pair{y1, y0 - t * y1};
    }
    if (a < 0) {
        x0 = -x0;
        y0 = -y0;
    }
    x = x0;
    y = y0;
}

long floor_div(long a, long b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0))); }
long ceil_div(long a, long b) { return -floor_div(-a, b); }

} // namespace

FareyBall::FareyBall(long height) : h_(height) {
    if (height < 1)
        throw CurveError("Farey ball height must be >= 1");
    for (long q = 0; q <= h_; ++q)
        for (long p = -h_; p <= h_; ++p)
            if (std::gcd(p, q) == 1 && (q > 0 || p == 1))
                v_.emplace_back(p, q);
    std::sort(v_.begin(), v_.end());
    adj_.assign(v_.size(), {});
    for (std::size_t i = 0; i < v_.size(); ++i) {
        const long p = v_[i].p, q = v_[i].q;
        // neighbours r/s satisfy p*s - q*r = 1: (r0 + k p, s0 + k q)
        long s0 = 0, r0 = 0;
        ext_gcd(p, -q, s0, r0);
        long klo = -(2 * h_ + 2), khi = 2 * h_ + 2;
        auto clamp = [&](long base, long step) {
            if (step > 0) {
                klo = std::max(klo, ceil_div(-h_ - base, step));
                khi = std::min(khi, floor_div(h_ - base, step));
            } else if (step < 0) {
                klo = std::max(klo, ceil_div(h_ - base, step));
                khi = std::min(khi, floor_div(-h_ - base, step));
            } else if (std::labs(base) > h_) {
                khi = klo - 1;
            }
        };
        clamp(r0, p);
        clamp(s0, q);
        for (long k = klo; k <= khi; ++k) {
            const int j = index(Slope(r0 + k * p, s0 + k * q));
            if (j >= 0)
                adj_[i].push_back(j);
        }
    }
    for (auto& a : adj_) {
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
    }
}

int FareyBall::index(const Slope& s) const {
    if (s.height() > h_)
        return -1;
    const auto it = std::lower_bound(v_.begin(), v_.end(), s);
    return it != v_.end() && *it == s ? static_cast<int>(it - v_.begin()) : -1;
}

std::vector<int> FareyBall::distances(int src, int radius) const {
    std::vector<int> d(v_.size(), -1);
    std::deque<int> queue{src};
    d[src] = 0;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        if (d[u] >= radius)
            continue;
        for (int w : adj_[u])
            if (d[w] == -1) {
                d[w] = d[u] + 1;
                queue.push_back(w);
            }
    }
    return d;
}

std::optional<int> farey_distance(const Slope& a, const Slope& b, int radius) {
    if (radius < 1)
        throw CurveError("radius must be >= 1");
    if (a == b)
        return 0;
    if (slope_det(a, b) == 1)
        return 1;
    const FareyBall ball(std::max(a.height(), b.height()));
    const int d = ball.distances(ball.index(a), radius)[ball.index(b)];
    if (d < 0)
        return std::nullopt;
    return d;
}

IntervalScalar hempel_bound(std::uint64_t i, long prec) {
    if (i == 0)
        return IntervalScalar::from_int(1, prec);
    const IntervalScalar x = IntervalScalar::point(mpq_class(mpz_class(std::to_string(i))), prec);
    return IntervalScalar::from_int(2, prec) + IntervalScalar::from_int(2, prec) * log2(x);
}

bool hempel_holds(int d, std::uint64_t i) {
    if (i == 0)
        return d <= 1;
    if (d <= 2)
        return true;
    mpz_class lhs, rhs(std::to_string(i));
    mpz_ui_pow_ui(lhs.get_mpz_t(), 2, static_cast<unsigned long>(d - 2));
    rhs *= rhs;
    return lhs <= rhs;
}

IntervalScalar length_intersection_bound(const IntervalScalar& len_a, const IntervalScalar& len_b) {
    if (len_a.certainly_neg() || len_b.certainly_neg())
        throw DomainError("lengths must be nonnegative");
    const long prec = std::max(len_a.prec(), len_b.prec());
    return len_a * exp(len_b / IntervalScalar::from_int(2, prec));
}

} // namespace effcurves
