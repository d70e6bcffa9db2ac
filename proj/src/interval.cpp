#include "melcert/interval.hpp"

#include <algorithm>
#include <ostream>

#include "melcert/numfmt.hpp"

namespace melcert {

Interval operator*(const Interval& a, const Interval& b)
{
    using namespace rnd;
    const double al = a.lo_, ah = a.hi_, bl = b.lo_, bh = b.hi_;
    double lo, hi;
    if (al >= 0) {
        if (bl >= 0) {
            lo = mul_down(al, bl);
            hi = mul_up(ah, bh);
        } else if (bh <= 0) {
            lo = mul_down(ah, bl);
            hi = mul_up(al, bh);
        } else {
            lo = mul_down(ah, bl);
            hi = mul_up(ah, bh);
        }
    } else if (ah <= 0) {
        if (bl >= 0) {
            lo = mul_down(al, bh);
            hi = mul_up(ah, bl);
        } else if (bh <= 0) {
            lo = mul_down(ah, bh);
            hi = mul_up(al, bl);
        } else {
            lo = mul_down(al, bh);
            hi = mul_up(al, bl);
        }
    } else {
        if (bl >= 0) {
            lo = mul_down(al, bh);
            hi = mul_up(ah, bh);
        } else if (bh <= 0) {
            lo = mul_down(ah, bl);
            hi = mul_up(al, bl);
        } else {
            lo = std::min(mul_down(al, bh), mul_down(ah, bl));
            hi = std::max(mul_up(al, bl), mul_up(ah, bh));
        }
    }
    return Interval::checked(lo, hi);
}

Interval operator/(const Interval& a, const Interval& b)
{
    using namespace rnd;
    if (b.contains_zero()) throw DomainError("interval division by an interval containing zero");
    const double al = a.lo_, ah = a.hi_, bl = b.lo_, bh = b.hi_;
    double lo, hi;
    if (bl > 0) {
        lo = al >= 0 ? div_down(al, bh) : div_down(al, bl);
        hi = ah >= 0 ? div_up(ah, bl) : div_up(ah, bh);
    } else {
        lo = ah >= 0 ? div_down(ah, bh) : div_down(ah, bl);
        hi = al >= 0 ? div_up(al, bl) : div_up(al, bh);
    }
    return Interval::checked(lo, hi);
}

Interval sqr(const Interval& a)
{
    using namespace rnd;
    double lo, hi;
    if (a.lo_ >= 0) {
        lo = mul_down(a.lo_, a.lo_);
        hi = mul_up(a.hi_, a.hi_);
    } else if (a.hi_ <= 0) {
        lo = mul_down(a.hi_, a.hi_);
        hi = mul_up(a.lo_, a.lo_);
    } else {
        lo = 0.0;
        double m = std::max(-a.lo_, a.hi_);
        hi = mul_up(m, m);
    }
    return Interval::checked(lo, hi);
}

Interval sqrt(const Interval& a)
{
    if (a.lo_ < 0) throw DomainError("square root of an interval with negative lower endpoint");
    return Interval::checked(rnd::sqrt_down(a.lo_), rnd::sqrt_up(a.hi_));
}

Interval abs(const Interval& a)
{
    if (a.lo() >= 0) return a;
    if (a.hi() <= 0) return -a;
    return Interval(0.0, a.mag());
}

Interval pow(const Interval& a, int n)
{
    if (n < 0) return Interval(1.0) / pow(a, -n);
    if (n == 0) return Interval(1.0);
    if (n == 1) return a;
    if (n % 2 == 0) return sqr(pow(a, n / 2));
    // odd powers are monotone: evaluate on each endpoint
    Interval lo = Interval(a.lo()), hi = Interval(a.hi());
    Interval pl = lo * sqr(pow(lo, n / 2));
    Interval ph = hi * sqr(pow(hi, n / 2));
    return Interval(pl.lo(), ph.hi());
}

std::optional<Interval> intersect(const Interval& a, const Interval& b)
{
    double lo = std::max(a.lo(), b.lo());
    double hi = std::min(a.hi(), b.hi());
    if (lo > hi) return std::nullopt;
    return Interval(lo, hi);
}

Interval pi_interval()
{
    // 0x1.921fb54442d18p+1 is the double nearest to pi, and lies below it
    constexpr double p = 0x1.921fb54442d18p+1;
    return Interval(p, rnd::up(p));
}

std::ostream& operator<<(std::ostream& os, const Interval& x)
{
    return os << '[' << format_double(x.lo()) << ", " << format_double(x.hi()) << ']';
}

std::string to_string(const Interval& x)
{
    return "[" + format_double(x.lo()) + ", " + format_double(x.hi()) + "]";
}

} // namespace melcert
