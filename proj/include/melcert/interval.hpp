#ifndef MELCERT_INTERVAL_HPP
#define MELCERT_INTERVAL_HPP

#include <cmath>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace melcert {

// Directed rounding of single operations without touching the FPU mode.
// Each primitive computes the round-to-nearest result and an error-free
// residual; the sign of the residual tells which neighbour to step to.
namespace rnd {

inline constexpr double kInf = std::numeric_limits<double>::infinity();
// below this magnitude fma residuals may be inexact
inline constexpr double kTiny = 0x1p-960;

inline double down(double x) { return std::nextafter(x, -kInf); }
inline double up(double x) { return std::nextafter(x, kInf); }

inline double add_down(double a, double b)
{
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return err < 0 ? down(s) : s;
}

inline double add_up(double a, double b)
{
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return err > 0 ? up(s) : s;
}

inline double sub_down(double a, double b) { return add_down(a, -b); }
inline double sub_up(double a, double b) { return add_up(a, -b); }

inline double mul_down(double a, double b)
{
    double p = a * b;
    if (a == 0 || b == 0) return p == 0 ? 0.0 : p;
    if (std::fabs(p) < kTiny) return down(p);
    double e = std::fma(a, b, -p);
    return e < 0 ? down(p) : p;
}

inline double mul_up(double a, double b)
{
    double p = a * b;
    if (a == 0 || b == 0) return p == 0 ? 0.0 : p;
    if (std::fabs(p) < kTiny) return up(p);
    double e = std::fma(a, b, -p);
    return e > 0 ? up(p) : p;
}

// sign of (a/b - q) equals sign(r)*sign(b) with r = a - q*b exact
inline double div_down(double a, double b)
{
    double q = a / b;
    if (a == 0) return 0.0;
    if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return down(q);
    double r = std::fma(-q, b, a);
    bool below = (r > 0 && b < 0) || (r < 0 && b > 0);
    return below ? down(q) : q;
}

inline double div_up(double a, double b)
{
    double q = a / b;
    if (a == 0) return 0.0;
    if (std::fabs(q) < kTiny || std::fabs(a) < kTiny) return up(q);
    double r = std::fma(-q, b, a);
    bool above = (r > 0 && b > 0) || (r < 0 && b < 0);
    return above ? up(q) : q;
}

inline double sqrt_down(double a)
{
    if (a == 0) return 0.0;
    double s = std::sqrt(a);
    if (a < kTiny) return down(s);
    double r = std::fma(-s, s, a);
    return r < 0 ? down(s) : s;
}

inline double sqrt_up(double a)
{
    if (a == 0) return 0.0;
    double s = std::sqrt(a);
    if (a < kTiny) return up(s);
    double r = std::fma(-s, s, a);
    return r > 0 ? up(s) : s;
}

} // namespace rnd

class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class Interval {
public:
    constexpr Interval() noexcept = default;
    // NOLINTNEXTLINE(google-explicit-constructor)
    constexpr Interval(double x) : lo_(x), hi_(x) {}
    Interval(double lo, double hi) : lo_(lo), hi_(hi)
    {
        if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
            throw std::invalid_argument("invalid interval endpoints");
    }

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double mid() const noexcept
    {
        double m = 0.5 * lo_ + 0.5 * hi_;
        return (m < lo_) ? lo_ : (m > hi_ ? hi_ : m);
    }
    // upper bound of the radius about mid()
    double rad() const noexcept
    {
        double m = mid();
        double a = rnd::sub_up(m, lo_), b = rnd::sub_up(hi_, m);
        return a > b ? a : b;
    }
    double width() const noexcept { return rnd::sub_up(hi_, lo_); }
    double mag() const noexcept { return std::fmax(std::fabs(lo_), std::fabs(hi_)); }
    double mig() const noexcept
    {
        if (lo_ <= 0 && hi_ >= 0) return 0.0;
        return std::fmin(std::fabs(lo_), std::fabs(hi_));
    }

    bool contains(double x) const noexcept { return lo_ <= x && x <= hi_; }
    bool contains(const Interval& o) const noexcept { return lo_ <= o.lo_ && o.hi_ <= hi_; }
    bool interior_contains(const Interval& o) const noexcept { return lo_ < o.lo_ && o.hi_ < hi_; }
    bool contains_zero() const noexcept { return lo_ <= 0 && 0 <= hi_; }
    bool is_point() const noexcept { return lo_ == hi_; }

    Interval& operator+=(const Interval& o);
    Interval& operator-=(const Interval& o);
    Interval& operator*=(const Interval& o);
    Interval& operator/=(const Interval& o);

    friend bool operator==(const Interval& a, const Interval& b) noexcept
    {
        return a.lo_ == b.lo_ && a.hi_ == b.hi_;
    }

private:
    static Interval checked(double lo, double hi)
    {
        if (!std::isfinite(lo) || !std::isfinite(hi))
            throw std::overflow_error("interval endpoint overflow");
        Interval r;
        r.lo_ = lo;
        r.hi_ = hi;
        return r;
    }

    double lo_ = 0.0;
    double hi_ = 0.0;

    friend Interval operator+(const Interval&, const Interval&);
    friend Interval operator-(const Interval&, const Interval&);
    friend Interval operator-(const Interval&);
    friend Interval operator*(const Interval&, const Interval&);
    friend Interval operator/(const Interval&, const Interval&);
    friend Interval sqr(const Interval&);
    friend Interval sqrt(const Interval&);
    friend Interval hull(const Interval&, const Interval&);
    friend Interval widen(const Interval&, double);
};

inline Interval operator+(const Interval& a, const Interval& b)
{
    return Interval::checked(rnd::add_down(a.lo_, b.lo_), rnd::add_up(a.hi_, b.hi_));
}

inline Interval operator-(const Interval& a, const Interval& b)
{
    return Interval::checked(rnd::sub_down(a.lo_, b.hi_), rnd::sub_up(a.hi_, b.lo_));
}

inline Interval operator-(const Interval& a)
{
    Interval r;
    r.lo_ = -a.hi_;
    r.hi_ = -a.lo_;
    return r;
}

Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);
Interval sqr(const Interval& a);
Interval sqrt(const Interval& a);
Interval pow(const Interval& a, int n);
Interval abs(const Interval& a);

inline Interval hull(const Interval& a, const Interval& b)
{
    Interval r;
    r.lo_ = std::fmin(a.lo_, b.lo_);
    r.hi_ = std::fmax(a.hi_, b.hi_);
    return r;
}

// absolute widening by at least delta on each side
inline Interval widen(const Interval& a, double delta)
{
    return Interval::checked(rnd::sub_down(a.lo_, delta), rnd::add_up(a.hi_, delta));
}

std::optional<Interval> intersect(const Interval& a, const Interval& b);

inline Interval& Interval::operator+=(const Interval& o) { return *this = *this + o; }
inline Interval& Interval::operator-=(const Interval& o) { return *this = *this - o; }
inline Interval& Interval::operator*=(const Interval& o) { return *this = *this * o; }
inline Interval& Interval::operator/=(const Interval& o) { return *this = *this / o; }

// common constants as enclosures
Interval pi_interval();

std::ostream& operator<<(std::ostream& os, const Interval& x);
std::string to_string(const Interval& x);

} // namespace melcert

#endif
