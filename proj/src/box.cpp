#include "melcert/box.hpp"

#include <stdexcept>

namespace melcert {

namespace {
void check_dims(const IntervalBox& a, const IntervalBox& b)
{
    if (a.size() != b.size()) throw std::invalid_argument("box dimension mismatch");
}
} // namespace

IntervalBox IntervalBox::from_point(const std::vector<double>& p)
{
    IntervalBox b(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) b[i] = Interval(p[i], p[i]);
    return b;
}

std::vector<double> IntervalBox::mid() const
{
    std::vector<double> m(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) m[i] = c_[i].mid();
    return m;
}

std::vector<double> IntervalBox::rad() const
{
    std::vector<double> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i].rad();
    return r;
}

double IntervalBox::max_width() const
{
    double w = 0;
    for (const auto& x : c_) w = std::fmax(w, x.width());
    return w;
}

bool IntervalBox::contains(const std::vector<double>& p) const
{
    if (p.size() != c_.size()) throw std::invalid_argument("box dimension mismatch");
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].contains(p[i])) return false;
    return true;
}

bool IntervalBox::contains(const IntervalBox& b) const
{
    check_dims(*this, b);
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!c_[i].contains(b[i])) return false;
    return true;
}

IntervalBox hull(const IntervalBox& a, const IntervalBox& b)
{
    check_dims(a, b);
    IntervalBox r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = hull(a[i], b[i]);
    return r;
}

std::optional<IntervalBox> intersect(const IntervalBox& a, const IntervalBox& b)
{
    check_dims(a, b);
    IntervalBox r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        auto x = intersect(a[i], b[i]);
        if (!x) return std::nullopt;
        r[i] = *x;
    }
    return r;
}

bool subset_interior(const IntervalBox& a, const IntervalBox& b)
{
    check_dims(a, b);
    for (std::size_t i = 0; i < a.size(); ++i)
        if (!b[i].interior_contains(a[i])) return false;
    return true;
}

IntervalBox join(const IntervalBox& a, const IntervalBox& b)
{
    std::vector<Interval> v(a.begin(), a.end());
    v.insert(v.end(), b.begin(), b.end());
    return IntervalBox(std::move(v));
}

IntervalBox slice(const IntervalBox& a, std::size_t from, std::size_t count)
{
    if (from + count > a.size()) throw std::out_of_range("box slice out of range");
    return IntervalBox(std::vector<Interval>(a.begin() + from, a.begin() + from + count));
}

IntervalBox operator+(const IntervalBox& a, const IntervalBox& b)
{
    check_dims(a, b);
    IntervalBox r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IntervalBox operator-(const IntervalBox& a, const IntervalBox& b)
{
    check_dims(a, b);
    IntervalBox r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IntervalBox operator*(const Interval& s, const IntervalBox& a)
{
    IntervalBox r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

} // namespace melcert
