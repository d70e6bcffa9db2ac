#ifndef MELCERT_BOX_HPP
#define MELCERT_BOX_HPP

#include <initializer_list>
#include <optional>
#include <vector>

#include "melcert/interval.hpp"

namespace melcert {

class IntervalBox {
public:
    IntervalBox() = default;
    explicit IntervalBox(std::size_t dim) : c_(dim) {}
    IntervalBox(std::initializer_list<Interval> xs) : c_(xs) {}
    explicit IntervalBox(std::vector<Interval> xs) : c_(std::move(xs)) {}
    static IntervalBox from_point(const std::vector<double>& p);

    std::size_t size() const noexcept { return c_.size(); }
    Interval& operator[](std::size_t i) { return c_[i]; }
    const Interval& operator[](std::size_t i) const { return c_[i]; }
    auto begin() const { return c_.begin(); }
    auto end() const { return c_.end(); }
    const std::vector<Interval>& components() const noexcept { return c_; }

    std::vector<double> mid() const;
    std::vector<double> rad() const;
    double max_width() const;
    bool contains(const std::vector<double>& p) const;
    bool contains(const IntervalBox& b) const;

    friend bool operator==(const IntervalBox& a, const IntervalBox& b) { return a.c_ == b.c_; }

private:
    std::vector<Interval> c_;
};

IntervalBox hull(const IntervalBox& a, const IntervalBox& b);
// empty intersection is reported as nullopt
std::optional<IntervalBox> intersect(const IntervalBox& a, const IntervalBox& b);
// strict containment of a in the interior of b, per component
bool subset_interior(const IntervalBox& a, const IntervalBox& b);
// concatenation
IntervalBox join(const IntervalBox& a, const IntervalBox& b);
IntervalBox slice(const IntervalBox& a, std::size_t from, std::size_t count);

IntervalBox operator+(const IntervalBox& a, const IntervalBox& b);
IntervalBox operator-(const IntervalBox& a, const IntervalBox& b);
IntervalBox operator*(const Interval& s, const IntervalBox& a);

} // namespace melcert

#endif
