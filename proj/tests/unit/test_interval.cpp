#include <doctest.h>

#include <cmath>
#include <limits>

#include "melcert/box.hpp"
#include "oracle.hpp"

using namespace melcert;
using oracle::mp;

TEST_CASE("interval arithmetic on exact endpoints")
{
    CHECK(Interval(1, 2) + Interval(3, 4) == Interval(4, 6));
    CHECK(Interval(-1, 2) * Interval(3, 4) == Interval(-4, 8));
    CHECK(Interval(1, 2) - Interval(3, 4) == Interval(-3, -1));
    CHECK(-Interval(1, 2) == Interval(-2, -1));
    CHECK(sqr(Interval(-2, 1)) == Interval(0, 4));
    CHECK(sqrt(Interval(4, 9)) == Interval(2, 3));
    CHECK(sqrt(Interval(0, 0)) == Interval(0, 0));
}

TEST_CASE("division by a third is tight and encloses 1/3")
{
    Interval q = Interval(1) / Interval(3);
    CHECK(q.lo() < q.hi());
    CHECK(oracle::encloses(q, mp(1) / 3));
    CHECK(std::nextafter(q.lo(), 1.0) == q.hi());
}

TEST_CASE("square root of two within two ulps")
{
    Interval s = sqrt(Interval(2));
    CHECK(oracle::encloses(s, boost::multiprecision::sqrt(mp(2))));
    CHECK(std::nextafter(std::nextafter(s.lo(), 2.0), 2.0) >= s.hi());
}

TEST_CASE("errors")
{
    CHECK_THROWS_AS(Interval(1) / Interval(-1, 1), DomainError);
    CHECK_THROWS_AS(sqrt(Interval(-1, 1)), DomainError);
    CHECK_THROWS_AS(Interval(2, 1), std::invalid_argument);
    CHECK_THROWS_AS(Interval(0, std::numeric_limits<double>::infinity()), std::invalid_argument);
    CHECK_THROWS_AS(Interval(1e308) * Interval(1e308), std::overflow_error);
}

TEST_CASE("box utilities")
{
    IntervalBox a{Interval(1.1, 1.9), Interval(1.1, 1.9)};
    IntervalBox b{Interval(1, 2), Interval(1, 2)};
    IntervalBox c{Interval(1, 1.5), Interval(1, 1.5)};
    CHECK(subset_interior(a, b));
    CHECK_FALSE(subset_interior(c, b));
    CHECK(hull(Interval(0, 1), Interval(2, 3)) == Interval(0, 3));
    CHECK_FALSE(intersect(Interval(0, 1), Interval(2, 3)).has_value());
    auto i = intersect(b, IntervalBox{Interval(1.5, 3), Interval(0, 1.2)});
    REQUIRE(i);
    CHECK((*i)[0] == Interval(1.5, 2));
    CHECK((*i)[1] == Interval(1, 1.2));
    CHECK_FALSE(intersect(b, IntervalBox{Interval(3, 4), Interval(1, 2)}).has_value());
    CHECK(b.mid() == std::vector<double>{1.5, 1.5});
    CHECK(b.contains(std::vector<double>{1.0, 2.0}));
    CHECK_THROWS(subset_interior(a, IntervalBox{Interval(0, 1)}));
}

TEST_CASE("odd and even powers")
{
    CHECK(pow(Interval(-2, 1), 3) == Interval(-8, 1));
    CHECK(pow(Interval(-2, 1), 2) == Interval(0, 4));
    CHECK(pow(Interval(-3, -2), 4) == Interval(16, 81));
}

namespace {

template <class Op, class Exact>
int count_violations(std::mt19937_64& rng, int cases, Op op, Exact exact, bool positive_b = false)
{
    int bad = 0;
    for (int n = 0; n < cases; ++n) {
        double scale = std::ldexp(1.0, int(rng() % 40) - 20);
        Interval a = oracle::random_interval(rng, scale);
        Interval b = oracle::random_interval(rng, scale);
        if (positive_b) b = Interval(std::fabs(b.hi()) + scale * 1e-3, std::fabs(b.hi()) + scale);
        Interval r = op(a, b);
        double x = oracle::random_point(rng, a), y = oracle::random_point(rng, b);
        if (!oracle::encloses(r, exact(mp(x), mp(y)))) ++bad;
        if (!oracle::encloses(r, exact(mp(a.lo()), mp(b.hi())))) ++bad;
    }
    return bad;
}

} // namespace

TEST_CASE("containment on random operands")
{
    std::mt19937_64 rng(12345);
    const int N = 20000;
    CHECK(count_violations(rng, N, [](auto a, auto b) { return a + b; }, [](mp x, mp y) { return x + y; }) == 0);
    CHECK(count_violations(rng, N, [](auto a, auto b) { return a - b; }, [](mp x, mp y) { return x - y; }) == 0);
    CHECK(count_violations(rng, N, [](auto a, auto b) { return a * b; }, [](mp x, mp y) { return x * y; }) == 0);
    CHECK(count_violations(
              rng, N, [](auto a, auto b) { return a / b; }, [](mp x, mp y) { return x / y; }, true) == 0);
    CHECK(count_violations(rng, N, [](auto a, auto) { return sqr(a); }, [](mp x, mp) { return x * x; }) == 0);
    CHECK(count_violations(
              rng, N, [](auto, auto b) { return sqrt(b); }, [](mp, mp y) { return boost::multiprecision::sqrt(y); },
              true) == 0);
}

TEST_CASE("inclusion monotonicity")
{
    std::mt19937_64 rng(7);
    int bad = 0;
    for (int n = 0; n < 5000; ++n) {
        Interval a = oracle::random_interval(rng, 10), b = oracle::random_interval(rng, 10);
        Interval a2 = widen(a, 0.5), b2 = widen(b, 0.25);
        if (!(a2 + b2).contains(a + b)) ++bad;
        if (!(a2 - b2).contains(a - b)) ++bad;
        if (!(a2 * b2).contains(a * b)) ++bad;
        if (!sqr(a2).contains(sqr(a))) ++bad;
        Interval pb(std::fabs(b.hi()) + 1, std::fabs(b.hi()) + 2);
        if (!(a2 / widen(pb, 0.5)).contains(a / pb)) ++bad;
    }
    CHECK(bad == 0);
}

TEST_CASE("tiny operands widen instead of losing containment")
{
    Interval t(std::numeric_limits<double>::denorm_min() * 3);
    Interval p = t * Interval(0.3);
    CHECK(oracle::encloses(p, mp(t.lo()) * mp(0.3)));
    Interval q = t / Interval(7);
    CHECK(oracle::encloses(q, mp(t.lo()) / 7));
    Interval s = sqrt(t);
    CHECK(oracle::encloses(s, boost::multiprecision::sqrt(mp(t.lo()))));
}

TEST_CASE("pi enclosure")
{
    CHECK(oracle::encloses(pi_interval(), boost::math::constants::pi<mp>()));
    CHECK(pi_interval().width() < 1e-15);
}
