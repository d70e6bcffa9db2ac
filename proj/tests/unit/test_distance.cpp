#include <doctest.h>

#include <cmath>
#include <random>

#include "melcert/distance.hpp"
#include "oracle.hpp"

using namespace melcert;

namespace {

ManifoldOracle manifold(const std::vector<std::string>& comps, const std::vector<std::string>& names,
                        std::vector<std::size_t> x, std::vector<std::size_t> y, std::vector<std::size_t> v = {},
                        std::vector<std::size_t> z = {})
{
    std::vector<Polynomial> p;
    for (const auto& c : comps) p.push_back(parse_polynomial(c, names));
    return polynomial_manifold(p, std::move(x), std::move(y), std::move(v), std::move(z));
}

const std::vector<std::string> kOne{"eps", "k"};
const std::vector<std::string> kTwo{"eps", "k1", "k2"};

double cubic_root_d(double s)
{
    double y = s;
    for (int i = 0; i < 60; ++i) y -= (y * y * y + y - s) / (3 * y * y + 1);
    return y;
}

} // namespace

TEST_CASE("coincident manifolds give a distance enclosing zero")
{
    auto w = manifold({"k", "k^2 + eps*k"}, kOne, {0}, {1});
    auto d = distance_fixed_point(w, w, 1, 0);
    auto J = d.jet(Interval(0, 0.1), IntervalBox{Interval(0.2, 0.4)});
    REQUIRE(J.outputs() == 1);
    CHECK(J[0].value().contains(0.0));
    CHECK(J[0].d1(0).contains(0.0));
    CHECK(J[0].d1(1).contains(0.0));
    CHECK(J[0].value().width() < 1.0);
}

TEST_CASE("opposite parabolas are 2 x^2 apart")
{
    auto wu = manifold({"k", "k^2"}, kOne, {0}, {1});
    auto ws = manifold({"k", "-k^2"}, kOne, {0}, {1});
    auto d = distance_fixed_point(wu, ws, 1, 0);
    IntervalBox X{Interval(0.2, 0.4)};
    auto J = d.jet(Interval(0, 0.1), X);
    CHECK(J[0].value().contains(Interval(0.08, 0.32)));
    CHECK(J[0].value().lo() > 0.0);
    CHECK(J[0].d1(1).contains(Interval(0.8, 1.6)));
    CHECK(J[0].d1(0).contains(0.0));
    CHECK(J[0].d2(1, 1).contains(4.0));
    CHECK(J[0].d2(0, 1).contains(0.0));
}

TEST_CASE("graph over a cubic reparameterization")
{
    // (u, u^2) against (s + s^3, 0): y = x^2
    auto wu = manifold({"k", "k^2"}, kOne, {0}, {1});
    auto ws = manifold({"k + k^3", "0*k"}, kOne, {0}, {1});
    auto d = distance_fixed_point(wu, ws, 1, 0);
    std::mt19937_64 rng(13);
    for (int s = 0; s < 20; ++s) {
        double a = oracle::random_point(rng, Interval(-0.5, 0.5));
        IntervalBox X{Interval(a, a + 0.01)};
        auto J = d.jet(Interval(0), X);
        double x = oracle::random_point(rng, X[0]);
        CHECK(J[0].value().contains(x * x));
        CHECK(J[0].d1(1).contains(2 * x));
        CHECK(J[0].d2(1, 1).contains(2.0));
    }
}

TEST_CASE("graph solution reports the reparameterization and its conditioning")
{
    auto ws = manifold({"k + k^3", "0*k"}, kOne, {0}, {1});
    auto sol = solve_graph(ws, {0}, {}, Interval(0), IntervalBox{Interval(0.1, 0.3)});
    CHECK(sol.K[0].contains(cubic_root_d(0.1)));
    CHECK(sol.K[0].contains(cubic_root_d(0.3)));
    CHECK(sol.sigmaMin >= 1.0);
    double x = 0.2, k = cubic_root_d(x);
    CHECK(sol.kappa[0].d1(1).contains(1 / (3 * k * k + 1)));
}

TEST_CASE("a fold in the projection is reported")
{
    auto ws = manifold({"k^2", "k"}, kOne, {0}, {1});
    CHECK_THROWS_AS(solve_graph(ws, {0}, {}, Interval(0), IntervalBox{Interval(-0.01, 0.01)}), DistanceError);
    auto d = distance_fixed_point(ws, ws, 1, 0);
    CHECK_THROWS_AS(d.jet(Interval(0), IntervalBox{Interval(-0.01, 0.01)}), DistanceError);
}

TEST_CASE("y2 vanishes at eps = 0 on random boxes")
{
    // (k, k^2 + eps k) against (k, k^2): y = eps x
    auto wu = manifold({"k", "k^2 + eps*k"}, kOne, {0}, {1});
    auto ws = manifold({"k", "k^2"}, kOne, {0}, {1});
    auto d = distance_fixed_point(wu, ws, 0, 1);
    std::mt19937_64 rng(17);
    for (int s = 0; s < 50; ++s) {
        Interval x = oracle::random_interval(rng, 1.0);
        auto J0 = d.jet(Interval(0), IntervalBox{x});
        CHECK(J0[0].value().contains(0.0));
        auto J = d.jet(Interval(0, 0.01), IntervalBox{x});
        CHECK(J[0].d1(0).contains(x));
        CHECK(J[0].d2(0, 1).contains(1.0));
    }
}

TEST_CASE("finite differences of a nonlinear distance")
{
    // (u, u^2 + eps u^3) against (s + s^3, eps s)
    auto wu = manifold({"k", "k^2 + eps*k^3"}, kOne, {0}, {1});
    auto ws = manifold({"k + k^3", "eps*k"}, kOne, {0}, {1});
    auto d = distance_fixed_point(wu, ws, 1, 0);
    auto y = [](double eps, double x) { return x * x + eps * x * x * x - eps * cubic_root_d(x); };
    const double h = 1e-4;
    std::mt19937_64 rng(19);
    for (int s = 0; s < 20; ++s) {
        double e0 = oracle::random_point(rng, Interval(0, 0.09));
        double x0 = oracle::random_point(rng, Interval(-0.4, 0.4));
        auto J = d.jet(Interval(e0, e0 + 0.01), IntervalBox{Interval(x0, x0 + 0.01)});
        double e = e0 + 0.005, x = x0 + 0.005;
        double fe = (y(e + h, x) - y(e - h, x)) / (2 * h);
        double fx = (y(e, x + h) - y(e, x - h)) / (2 * h);
        double fex = (y(e + h, x + h) - y(e + h, x - h) - y(e - h, x + h) + y(e - h, x - h)) / (4 * h * h);
        double fxx = (y(e, x + h) - 2 * y(e, x) + y(e, x - h)) / (h * h);
        CHECK(J[0].value().contains(y(e, x)));
        CHECK(widen(J[0].d1(0), 1e-7).contains(fe));
        CHECK(widen(J[0].d1(1), 1e-7).contains(fx));
        CHECK(widen(J[0].d2(0, 1), 1e-5).contains(fex));
        CHECK(widen(J[0].d2(1, 1), 1e-4).contains(fxx));
    }
}

TEST_CASE("section of a normally hyperbolic family")
{
    auto wcu = manifold({"k1 + k2^2", "k1 + eps*k2", "k2"}, kTwo, {0}, {1}, {}, {2});
    auto wcs = manifold({"k1 - k2", "eps*k1^2", "k2"}, kTwo, {0}, {1}, {}, {2});
    const double z = 0.3;
    auto d = distance_nhim_section(wcu, wcs, {z}, 1, 0);
    auto y = [z](double e, double x) { return x - z * z + e * z - e * (x + z) * (x + z); };
    std::mt19937_64 rng(23);
    for (int s = 0; s < 20; ++s) {
        double x = oracle::random_point(rng, Interval(-0.5, 0.5));
        double e = oracle::random_point(rng, Interval(0, 0.1));
        auto J = d.jet(Interval(e), IntervalBox{Interval(x)});
        CHECK(J[0].value().contains(y(e, x)));
        CHECK(J[0].d1(0).contains(z - (x + z) * (x + z)));
        CHECK(J[0].d1(1).contains(1 - 2 * e * (x + z)));
        CHECK(J[0].d2(0, 1).contains(-2 * (x + z)));
        CHECK(J[0].d2(1, 1).contains(-2 * e));
    }
}

TEST_CASE("a passive center direction reduces to the fixed point case")
{
    auto wu = manifold({"k", "k^2 + eps*k"}, kOne, {0}, {1});
    auto ws = manifold({"k + k^3", "-k^2"}, kOne, {0}, {1});
    auto wcu = manifold({"k1", "k1^2 + eps*k1", "k2"}, kTwo, {0}, {1}, {}, {2});
    auto wcs = manifold({"k1 + k1^3", "-k1^2", "k2"}, kTwo, {0}, {1}, {}, {2});
    auto dp = distance_fixed_point(wu, ws, 1, 0);
    auto dn = distance_nhim_section(wcu, wcs, {0.7}, 1, 0);
    IntervalBox X{Interval(0.1, 0.2)};
    Interval E(0, 0.05);
    auto a = dp.jet(E, X);
    auto b = dn.jet(E, X);
    for (int i = 0; i < 2; ++i) {
        CHECK(intersect(a[0].d1(i), b[0].d1(i)).has_value());
        for (int j = i; j < 2; ++j) CHECK(intersect(a[0].d2(i, j), b[0].d2(i, j)).has_value());
    }
    CHECK(std::abs(a[0].value().mid() - b[0].value().mid()) < 1e-12);
}

TEST_CASE("unequal dimensions feed the extra coordinate through")
{
    // w^cu = (k, eps k); w^cs = (s1, s2, s1^2 + s1 s2): y = x^2 - x^2 (1 + eps) = -eps x^2
    auto wcu = manifold({"k", "eps*k", "k^2"}, kOne, {0}, {2}, {1});
    auto wcs = manifold({"k1", "k2", "k1^2 + k1*k2"}, kTwo, {0}, {2}, {1});
    auto d = distance_unequal(wcu, wcs, {}, 0, 1);
    std::mt19937_64 rng(29);
    for (int s = 0; s < 20; ++s) {
        double x = oracle::random_point(rng, Interval(-0.8, 0.8));
        double e = oracle::random_point(rng, Interval(0, 0.1));
        auto J = d.jet(Interval(e), IntervalBox{Interval(x)});
        CHECK(J[0].value().contains(-e * x * x));
        CHECK(J[0].d1(0).contains(-x * x));
        CHECK(J[0].d1(1).contains(-2 * e * x));
        CHECK(J[0].d2(0, 0).contains(0.0));
        CHECK(J[0].d2(0, 1).contains(-2 * x));
        CHECK(J[0].d2(1, 1).contains(-2 * e));
    }
    auto J0 = d.jet(Interval(0), IntervalBox{Interval(-1, 1)});
    CHECK(J0[0].value().contains(0.0));
}

TEST_CASE("malformed splits are rejected")
{
    auto w = manifold({"k", "k^2"}, kOne, {0}, {1});
    CHECK_THROWS_AS(distance_fixed_point(w, w, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(distance_nhim_section(w, w, {0.1}, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(distance_unequal(w, w, {}, 1, 0), std::invalid_argument);
}
