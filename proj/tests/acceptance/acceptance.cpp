// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Usage: acceptance [criterion numbers...]
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <unistd.h>

#include <json.hpp>

#include "melcert/certificate.hpp"
#include "melcert/commands.hpp"
#include "melcert/flow.hpp"
#include "melcert/implicit.hpp"
#include "melcert/lerman_umanskii.hpp"
#include "melcert/linalg.hpp"
#include "melcert/newton.hpp"
#include "melcert/numfmt.hpp"
#include "oracle.hpp"
#include "reference_enclosures.hpp"

using namespace melcert;
using oracle::mp;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string fmt(double x) { return format_double(x); }

Outcome norms()
{
    const double s = sigma_min_lb(reference::mixed_block());
    const double d = spectral_norm_ub(reference::mixed_variation());
    const double v = ivec_norm_ub(reference::eps_derivative());
    bool ok = s >= 3.4230 && s <= 3.42309 && d <= 2.000249209 * (1 + 1e-6) && d >= 1.89 &&
              std::abs(v - 1.409027398e-5) <= 1e-12;
    return {ok, "sigma_min >= " + fmt(s) + ", ||Delta|| <= " + fmt(d) + ", ||dy/deps|| <= " + fmt(v)};
}

Outcome margin()
{
    auto c = verify_practical(certificate_from_blocks(0, 2, 1e-5, 1e-7, IntervalMatrix(0, 0), IntervalMatrix(0, 2), 0,
                                                      reference::mixed_block(), reference::mixed_variation(),
                                                      ivec_norm_ub(reference::eps_derivative())));
    double m = c.margins.count("y2") ? c.margins.at("y2") : -1;
    bool ok = c.verdict == Verdict::verified && m >= 1.3810e-7 && m <= 1.3812e-7;
    return {ok, "verdict " + to_string(c.verdict) + ", margin " + fmt(m)};
}

Outcome newton()
{
    auto f = polynomial_system_oracle({parse_polynomial("y^2 - 2", {"y"})}, 0);
    auto c = newton_verify(f, IntervalBox{}, IntervalBox{Interval(1, 2)}, std::vector<double>{1.5});
    const Interval& y = c.refined[0];
    mp r = boost::multiprecision::sqrt(mp(2));
    bool ok = c.verified && y.width() <= 1e-12 && y.contains(1.4142135623730951) && oracle::encloses(y, r);
    return {ok, "[" + fmt(y.lo()) + ", " + fmt(y.hi()) + "], width " + fmt(y.width())};
}

Outcome rotation()
{
    // x' = A x with A = [[0, -1], [1, 0]]
    auto f = VectorFieldDef::parse({"-x2", "x1"});
    const Interval T = pi_interval() / Interval(2.0);
    std::mt19937_64 rng(4);
    double worst = 0;
    bool ok = true;
    for (int s = 0; s < 5; ++s) {
        double a = oracle::random_point(rng, Interval(-1, 1)), b = oracle::random_point(rng, Interval(-1, 1));
        auto J = flow_identity_jet(f, Interval(0), IntervalBox{Interval(a), Interval(b)}, T);
        // quarter turn: (a, b) -> (-b, a)
        ok = ok && J[0].value().contains(-b) && J[1].value().contains(a);
        const double D[2][2] = {{0, -1}, {1, 0}};
        for (int i = 0; i < 2; ++i) {
            worst = std::max(worst, J[i].value().width());
            for (int j = 0; j < 2; ++j) {
                ok = ok && J[i].d1(j + 1).contains(D[i][j]);
                worst = std::max(worst, J[i].d1(j + 1).width());
                for (int k = 0; k < 3; ++k) ok = ok && J[i].d2(j + 1, k).contains(0.0);
            }
        }
    }
    ok = ok && worst <= 1e-8;
    return {ok, "largest value/first-derivative width " + fmt(worst)};
}

Outcome conservation()
{
    LUConfig cfg;
    VectorFieldDef f = lu_field(cfg);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0, 1);
    std::uniform_real_distribution<double> u(0, 1);
    double worst = 0;
    bool ok = true;
    for (int s = 0; s < 10; ++s) {
        double x[4], n = 0;
        for (double& c : x) n += (c = g(rng)) * c;
        const double rad = 0.5 * std::pow(u(rng), 0.25) / std::sqrt(n);
        IntervalBox x0(4);
        for (int i = 0; i < 4; ++i) x0[i] = Interval(x[i] * rad);
        auto [h0, k0] = integrals_HK(cfg, x0);
        IntervalBox xt = flow_box(f, Interval(0), x0, Interval(1.0), cfg.flow);
        auto [h1, k1] = integrals_HK(cfg, xt);
        ok = ok && h1.contains(h0.mid()) && k1.contains(k0.mid()) && h1.contains(h0) && k1.contains(k0);
        worst = std::max({worst, h1.width(), k1.width()});
    }
    ok = ok && worst <= 1e-6;
    return {ok, "largest H/K width " + fmt(worst)};
}

mp cubic_root(const mp& s)
{
    mp y = s;
    for (int i = 0; i < 100; ++i) y -= (y * y * y + y - s) / (3 * y * y + 1);
    return y;
}

Outcome implicit()
{
    auto g = polynomial_implicit_oracle({parse_polynomial("k^3 + k - (1 + eps)*x", {"eps", "x", "k"})});
    std::mt19937_64 rng(6);
    int bad = 0;
    for (int s = 0; s < 20; ++s) {
        double e0 = oracle::random_point(rng, Interval(0, 0.5)), x0 = oracle::random_point(rng, Interval(-1, 1));
        IntervalBox X{Interval(e0, e0 + 1e-3), Interval(x0, x0 + 1e-3)};
        const double c = (e0 + 5e-4 + 1) * (x0 + 5e-4);
        const double kc = double(cubic_root(mp(c)));
        auto K = implicit_enclose(g, X, IntervalBox{Interval(kc - 0.05, kc + 0.05)}, {kc}).image;
        auto firsts = implicit_first(g, X, K);
        auto mixed = implicit_mixed_second(g, X, K, firsts, false);
        auto jet = implicit_jet(g, X, K);
        mp eps = oracle::random_point(rng, X[0]), x = oracle::random_point(rng, X[1]);
        mp k = cubic_root((1 + eps) * x);
        mp d1 = 1 / (3 * k * k + 1);
        mp d2 = -6 * k * d1 * d1 * d1;
        bad += !oracle::encloses(jet[0].value(), k);
        bad += !oracle::encloses(jet[0].d1(0), d1 * x);
        bad += !oracle::encloses(jet[0].d1(1), d1 * (1 + eps));
        bad += !oracle::encloses(jet[0].d2(0, 1), d2 * x * (1 + eps) + d1);
        bad += !oracle::encloses(firsts.first(0, 0), d1 * x);
        bad += !oracle::encloses(firsts.second(0, 0), d1 * (1 + eps));
        bad += !oracle::encloses(mixed(0, 0), d2 * x * (1 + eps) + d1);
    }
    return {bad == 0, std::to_string(bad) + " containment failures over 20 points"};
}

Outcome end_to_end()
{
    auto dir = std::filesystem::temp_directory_path() / ("melcert_acceptance_" + std::to_string(::getpid()));
    std::filesystem::create_directories(dir);
    CommandOptions opt;
    opt.config = std::string(MELCERT_SOURCE_DIR) + "/configs/lu_default.json";
    opt.out = (dir / "lu.json").string();
    opt.threads = 1;
    std::ostringstream out, log;
    int rc = cmd_lu_verify(opt, out, log);
    std::ifstream in(opt.out);
    if (!in) return {false, "no certificate written (exit " + std::to_string(rc) + "): " + log.str()};
    auto j = nlohmann::json::parse(in);
    std::filesystem::remove_all(dir);

    auto number = [&](const nlohmann::json& v) { return v.is_number() ? v.get<double>() : -INFINITY; };
    auto check = [&](const char* k) { return j["checks"].contains(k) && j["checks"][k].get<bool>(); };
    const double m = j["margins"].contains("y2") ? number(j["margins"]["y2"]) : -INFINITY;
    const bool primary = rc == 0 && m > 0 && check("A22ContainsReferenceMidpoints");
    std::string detail = "exit " + std::to_string(rc) + ", margin " + fmt(m) + ", A22 contains reference midpoints " +
                         (check("A22ContainsReferenceMidpoints") ? "yes" : "no");
    if (primary) return {true, detail};

    const auto& q = j["margins"];
    const bool recorded = q.contains("fallbackReducedTimeMargin_y2") && q.contains("fallbackMidpointRelError");
    const bool fa = check("fallbackReducedTimeVerified"), fb = check("fallbackMidpointMatch");
    detail += "; fallback recorded " + std::string(recorded ? "yes" : "no");
    if (recorded)
        detail += ", reduced-time margin " + fmt(number(q["fallbackReducedTimeMargin_y2"])) +
                  ", midpoint relative error " + fmt(number(q["fallbackMidpointRelError"]));
    detail += ", wall time " + fmt(number(j["wallTimeSeconds"])) + " s";
    return {recorded && fa && fb, detail};
}

Outcome properties()
{
    std::mt19937_64 rng(8);
    long long cases = 0, bad = 0;
    using Op = std::function<Interval(Interval, Interval)>;
    using Ex = std::function<mp(mp, mp)>;
    const std::vector<std::tuple<Op, Ex, bool>> ops{
        {[](Interval a, Interval b) { return a + b; }, [](mp x, mp y) { return x + y; }, false},
        {[](Interval a, Interval b) { return a - b; }, [](mp x, mp y) { return x - y; }, false},
        {[](Interval a, Interval b) { return a * b; }, [](mp x, mp y) { return x * y; }, false},
        {[](Interval a, Interval b) { return a / b; }, [](mp x, mp y) { return x / y; }, true},
        {[](Interval a, Interval) { return sqr(a); }, [](mp x, mp) { return x * x; }, false},
        {[](Interval, Interval b) { return sqrt(b); }, [](mp, mp y) { return boost::multiprecision::sqrt(y); }, true}};
    for (const auto& [op, exact, positive] : ops)
        for (int n = 0; n < 17000; ++n, ++cases) {
            double scale = std::ldexp(1.0, int(rng() % 40) - 20);
            Interval a = oracle::random_interval(rng, scale), b = oracle::random_interval(rng, scale);
            if (positive) b = Interval(std::fabs(b.hi()) + scale * 1e-3, std::fabs(b.hi()) + scale);
            Interval r = op(a, b);
            double x = oracle::random_point(rng, a), y = oracle::random_point(rng, b);
            bad += !oracle::encloses(r, exact(mp(x), mp(y)));
        }

    std::uniform_real_distribution<double> u(0, 1);
    auto rnd = [&](std::size_t r, std::size_t c, double s) {
        IntervalMatrix m(r, c);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t k = 0; k < c; ++k) m(i, k) = oracle::random_interval(rng, s);
        return m;
    };
    auto widen_all = [](IntervalMatrix m, double by) {
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = widen(m(i, k), by);
        return m;
    };
    int flips = 0;
    for (int t = 0; t < 1000; ++t) {
        std::size_t k1 = rng() % 3, k2 = rng() % 3;
        if (k1 + k2 == 0) k2 = 1;
        double R = std::pow(10.0, -6 * u(rng)), eps = std::pow(10.0, -6 * u(rng));
        IntervalMatrix A11 = rnd(k1, k1, 2), A22 = rnd(k2, k2, 2);
        for (std::size_t i = 0; i < k1; ++i) A11(i, i) = A11(i, i) + Interval(2.5);
        for (std::size_t i = 0; i < k2; ++i) A22(i, i) = A22(i, i) + Interval(2.5);
        IntervalMatrix D1 = rnd(k1, k1 + k2, 0.5), D2 = rnd(k2, k1 + k2, 0.5);
        double b1 = u(rng) * R, b2 = u(rng) * R, by = 0.3 * u(rng);
        auto base = verify_practical(certificate_from_blocks(k1, k2, R, eps, A11, D1, b1, A22, D2, b2));
        auto wide = verify_practical(certificate_from_blocks(k1, k2, R, eps, widen_all(A11, by), widen_all(D1, by),
                                                             b1 * (1 + by), widen_all(A22, by), widen_all(D2, by),
                                                             b2 * (1 + by)));
        flips += base.verdict == Verdict::failed && wide.verdict == Verdict::verified;
    }

    std::vector<Polynomial> y{parse_polynomial("x1", {"eps", "x1", "x2"}),
                              parse_polynomial("eps*x2", {"eps", "x1", "x2"})};
    auto b = verify_boundary_exclusion(polynomial_distance(y, 1, 1), IntervalBox{Interval(-1, 1), Interval(-1, 1)},
                                       Interval(0, 1), 0);
    bool ok = bad == 0 && flips == 0 && b.verified && b.depthUsed == 0;
    return {ok, std::to_string(bad) + " containment violations in " + std::to_string(cases) + " cases, " +
                    std::to_string(flips) + " failed-to-verified flips in 1000, boundary exclusion " +
                    (b.verified ? "verified" : "not verified") + " at depth " + std::to_string(b.depthUsed)};
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"norm and sigma-min golden values", norms},
        {"margin of the reference enclosures", margin},
        {"interval Newton on y^2 - 2", newton},
        {"flow jet of the quarter rotation", rotation},
        {"conservation of H and K", conservation},
        {"implicit derivatives of the cubic graph", implicit},
        {"end-to-end Lerman-Umanskii certificate", end_to_end},
        {"property suites", properties}};
    std::set<int> only;
    for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int n = int(i) + 1;
        if (!only.empty() && !only.count(n)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !o.pass;
        std::cout << "criterion " << n << ": " << (o.pass ? "PASS" : "FAIL") << " - " << criteria[i].first << " ("
                  << o.detail << "; " << std::fixed;
        std::cout.precision(2);
        std::cout << secs << " s)" << std::defaultfloat << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
