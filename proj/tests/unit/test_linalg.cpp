#include <doctest.h>

#include <random>

#include "melcert/linalg.hpp"
#include "oracle.hpp"
#include "reference_enclosures.hpp"

using namespace melcert;
using oracle::mp;

TEST_CASE("matrix-vector and matrix-matrix products")
{
    IntervalBox v{Interval(1), Interval(2)};
    CHECK(imat_apply(IntervalMatrix::identity(2), v) == v);
    IntervalMatrix rot{{Interval(0), Interval(1)}, {Interval(-1), Interval(0)}};
    IntervalBox r = imat_apply(rot, v);
    CHECK(r[0] == Interval(2));
    CHECK(r[1] == Interval(-1));
    IntervalMatrix rr = imat_mul(rot, rot);
    CHECK(rr(0, 0) == Interval(-1));
    CHECK(rr(0, 1) == Interval(0));
    CHECK_THROWS_AS(imat_apply(rot, IntervalBox{Interval(1)}), std::invalid_argument);
}

TEST_CASE("random point products against extended precision")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-10, 10);
    int bad = 0;
    for (int t = 0; t < 200; ++t) {
        Eigen::MatrixXd M(3, 3);
        std::vector<double> x(3);
        for (int i = 0; i < 3; ++i) {
            x[i] = u(rng);
            for (int j = 0; j < 3; ++j) M(i, j) = u(rng);
        }
        IntervalBox r = imat_apply(IntervalMatrix::from_point(M), IntervalBox::from_point(x));
        for (int i = 0; i < 3; ++i) {
            mp s = 0;
            for (int j = 0; j < 3; ++j) s += mp(M(i, j)) * mp(x[j]);
            if (!oracle::encloses(r[i], s)) ++bad;
            if (r[i].width() > 1e-13 * (1 + r[i].mag())) ++bad;
        }
    }
    CHECK(bad == 0);
}

TEST_CASE("spectral norm bound")
{
    CHECK(spectral_norm_ub(IntervalMatrix::identity(2)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(spectral_norm_ub(IntervalMatrix::identity(2)) >= 1.0);
    IntervalMatrix d{{Interval(2), Interval(0)}, {Interval(0), Interval(1)}};
    CHECK(spectral_norm_ub(d) >= 2.0);
    CHECK(spectral_norm_ub(d) <= std::nextafter(2.0, 3.0));
    CHECK(spectral_norm_ub(IntervalMatrix(2, 2)) == 0.0);
}

TEST_CASE("spectral norm of the reference variation block")
{
    double s = spectral_norm_ub(reference::mixed_variation());
    CHECK(s <= reference::kVariationNorm * (1 + 1e-6));
    CHECK(s >= 1.89);
    CHECK(s == doctest::Approx(2.00024920917).epsilon(1e-10));
}

TEST_CASE("smallest singular value bound")
{
    CHECK(sigma_min_lb(IntervalMatrix::identity(2)) >= 1 - 1e-12);
    CHECK(sigma_min_lb(IntervalMatrix::identity(4)) >= 1 - 1e-12);
    IntervalMatrix ones{{Interval(1), Interval(1)}, {Interval(1), Interval(1)}};
    CHECK(sigma_min_lb(ones) == 0.0);
    double s = sigma_min_lb(reference::mixed_block());
    CHECK(s >= 3.4230);
    CHECK(s <= 3.42309);
    CHECK(s == doctest::Approx(reference::kSigmaMin).epsilon(1e-8));
    CHECK_THROWS(sigma_min_lb(IntervalMatrix(2, 3)));
}

TEST_CASE("vector norm bound")
{
    CHECK(ivec_norm_ub(IntervalBox{Interval(3), Interval(4)}) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(ivec_norm_ub(IntervalBox{Interval(3), Interval(4)}) >= 5.0);
    CHECK(ivec_norm_ub(IntervalBox{Interval(0), Interval(0)}) == 0.0);
    double n = ivec_norm_ub(reference::eps_derivative());
    CHECK(std::fabs(n - reference::kEpsDerivNorm) <= 1e-12);
}

TEST_CASE("verified linear solves")
{
    IntervalBox b{Interval(1, 2), Interval(-3, 4)};
    IntervalBox x = ilinsolve(IntervalMatrix::identity(2), b);
    CHECK(x[0].contains(b[0]));
    CHECK(x[1].contains(b[1]));
    CHECK(x[0].lo() >= std::nextafter(1.0, 0.0));
    IntervalMatrix d{{Interval(2), Interval(0)}, {Interval(0), Interval(4)}};
    IntervalBox y = ilinsolve(d, IntervalBox{Interval(2), Interval(4)});
    CHECK(y[0].contains(1.0));
    CHECK(y[1].contains(1.0));
    IntervalMatrix sing{{Interval(1), Interval(1)}, {Interval(1), Interval(1)}};
    CHECK_THROWS_AS(ilinsolve(sing, b), DomainError);
}

TEST_CASE("random well-conditioned 4x4 systems")
{
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    int bad = 0;
    for (int t = 0; t < 100; ++t) {
        Eigen::MatrixXd M = Eigen::MatrixXd::Identity(4, 4) * 4;
        std::vector<double> b(4);
        for (int i = 0; i < 4; ++i) {
            b[i] = u(rng);
            for (int j = 0; j < 4; ++j) M(i, j) += u(rng);
        }
        IntervalMatrix Mi = IntervalMatrix::from_point(M);
        IntervalBox x = ilinsolve(Mi, IntervalBox::from_point(b));
        // residual contains zero
        IntervalBox res = Mi * x - IntervalBox::from_point(b);
        for (int i = 0; i < 4; ++i)
            if (!res[i].contains(0.0)) ++bad;
        // extended-precision solution via long double Gaussian elimination refined once
        Eigen::Matrix<long double, 4, 4> Ml = M.cast<long double>();
        Eigen::Matrix<long double, 4, 1> bl;
        for (int i = 0; i < 4; ++i) bl(i) = b[i];
        Eigen::Matrix<long double, 4, 1> xl = Ml.fullPivLu().solve(bl);
        xl += Ml.fullPivLu().solve(bl - Ml * xl);
        for (int i = 0; i < 4; ++i) {
            if (!(x[i].lo() <= double(xl(i)) + 1e-15 && double(xl(i)) - 1e-15 <= x[i].hi())) ++bad;
            if (x[i].width() > 1e-13) ++bad;
        }
    }
    CHECK(bad == 0);
}

TEST_CASE("singular values bracketed by the bounds on random matrices")
{
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-3, 3);
    int bad = 0;
    for (int t = 0; t < 300; ++t) {
        const int n = 2 + int(rng() % 3);
        Eigen::MatrixXd M(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M(i, j) = u(rng);
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
        const auto& s = svd.singularValues();
        IntervalMatrix Mi = IntervalMatrix::from_point(M);
        double lo = sigma_min_lb(Mi), hi = spectral_norm_ub(Mi);
        if (lo > s(n - 1) * (1 + 1e-12)) ++bad;
        if (hi < s(0) * (1 - 1e-12)) ++bad;
        if (s(n - 1) > 1e-3 && lo <= 0) ++bad;
    }
    CHECK(bad == 0);
}

TEST_CASE("spectral norm bound is monotone under widening")
{
    std::mt19937_64 rng(2);
    int bad = 0;
    for (int t = 0; t < 200; ++t) {
        IntervalMatrix M(3, 3), W(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                M(i, j) = oracle::random_interval(rng, 2);
                W(i, j) = widen(M(i, j), 0.1 * double(rng() % 4));
            }
        if (spectral_norm_ub(W) < spectral_norm_ub(M)) ++bad;
    }
    CHECK(bad == 0);
}

TEST_CASE("inverse enclosure")
{
    IntervalMatrix M{{Interval(2, 2.01), Interval(1)}, {Interval(0), Interval(3)}};
    IntervalMatrix inv = inverse_enclosure(M);
    Eigen::Matrix2d A;
    A << 2.005, 1, 0, 3;
    CHECK(inv.contains(Eigen::MatrixXd(A.inverse())));
}
