#include "melcert/linalg.hpp"

#include <stdexcept>

namespace melcert {

double spectral_norm_ub(const IntervalMatrix& m)
{
    const std::size_t n = m.cols();
    if (n == 0 || m.rows() == 0) return 0.0;
    double bound = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        Interval gii(0.0);
        for (std::size_t k = 0; k < m.rows(); ++k) gii += sqr(m(k, i));
        double radius = gii.hi();
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            Interval gij(0.0);
            for (std::size_t k = 0; k < m.rows(); ++k) gij += m(k, i) * m(k, j);
            radius = rnd::add_up(radius, gij.mag());
        }
        bound = std::fmax(bound, radius);
    }
    return rnd::sqrt_up(bound);
}

double ivec_norm_ub(const IntervalBox& v)
{
    Interval s(0.0);
    for (const auto& x : v) s += sqr(x);
    return rnd::sqrt_up(s.hi());
}

namespace {

double sigma_min_2x2(const IntervalMatrix& m)
{
    const Interval &a = m(0, 0), &b = m(0, 1), &c = m(1, 0), &d = m(1, 1);
    Interval det = a * d - b * c;
    if (det.contains_zero()) return 0.0;
    Interval tr = sqr(a) + sqr(b) + sqr(c) + sqr(d);
    Interval D = sqr(det);
    Interval disc = sqr(tr) - Interval(4.0) * D;
    // the exact discriminant is a square, so negative parts are spurious
    disc = Interval(std::fmax(disc.lo(), 0.0), std::fmax(disc.hi(), 0.0));
    Interval lam = Interval(2.0) * D / (tr + sqrt(disc));
    if (lam.lo() <= 0) return 0.0;
    return rnd::sqrt_down(lam.lo());
}

} // namespace

double sigma_min_lb(const IntervalMatrix& m)
{
    if (m.rows() != m.cols()) throw std::invalid_argument("sigma_min_lb needs a square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 0.0;
    if (n == 1) return m(0, 0).mig();
    if (n == 2) return sigma_min_2x2(m);
    try {
        double s = spectral_norm_ub(inverse_enclosure(m));
        if (!(s > 0)) return 0.0;
        return rnd::div_down(1.0, s);
    } catch (const DomainError&) {
        return 0.0;
    }
}

IntervalMatrix ilinsolve(const IntervalMatrix& m, const IntervalMatrix& rhs)
{
    const std::size_t n = m.rows();
    if (m.cols() != n) throw std::invalid_argument("ilinsolve needs a square matrix");
    if (rhs.rows() != n) throw std::invalid_argument("ilinsolve right-hand side dimension mismatch");
    if (n == 0) return IntervalMatrix(0, rhs.cols());

    Eigen::MatrixXd mid = m.mid();
    Eigen::FullPivLU<Eigen::MatrixXd> lu(mid);
    if (!lu.isInvertible()) throw DomainError("ilinsolve: midpoint matrix is singular");
    Eigen::MatrixXd C = lu.inverse();
    if (!C.allFinite()) throw DomainError("ilinsolve: midpoint inverse is not finite");
    IntervalMatrix Ci = IntervalMatrix::from_point(C);

    // R = I - C M
    IntervalMatrix CM = Ci * m;
    IntervalMatrix R = IntervalMatrix::identity(n) - CM;
    double beta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) row = rnd::add_up(row, R(i, j).mag());
        beta = std::fmax(beta, row);
    }

    IntervalMatrix out(n, rhs.cols());
    for (std::size_t col = 0; col < rhs.cols(); ++col) {
        IntervalBox b = rhs.column(col);
        Eigen::VectorXd bm(n);
        for (std::size_t i = 0; i < n; ++i) bm(i) = b[i].mid();
        Eigen::VectorXd xt = C * bm;
        IntervalBox xti = IntervalBox::from_point(std::vector<double>(xt.data(), xt.data() + n));
        // x - xt = e with e = z + (I - C A) e
        IntervalBox z = Ci * (b - m * xti);

        IntervalBox e(n);
        if (beta < 1.0) {
            double zn = 0.0;
            for (std::size_t i = 0; i < n; ++i) zn = std::fmax(zn, z[i].mag());
            double delta = rnd::div_up(zn, rnd::sub_down(1.0, beta));
            for (std::size_t i = 0; i < n; ++i) e[i] = Interval(-delta, delta);
        } else {
            // epsilon-inflation fallback
            bool ok = false;
            e = z;
            for (int it = 0; it < 15 && !ok; ++it) {
                IntervalBox inflated(n);
                for (std::size_t i = 0; i < n; ++i)
                    inflated[i] = widen(e[i], 0.1 * e[i].width() + 1e-300);
                IntervalBox next = z + R * inflated;
                if (subset_interior(next, inflated)) {
                    ok = true;
                    e = next;
                } else {
                    e = next;
                }
            }
            if (!ok) throw DomainError("ilinsolve: could not verify the enclosure");
        }
        // Gauss-Seidel refinement
        for (int it = 0; it < 8; ++it) {
            bool changed = false;
            for (std::size_t i = 0; i < n; ++i) {
                Interval s = z[i];
                for (std::size_t j = 0; j < n; ++j) s += R(i, j) * e[j];
                auto x = intersect(s, e[i]);
                if (!x) throw DomainError("ilinsolve: empty refinement (inconsistent enclosure)");
                if (!(*x == e[i])) changed = true;
                e[i] = *x;
            }
            if (!changed) break;
        }
        IntervalBox x = xti + e;
        // Gauss-Seidel on the preconditioned system (C M) x = C b
        IntervalBox cb = Ci * b;
        for (int it = 0; it < 4; ++it) {
            bool changed = false;
            for (std::size_t i = 0; i < n; ++i) {
                if (CM(i, i).contains_zero()) continue;
                Interval s = cb[i];
                for (std::size_t j = 0; j < n; ++j)
                    if (j != i) s -= CM(i, j) * x[j];
                auto t = intersect(s / CM(i, i), x[i]);
                if (!t) throw DomainError("ilinsolve: empty refinement (inconsistent enclosure)");
                if (!(*t == x[i])) changed = true;
                x[i] = *t;
            }
            if (!changed) break;
        }
        for (std::size_t i = 0; i < n; ++i) out(i, col) = x[i];
    }
    return out;
}

IntervalBox ilinsolve(const IntervalMatrix& m, const IntervalBox& rhs)
{
    IntervalMatrix b(rhs.size(), 1);
    for (std::size_t i = 0; i < rhs.size(); ++i) b(i, 0) = rhs[i];
    return ilinsolve(m, b).column(0);
}

IntervalMatrix inverse_enclosure(const IntervalMatrix& m)
{
    return ilinsolve(m, IntervalMatrix::identity(m.rows()));
}

} // namespace melcert
