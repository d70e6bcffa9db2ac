#include "melcert/newton.hpp"

#include <sstream>
#include <stdexcept>

#include "melcert/linalg.hpp"

namespace melcert {

IntervalBox newton_step(const std::vector<double>& y0, const IntervalBox& X, const IntervalBox& Y,
                        const FunctionOracle& f)
{
    if (y0.size() != Y.size()) throw std::invalid_argument("newton_step: y0 dimension mismatch");
    IntervalBox y0b = IntervalBox::from_point(y0);
    IntervalBox fy0 = f.eval(X, y0b);
    IntervalMatrix Df = f.deriv(X, Y);
    if (Df.rows() != Y.size() || Df.cols() != Y.size() || fy0.size() != Y.size())
        throw std::invalid_argument("newton_step: oracle dimension mismatch");
    IntervalBox corr = ilinsolve(Df, fy0);
    return y0b - corr;
}

NewtonCertificate newton_verify(const FunctionOracle& f, const IntervalBox& X, const IntervalBox& Y,
                                std::optional<std::vector<double>> y0, int maxRefine)
{
    NewtonCertificate cert;
    cert.params = X;
    cert.candidate = Y;
    cert.refined = Y;
    IntervalBox cur = Y;
    double prev_width = cur.max_width();
    int stalls = 0;
    for (int it = 0; it <= maxRefine; ++it) {
        std::vector<double> c = (it == 0 && y0) ? *y0 : cur.mid();
        IntervalBox N;
        try {
            N = newton_step(c, X, cur, f);
        } catch (const DomainError& e) {
            if (!cert.verified) cert.diagnostic = std::string("derivative enclosure not invertible: ") + e.what();
            break;
        }
        cert.iterations = it + 1;
        if (!cert.verified && subset_interior(N, cur)) cert.verified = true;
        auto next = intersect(N, cur);
        if (!next) {
            if (!cert.verified) cert.diagnostic = "Newton image disjoint from candidate box: no zero in Y";
            break;
        }
        cur = *next;
        cert.refined = cur;
        double w = cur.max_width();
        if (cert.verified && !(w < prev_width)) {
            if (++stalls >= 2) break;
        } else {
            stalls = 0;
        }
        prev_width = w;
    }
    if (!cert.verified && cert.diagnostic.empty()) {
        std::ostringstream os;
        os << "N(y0,X,Y) not inside int Y after " << cert.iterations << " iterations";
        cert.diagnostic = os.str();
    }
    if (!cert.verified) cert.refined = Y;
    return cert;
}

FunctionOracle polynomial_system_oracle(const std::vector<Polynomial>& equations, std::size_t nparams)
{
    const std::size_t m = equations.size();
    for (const auto& e : equations)
        if (e.nvars() != int(nparams + m)) throw std::invalid_argument("polynomial system arity mismatch");
    std::vector<std::vector<Polynomial>> jac(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) jac[i].push_back(equations[i].derivative(int(nparams + j)));
    auto args = [nparams, m](const IntervalBox& P, const IntervalBox& Y) {
        if (P.size() != nparams || Y.size() != m) throw std::invalid_argument("polynomial system box mismatch");
        std::vector<Interval> a(P.begin(), P.end());
        a.insert(a.end(), Y.begin(), Y.end());
        return a;
    };
    FunctionOracle f;
    f.eval = [equations, args](const IntervalBox& P, const IntervalBox& Y) {
        auto a = args(P, Y);
        IntervalBox r(equations.size());
        for (std::size_t i = 0; i < equations.size(); ++i) r[i] = equations[i].eval(a);
        return r;
    };
    f.deriv = [jac, args, m](const IntervalBox& P, const IntervalBox& Y) {
        auto a = args(P, Y);
        IntervalMatrix D(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j < m; ++j) D(i, j) = jac[i][j].eval(a);
        return D;
    };
    return f;
}

} // namespace melcert
