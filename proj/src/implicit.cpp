#include "melcert/implicit.hpp"

#include "melcert/linalg.hpp"

namespace melcert {

namespace {

struct Split {
    std::size_t m = 0;
    int k = 0;
    Jet2Enclosure jet;
    IntervalMatrix Gk;
};

Split evaluate(const ImplicitOracle& g, const IntervalBox& X, const IntervalBox& K)
{
    Split s;
    s.m = K.size();
    s.k = int(X.size()) - 1;
    s.jet = g(X, K, false);
    if (s.jet.outputs() != s.m || s.jet.nvars() != 1 + s.k + int(s.m))
        throw std::invalid_argument("implicit oracle dimension mismatch");
    s.Gk = s.jet.d1().block(0, 1 + s.k, s.m, s.m);
    return s;
}

IntervalMatrix solve_or_throw(const IntervalMatrix& A, const IntervalMatrix& B, const IntervalBox& X,
                              const IntervalBox& K)
{
    try {
        return ilinsolve(A, B);
    } catch (const DomainError& e) {
        throw ImplicitError(std::string("d g / d kappa not invertible: ") + e.what(), X, K);
    }
}

IntervalMatrix negate(const IntervalMatrix& a) { return Interval(-1.0) * a; }

} // namespace

ImplicitEnclosure implicit_enclose(const ImplicitOracle& g, const IntervalBox& X, const IntervalBox& K,
                                   const std::vector<double>& k0, int maxRefine)
{
    if (!K.contains(k0)) throw std::invalid_argument("implicit_enclose: k0 not in K");
    const std::size_t m = K.size();
    const int k = int(X.size()) - 1;
    FunctionOracle f;
    f.eval = [&](const IntervalBox& P, const IntervalBox& Y) { return g(P, Y, true).value(); };
    f.deriv = [&](const IntervalBox& P, const IntervalBox& Y) {
        return g(P, Y, false).d1().block(0, 1 + k, m, m);
    };
    NewtonCertificate cert = newton_verify(f, X, K, k0, maxRefine);
    if (!cert.verified) throw ImplicitError("implicit contraction failed: " + cert.diagnostic, X, K);
    ImplicitEnclosure r;
    r.domain = X;
    r.image = cert.refined;
    r.newton = cert;
    return r;
}

std::pair<IntervalMatrix, IntervalMatrix> implicit_first(const ImplicitOracle& g, const IntervalBox& X,
                                                         const IntervalBox& K)
{
    Split s = evaluate(g, X, K);
    IntervalMatrix G1 = s.jet.d1();
    IntervalMatrix rhs = G1.block(0, 0, s.m, 1 + s.k);
    IntervalMatrix sol = negate(solve_or_throw(s.Gk, rhs, X, K));
    return {sol.block(0, 0, s.m, 1), sol.block(0, 1, s.m, s.k)};
}

IntervalMatrix implicit_mixed_second(const ImplicitOracle& g, const IntervalBox& X, const IntervalBox& K,
                                     const std::pair<IntervalMatrix, IntervalMatrix>& firsts, bool simplify)
{
    Split s = evaluate(g, X, K);
    const std::size_t m = s.m;
    const int k = s.k;
    const IntervalMatrix& ke = firsts.first;
    const IntervalMatrix& kx = firsts.second;
    auto kap = [&](std::size_t l) { return 1 + k + int(l); };
    IntervalMatrix T(m, k);
    for (std::size_t i = 0; i < m; ++i) {
        const IJet& gi = s.jet[i];
        for (int j = 0; j < k; ++j) {
            Interval t(0.0);
            if (!simplify) {
                t += gi.d2(0, 1 + j);
                for (std::size_t l = 0; l < m; ++l) t += gi.d2(kap(l), 1 + j) * ke(l, 0);
            }
            for (std::size_t l = 0; l < m; ++l) {
                Interval inner = gi.d2(0, kap(l));
                for (std::size_t q = 0; q < m; ++q) inner += gi.d2(kap(l), kap(q)) * ke(q, 0);
                t += inner * kx(l, j);
            }
            T(i, j) = t;
        }
    }
    return negate(solve_or_throw(s.Gk, T, X, K));
}

Jet2Enclosure implicit_jet(const ImplicitOracle& g, const IntervalBox& X, const IntervalBox& K)
{
    Split s = evaluate(g, X, K);
    const std::size_t m = s.m;
    const int k = s.k;
    const int nv = 1 + k;
    auto kap = [&](std::size_t l) { return nv + int(l); };
    IntervalMatrix G1 = s.jet.d1();
    IntervalMatrix first = negate(solve_or_throw(s.Gk, G1.block(0, 0, m, nv), X, K));

    const int npairs = nv * (nv + 1) / 2;
    IntervalMatrix T(m, npairs);
    for (std::size_t i = 0; i < m; ++i) {
        const IJet& gi = s.jet[i];
        int col = 0;
        for (int p = 0; p < nv; ++p)
            for (int q = p; q < nv; ++q, ++col) {
                Interval t = gi.d2(p, q);
                for (std::size_t l = 0; l < m; ++l) {
                    t += gi.d2(p, kap(l)) * first(l, q);
                    t += gi.d2(q, kap(l)) * first(l, p);
                    Interval inner(0.0);
                    for (std::size_t r = 0; r < m; ++r) inner += gi.d2(kap(l), kap(r)) * first(r, q);
                    t += first(l, p) * inner;
                }
                T(i, col) = t;
            }
    }
    IntervalMatrix second = negate(solve_or_throw(s.Gk, T, X, K));

    Jet2Enclosure r(m, nv);
    for (std::size_t i = 0; i < m; ++i) {
        r[i].value() = K[i];
        for (int a = 0; a < nv; ++a) r[i].d1(a) = first(i, a);
        int col = 0;
        for (int p = 0; p < nv; ++p)
            for (int q = p; q < nv; ++q, ++col) r[i].d2(p, q) = second(i, col);
    }
    return r;
}

ImplicitOracle polynomial_implicit_oracle(const std::vector<Polynomial>& g)
{
    return [g](const IntervalBox& X, const IntervalBox& K, bool) {
        IntervalBox all = join(X, K);
        const int n = int(all.size());
        for (const auto& p : g)
            if (p.nvars() != n) throw std::invalid_argument("implicit polynomial arity mismatch");
        std::vector<IJet> vars;
        for (int i = 0; i < n; ++i) vars.push_back(IJet::variable(n, i, all[i]));
        std::vector<IJet> out;
        for (const auto& p : g) out.push_back(p.eval(vars, [n](const Interval& c) { return IJet(n, c); }));
        return Jet2Enclosure(std::move(out));
    };
}

} // namespace melcert
