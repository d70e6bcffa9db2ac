#include "melcert/distance.hpp"

#include <cmath>
#include <memory>

#include "melcert/implicit.hpp"
#include "melcert/linalg.hpp"

namespace melcert {

ManifoldOracle polynomial_manifold(const std::vector<Polynomial>& components, std::vector<std::size_t> x,
                                   std::vector<std::size_t> y, std::vector<std::size_t> v,
                                   std::vector<std::size_t> z)
{
    if (components.empty()) throw std::invalid_argument("manifold needs at least one component");
    const int nv = components.front().nvars();
    for (const auto& c : components)
        if (c.nvars() != nv) throw std::invalid_argument("manifold components disagree on arity");
    ManifoldOracle w;
    w.params = std::size_t(nv - 1);
    w.x = std::move(x);
    w.y = std::move(y);
    w.v = std::move(v);
    w.z = std::move(z);
    w.jet = [components, nv](const Interval& eps, const IntervalBox& P) {
        if (int(P.size()) + 1 != nv) throw std::invalid_argument("manifold parameter dimension mismatch");
        std::vector<IJet> vars{IJet::variable(nv, 0, eps)};
        for (int i = 0; i < nv - 1; ++i) vars.push_back(IJet::variable(nv, i + 1, P[i]));
        std::vector<IJet> out;
        for (const auto& c : components) out.push_back(c.eval(vars, [nv](const Interval& k) { return IJet(nv, k); }));
        return Jet2Enclosure(std::move(out));
    };
    w.approx = [components, nv](double eps, const std::vector<double>& p) {
        std::vector<double> pt{eps};
        pt.insert(pt.end(), p.begin(), p.end());
        std::vector<double> val;
        Eigen::MatrixXd D(components.size(), nv - 1);
        for (std::size_t i = 0; i < components.size(); ++i) {
            val.push_back(components[i].eval_mid(pt));
            for (int j = 1; j < nv; ++j) D(i, j - 1) = components[i].derivative(j).eval_mid(pt);
        }
        return std::make_pair(val, D);
    };
    return w;
}

DistanceOracle polynomial_distance(const std::vector<Polynomial>& y, std::size_t k1, std::size_t k2)
{
    if (y.size() != k1 + k2) throw std::invalid_argument("distance needs k1 + k2 components");
    for (const auto& c : y)
        if (c.nvars() != int(y.size()) + 1) throw std::invalid_argument("distance components must be in (eps, x)");
    ManifoldOracle w = polynomial_manifold(y, {}, {});
    DistanceOracle d;
    d.k1 = k1;
    d.k2 = k2;
    d.jet = [jet = w.jet](const Interval& E, const IntervalBox& X) { return jet(E, X); };
    return d;
}

namespace {

std::pair<std::vector<double>, Eigen::MatrixXd> point_eval(const ManifoldOracle& w, double eps,
                                                           const std::vector<double>& p)
{
    if (w.approx) return w.approx(eps, p);
    Jet2Enclosure J = w.jet(Interval(eps), IntervalBox::from_point(p));
    Eigen::MatrixXd D = J.d1().mid().block(0, 1, J.outputs(), w.params);
    return {J.value().mid(), D};
}

// nonrigorous Newton for pi_C w(eps, kappa) = target
std::vector<double> guess(const ManifoldOracle& w, const std::vector<std::size_t>& coords, double eps,
                          const std::vector<double>& target, Eigen::MatrixXd& Dinv)
{
    const std::size_t m = w.params;
    Eigen::VectorXd k = Eigen::VectorXd::Zero(m);
    if (w.hint.size() == m)
        for (std::size_t i = 0; i < m; ++i) k(i) = w.hint[i];
    for (int it = 0; it < 40; ++it) {
        auto [val, D] = point_eval(w, eps, std::vector<double>(k.data(), k.data() + m));
        Eigen::VectorXd r(m);
        Eigen::MatrixXd Dc(m, m);
        for (std::size_t i = 0; i < m; ++i) {
            r(i) = val[coords[i]] - target[i];
            Dc.row(i) = D.row(coords[i]);
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(Dc);
        if (!lu.isInvertible()) throw DistanceError("projection onto graph coordinates is singular at the guess");
        Dinv = lu.inverse();
        Eigen::VectorXd step = Dinv * r;
        k -= step;
        if (step.lpNorm<Eigen::Infinity>() <= 1e-15 * (1 + k.lpNorm<Eigen::Infinity>())) break;
    }
    if (!k.allFinite()) throw DistanceError("graph parameter search diverged");
    return std::vector<double>(k.data(), k.data() + m);
}

struct Cache {
    Interval eps;
    IntervalBox K;
    Jet2Enclosure jet;
    bool valid = false;
};

Jet2Enclosure cached_jet(const ManifoldOracle& w, Cache& c, const Interval& eps, const IntervalBox& K)
{
    if (!(c.valid && c.eps == eps && c.K == K)) {
        c.jet = w.jet(eps, K);
        if (c.jet.outputs() < 1 || c.jet.nvars() != int(w.params) + 1)
            throw std::invalid_argument("manifold oracle returned a jet of the wrong shape");
        c.eps = eps;
        c.K = K;
        c.valid = true;
    }
    return c.jet;
}

struct SideResult {
    GraphSolution sol;
    Jet2Enclosure w;
};

SideResult solve_side(const ManifoldOracle& w, const std::vector<std::size_t>& coords,
                      const std::vector<double>& fixed, const Interval& E, const IntervalBox& X)
{
    const std::size_t m = w.params;
    const std::size_t kx = X.size();
    if (coords.size() != m || kx + fixed.size() != m)
        throw std::invalid_argument("graph coordinates must match the number of manifold parameters");
    const int nall = int(1 + kx + m);
    if (nall > kMaxJetVars) throw std::invalid_argument("too many jet variables for the implicit problem");

    auto cache = std::make_shared<Cache>();
    ImplicitOracle g = [&w, coords, fixed, kx, m, nall, cache](const IntervalBox& EX, const IntervalBox& K, bool) {
        Jet2Enclosure J = cached_jet(w, *cache, EX[0], K);
        std::vector<int> map{0};
        for (std::size_t j = 0; j < m; ++j) map.push_back(int(1 + kx + j));
        std::vector<IJet> out;
        for (std::size_t i = 0; i < m; ++i) {
            IJet gi = embed(J[coords[i]], nall, map);
            if (i < kx)
                gi -= IJet::variable(nall, int(1 + i), EX[1 + i]);
            else
                gi -= Interval(fixed[i - kx]);
            out.push_back(gi);
        }
        return Jet2Enclosure(std::move(out));
    };

    std::vector<double> target = X.mid();
    target.insert(target.end(), fixed.begin(), fixed.end());
    Eigen::MatrixXd Dinv;
    std::vector<double> k0 = guess(w, coords, E.mid(), target, Dinv);

    std::vector<double> rad(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < kx; ++j) rad[i] += std::abs(Dinv(i, j)) * X[j].rad();
        rad[i] = 2 * rad[i] + 1e-10 * (1 + std::abs(k0[i]));
    }
    const IntervalBox EX = join(IntervalBox{E}, X);
    std::string last;
    for (int attempt = 0; attempt < 8; ++attempt) {
        IntervalBox K(m);
        for (std::size_t i = 0; i < m; ++i) K[i] = widen(Interval(k0[i]), rad[i]);
        try {
            ImplicitEnclosure e = implicit_enclose(g, EX, K, k0);
            SideResult r;
            r.sol.K = e.image;
            r.w = cached_jet(w, *cache, E, e.image);
            IntervalMatrix D(m, m);
            IntervalMatrix D1 = r.w.d1();
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = 0; j < m; ++j) D(i, j) = D1(coords[i], 1 + j);
            r.sol.sigmaMin = sigma_min_lb(D);
            if (!(r.sol.sigmaMin > 0))
                throw DistanceError("graph condition failed: d pi w / d kappa not verified invertible over E x K");
            r.sol.kappa = implicit_jet(g, EX, e.image);
            return r;
        } catch (const ImplicitError& err) {
            last = err.what();
        }
        for (auto& x : rad) x *= 4;
    }
    throw DistanceError("implicit graph reparameterization failed: " + last);
}

Jet2Enclosure y_part(const SideResult& s, const std::vector<std::size_t>& y)
{
    return jet2_compose(s.w.select(y), s.sol.kappa);
}

Jet2Enclosure difference(const Jet2Enclosure& a, const Jet2Enclosure& b)
{
    if (a.outputs() != b.outputs() || a.nvars() != b.nvars()) throw std::invalid_argument("distance shape mismatch");
    std::vector<IJet> r;
    for (std::size_t i = 0; i < a.outputs(); ++i) r.push_back(a[i] - b[i]);
    return Jet2Enclosure(std::move(r));
}

void check_split(const ManifoldOracle& a, const ManifoldOracle& b, std::size_t k1, std::size_t k2)
{
    if (a.y.size() != k1 + k2 || b.y.size() != k1 + k2)
        throw std::invalid_argument("k1 + k2 must equal the number of y coordinates");
}

std::vector<std::size_t> concat(std::vector<std::size_t> a, const std::vector<std::size_t>& b)
{
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

} // namespace

GraphSolution solve_graph(const ManifoldOracle& w, const std::vector<std::size_t>& coords,
                          const std::vector<double>& fixed, const Interval& E, const IntervalBox& X)
{
    return solve_side(w, coords, fixed, E, X).sol;
}

DistanceOracle distance_fixed_point(const ManifoldOracle& wu, const ManifoldOracle& ws, std::size_t k1,
                                    std::size_t k2)
{
    check_split(wu, ws, k1, k2);
    if (wu.x.size() != k1 + k2 || ws.x.size() != k1 + k2)
        throw std::invalid_argument("x and y coordinates must have equal dimension");
    DistanceOracle d;
    d.k1 = k1;
    d.k2 = k2;
    d.jet = [wu, ws](const Interval& E, const IntervalBox& X) {
        auto u = solve_side(wu, wu.x, {}, E, X);
        auto s = solve_side(ws, ws.x, {}, E, X);
        return difference(y_part(u, wu.y), y_part(s, ws.y));
    };
    return d;
}

DistanceOracle distance_nhim_section(const ManifoldOracle& wcu, const ManifoldOracle& wcs,
                                     const std::vector<double>& zStar, std::size_t k1, std::size_t k2)
{
    check_split(wcu, wcs, k1, k2);
    if (wcu.z.size() != zStar.size() || wcs.z.size() != zStar.size())
        throw std::invalid_argument("zStar dimension must match the z coordinates");
    DistanceOracle d;
    d.k1 = k1;
    d.k2 = k2;
    d.jet = [wcu, wcs, zStar](const Interval& E, const IntervalBox& X) {
        auto u = solve_side(wcu, concat(wcu.x, wcu.z), zStar, E, X);
        auto s = solve_side(wcs, concat(wcs.x, wcs.z), zStar, E, X);
        return difference(y_part(u, wcu.y), y_part(s, wcs.y));
    };
    return d;
}

DistanceOracle distance_unequal(const ManifoldOracle& wcu, const ManifoldOracle& wcs,
                                const std::vector<double>& zStar, std::size_t k1, std::size_t k2)
{
    check_split(wcu, wcs, k1, k2);
    if (wcu.v.size() != wcs.v.size()) throw std::invalid_argument("v coordinates of both manifolds must agree");
    if (wcu.v.empty()) throw std::invalid_argument("unequal dimensions need at least one v coordinate");
    DistanceOracle d;
    d.k1 = k1;
    d.k2 = k2;
    d.jet = [wcu, wcs, zStar](const Interval& E, const IntervalBox& X) {
        const std::size_t k = X.size();
        const int nv = int(1 + k);
        auto u = solve_side(wcu, concat(wcu.x, wcu.z), zStar, E, X);
        Jet2Enclosure vj = jet2_compose(u.w.select(wcu.v), u.sol.kappa);
        std::vector<IJet> inner;
        for (std::size_t i = 0; i < k; ++i) inner.push_back(IJet::variable(nv, int(1 + i), X[i]));
        for (std::size_t i = 0; i < vj.outputs(); ++i) inner.push_back(vj[i]);
        Jet2Enclosure innerJet(std::move(inner));
        IntervalBox XV = join(X, vj.value());
        auto s = solve_side(wcs, concat(concat(wcs.x, wcs.v), wcs.z), zStar, E, XV);
        Jet2Enclosure ys = jet2_compose(y_part(s, wcs.y), innerJet);
        return difference(y_part(u, wcu.y), ys);
    };
    return d;
}

} // namespace melcert
