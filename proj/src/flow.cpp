#include "melcert/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "melcert/linalg.hpp"
#include "taylor.hpp"

namespace melcert {

VectorFieldDef::VectorFieldDef(std::vector<Polynomial> components) : comps_(std::move(components))
{
    const int need = int(comps_.size()) + 1;
    if (need - 1 < 1 || need > kMaxJetVars) throw std::invalid_argument("vector field dimension out of range");
    for (const auto& c : comps_)
        if (c.nvars() != need) throw std::invalid_argument("field components must be polynomials in (eps, x)");
}

VectorFieldDef VectorFieldDef::parse(const std::vector<std::string>& components, std::vector<std::string> names)
{
    if (names.empty()) {
        names.push_back("eps");
        for (std::size_t i = 1; i <= components.size(); ++i) names.push_back("x" + std::to_string(i));
    }
    if (names.size() != components.size() + 1) throw ParseError("expected one name for eps plus one per component");
    std::vector<Polynomial> p;
    p.reserve(components.size());
    for (const auto& c : components) p.push_back(parse_polynomial(c, names));
    return VectorFieldDef(std::move(p));
}

VectorFieldDef VectorFieldDef::negated() const
{
    std::vector<Polynomial> p;
    p.reserve(comps_.size());
    for (const auto& c : comps_) p.push_back(-c);
    return VectorFieldDef(std::move(p));
}

std::vector<Interval> VectorFieldDef::eval(const Interval& eps, const std::vector<Interval>& x) const
{
    std::vector<Interval> z{eps};
    z.insert(z.end(), x.begin(), x.end());
    std::vector<Interval> f;
    f.reserve(comps_.size());
    for (const auto& c : comps_) f.push_back(c.eval(z));
    return f;
}

std::vector<double> VectorFieldDef::eval(double eps, const std::vector<double>& x) const
{
    std::vector<double> z{eps};
    z.insert(z.end(), x.begin(), x.end());
    std::vector<double> f;
    f.reserve(comps_.size());
    for (const auto& c : comps_) f.push_back(c.eval_mid(z));
    return f;
}

namespace detail {

TaylorProgram::TaylorProgram(const VectorFieldDef& f) : n_(f.dim())
{
    out_.resize(n_);
    for (int i = 0; i < n_; ++i)
        for (const auto& [e, c] : f.components()[i].terms()) {
            bool constant = std::all_of(e.begin(), e.end(), [](int k) { return k == 0; });
            out_[i].push_back(Term{constant ? -1 : slot_for(e), c});
        }
}

int TaylorProgram::slot_for(const Polynomial::Exponents& e)
{
    int total = 0, first = -1;
    for (int v = 0; v < int(e.size()); ++v) {
        total += e[v];
        if (e[v] > 0 && first < 0) first = v;
    }
    if (total == 1) return first;
    auto it = memo_.find(e);
    if (it != memo_.end()) return it->second;
    Polynomial::Exponents rest = e;
    rest[first] -= 1;
    int a = slot_for(rest);
    nodes_.push_back(Node{a, first});
    int s = n_ + int(nodes_.size());
    memo_.emplace(e, s);
    return s;
}

} // namespace detail

namespace {

using detail::Jet1;
using detail::TaylorProgram;
using detail::Traits;
using C0Jet = Jet1<Interval>;

template <class S>
S make_var(int d, int i, const Interval& v)
{
    return S::variable(d, i, v);
}

template <>
Interval make_var<Interval>(int, int, const Interval& v)
{
    return v;
}

// Z with seed + [0,h] f(Z) inside Z; the returned set is that image.
template <class S>
std::vector<S> rough(const TaylorProgram& P, const std::vector<S>& seed, double hmax)
{
    const Interval H(0.0, hmax);
    auto picard = [&](const std::vector<S>& Z) {
        std::vector<S> F;
        try {
            F = P.eval(Z);
        } catch (const std::overflow_error&) {
            throw FlowError("a priori enclosure overflowed", 0, 0.0);
        }
        std::vector<S> R = seed;
        for (std::size_t i = 0; i < F.size(); ++i) R[i + 1] += F[i] * H;
        return R;
    };
    // entries already validated are left alone so they do not feed growth elsewhere
    auto inflate = [](std::vector<S>& Z, const std::vector<S>& N, bool all) {
        for (std::size_t i = 1; i < Z.size(); ++i)
            detail::zip_entries(Z[i], N[i], [all](Interval& z, const Interval& nn) {
                if (!all && z.contains(nn)) return;
                Interval u = hull(z, nn);
                z = widen(u, 0.1 * u.width() + 1e-15 * u.mag());
            });
    };
    std::vector<S> Z = picard(seed);
    inflate(Z, Z, true);
    for (int it = 0; it < 20; ++it) {
        std::vector<S> N = picard(Z);
        bool ok = true;
        for (std::size_t i = 1; i < Z.size() && ok; ++i)
            detail::zip_entries(N[i], Z[i], [&](Interval& a, const Interval& b) {
                if (!b.contains(a)) ok = false;
            });
        if (ok) return N;
        inflate(Z, N, false);
    }
    throw FlowError("no a priori enclosure found for the step", 0, 0.0);
}

template <class S>
S horner(const std::vector<std::vector<S>>& c, int i, int p, const Interval& h)
{
    S r = c[p][i];
    for (int k = p - 1; k >= 0; --k) {
        r = r * h;
        r += c[k][i];
    }
    return r;
}

IntervalMatrix pm(const Eigen::MatrixXd& m) { return IntervalMatrix::from_point(m); }

template <class S, bool Second>
class Integrator {
public:
    Integrator(const TaylorProgram& P, const FlowSettings& s, const IntervalBox& z0)
        : P_(P), set_(s), d_(P.dim() + 1), np_(d_ * (d_ + 1) / 2)
    {
        if (set_.taylorOrder < 2) throw std::invalid_argument("taylorOrder must be at least 2");
        if (!(set_.initialStep > 0) || !(set_.minStep > 0) || !(set_.maxStep > 0))
            throw std::invalid_argument("flow steps must be positive");
        c_ = z0.mid();
        B_ = Eigen::MatrixXd::Identity(d_, d_);
        r_ = z0 - IntervalBox::from_point(c_);
        Vm_ = Eigen::MatrixXd::Identity(d_, d_);
        Vr_ = IntervalMatrix(d_, d_);
        W_ = IntervalMatrix(d_, np_);
        Wm_ = Eigen::MatrixXd::Zero(d_, np_);
        Wr_ = IntervalMatrix(d_, np_);
    }

    void run(const Interval& T, FlowStats* stats)
    {
        const int p = set_.taylorOrder;
        Interval t(0.0);
        double h = set_.initialStep;
        int steps = 0, rejected = 0;
        double hmin = 0, hmaxUsed = 0;
        std::vector<std::vector<Interval>> cP;
        std::vector<std::vector<S>> cX, cZ;
        while (true) {
            Interval rem = T - t;
            if (rem.hi() <= 0) break;
            if (steps >= set_.maxSteps)
                throw FlowError("maximum number of steps exceeded at t=" + std::to_string(t.mid()), steps, t.mid());

            P_.series(std::vector<Interval>(c_.begin(), c_.end()), p, cP);
            h = std::min({estimate(cP), set_.maxStep, 2.0 * std::max(h, set_.minStep)});
            if (steps == 0) h = std::min(h, set_.initialStep);
            if (h < set_.minStep)
                throw FlowError("step size underflow at t=" + std::to_string(t.mid()), steps, t.mid());

            IntervalBox X = box();
            std::vector<S> seed(d_);
            for (int i = 0; i < d_; ++i) seed[i] = make_var<S>(d_, i, X[i]);
            P_.series(seed, p, cX);

            bool last = false;
            Interval hI;
            std::vector<S> Z;
            for (;;) {
                if (h >= rem.lo() * (1 - 1e-9)) {
                    last = true;
                    hI = Interval(std::max(rem.lo(), 0.0), rem.hi());
                } else {
                    last = false;
                    hI = Interval(h);
                }
                try {
                    Z = rough(P_, seed, hI.hi());
                    break;
                } catch (const FlowError&) {
                    ++rejected;
                    h = 0.5 * std::min(h, hI.hi());
                    if (h < set_.minStep)
                        throw FlowError("step size underflow at t=" + std::to_string(t.mid()) +
                                            " (a priori enclosure failed)",
                                        steps, t.mid());
                }
            }
            P_.series(Z, p + 1, cZ);
            advance(hI, cP, cX, cZ[p + 1]);
            t = t + hI;
            ++steps;
            hmin = steps == 1 ? hI.hi() : std::min(hmin, hI.hi());
            hmaxUsed = std::max(hmaxUsed, hI.hi());
            if (last) break;
        }
        if (stats) {
            stats->steps += steps;
            stats->rejected += rejected;
            stats->minStepUsed = hmin;
            stats->maxStepUsed = hmaxUsed;
        }
    }

    IntervalBox box() const
    {
        IntervalBox b(d_);
        for (int i = 0; i < d_; ++i) {
            Interval s(c_[i]);
            for (int j = 0; j < d_; ++j) s += Interval(B_(i, j)) * r_[j];
            b[i] = s;
        }
        return b;
    }

    IntervalMatrix V() const { return pm(Vm_) + pm(B_) * Vr_; }

    IntervalMatrix W() const
    {
        if (set_.lohnerSecondOrder && set_.wrapping == Wrapping::parallelepiped) return pm(Wm_) + pm(B_) * Wr_;
        return W_;
    }

    int dim() const { return d_; }

private:
    double estimate(const std::vector<std::vector<Interval>>& cP) const
    {
        const int p = set_.taylorOrder;
        double zn = 0;
        for (int i = 1; i < d_; ++i) zn = std::max(zn, cP[0][i].mag());
        zn = std::max(zn, 1e-300);
        double h = set_.maxStep;
        for (int k = p - 1; k <= p; ++k) {
            double ck = 0;
            for (int i = 1; i < d_; ++i) ck = std::max(ck, cP[k][i].mag());
            if (ck > 0) h = std::min(h, std::pow(set_.stepTolerance * zn / ck, 1.0 / k));
        }
        return h;
    }

    void advance(const Interval& hI, const std::vector<std::vector<Interval>>& cP,
                 const std::vector<std::vector<S>>& cX, const std::vector<S>& remc)
    {
        const int p = set_.taylorOrder;
        const Interval hp = pow(hI, p + 1);

        IntervalMatrix A(d_, d_);
        IntervalMatrix H(d_, np_);
        IntervalBox y(d_);
        for (int i = 0; i < d_; ++i) {
            S phi = horner(cX, i, p, hI);
            phi += remc[i] * hp;
            for (int a = 0; a < d_; ++a) A(i, a) = phi.d1(a);
            if constexpr (Second)
                for (int k = 0; k < np_; ++k) H(i, k) = phi.packed(k);
            y[i] = horner(cP, i, p, hI) + detail::value_of(remc[i]) * hp;
        }

        IntervalMatrix Bi = pm(B_);
        IntervalMatrix AB = A * Bi;
        std::vector<double> cn = y.mid();
        IntervalBox ey = y - IntervalBox::from_point(cn);

        Eigen::MatrixXd Bn = B_;
        IntervalMatrix Binv;
        IntervalMatrix M1;
        if (set_.wrapping == Wrapping::parallelepiped) {
            Eigen::MatrixXd Pm = AB.mid();
            std::vector<int> idx(d_);
            std::iota(idx.begin(), idx.end(), 0);
            std::vector<double> score(d_);
            for (int j = 0; j < d_; ++j) score[j] = Pm.col(j).norm() * r_[j].rad();
            std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return score[a] > score[b]; });
            Eigen::MatrixXd Ps(d_, d_);
            for (int k = 0; k < d_; ++k) Ps.col(k) = Pm.col(idx[k]);
            Eigen::HouseholderQR<Eigen::MatrixXd> qr(Ps);
            Bn = qr.householderQ() * Eigen::MatrixXd::Identity(d_, d_);
            Binv = inverse_enclosure(pm(Bn));
            M1 = Binv * AB;
        } else {
            Binv = IntervalMatrix::identity(d_);
            M1 = AB;
        }

        IntervalBox rn = M1 * r_ + Binv * ey;

        if constexpr (Second) {
            IntervalMatrix Vbox = pm(Vm_) + Bi * Vr_;
            IntervalMatrix S2 = second_term(H, Vbox);

            IntervalMatrix AV = A * pm(Vm_);
            Eigen::MatrixXd Vmn = AV.mid();
            Vr_ = M1 * Vr_ + Binv * (AV - pm(Vmn));
            Vm_ = Vmn;

            if (set_.lohnerSecondOrder && set_.wrapping == Wrapping::parallelepiped) {
                IntervalMatrix T = A * pm(Wm_) + S2;
                Eigen::MatrixXd Wmn = T.mid();
                Wr_ = M1 * Wr_ + Binv * (T - pm(Wmn));
                Wm_ = Wmn;
            } else {
                W_ = A * W_ + S2;
            }
        }
        c_ = cn;
        B_ = Bn;
        r_ = rn;
    }

    // columns (a,b): sum over (c,e) of H[:,ce] V[c,a] V[e,b]
    IntervalMatrix second_term(const IntervalMatrix& H, const IntervalMatrix& V) const
    {
        IntervalMatrix S2(d_, np_);
        std::vector<Interval> coef(np_);
        for (int a = 0; a < d_; ++a)
            for (int b = a; b < d_; ++b) {
                int k = 0;
                for (int c = 0; c < d_; ++c)
                    for (int e = c; e < d_; ++e, ++k) {
                        if (c == e)
                            coef[k] = V(c, a) * V(c, b);
                        else
                            coef[k] = V(c, a) * V(e, b) + V(e, a) * V(c, b);
                    }
                const int col = hess_index(d_, a, b);
                for (int i = 0; i < d_; ++i) {
                    Interval s(0.0);
                    for (int q = 0; q < np_; ++q) s += H(i, q) * coef[q];
                    S2(i, col) = s;
                }
            }
        return S2;
    }

    const TaylorProgram& P_;
    FlowSettings set_;
    int d_, np_;
    std::vector<double> c_;
    Eigen::MatrixXd B_;
    IntervalBox r_;
    Eigen::MatrixXd Vm_;
    IntervalMatrix Vr_;
    IntervalMatrix W_;
    Eigen::MatrixXd Wm_;
    IntervalMatrix Wr_;
};

struct Direction {
    VectorFieldDef field;
    Interval T;
};

Direction orient(const VectorFieldDef& field, const Interval& T)
{
    if (T.lo() >= 0) return {field, T};
    if (T.hi() <= 0) return {field.negated(), -T};
    throw std::invalid_argument("integration time interval must not straddle zero");
}

bool is_zero(const Interval& T) { return T.lo() == 0 && T.hi() == 0; }

} // namespace

std::vector<Jet2Enclosure> taylor_coeffs(const VectorFieldDef& field, const Jet2Enclosure& state,
                                         const Interval& epsBox, int order)
{
    if (int(state.outputs()) != field.dim()) throw std::invalid_argument("state jet dimension mismatch");
    TaylorProgram P(field);
    const int nv = state.nvars();
    std::vector<IJet> z0{IJet::variable(nv, 0, epsBox)};
    for (const auto& c : state.components()) z0.push_back(c);
    std::vector<std::vector<IJet>> z;
    P.series(z0, order, z);
    std::vector<Jet2Enclosure> out;
    for (int k = 0; k <= order; ++k)
        out.emplace_back(std::vector<IJet>(z[k].begin() + 1, z[k].end()));
    return out;
}

IntervalBox rough_enclosure(const VectorFieldDef& field, const IntervalBox& state, const Interval& epsBox,
                            double step)
{
    if (!(step > 0)) throw std::invalid_argument("rough_enclosure: step must be positive");
    if (int(state.size()) != field.dim()) throw std::invalid_argument("state dimension mismatch");
    TaylorProgram P(field);
    std::vector<Interval> seed{epsBox};
    seed.insert(seed.end(), state.begin(), state.end());
    std::vector<Interval> Z = rough(P, seed, step);
    return IntervalBox(std::vector<Interval>(Z.begin() + 1, Z.end()));
}

Jet2Enclosure flow_identity_jet(const VectorFieldDef& field, const Interval& epsBox, const IntervalBox& x0,
                                const Interval& T, const FlowSettings& settings, FlowStats* stats)
{
    if (int(x0.size()) != field.dim()) throw std::invalid_argument("initial box dimension mismatch");
    IntervalBox z0 = join(IntervalBox{epsBox}, x0);
    if (is_zero(T)) return Jet2Enclosure::identity(z0);
    Direction dir = orient(field, T);
    TaylorProgram P(dir.field);
    Integrator<IJet, true> integ(P, settings, z0);
    integ.run(dir.T, stats);
    IntervalBox b = integ.box();
    IntervalMatrix V = integ.V();
    IntervalMatrix W = integ.W();
    const int d = integ.dim();
    Jet2Enclosure r(x0.size(), d);
    for (int i = 0; i < field.dim(); ++i) {
        r[i].value() = b[i + 1];
        for (int a = 0; a < d; ++a) r[i].d1(a) = V(i + 1, a);
        for (int k = 0; k < d * (d + 1) / 2; ++k) r[i].packed(k) = W(i + 1, k);
    }
    return r;
}

IntervalBox flow_box(const VectorFieldDef& field, const Interval& epsBox, const IntervalBox& x0, const Interval& T,
                     const FlowSettings& settings, FlowStats* stats)
{
    if (int(x0.size()) != field.dim()) throw std::invalid_argument("initial box dimension mismatch");
    if (is_zero(T)) return x0;
    Direction dir = orient(field, T);
    TaylorProgram P(dir.field);
    Integrator<C0Jet, false> integ(P, settings, join(IntervalBox{epsBox}, x0));
    integ.run(dir.T, stats);
    return slice(integ.box(), 1, x0.size());
}

Jet2Enclosure flow_jet(const VectorFieldDef& field, const Jet2Enclosure& x0, const Interval& epsBox,
                       const Interval& T, const FlowSettings& settings, FlowStats* stats)
{
    Jet2Enclosure phi = flow_identity_jet(field, epsBox, x0.value(), T, settings, stats);
    return jet2_compose(phi, x0);
}

namespace {

template <class S>
std::vector<S> point_flow(const VectorFieldDef& field, const S& eps, const std::vector<S>& x0, double T, int order,
                          double maxStep)
{
    TaylorProgram P(field);
    std::vector<S> z{eps};
    z.insert(z.end(), x0.begin(), x0.end());
    if (T == 0) return x0;
    const int N = std::max(1, int(std::ceil(std::fabs(T) / maxStep)));
    const double h = T / N;
    std::vector<std::vector<S>> c;
    for (int s = 0; s < N; ++s) {
        P.series(z, order, c);
        for (std::size_t i = 1; i < z.size(); ++i) {
            S r = c[order][i];
            for (int k = order - 1; k >= 0; --k) {
                r = r * h;
                r += c[k][i];
            }
            z[i] = r;
        }
    }
    return std::vector<S>(z.begin() + 1, z.end());
}

} // namespace

std::vector<double> flow_point(const VectorFieldDef& field, double eps, const std::vector<double>& x0, double T,
                               int order, double maxStep)
{
    return point_flow<double>(field, eps, x0, T, order, maxStep);
}

std::vector<DJet> flow_point_jet(const VectorFieldDef& field, const DJet& eps, const std::vector<DJet>& x0, double T,
                                 int order, double maxStep)
{
    return point_flow<DJet>(field, eps, x0, T, order, maxStep);
}

} // namespace melcert
