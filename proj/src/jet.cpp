#include "melcert/jet.hpp"

#include <stdexcept>

namespace melcert {

Jet2Enclosure::Jet2Enclosure(std::size_t outputs, int nvars) : nv_(nvars), c_(outputs, IJet(nvars))
{
    if (nvars < 1 || nvars > kMaxJetVars) throw std::invalid_argument("jet variable count out of range");
}

Jet2Enclosure::Jet2Enclosure(std::vector<IJet> comps) : c_(std::move(comps))
{
    nv_ = c_.empty() ? 0 : c_.front().nvars();
    for (const auto& c : c_)
        if (c.nvars() != nv_) throw std::invalid_argument("jet components disagree on variable count");
}

Jet2Enclosure Jet2Enclosure::from_full(const IntervalBox& value, const IntervalMatrix& d1,
                                       const std::vector<IntervalMatrix>& d2)
{
    const std::size_t m = value.size();
    const int n = int(d1.cols());
    if (d1.rows() != m || d2.size() != m) throw std::invalid_argument("jet block dimension mismatch");
    Jet2Enclosure r(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        if (d2[i].rows() != std::size_t(n) || d2[i].cols() != std::size_t(n))
            throw std::invalid_argument("jet block dimension mismatch");
        r.c_[i].value() = value[i];
        for (int a = 0; a < n; ++a) r.c_[i].d1(a) = d1(i, a);
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                auto x = intersect(d2[i](a, b), d2[i](b, a));
                if (!x) throw std::invalid_argument("mixed partial enclosures do not intersect");
                r.c_[i].d2(a, b) = *x;
            }
    }
    return r;
}

Jet2Enclosure Jet2Enclosure::identity(const IntervalBox& eps_x)
{
    const int n = int(eps_x.size());
    Jet2Enclosure r(eps_x.size() - 1, n);
    for (int i = 1; i < n; ++i) r.c_[i - 1] = IJet::variable(n, i, eps_x[i]);
    return r;
}

IntervalBox Jet2Enclosure::value() const
{
    IntervalBox v(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) v[i] = c_[i].value();
    return v;
}

IntervalMatrix Jet2Enclosure::d1() const
{
    IntervalMatrix m(c_.size(), nv_);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (int a = 0; a < nv_; ++a) m(i, a) = c_[i].d1(a);
    return m;
}

IntervalMatrix Jet2Enclosure::d2(std::size_t output) const
{
    IntervalMatrix m(nv_, nv_);
    for (int a = 0; a < nv_; ++a)
        for (int b = 0; b < nv_; ++b) m(a, b) = c_[output].d2(a, b);
    return m;
}

IntervalMatrix Jet2Enclosure::d2_row(int a) const
{
    IntervalMatrix m(c_.size(), nv_);
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (int b = 0; b < nv_; ++b) m(i, b) = c_[i].d2(a, b);
    return m;
}

Jet2Enclosure Jet2Enclosure::select(const std::vector<std::size_t>& outputs) const
{
    std::vector<IJet> c;
    c.reserve(outputs.size());
    for (auto i : outputs) c.push_back(c_.at(i));
    Jet2Enclosure r(std::move(c));
    r.nv_ = nv_;
    return r;
}

bool Jet2Enclosure::contains(const Jet2Enclosure& o) const
{
    if (o.outputs() != outputs() || o.nv_ != nv_) return false;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i].value().contains(o.c_[i].value())) return false;
        for (int a = 0; a < nv_; ++a) {
            if (!c_[i].d1(a).contains(o.c_[i].d1(a))) return false;
            for (int b = a; b < nv_; ++b)
                if (!c_[i].d2(a, b).contains(o.c_[i].d2(a, b))) return false;
        }
    }
    return true;
}

Jet2Enclosure jet2_compose(const Jet2Enclosure& outer, const Jet2Enclosure& inner)
{
    if (outer.nvars() != int(inner.outputs()) + 1)
        throw std::invalid_argument("jet2_compose: outer input dimension must equal 1 + inner outputs");
    const int n = inner.nvars();
    const int p = outer.nvars();
    // G_c for c = 0..p-1: G_0 = eps, G_c = inner[c-1]
    std::vector<IJet> G;
    G.reserve(p);
    G.push_back(IJet::variable(n, 0, Interval(0.0)));
    for (const auto& c : inner.components()) G.push_back(c);

    std::vector<IJet> out;
    out.reserve(outer.outputs());
    for (const auto& f : outer.components()) {
        IJet h(n, f.value());
        for (int a = 0; a < n; ++a) {
            Interval s(0.0);
            for (int c = 0; c < p; ++c) s += f.d1(c) * G[c].d1(a);
            h.d1(a) = s;
        }
        for (int a = 0; a < n; ++a)
            for (int b = a; b < n; ++b) {
                Interval lin(0.0);
                for (int c = 0; c < p; ++c) lin += f.d1(c) * G[c].d2(a, b);
                // quadratic term summed in both differentiation orders
                Interval q1(0.0), q2(0.0);
                for (int c = 0; c < p; ++c) {
                    Interval t1(0.0), t2(0.0);
                    for (int d = 0; d < p; ++d) {
                        t1 += f.d2(c, d) * G[d].d1(b);
                        t2 += f.d2(c, d) * G[d].d1(a);
                    }
                    q1 += G[c].d1(a) * t1;
                    q2 += G[c].d1(b) * t2;
                }
                auto q = intersect(q1, q2);
                h.d2(a, b) = lin + (q ? *q : hull(q1, q2));
            }
        out.push_back(h);
    }
    return Jet2Enclosure(std::move(out));
}

IJet embed(const IJet& j, int new_nv, const std::vector<int>& map)
{
    const int n = j.nvars();
    if (int(map.size()) != n) throw std::invalid_argument("embed: map size mismatch");
    IJet r(new_nv, j.value());
    for (int a = 0; a < n; ++a) r.d1(map[a]) = j.d1(a);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) r.d2(map[a], map[b]) = j.d2(a, b);
    return r;
}

} // namespace melcert
