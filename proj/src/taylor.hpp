// Taylor-series recurrences for polynomial fields, generic over the
// coefficient type (double, Interval, first- or second-order jets).
#ifndef MELCERT_SRC_TAYLOR_HPP
#define MELCERT_SRC_TAYLOR_HPP

#include <array>
#include <map>
#include <type_traits>
#include <vector>

#include "melcert/flow.hpp"

namespace melcert::detail {

// value and gradient only
template <class T>
class Jet1 {
public:
    Jet1() = default;
    explicit Jet1(int n, T value = T(0.0)) : n_(n), v_(value)
    {
        for (auto& x : g_) x = T(0.0);
    }
    static Jet1 variable(int n, int idx, T value)
    {
        Jet1 j(n, value);
        j.g_[idx] = T(1.0);
        return j;
    }
    int nvars() const noexcept { return n_; }
    T& value() { return v_; }
    const T& value() const { return v_; }
    T& d1(int i) { return g_[i]; }
    const T& d1(int i) const { return g_[i]; }

    Jet1& operator+=(const Jet1& o)
    {
        v_ += o.v_;
        for (int i = 0; i < n_; ++i) g_[i] += o.g_[i];
        return *this;
    }
    Jet1& operator*=(const T& c)
    {
        v_ *= c;
        for (int i = 0; i < n_; ++i) g_[i] *= c;
        return *this;
    }
    friend Jet1 operator+(Jet1 a, const Jet1& b) { return a += b; }
    friend Jet1 operator*(Jet1 a, const T& c) { return a *= c; }
    static void mul_acc(Jet1& r, const Jet1& a, const Jet1& b)
    {
        r.v_ += a.v_ * b.v_;
        for (int i = 0; i < a.n_; ++i) r.g_[i] += a.v_ * b.g_[i] + a.g_[i] * b.v_;
    }

private:
    int n_ = 0;
    T v_{};
    std::array<T, kMaxJetVars> g_{};
};

template <class S>
struct Traits;

template <>
struct Traits<double> {
    using Scalar = double;
    static double zero(const double&) { return 0.0; }
    static void mul_acc(double& r, double a, double b) { r += a * b; }
    static double coef(const Interval& c) { return c.mid(); }
    static double inv(int k) { return 1.0 / k; }
};

template <>
struct Traits<Interval> {
    using Scalar = Interval;
    static Interval zero(const Interval&) { return Interval(0.0); }
    static void mul_acc(Interval& r, const Interval& a, const Interval& b) { r += a * b; }
    static Interval coef(const Interval& c) { return c; }
    static Interval inv(int k) { return Interval(1.0) / Interval(double(k)); }
};

template <class T>
struct Traits<Jet2<T>> {
    using Scalar = T;
    static Jet2<T> zero(const Jet2<T>& p) { return Jet2<T>(p.nvars()); }
    static void mul_acc(Jet2<T>& r, const Jet2<T>& a, const Jet2<T>& b) { Jet2<T>::mul_acc(r, a, b); }
    static T coef(const Interval& c) { return Traits<T>::coef(c); }
    static T inv(int k) { return Traits<T>::inv(k); }
};

template <class T>
struct Traits<Jet1<T>> {
    using Scalar = T;
    static Jet1<T> zero(const Jet1<T>& p) { return Jet1<T>(p.nvars()); }
    static void mul_acc(Jet1<T>& r, const Jet1<T>& a, const Jet1<T>& b) { Jet1<T>::mul_acc(r, a, b); }
    static T coef(const Interval& c) { return Traits<T>::coef(c); }
    static T inv(int k) { return Traits<T>::inv(k); }
};

// Field compiled into a DAG of products. Slots 0..n are the variables
// (eps, x_1..x_n); slot n+1+q is product node q.
class TaylorProgram {
public:
    explicit TaylorProgram(const VectorFieldDef& f);

    int dim() const noexcept { return n_; }

    struct Node {
        int a, b;
    };
    struct Term {
        int slot; // -1 for the constant term
        Interval coef;
    };

    template <class S>
    std::vector<S> eval(const std::vector<S>& z) const
    {
        using Tr = Traits<S>;
        const S zero = Tr::zero(z[0]);
        std::vector<S> node(nodes_.size(), zero);
        auto slot = [&](int s) -> const S& { return s <= n_ ? z[s] : node[s - n_ - 1]; };
        for (std::size_t q = 0; q < nodes_.size(); ++q) {
            S acc = zero;
            Tr::mul_acc(acc, slot(nodes_[q].a), slot(nodes_[q].b));
            node[q] = acc;
        }
        std::vector<S> f(n_, zero);
        for (int i = 0; i < n_; ++i)
            for (const auto& t : out_[i]) {
                if (t.slot < 0)
                    f[i] += zero_plus(zero, Tr::coef(t.coef));
                else
                    f[i] += slot(t.slot) * Tr::coef(t.coef);
            }
        return f;
    }

    // z[k][slot] for k = 0..order, slot 0..n; z0 includes eps at slot 0.
    template <class S>
    void series(const std::vector<S>& z0, int order, std::vector<std::vector<S>>& z) const
    {
        using Tr = Traits<S>;
        const int d = n_ + 1;
        const S zero = Tr::zero(z0[0]);
        z.assign(order + 1, std::vector<S>(d, zero));
        z[0] = z0;
        std::vector<std::vector<S>> node(nodes_.size(), std::vector<S>(order, zero));
        auto slot = [&](int s, int k) -> const S& { return s < d ? z[k][s] : node[s - d][k]; };
        for (int k = 0; k < order; ++k) {
            for (std::size_t q = 0; q < nodes_.size(); ++q) {
                S acc = zero;
                const int a = nodes_[q].a, b = nodes_[q].b;
                for (int j = 0; j <= k; ++j) Tr::mul_acc(acc, slot(a, j), slot(b, k - j));
                node[q][k] = acc;
            }
            const auto inv = Tr::inv(k + 1);
            for (int i = 0; i < n_; ++i) {
                S f = zero;
                for (const auto& t : out_[i]) {
                    if (t.slot < 0) {
                        if (k == 0) f += zero_plus(zero, Tr::coef(t.coef));
                    } else {
                        f += slot(t.slot, k) * Tr::coef(t.coef);
                    }
                }
                z[k + 1][i + 1] = f * inv;
            }
        }
    }

private:
    template <class S, class C>
    static S zero_plus(S zero, const C& c)
    {
        if constexpr (std::is_same_v<S, C>)
            return c;
        else {
            zero.value() += c;
            return zero;
        }
    }

    int slot_for(const Polynomial::Exponents& e);

    int n_ = 0;
    std::vector<Node> nodes_;
    std::vector<std::vector<Term>> out_;
    std::map<Polynomial::Exponents, int> memo_;
};

// apply f to corresponding interval entries of two values of the same type
template <class F>
void zip_entries(Interval& a, const Interval& b, F f)
{
    f(a, b);
}

template <class F>
void zip_entries(Jet1<Interval>& a, const Jet1<Interval>& b, F f)
{
    f(a.value(), b.value());
    for (int i = 0; i < a.nvars(); ++i) f(a.d1(i), b.d1(i));
}

template <class F>
void zip_entries(IJet& a, const IJet& b, F f)
{
    f(a.value(), b.value());
    for (int i = 0; i < a.nvars(); ++i) f(a.d1(i), b.d1(i));
    for (int k = 0; k < a.nhess(); ++k) f(a.packed(k), b.packed(k));
}

inline const Interval& value_of(const Interval& x) { return x; }
inline const Interval& value_of(const Jet1<Interval>& x) { return x.value(); }
inline const Interval& value_of(const IJet& x) { return x.value(); }

} // namespace melcert::detail

#endif
