#ifndef MELCERT_JET_HPP
#define MELCERT_JET_HPP

#include <array>
#include <cassert>
#include <utility>
#include <vector>

#include "melcert/imatrix.hpp"

namespace melcert {

inline constexpr int kMaxJetVars = 8;
inline constexpr int kMaxHess = kMaxJetVars * (kMaxJetVars + 1) / 2;

// packed upper-triangular index of the pair (i,j)
inline int hess_index(int n, int i, int j)
{
    if (i > j) std::swap(i, j);
    return i * n - i * (i - 1) / 2 + (j - i);
}

inline double sqr(double x) { return x * x; }

// Value, gradient and Hessian of a scalar function of n variables.
template <class T>
class Jet2 {
public:
    Jet2() = default;
    explicit Jet2(int n, T value = T(0.0)) : n_(n), v_(value)
    {
        assert(n >= 0 && n <= kMaxJetVars);
        for (auto& x : g_) x = T(0.0);
        for (auto& x : h_) x = T(0.0);
    }
    static Jet2 variable(int n, int idx, T value)
    {
        Jet2 j(n, value);
        j.g_[idx] = T(1.0);
        return j;
    }

    int nvars() const noexcept { return n_; }
    int nhess() const noexcept { return n_ * (n_ + 1) / 2; }
    T& value() { return v_; }
    const T& value() const { return v_; }
    T& d1(int i) { return g_[i]; }
    const T& d1(int i) const { return g_[i]; }
    T& d2(int i, int j) { return h_[hess_index(n_, i, j)]; }
    const T& d2(int i, int j) const { return h_[hess_index(n_, i, j)]; }
    T& packed(int k) { return h_[k]; }
    const T& packed(int k) const { return h_[k]; }

    Jet2& operator+=(const Jet2& o)
    {
        assert(o.n_ == n_);
        v_ += o.v_;
        for (int i = 0; i < n_; ++i) g_[i] += o.g_[i];
        for (int k = 0, nh = nhess(); k < nh; ++k) h_[k] += o.h_[k];
        return *this;
    }
    Jet2& operator-=(const Jet2& o)
    {
        assert(o.n_ == n_);
        v_ -= o.v_;
        for (int i = 0; i < n_; ++i) g_[i] -= o.g_[i];
        for (int k = 0, nh = nhess(); k < nh; ++k) h_[k] -= o.h_[k];
        return *this;
    }
    Jet2& operator+=(const T& c)
    {
        v_ += c;
        return *this;
    }
    Jet2& operator-=(const T& c)
    {
        v_ -= c;
        return *this;
    }
    Jet2& operator*=(const T& c)
    {
        v_ *= c;
        for (int i = 0; i < n_; ++i) g_[i] *= c;
        for (int k = 0, nh = nhess(); k < nh; ++k) h_[k] *= c;
        return *this;
    }

    friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
    friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
    friend Jet2 operator+(Jet2 a, const T& c) { return a += c; }
    friend Jet2 operator+(const T& c, Jet2 a) { return a += c; }
    friend Jet2 operator-(Jet2 a, const T& c) { return a -= c; }
    friend Jet2 operator-(const T& c, const Jet2& a) { return -a + c; }
    friend Jet2 operator*(Jet2 a, const T& c) { return a *= c; }
    friend Jet2 operator*(const T& c, Jet2 a) { return a *= c; }
    friend Jet2 operator-(const Jet2& a)
    {
        Jet2 r(a.n_);
        r.v_ = -a.v_;
        for (int i = 0; i < a.n_; ++i) r.g_[i] = -a.g_[i];
        for (int k = 0, nh = a.nhess(); k < nh; ++k) r.h_[k] = -a.h_[k];
        return r;
    }

    friend Jet2 operator*(const Jet2& a, const Jet2& b)
    {
        assert(a.n_ == b.n_);
        Jet2 r(a.n_);
        mul_acc(r, a, b);
        return r;
    }

    // r += a*b
    static void mul_acc(Jet2& r, const Jet2& a, const Jet2& b)
    {
        const int n = a.n_;
        r.v_ += a.v_ * b.v_;
        for (int i = 0; i < n; ++i) r.g_[i] += a.v_ * b.g_[i] + a.g_[i] * b.v_;
        int k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j, ++k)
                r.h_[k] += a.v_ * b.h_[k] + a.h_[k] * b.v_ + a.g_[i] * b.g_[j] + a.g_[j] * b.g_[i];
    }

    friend Jet2 sqr(const Jet2& a)
    {
        using melcert::sqr;
        const int n = a.n_;
        Jet2 r(n);
        r.v_ = sqr(a.v_);
        T two(2.0);
        for (int i = 0; i < n; ++i) r.g_[i] = two * a.v_ * a.g_[i];
        int k = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j, ++k) r.h_[k] = two * (a.v_ * a.h_[k] + a.g_[i] * a.g_[j]);
        return r;
    }

private:
    int n_ = 0;
    T v_{};
    std::array<T, kMaxJetVars> g_{};
    std::array<T, kMaxHess> h_{};
};

using IJet = Jet2<Interval>;
using DJet = Jet2<double>;

// Enclosure of an R^m-valued map together with its first and second
// partials over nvars variables; variable 0 is the parameter.
class Jet2Enclosure {
public:
    Jet2Enclosure() = default;
    Jet2Enclosure(std::size_t outputs, int nvars);
    explicit Jet2Enclosure(std::vector<IJet> comps);
    // Symmetric pairs of d2 are intersected; empty intersection throws.
    static Jet2Enclosure from_full(const IntervalBox& value, const IntervalMatrix& d1,
                                   const std::vector<IntervalMatrix>& d2);
    // map (eps, x) -> x on the given box, eps first
    static Jet2Enclosure identity(const IntervalBox& eps_x);

    std::size_t outputs() const noexcept { return c_.size(); }
    int nvars() const noexcept { return nv_; }
    IJet& operator[](std::size_t i) { return c_[i]; }
    const IJet& operator[](std::size_t i) const { return c_[i]; }
    const std::vector<IJet>& components() const noexcept { return c_; }

    IntervalBox value() const;
    IntervalMatrix d1() const;
    // full symmetric Hessian of one output
    IntervalMatrix d2(std::size_t output) const;
    // outputs x variables matrix of d^2/(d var_a d var_b) for fixed a
    IntervalMatrix d2_row(int a) const;

    Jet2Enclosure select(const std::vector<std::size_t>& outputs) const;
    bool contains(const Jet2Enclosure& o) const;

private:
    int nv_ = 0;
    std::vector<IJet> c_;
};

// (outer o inner): outer is a jet in (eps, y) with y = inner outputs; inner
// is a jet in (eps, x). The result is a jet in (eps, x). The caller must
// ensure outer was evaluated over a box containing inner's value range.
Jet2Enclosure jet2_compose(const Jet2Enclosure& outer, const Jet2Enclosure& inner);

// Re-express a jet in nv variables as one in new_nv variables, old
// variable i becoming new variable map[i].
IJet embed(const IJet& j, int new_nv, const std::vector<int>& map);

} // namespace melcert

#endif
