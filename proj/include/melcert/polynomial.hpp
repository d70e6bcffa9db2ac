#ifndef MELCERT_POLYNOMIAL_HPP
#define MELCERT_POLYNOMIAL_HPP

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "melcert/interval.hpp"

namespace melcert {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Multivariate polynomial with interval coefficients.
class Polynomial {
public:
    using Exponents = std::vector<int>;

    Polynomial() = default;
    explicit Polynomial(int nvars) : nvars_(nvars) {}
    static Polynomial constant(int nvars, const Interval& c);
    static Polynomial variable(int nvars, int index);

    int nvars() const noexcept { return nvars_; }
    const std::map<Exponents, Interval>& terms() const noexcept { return terms_; }
    void add_term(const Exponents& e, const Interval& c);
    int degree() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial scaled(const Interval& c) const;
    Polynomial pow(int n) const;
    Polynomial derivative(int var) const;

    // Generic evaluation; S needs +, * and construction of a zero from the prototype.
    template <class S, class MakeConst>
    S eval(const std::vector<S>& x, MakeConst make_const) const
    {
        S acc = make_const(Interval(0.0));
        for (const auto& [e, c] : terms_) {
            S t = make_const(c);
            for (int v = 0; v < nvars_; ++v)
                for (int k = 0; k < e[v]; ++k) t = t * x[v];
            acc = acc + t;
        }
        return acc;
    }

    Interval eval(const std::vector<Interval>& x) const;
    double eval_mid(const std::vector<double>& x) const;

private:
    int nvars_ = 0;
    std::map<Exponents, Interval> terms_;
};

// Parses sums/products/integer powers of named variables and decimal
// constants, e.g. "x1 - x2 - 2*sqrt(2)*x3*(x3^2 + x4^2) + eps*x2".
// Decimal literals that are not exact doubles become 1-ulp enclosures.
Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& names);

} // namespace melcert

#endif
