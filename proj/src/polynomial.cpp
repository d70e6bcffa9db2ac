#include "melcert/polynomial.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>

namespace melcert {

Polynomial Polynomial::constant(int nvars, const Interval& c)
{
    Polynomial p(nvars);
    p.add_term(Exponents(nvars, 0), c);
    return p;
}

Polynomial Polynomial::variable(int nvars, int index)
{
    Polynomial p(nvars);
    Exponents e(nvars, 0);
    e[index] = 1;
    p.add_term(e, Interval(1.0));
    return p;
}

void Polynomial::add_term(const Exponents& e, const Interval& c)
{
    if (int(e.size()) != nvars_) throw std::invalid_argument("monomial arity mismatch");
    auto it = terms_.find(e);
    if (it == terms_.end())
        terms_.emplace(e, c);
    else
        it->second += c;
}

int Polynomial::degree() const
{
    int d = 0;
    for (const auto& [e, c] : terms_) {
        int s = 0;
        for (int k : e) s += k;
        d = std::max(d, s);
    }
    return d;
}

Polynomial Polynomial::operator+(const Polynomial& o) const
{
    Polynomial r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

Polynomial Polynomial::operator-() const { return scaled(Interval(-1.0)); }

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const
{
    Polynomial r(nvars_);
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) {
            Exponents e(nvars_);
            for (int v = 0; v < nvars_; ++v) e[v] = e1[v] + e2[v];
            r.add_term(e, c1 * c2);
        }
    return r;
}

Polynomial Polynomial::scaled(const Interval& c) const
{
    Polynomial r(nvars_);
    for (const auto& [e, x] : terms_) r.terms_.emplace(e, c * x);
    return r;
}

Polynomial Polynomial::pow(int n) const
{
    if (n < 0) throw std::invalid_argument("negative polynomial power");
    Polynomial r = constant(nvars_, Interval(1.0));
    for (int i = 0; i < n; ++i) r = r * *this;
    return r;
}

Polynomial Polynomial::derivative(int var) const
{
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponents d = e;
        d[var] -= 1;
        r.add_term(d, Interval(double(e[var])) * c);
    }
    return r;
}

Interval Polynomial::eval(const std::vector<Interval>& x) const
{
    Interval acc(0.0);
    for (const auto& [e, c] : terms_) {
        Interval t = c;
        for (int v = 0; v < nvars_; ++v)
            if (e[v]) t *= melcert::pow(x[v], e[v]);
        acc += t;
    }
    return acc;
}

double Polynomial::eval_mid(const std::vector<double>& x) const
{
    double acc = 0;
    for (const auto& [e, c] : terms_) {
        double t = c.mid();
        for (int v = 0; v < nvars_; ++v)
            for (int k = 0; k < e[v]; ++k) t *= x[v];
        acc += t;
    }
    return acc;
}

namespace {

// decimal literal as an enclosure; exact when the value is a double
Interval literal(const std::string& s)
{
    double x = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size()) throw ParseError("bad number '" + s + "'");
    if (!std::isfinite(x)) throw ParseError("number out of range '" + s + "'");

    std::string digits;
    long exp10 = 0;
    bool frac = false;
    std::size_t i = 0;
    for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
        if (s[i] == '.') {
            frac = true;
            continue;
        }
        digits += s[i];
        if (frac) --exp10;
    }
    if (i < s.size()) exp10 += std::strtol(s.c_str() + i + 1, nullptr, 10);
    while (digits.size() > 1 && digits.front() == '0') digits.erase(digits.begin());
    while (!digits.empty() && digits.back() == '0' && digits != "0") {
        digits.pop_back();
        ++exp10;
    }
    bool exact = false;
    if (digits.size() <= 30) {
        unsigned __int128 m = 0;
        for (char c : digits) m = m * 10 + unsigned(c - '0');
        const unsigned __int128 lim = (unsigned __int128)1 << 53;
        if (m == 0) {
            exact = true;
        } else if (exp10 >= 0 && exp10 < 16) {
            for (long k = 0; k < exp10 && m < lim; ++k) m *= 10;
            exact = m <= lim;
        } else if (exp10 < 0 && exp10 > -40) {
            unsigned __int128 five = 1;
            bool ok = true;
            for (long k = 0; k < -exp10; ++k) {
                if (five > m) {
                    ok = false;
                    break;
                }
                five *= 5;
            }
            exact = ok && m % five == 0 && m / five <= lim;
        }
    }
    if (exact) return Interval(x);
    return Interval(rnd::down(x), rnd::up(x));
}

class Parser {
public:
    Parser(const std::string& t, const std::vector<std::string>& names) : t_(t), names_(names) {}

    Polynomial parse()
    {
        Polynomial p = expr();
        skip();
        if (pos_ != t_.size()) fail("unexpected character");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const
    {
        throw ParseError(msg + " at position " + std::to_string(pos_) + " in '" + t_ + "'");
    }
    void skip()
    {
        while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
    }
    bool eat(char c)
    {
        skip();
        if (pos_ < t_.size() && t_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    int nv() const { return int(names_.size()); }

    Polynomial expr()
    {
        Polynomial p = term();
        for (;;) {
            if (eat('+'))
                p = p + term();
            else if (eat('-'))
                p = p - term();
            else
                return p;
        }
    }

    Polynomial term()
    {
        Polynomial p = unary();
        for (;;) {
            if (eat('*')) {
                p = p * unary();
            } else if (eat('/')) {
                Polynomial d = unary();
                if (d.degree() != 0 || d.terms().empty()) fail("division by a non-constant");
                p = p.scaled(Interval(1.0) / d.terms().begin()->second);
            } else {
                return p;
            }
        }
    }

    Polynomial unary()
    {
        if (eat('-')) return -unary();
        if (eat('+')) return unary();
        return power();
    }

    Polynomial power()
    {
        Polynomial b = atom();
        if (eat('^')) {
            skip();
            std::size_t start = pos_;
            while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
            if (start == pos_) fail("expected a nonnegative integer exponent");
            int n = std::stoi(t_.substr(start, pos_ - start));
            if (n > 64) fail("exponent too large");
            return b.pow(n);
        }
        return b;
    }

    Polynomial atom()
    {
        skip();
        if (pos_ >= t_.size()) fail("unexpected end of input");
        char c = t_[pos_];
        if (c == '(') {
            ++pos_;
            Polynomial p = expr();
            if (!eat(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            std::size_t start = pos_;
            while (pos_ < t_.size() &&
                   (std::isdigit(static_cast<unsigned char>(t_[pos_])) || t_[pos_] == '.'))
                ++pos_;
            if (pos_ < t_.size() && (t_[pos_] == 'e' || t_[pos_] == 'E')) {
                std::size_t save = pos_++;
                if (pos_ < t_.size() && (t_[pos_] == '+' || t_[pos_] == '-')) ++pos_;
                if (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) {
                    while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
                } else {
                    pos_ = save;
                }
            }
            std::string lit = t_.substr(start, pos_ - start);
            if (lit[0] == '.') lit = "0" + lit;
            return Polynomial::constant(nv(), literal(lit));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < t_.size() && (std::isalnum(static_cast<unsigned char>(t_[pos_])) || t_[pos_] == '_'))
                ++pos_;
            std::string id = t_.substr(start, pos_ - start);
            if (id == "sqrt") {
                if (!eat('(')) fail("expected '(' after sqrt");
                Polynomial a = expr();
                if (!eat(')')) fail("expected ')'");
                if (a.degree() != 0) fail("sqrt of a non-constant");
                Interval v = a.terms().empty() ? Interval(0.0) : a.terms().begin()->second;
                if (v.lo() < 0) fail("sqrt of a negative constant");
                return Polynomial::constant(nv(), sqrt(v));
            }
            for (int i = 0; i < nv(); ++i)
                if (names_[i] == id) return Polynomial::variable(nv(), i);
            fail("unknown identifier '" + id + "'");
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    const std::string& t_;
    const std::vector<std::string>& names_;
    std::size_t pos_ = 0;
};

} // namespace

Polynomial parse_polynomial(const std::string& text, const std::vector<std::string>& names)
{
    return Parser(text, names).parse();
}

} // namespace melcert
