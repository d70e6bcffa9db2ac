#ifndef MELCERT_NEWTON_HPP
#define MELCERT_NEWTON_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "melcert/imatrix.hpp"
#include "melcert/polynomial.hpp"

namespace melcert {

// Enclosure oracles of f(x, y) and of D_y f(x, y).
struct FunctionOracle {
    std::function<IntervalBox(const IntervalBox& params, const IntervalBox& state)> eval;
    std::function<IntervalMatrix(const IntervalBox& params, const IntervalBox& state)> deriv;
};

struct NewtonCertificate {
    IntervalBox params;
    IntervalBox candidate;
    IntervalBox refined;
    bool verified = false;
    int iterations = 0;
    std::string diagnostic;
};

// N(y0, X, Y) = y0 - [D_y f(X, Y)]^-1 [f(X, y0)]
IntervalBox newton_step(const std::vector<double>& y0, const IntervalBox& X, const IntervalBox& Y,
                        const FunctionOracle& f);

NewtonCertificate newton_verify(const FunctionOracle& f, const IntervalBox& X, const IntervalBox& Y,
                                std::optional<std::vector<double>> y0 = std::nullopt, int maxRefine = 30);

// Oracle for a square polynomial system over variables (params..., state...).
FunctionOracle polynomial_system_oracle(const std::vector<Polynomial>& equations, std::size_t nparams);

} // namespace melcert

#endif
