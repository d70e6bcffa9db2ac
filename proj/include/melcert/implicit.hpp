#ifndef MELCERT_IMPLICIT_HPP
#define MELCERT_IMPLICIT_HPP

#include <functional>
#include <stdexcept>
#include <utility>

#include "melcert/jet.hpp"
#include "melcert/newton.hpp"
#include "melcert/polynomial.hpp"

namespace melcert {

// Jet oracle of g(eps, x, kappa) with m outputs, over the variables
// (eps, x_1..x_k, kappa_1..kappa_m) in that order. With valueOnly set
// the oracle may skip derivative blocks (they are then unspecified).
using ImplicitOracle =
    std::function<Jet2Enclosure(const IntervalBox& epsX, const IntervalBox& kappa, bool valueOnly)>;

struct ImplicitEnclosure {
    IntervalBox domain;
    IntervalBox image;
    IntervalMatrix dEps;
    IntervalMatrix dX;
    IntervalMatrix dEpsX;
    NewtonCertificate newton;
};

class ImplicitError : public std::runtime_error {
public:
    ImplicitError(const std::string& what, IntervalBox domain, IntervalBox K)
        : std::runtime_error(what), domain(std::move(domain)), K(std::move(K))
    {
    }
    IntervalBox domain;
    IntervalBox K;
};

// Verifies kappa(eps, x) in K for all (eps, x) in X; fills image only.
ImplicitEnclosure implicit_enclose(const ImplicitOracle& g, const IntervalBox& X, const IntervalBox& K,
                                   const std::vector<double>& k0, int maxRefine = 20);

// (d kappa / d eps, d kappa / d x) over X, with K from implicit_enclose.
std::pair<IntervalMatrix, IntervalMatrix> implicit_first(const ImplicitOracle& g, const IntervalBox& X,
                                                         const IntervalBox& K);

// d^2 kappa / d eps d x over X. With simplify set, g_{eps x} and g_{kappa x}
// are taken as zero.
IntervalMatrix implicit_mixed_second(const ImplicitOracle& g, const IntervalBox& X, const IntervalBox& K,
                                     const std::pair<IntervalMatrix, IntervalMatrix>& firsts, bool simplify);

// Full order-2 jet of kappa over (eps, x) with value K.
Jet2Enclosure implicit_jet(const ImplicitOracle& g, const IntervalBox& X, const IntervalBox& K);

// Oracle for polynomial g over (eps, x, kappa).
ImplicitOracle polynomial_implicit_oracle(const std::vector<Polynomial>& g);

} // namespace melcert

#endif
