#ifndef MELCERT_DISTANCE_HPP
#define MELCERT_DISTANCE_HPP

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "melcert/jet.hpp"
#include "melcert/polynomial.hpp"

namespace melcert {

// Parameterization w(eps, kappa) of a manifold in local coordinates.
// jet(E, K) returns the jet of w over (eps, kappa_1..kappa_m) for eps in E,
// kappa in K. The index sets pick out the coordinate groups of the output.
struct ManifoldOracle {
    std::function<Jet2Enclosure(const Interval& eps, const IntervalBox& params)> jet;
    std::size_t params = 0;
    std::vector<std::size_t> x, y, v, z;
    // optional nonrigorous value and d w / d kappa, used for initial guesses
    std::function<std::pair<std::vector<double>, Eigen::MatrixXd>(double eps, const std::vector<double>& params)>
        approx;
    // starting point for the nonrigorous search of graph parameters
    std::vector<double> hint;
};

// y(eps, x) with the (y1, y2) split of its k1 + k2 outputs.
struct DistanceOracle {
    std::function<Jet2Enclosure(const Interval& eps, const IntervalBox& x)> jet;
    std::size_t k1 = 0;
    std::size_t k2 = 0;
};

class DistanceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Oracle from polynomials in (eps, kappa_1..kappa_m).
ManifoldOracle polynomial_manifold(const std::vector<Polynomial>& components, std::vector<std::size_t> x,
                                   std::vector<std::size_t> y, std::vector<std::size_t> v = {},
                                   std::vector<std::size_t> z = {});

// Distance given directly by polynomials in (eps, x_1..x_k).
DistanceOracle polynomial_distance(const std::vector<Polynomial>& y, std::size_t k1, std::size_t k2);

struct GraphSolution {
    IntervalBox K;           // enclosure of kappa over E x X
    Jet2Enclosure kappa;     // jet of kappa over (eps, X)
    double sigmaMin = 0;     // lower bound of m(d pi_C w / d kappa) over E x K
};

// Solves pi_C w(eps, kappa) = (X, fixed) for kappa as a function of (eps, X),
// with C = coords. Conditions A/B are checked on E x K.
GraphSolution solve_graph(const ManifoldOracle& w, const std::vector<std::size_t>& coords,
                          const std::vector<double>& fixed, const Interval& E, const IntervalBox& X);

// y = pi_y w^u(eps, u(eps, x)) - pi_y w^s(eps, s(eps, x)) with pi_x w(eps, .) = x.
DistanceOracle distance_fixed_point(const ManifoldOracle& wu, const ManifoldOracle& ws, std::size_t k1,
                                    std::size_t k2);

// As above on the section z = zStar, solving over (x, z).
DistanceOracle distance_nhim_section(const ManifoldOracle& wcu, const ManifoldOracle& wcs,
                                     const std::vector<double>& zStar, std::size_t k1, std::size_t k2);

// u < s: the v coordinates of w^cu are fed into the (x, v, z) graph of w^cs.
DistanceOracle distance_unequal(const ManifoldOracle& wcu, const ManifoldOracle& wcs,
                                const std::vector<double>& zStar, std::size_t k1, std::size_t k2);

} // namespace melcert

#endif
