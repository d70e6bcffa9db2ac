#ifndef MELCERT_LERMAN_UMANSKII_HPP
#define MELCERT_LERMAN_UMANSKII_HPP

#include <string>
#include <utility>
#include <vector>

#include "melcert/certificate.hpp"
#include "melcert/distance.hpp"
#include "melcert/flow.hpp"

namespace melcert {

struct LUConfig {
    double lambda = 1;
    double omega = 1;
    double epsMax = 1e-7;
    double R = 1e-5;
    double T = 9;
    double localRadius = 1.5e-4;
    double lipschitz = 1e-8;
    double secondDerivBound = 3.518e-5;
    FlowSettings flow;
    int threads = 1;
    int deltaSubdivisions = 1;
    bool companionCheck = true;
    // reduced transport time tried when the full pipeline fails; <= 0 disables
    double fallbackTransportTime = 6;
    // maximal relative deviation of the nonrigorous mixed block from the reference
    double fallbackRelTol = 1e-2;
    // reference mixed block at the origin of the intersection chart
    std::vector<std::vector<double>> referenceMixedBlock{{5.8782194445, -13.12140617},
                                                         {4.972558764, -2.358981732}};
};

void validate(const LUConfig& cfg);

enum class Side { unstable, stable };
enum class Direction { forward, inverse };

std::string to_string(Side s);

// q' = F(eps, q) in R^4
VectorFieldDef lu_field(const LUConfig& cfg);

// Jet of F over (eps, x_1..x_4) on epsBox x xBox.
Jet2Enclosure field_F(const LUConfig& cfg, const Interval& epsBox, const IntervalBox& xBox);

// Enclosures of the integrals (H, K) of the unperturbed system.
std::pair<Interval, Interval> integrals_HK(const LUConfig& cfg, const IntervalBox& xBox);

// The point where the chart of the intersection is centered and its frame.
std::vector<double> chart_center();
IntervalMatrix chart_matrix(const LUConfig& cfg);

// Straightening chart of the unstable or stable manifold of the origin,
// composed with the given jet (outputs: 4 coordinates).
Jet2Enclosure chart_psi(Side side, Direction dir, const Jet2Enclosure& v);
// Same on a box, as a jet over (eps = 0, v_1..v_4).
Jet2Enclosure chart_psi(Side side, Direction dir, const IntervalBox& v);

// Affine chart x = center + M (x, y); inverse applies an enclosure of M^-1.
Jet2Enclosure chart_V(Direction dir, const Jet2Enclosure& v, const std::vector<double>& center,
                      const IntervalMatrix& M);
Jet2Enclosure chart_V(const LUConfig& cfg, Direction dir, const IntervalBox& box);

// Local manifold as a graph over [-r, r]^2 with the given uniform bounds.
struct ManifoldGraphEnclosure {
    Side side = Side::unstable;
    IntervalBox domain;       // E x [-r, r]^2
    double valueRadius = 0;   // L r
    double firstDerivBound = 0;
    double secondDerivBound = 0;

    static ManifoldGraphEnclosure from_config(const LUConfig& cfg, Side side);
    // local point (v_1..v_4) as a jet over (eps, kappa_1, kappa_2)
    Jet2Enclosure local_point(const Interval& eps, const IntervalBox& kappa) const;
};

// w(eps, kappa) = V^-1 o Phi_{+-T} o Psi (kappa, w_loc(eps, kappa)) as a jet
// over (eps, kappa).
Jet2Enclosure global_manifold(Side side, const LUConfig& cfg, const ManifoldGraphEnclosure& local,
                              const Interval& eps, const IntervalBox& kappa);

// Transport data: flow time and intersection chart. The defaults use
// T and the default chart; a shifted section moves the chart along the
// unperturbed homoclinic orbit by `shift` time units.
struct SectionChart {
    double unstableTime = 9;
    double stableTime = 9;
    std::vector<double> center;
    IntervalMatrix M;

    static SectionChart from_config(const LUConfig& cfg);
    static SectionChart shifted(const LUConfig& cfg, double shift);
};

Jet2Enclosure global_manifold(Side side, const LUConfig& cfg, const ManifoldGraphEnclosure& local,
                              const SectionChart& chart, const Interval& eps, const IntervalBox& kappa);

ManifoldOracle lu_manifold_oracle(Side side, const LUConfig& cfg, const SectionChart& chart);

// Nonrigorous point version of w, with the local graph pinned to 0.
std::vector<double> manifold_point(Side side, const LUConfig& cfg, const SectionChart& chart, double eps,
                                   const std::vector<double>& kappa);

struct CompanionReport {
    bool ok = false;
    std::vector<double> kappaU, kappaS;  // graph parameters hitting x = 0 at eps = 0
    std::vector<double> splitting;       // y(epsMax, 0)
    std::vector<std::vector<double>> mixedBlock;  // d^2 y / d eps d x (0, 0)
    std::string diagnostic;
};

// Shooting from the local graphs without enclosures.
CompanionReport companion_check(const LUConfig& cfg, const SectionChart& chart);

MelnikovCertificate run_theorem_proof(const LUConfig& cfg);

// Nonrigorous samples of the local or transported manifold at a fixed eps:
// rows (v1..v4) on the local graph circle of radius rho, flowed by time t.
std::vector<std::vector<double>> manifold_samples(const LUConfig& cfg, Side side, double eps, std::size_t count,
                                                  double rho, double t);

} // namespace melcert

#endif
