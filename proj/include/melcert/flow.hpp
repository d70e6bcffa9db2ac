#ifndef MELCERT_FLOW_HPP
#define MELCERT_FLOW_HPP

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "melcert/jet.hpp"
#include "melcert/polynomial.hpp"

namespace melcert {

// q' = f(eps, q) with polynomial components in (eps, x_1..x_n).
class VectorFieldDef {
public:
    VectorFieldDef() = default;
    explicit VectorFieldDef(std::vector<Polynomial> components);
    // variable names default to eps, x1..xn
    static VectorFieldDef parse(const std::vector<std::string>& components,
                                std::vector<std::string> names = {});

    int dim() const noexcept { return int(comps_.size()); }
    const std::vector<Polynomial>& components() const noexcept { return comps_; }
    VectorFieldDef negated() const;

    std::vector<Interval> eval(const Interval& eps, const std::vector<Interval>& x) const;
    std::vector<double> eval(double eps, const std::vector<double>& x) const;

private:
    std::vector<Polynomial> comps_;
};

enum class Wrapping { direct, parallelepiped };

struct FlowSettings {
    int taylorOrder = 12;
    double initialStep = 1.0 / 32;
    double minStep = 1e-8;
    double maxStep = 0.25;
    Wrapping wrapping = Wrapping::parallelepiped;
    // second-order blocks in parallelepiped form too (default: direct)
    bool lohnerSecondOrder = false;
    int maxSteps = 100000;
    // relative size of the last Taylor terms used for step selection
    double stepTolerance = 1e-17;
};

struct FlowStats {
    int steps = 0;
    int rejected = 0;
    double minStepUsed = 0;
    double maxStepUsed = 0;
};

class FlowError : public std::runtime_error {
public:
    FlowError(const std::string& what, int steps, double tReached)
        : std::runtime_error(what), steps(steps), tReached(tReached)
    {
    }
    int steps;
    double tReached;
};

// Taylor coefficients c_0..c_order of the solution through the state jet
// (variable 0 of the jet is eps, which ranges over epsBox).
std::vector<Jet2Enclosure> taylor_coeffs(const VectorFieldDef& field, const Jet2Enclosure& state,
                                         const Interval& epsBox, int order);

// Box containing the solution over [0, step] for all initial points and
// parameters in the inputs. Throws FlowError when none is found.
IntervalBox rough_enclosure(const VectorFieldDef& field, const IntervalBox& state, const Interval& epsBox,
                            double step);

// Jet of the time-T map over (eps, x0) in epsBox x x0, identity-seeded.
Jet2Enclosure flow_identity_jet(const VectorFieldDef& field, const Interval& epsBox, const IntervalBox& x0,
                                const Interval& T, const FlowSettings& settings = {}, FlowStats* stats = nullptr);

// Value enclosure of the time-T map over epsBox x x0.
IntervalBox flow_box(const VectorFieldDef& field, const Interval& epsBox, const IntervalBox& x0,
                     const Interval& T, const FlowSettings& settings = {}, FlowStats* stats = nullptr);

// Jet of (Phi_T o x0) where x0 is a jet in (eps, p) with eps in epsBox.
Jet2Enclosure flow_jet(const VectorFieldDef& field, const Jet2Enclosure& x0, const Interval& epsBox,
                       const Interval& T, const FlowSettings& settings = {}, FlowStats* stats = nullptr);

// Nonrigorous high-order Taylor integration in double precision.
std::vector<double> flow_point(const VectorFieldDef& field, double eps, const std::vector<double>& x0, double T,
                               int order = 20, double maxStep = 0.05);

// Nonrigorous flow of a double jet (value, gradient, Hessian) over the
// jet's variables; eps is itself a jet in the same variables.
std::vector<DJet> flow_point_jet(const VectorFieldDef& field, const DJet& eps, const std::vector<DJet>& x0,
                                 double T, int order = 20, double maxStep = 0.05);

} // namespace melcert

#endif
