#ifndef MELCERT_CERTIFICATE_HPP
#define MELCERT_CERTIFICATE_HPP

#include <map>
#include <string>
#include <vector>

#include "melcert/distance.hpp"
#include "melcert/imatrix.hpp"

namespace melcert {

// Zero of y(eps, .) near p for eps in E = [0, epsMax], y = (y1, y2) with
// dim y1 = k1, dim y2 = k2, y2(0, .) = 0. U is the ball of radius R about p
// in the max of the Euclidean block norms; it is enclosed by the cube.
struct SplittingProblem {
    std::string name;
    std::size_t k1 = 0;
    std::size_t k2 = 0;
    std::vector<double> p;
    double R = 0;
    double epsMax = 0;
    DistanceOracle oracle;
    // uniform subdivisions per coordinate of U for the Delta bounds
    int deltaSubdivisions = 1;
    int threads = 1;
    std::vector<std::string> assumptions;
};

enum class Verdict { unchecked, verified, failed };

std::string to_string(Verdict v);

struct MelnikovCertificate {
    std::string problem;
    std::size_t k1 = 0;
    std::size_t k2 = 0;
    std::vector<double> p;
    double R = 0;
    double epsMax = 0;

    IntervalMatrix A11;   // d y1 / d x1 (0, p)
    IntervalMatrix A22;   // d^2 y2 / d eps d x2 (0, p)
    IntervalMatrix Delta1;
    IntervalMatrix Delta2;
    double epsDeriv1 = 0; // ||d y1 / d eps (E, p)|| upper bound
    double epsDeriv2 = 0; // ||d y2 / d eps (E, p)|| upper bound

    double mA11 = 0, mA22 = 0;
    double normDelta1 = 0, normDelta2 = 0;
    std::map<std::string, double> margins;
    Verdict verdict = Verdict::unchecked;
    bool transversal = false;
    double jacobianSigmaMin = 0;

    // extra enclosures reported alongside the main blocks
    std::map<std::string, IntervalMatrix> extraBlocks;
    std::map<std::string, double> quantities;
    std::map<std::string, bool> checks;
    std::vector<std::string> assumptions;
    std::vector<std::string> diagnostics;
    double wallTimeSeconds = 0;
};

class CertificateError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

MelnikovCertificate assemble_lemma_data(const SplittingProblem& prob);

// Certificate from already computed enclosures.
MelnikovCertificate certificate_from_blocks(std::size_t k1, std::size_t k2, double R, double epsMax,
                                            const IntervalMatrix& A11, const IntervalMatrix& Delta1,
                                            double epsDeriv1, const IntervalMatrix& A22,
                                            const IntervalMatrix& Delta2, double epsDeriv2);

// Margins
//   m(A11) R - epsMax ||dy1/deps|| - ||Delta1|| R
//   m(A22) R - ||dy2/deps|| - ||Delta2|| R
// as rigorous lower bounds; verified iff every applicable margin is > 0.
MelnikovCertificate verify_practical(MelnikovCertificate cert);

// Records uniqueness and transversality implied by a verified certificate.
// When a problem is given, also bounds sigma_min of the full d y / d x
// enclosure over [epsMax / 2, epsMax] x U as an independent check.
MelnikovCertificate verify_transversal(MelnikovCertificate cert, const SplittingProblem* prob = nullptr);

struct BoundaryCertificate {
    bool verified = false;
    int degreeSign = 0;
    IntervalBox referenceZero;
    std::size_t cellsChecked = 0;
    int depthUsed = 0;
    std::string failedCell;
    std::string diagnostic;
};

// 0 not in (y1, d y2 / d eps)(E, x) for x on the boundary of U, with the
// reference map (y1, d y2 / d eps)(0, .) having a certified unique zero in U.
BoundaryCertificate verify_boundary_exclusion(const DistanceOracle& oracle, const IntervalBox& U, const Interval& E,
                                              int boundaryDepth, int threads = 1);

std::string certificate_json(const MelnikovCertificate& cert, const std::string& toolVersion);
std::string boundary_json(const BoundaryCertificate& cert, const std::string& problem, double wallTimeSeconds,
                          const std::string& toolVersion);

std::string tool_version();

} // namespace melcert

#endif
