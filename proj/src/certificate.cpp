#include "melcert/certificate.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <mutex>
#include <sstream>

#include "melcert/json_writer.hpp"
#include "melcert/linalg.hpp"
#include "melcert/newton.hpp"
#include "melcert/numfmt.hpp"
#include "melcert/parallel.hpp"

namespace melcert {

std::string tool_version() { return std::string("melcert ") + MELCERT_VERSION; }

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::verified: return "verified";
    case Verdict::failed: return "failed";
    default: return "unchecked";
    }
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

IntervalMatrix y1_x1(const Jet2Enclosure& J, std::size_t k1)
{
    IntervalMatrix A(k1, k1);
    for (std::size_t i = 0; i < k1; ++i)
        for (std::size_t j = 0; j < k1; ++j) A(i, j) = J[i].d1(int(1 + j));
    return A;
}

// d^2 y2 / d eps d x, all columns
IntervalMatrix y2_eps_x(const Jet2Enclosure& J, std::size_t k1, std::size_t k2)
{
    const std::size_t n = k1 + k2;
    IntervalMatrix A(k2, n);
    for (std::size_t i = 0; i < k2; ++i)
        for (std::size_t j = 0; j < n; ++j) A(i, j) = J[k1 + i].d2(0, int(1 + j));
    return A;
}

IntervalMatrix delta1_of(const Jet2Enclosure& J, const IntervalMatrix& A11, std::size_t k1, std::size_t k2)
{
    const std::size_t n = k1 + k2;
    IntervalMatrix D(k1, n);
    for (std::size_t i = 0; i < k1; ++i)
        for (std::size_t j = 0; j < n; ++j) D(i, j) = j < k1 ? J[i].d1(int(1 + j)) - A11(i, j) : J[i].d1(int(1 + j));
    return D;
}

IntervalMatrix delta2_of(const Jet2Enclosure& J, const IntervalMatrix& A22, std::size_t k1, std::size_t k2)
{
    IntervalMatrix D = y2_eps_x(J, k1, k2);
    for (std::size_t i = 0; i < k2; ++i)
        for (std::size_t j = 0; j < k2; ++j) D(i, k1 + j) = D(i, k1 + j) - A22(i, j);
    return D;
}

IntervalBox eps_column(const Jet2Enclosure& J, std::size_t from, std::size_t count)
{
    IntervalBox v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = J[from + i].d1(0);
    return v;
}

double norm_or_zero(const IntervalMatrix& m) { return m.rows() == 0 || m.cols() == 0 ? 0.0 : spectral_norm_ub(m); }

std::vector<IntervalBox> subdivide(const IntervalBox& U, int parts)
{
    std::vector<IntervalBox> cells{U};
    if (parts <= 1) return cells;
    for (std::size_t c = 0; c < U.size(); ++c) {
        std::vector<IntervalBox> next;
        const double lo = U[c].lo(), hi = U[c].hi();
        for (const auto& cell : cells)
            for (int k = 0; k < parts; ++k) {
                IntervalBox b = cell;
                double a = k == 0 ? lo : lo + (hi - lo) * k / parts;
                double e = k == parts - 1 ? hi : lo + (hi - lo) * (k + 1) / parts;
                b[c] = Interval(a, e);
                next.push_back(b);
            }
        cells = std::move(next);
    }
    return cells;
}

std::string describe(const IntervalBox& b)
{
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < b.size(); ++i)
        os << (i ? ", " : "") << "[" << format_double(b[i].lo()) << ", " << format_double(b[i].hi()) << "]";
    os << "]";
    return os.str();
}

} // namespace

MelnikovCertificate assemble_lemma_data(const SplittingProblem& prob)
{
    const std::size_t k1 = prob.k1, k2 = prob.k2, n = k1 + k2;
    if (n == 0 || prob.p.size() != n) throw std::invalid_argument("p must have dimension k1 + k2");
    if (!(prob.R > 0) || !(prob.epsMax > 0)) throw std::invalid_argument("R and epsMax must be positive");
    if (!prob.oracle.jet) throw std::invalid_argument("splitting problem has no distance oracle");
    if (prob.oracle.k1 != k1 || prob.oracle.k2 != k2) throw std::invalid_argument("oracle split disagrees with k1, k2");

    auto check = [n](const Jet2Enclosure& J) {
        if (J.outputs() != n || J.nvars() != int(n) + 1) throw std::invalid_argument("distance jet has wrong shape");
        return J;
    };

    MelnikovCertificate c;
    c.problem = prob.name;
    c.k1 = k1;
    c.k2 = k2;
    c.p = prob.p;
    c.R = prob.R;
    c.epsMax = prob.epsMax;
    c.assumptions = prob.assumptions;

    const IntervalBox P = IntervalBox::from_point(prob.p);
    const Interval E(0.0, prob.epsMax);
    Jet2Enclosure J0 = check(prob.oracle.jet(Interval(0.0), P));
    for (std::size_t i = 0; i < n; ++i)
        if (!J0[i].value().contains(0.0))
            throw CertificateError("y(0, p) enclosure does not contain 0 in component " + std::to_string(i));
    c.A11 = y1_x1(J0, k1);
    c.A22 = y2_eps_x(J0, k1, k2).block(0, k1, k2, k2);

    IntervalBox U(n);
    for (std::size_t i = 0; i < n; ++i) U[i] = widen(Interval(prob.p[i]), prob.R);
    auto cells = subdivide(U, prob.deltaSubdivisions);
    std::vector<IntervalMatrix> d1s(cells.size()), d2s(cells.size());
    parallel_for(cells.size(), prob.threads, [&](std::size_t i) {
        Jet2Enclosure J = check(prob.oracle.jet(E, cells[i]));
        d1s[i] = delta1_of(J, c.A11, k1, k2);
        d2s[i] = delta2_of(J, c.A22, k1, k2);
    });
    c.Delta1 = d1s[0];
    c.Delta2 = d2s[0];
    double n1 = 0, n2 = 0;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        c.Delta1 = hull(c.Delta1, d1s[i]);
        c.Delta2 = hull(c.Delta2, d2s[i]);
        n1 = std::max(n1, norm_or_zero(d1s[i]));
        n2 = std::max(n2, norm_or_zero(d2s[i]));
    }
    if (cells.size() > 1) {
        c.quantities["normDelta1Cells"] = n1;
        c.quantities["normDelta2Cells"] = n2;
    }

    Jet2Enclosure Je = check(prob.oracle.jet(E, P));
    c.epsDeriv1 = k1 ? ivec_norm_ub(eps_column(Je, 0, k1)) : 0.0;
    c.epsDeriv2 = k2 ? ivec_norm_ub(eps_column(Je, k1, k2)) : 0.0;
    c.extraBlocks["epsDerivative"] = IntervalMatrix(n, 1);
    for (std::size_t i = 0; i < n; ++i) c.extraBlocks["epsDerivative"](i, 0) = Je[i].d1(0);
    c.assumptions.push_back("d y / d eps is bounded over E at the point p only; U = B(p, R) is enclosed "
                            "by the cube p + [-R, R]^n");
    return c;
}

MelnikovCertificate certificate_from_blocks(std::size_t k1, std::size_t k2, double R, double epsMax,
                                            const IntervalMatrix& A11, const IntervalMatrix& Delta1,
                                            double epsDeriv1, const IntervalMatrix& A22,
                                            const IntervalMatrix& Delta2, double epsDeriv2)
{
    const std::size_t n = k1 + k2;
    if (A11.rows() != k1 || A11.cols() != k1 || A22.rows() != k2 || A22.cols() != k2)
        throw std::invalid_argument("A11 must be k1 x k1 and A22 k2 x k2");
    if (Delta1.rows() != k1 || (k1 && Delta1.cols() != n) || Delta2.rows() != k2 || (k2 && Delta2.cols() != n))
        throw std::invalid_argument("Delta blocks must have k1 + k2 columns");
    MelnikovCertificate c;
    c.k1 = k1;
    c.k2 = k2;
    c.R = R;
    c.epsMax = epsMax;
    c.p.assign(n, 0.0);
    c.A11 = A11;
    c.A22 = A22;
    c.Delta1 = Delta1;
    c.Delta2 = Delta2;
    c.epsDeriv1 = epsDeriv1;
    c.epsDeriv2 = epsDeriv2;
    return c;
}

MelnikovCertificate verify_practical(MelnikovCertificate c)
{
    c.margins.clear();
    const Interval R(c.R);
    auto cellNorm = [&](const char* key) {
        auto it = c.quantities.find(key);
        return it == c.quantities.end() ? kInf : it->second;
    };
    bool ok = true;
    if (c.k1 > 0) {
        c.mA11 = sigma_min_lb(c.A11);
        c.normDelta1 = std::min(spectral_norm_ub(c.Delta1), cellNorm("normDelta1Cells"));
        Interval m = Interval(c.mA11) * R - Interval(c.epsMax) * Interval(c.epsDeriv1) - Interval(c.normDelta1) * R;
        double v = std::isfinite(c.normDelta1) && std::isfinite(c.epsDeriv1) ? m.lo() : -kInf;
        c.margins["y1"] = v;
        ok = ok && v > 0;
    }
    if (c.k2 > 0) {
        c.mA22 = sigma_min_lb(c.A22);
        c.normDelta2 = std::min(spectral_norm_ub(c.Delta2), cellNorm("normDelta2Cells"));
        Interval m = Interval(c.mA22) * R - Interval(c.epsDeriv2) - Interval(c.normDelta2) * R;
        double v = std::isfinite(c.normDelta2) && std::isfinite(c.epsDeriv2) ? m.lo() : -kInf;
        c.margins["y2"] = v;
        ok = ok && v > 0;
    }
    c.verdict = ok ? Verdict::verified : Verdict::failed;
    return c;
}

MelnikovCertificate verify_transversal(MelnikovCertificate c, const SplittingProblem* prob)
{
    if (c.verdict != Verdict::verified)
        throw CertificateError("transversality needs a verified certificate (verdict: " + to_string(c.verdict) + ")");
    c.transversal = true;
    if (prob) {
        const std::size_t n = c.k1 + c.k2;
        IntervalBox U(n);
        for (std::size_t i = 0; i < n; ++i) U[i] = widen(Interval(c.p[i]), c.R);
        Jet2Enclosure J = prob->oracle.jet(Interval(c.epsMax / 2, c.epsMax), U);
        IntervalMatrix D = J.d1().block(0, 1, n, n);
        c.jacobianSigmaMin = sigma_min_lb(D);
        c.quantities["jacobianSigmaMinLowerBound"] = c.jacobianSigmaMin;
    }
    return c;
}

BoundaryCertificate verify_boundary_exclusion(const DistanceOracle& oracle, const IntervalBox& U, const Interval& E,
                                              int boundaryDepth, int threads)
{
    const std::size_t k1 = oracle.k1, k2 = oracle.k2, n = k1 + k2;
    if (U.size() != n) throw std::invalid_argument("U must have dimension k1 + k2");
    if (boundaryDepth < 0) throw std::invalid_argument("boundary depth must be nonnegative");

    // reference map (y1, d y2 / d eps)(0, .) and its Jacobian
    auto refValue = [&](const Interval& eps, const IntervalBox& X) {
        Jet2Enclosure J = oracle.jet(eps, X);
        IntervalBox v(n);
        for (std::size_t i = 0; i < k1; ++i) v[i] = J[i].value();
        for (std::size_t i = 0; i < k2; ++i) v[k1 + i] = J[k1 + i].d1(0);
        return v;
    };
    FunctionOracle f;
    f.eval = [&](const IntervalBox&, const IntervalBox& X) { return refValue(Interval(0.0), X); };
    f.deriv = [&](const IntervalBox&, const IntervalBox& X) {
        Jet2Enclosure J = oracle.jet(Interval(0.0), X);
        IntervalMatrix D(n, n);
        for (std::size_t i = 0; i < k1; ++i)
            for (std::size_t j = 0; j < n; ++j) D(i, j) = J[i].d1(int(1 + j));
        for (std::size_t i = 0; i < k2; ++i)
            for (std::size_t j = 0; j < n; ++j) D(k1 + i, j) = J[k1 + i].d2(0, int(1 + j));
        return D;
    };
    NewtonCertificate nc = newton_verify(f, IntervalBox{}, U, U.mid());
    if (!nc.verified)
        throw CertificateError("reference map has no certified unique zero in U: " + nc.diagnostic);

    BoundaryCertificate b;
    b.referenceZero = nc.refined;
    double det = f.deriv(IntervalBox{}, nc.refined).mid().determinant();
    b.degreeSign = det > 0 ? 1 : -1;

    std::vector<IntervalBox> faces;
    for (std::size_t i = 0; i < n; ++i)
        for (double end : {U[i].lo(), U[i].hi()}) {
            IntervalBox face = U;
            face[i] = Interval(end);
            faces.push_back(face);
        }

    std::mutex mu;
    parallel_for(faces.size(), threads, [&](std::size_t fi) {
        std::size_t checked = 0;
        int deepest = 0;
        std::string failed;
        std::function<bool(const IntervalBox&, int)> visit = [&](const IntervalBox& cell, int level) {
            ++checked;
            deepest = std::max(deepest, level);
            IntervalBox v = refValue(E, cell);
            for (const auto& c : v)
                if (!c.contains(0.0)) return true;
            if (level >= boundaryDepth) {
                failed = describe(cell);
                return false;
            }
            std::vector<IntervalBox> kids{cell};
            for (std::size_t c = 0; c < n; ++c) {
                if (cell[c].width() == 0) continue;
                std::vector<IntervalBox> next;
                for (const auto& k : kids) {
                    double m = k[c].mid();
                    IntervalBox a = k, z = k;
                    a[c] = Interval(k[c].lo(), m);
                    z[c] = Interval(m, k[c].hi());
                    next.push_back(a);
                    next.push_back(z);
                }
                kids = std::move(next);
            }
            for (const auto& k : kids)
                if (!visit(k, level + 1)) return false;
            return true;
        };
        bool ok = visit(faces[fi], 0);
        std::lock_guard<std::mutex> lock(mu);
        b.cellsChecked += checked;
        b.depthUsed = std::max(b.depthUsed, deepest);
        if (!ok && b.failedCell.empty()) b.failedCell = failed;
    });
    b.verified = b.failedCell.empty();
    b.diagnostic = b.verified ? "0 excluded on every boundary cell"
                              : "enclosure contains 0 on boundary cell " + b.failedCell + " at maximal depth";
    return b;
}

std::string certificate_json(const MelnikovCertificate& c, const std::string& toolVersion)
{
    JsonWriter w;
    w.begin_object();
    w.key("problem").begin_object();
    w.key("name").value(c.problem);
    w.key("k1").value(c.k1);
    w.key("k2").value(c.k2);
    w.key("p").value(c.p);
    w.key("R").value(c.R);
    w.key("epsMax").value(c.epsMax);
    w.end_object();
    w.key("blocks").begin_object();
    w.key("A11").value(c.A11);
    w.key("A22").value(c.A22);
    w.key("Delta1").value(c.Delta1);
    w.key("Delta2").value(c.Delta2);
    for (const auto& [k, m] : c.extraBlocks) w.key(k).value(m);
    w.end_object();
    w.key("margins").begin_object();
    for (const auto& [k, v] : c.margins) w.key(k).value(v);
    w.key("sigmaMinA11").value(c.mA11);
    w.key("sigmaMinA22").value(c.mA22);
    w.key("normDelta1").value(c.normDelta1);
    w.key("normDelta2").value(c.normDelta2);
    w.key("epsDerivBound1").value(c.epsDeriv1);
    w.key("epsDerivBound2").value(c.epsDeriv2);
    for (const auto& [k, v] : c.quantities) w.key(k).value(v);
    w.end_object();
    w.key("verdict").value(to_string(c.verdict));
    w.key("transversal").value(c.transversal);
    w.key("checks").begin_object();
    for (const auto& [k, v] : c.checks) w.key(k).value(v);
    w.end_object();
    w.key("assumptions").value(c.assumptions);
    w.key("diagnostics").value(c.diagnostics);
    w.key("toolVersion").value(toolVersion);
    w.key("wallTimeSeconds").value(c.wallTimeSeconds);
    w.end_object();
    return w.str();
}

std::string boundary_json(const BoundaryCertificate& b, const std::string& problem, double wallTimeSeconds,
                          const std::string& toolVersion)
{
    JsonWriter w;
    w.begin_object();
    w.key("problem").value(problem);
    w.key("blocks").begin_object();
    w.key("referenceZero").value(b.referenceZero);
    w.end_object();
    w.key("margins").begin_object();
    w.key("degreeSign").value(b.degreeSign);
    w.key("cellsChecked").value(b.cellsChecked);
    w.key("depthUsed").value(b.depthUsed);
    w.end_object();
    w.key("verdict").value(b.verified ? "verified" : "failed");
    w.key("assumptions").value(std::vector<std::string>{});
    w.key("diagnostics").value(std::vector<std::string>{b.diagnostic});
    w.key("toolVersion").value(toolVersion);
    w.key("wallTimeSeconds").value(wallTimeSeconds);
    w.end_object();
    return w.str();
}

} // namespace melcert
