#include "melcert/commands.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <limits>

#include "melcert/json_writer.hpp"
#include "melcert/numfmt.hpp"

namespace melcert {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write '" + path + "'");
    f << text;
    if (!f) throw ConfigError("write to '" + path + "' failed");
}

void print_summary(const MelnikovCertificate& c, std::ostream& out)
{
    out << c.problem << ": " << to_string(c.verdict) << "\n";
    for (const auto& [k, v] : c.margins) out << "  margin " << k << " = " << format_double(v) << "\n";
    if (c.k1 > 0)
        out << "  m(A11) >= " << format_double(c.mA11) << ", ||Delta1|| <= " << format_double(c.normDelta1)
            << ", ||dy1/deps|| <= " << format_double(c.epsDeriv1) << "\n";
    if (c.k2 > 0)
        out << "  m(A22) >= " << format_double(c.mA22) << ", ||Delta2|| <= " << format_double(c.normDelta2)
            << ", ||dy2/deps|| <= " << format_double(c.epsDeriv2) << "\n";
    for (const auto& [k, v] : c.checks) out << "  check " << k << ": " << (v ? "yes" : "no") << "\n";
    out << "  wall time " << format_double(c.wallTimeSeconds) << " s\n";
}

} // namespace

int cmd_lu_verify(const CommandOptions& opt, std::ostream& out, std::ostream& log)
{
    LUConfig cfg;
    try {
        cfg = parse_lu_config(read_text_file(opt.config));
        if (opt.threads) {
            if (*opt.threads < 1) throw ConfigError("threads must be at least 1");
            cfg.threads = *opt.threads;
        }
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return exitConfigError;
    }
    if (opt.verbose)
        log << "lu-verify: epsMax " << format_double(cfg.epsMax) << ", R " << format_double(cfg.R) << ", T "
            << format_double(cfg.T) << ", threads " << cfg.threads << "\n";

    auto t0 = Clock::now();
    MelnikovCertificate cert;
    try {
        cert = run_theorem_proof(cfg);
    } catch (const std::exception& e) {
        cert.problem = "lerman-umanskii";
        cert.k1 = 0;
        cert.k2 = 2;
        cert.p = {0, 0};
        cert.R = cfg.R;
        cert.epsMax = cfg.epsMax;
        cert.verdict = Verdict::failed;
        cert.diagnostics.push_back(e.what());
        cert.wallTimeSeconds = seconds_since(t0);
    }
    try {
        write_file(opt.out, certificate_json(cert, tool_version()));
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return exitConfigError;
    }
    print_summary(cert, out);
    if (opt.verbose)
        for (const auto& d : cert.diagnostics) log << "  " << d << "\n";
    out << "certificate written to " << opt.out << "\n";
    return cert.verdict == Verdict::verified ? exitVerified : exitFailed;
}

std::string newton_json(const NewtonCertificate& cert, const RootConfig& cfg, double wallTimeSeconds,
                        const std::string& toolVersion)
{
    JsonWriter w;
    w.begin_object();
    w.key("problem").begin_object();
    w.key("name").value(cfg.name);
    w.key("parameters").value(cfg.parameters);
    w.key("variables").value(cfg.variables);
    w.key("equations").value(cfg.equations);
    if (cfg.y0)
        w.key("y0").value(*cfg.y0);
    else
        w.key("y0").null();
    w.end_object();
    w.key("blocks").begin_object();
    w.key("X").value(cert.params);
    w.key("Y").value(cert.candidate);
    w.key("enclosure").value(cert.refined);
    w.end_object();
    w.key("margins").begin_object();
    w.key("enclosureWidth").value(cert.verified ? cert.refined.max_width() : std::numeric_limits<double>::quiet_NaN());
    w.key("iterations").value(cert.iterations);
    w.end_object();
    w.key("verdict").value(to_string(cert.verified ? Verdict::verified : Verdict::failed));
    std::vector<std::string> assumptions{
        "existence and uniqueness of the zero in Y for every parameter in X follow from N(y0, X, Y) inside int Y"};
    w.key("assumptions").value(assumptions);
    std::vector<std::string> diagnostics;
    if (!cert.diagnostic.empty()) diagnostics.push_back(cert.diagnostic);
    w.key("diagnostics").value(diagnostics);
    w.key("toolVersion").value(toolVersion);
    w.key("wallTimeSeconds").value(wallTimeSeconds);
    w.end_object();
    return w.str() + "\n";
}

int cmd_certify_root(const CommandOptions& opt, std::ostream& out, std::ostream& log)
{
    RootConfig cfg;
    FunctionOracle f;
    try {
        cfg = parse_root_config(read_text_file(opt.config));
        std::vector<std::string> names = cfg.parameters;
        names.insert(names.end(), cfg.variables.begin(), cfg.variables.end());
        std::vector<Polynomial> eqs;
        for (const auto& e : cfg.equations) eqs.push_back(parse_polynomial(e, names));
        f = polynomial_system_oracle(eqs, cfg.parameters.size());
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return exitConfigError;
    } catch (const ParseError& e) {
        log << "config error: bad polynomial: " << e.what() << "\n";
        return exitConfigError;
    }
    auto t0 = Clock::now();
    NewtonCertificate cert = newton_verify(f, cfg.X, cfg.Y, cfg.y0, cfg.maxRefine);
    double wall = seconds_since(t0);
    try {
        write_file(opt.out, newton_json(cert, cfg, wall, tool_version()));
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return exitConfigError;
    }
    out << cfg.name << ": " << (cert.verified ? "verified" : "failed") << " after " << cert.iterations
        << " iterations\n";
    if (cert.verified) {
        for (std::size_t i = 0; i < cfg.variables.size(); ++i)
            out << "  " << cfg.variables[i] << " in [" << format_double(cert.refined[i].lo()) << ", "
                << format_double(cert.refined[i].hi()) << "]\n";
    } else {
        out << "  " << cert.diagnostic << "\n";
    }
    out << "certificate written to " << opt.out << "\n";
    return cert.verified ? exitVerified : exitFailed;
}

std::string samples_csv(const LUConfig& cfg, const SampleSpec& spec)
{
    std::string s = "eps,x1,x2,x3,x4,side\n";
    for (const auto& row : manifold_samples(cfg, spec.side, spec.eps, spec.count, spec.rho, spec.time)) {
        s += format_double(spec.eps);
        for (double v : row) s += "," + format_double(v);
        s += "," + to_string(spec.side) + "\n";
    }
    return s;
}

std::string boxes_csv(const LUConfig& cfg, const BoxSpec& spec)
{
    std::string s = "side,eps_lo,eps_hi,k1_lo,k1_hi,k2_lo,k2_hi";
    for (int i = 1; i <= 4; ++i) s += ",v" + std::to_string(i) + "_lo,v" + std::to_string(i) + "_hi";
    s += "\n";
    ManifoldGraphEnclosure local = ManifoldGraphEnclosure::from_config(cfg, spec.side);
    const Interval E = local.domain[0];
    const double r = cfg.localRadius;
    const int n = spec.subdivisions;
    auto edge = [&](int i) { return i == n ? r : -r + 2 * r * double(i) / double(n); };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            IntervalBox kappa{Interval(edge(i), edge(i + 1)), Interval(edge(j), edge(j + 1))};
            Jet2Enclosure v = local.local_point(E, kappa);
            s += to_string(spec.side) + "," + format_double(E.lo()) + "," + format_double(E.hi());
            for (const auto& k : kappa) s += "," + format_double(k.lo()) + "," + format_double(k.hi());
            for (std::size_t c = 0; c < v.outputs(); ++c)
                s += "," + format_double(v[c].value().lo()) + "," + format_double(v[c].value().hi());
            s += "\n";
        }
    return s;
}

int cmd_export_samples(const CommandOptions& opt, std::ostream& out, std::ostream& log)
{
    ExportConfig cfg;
    try {
        cfg = parse_export_config(read_text_file(opt.config));
        std::error_code ec;
        std::filesystem::create_directories(opt.out, ec);
        if (ec || !std::filesystem::is_directory(opt.out))
            throw ConfigError("cannot create output directory '" + opt.out + "'");
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return exitConfigError;
    }
    try {
        for (const auto& sp : cfg.samples) {
            std::string path = (std::filesystem::path(opt.out) / sp.file).string();
            write_file(path, samples_csv(cfg.lu, sp));
            out << "wrote " << sp.count << " samples to " << path << "\n";
        }
        for (const auto& bp : cfg.boxes) {
            std::string path = (std::filesystem::path(opt.out) / bp.file).string();
            write_file(path, boxes_csv(cfg.lu, bp));
            out << "wrote " << bp.subdivisions * bp.subdivisions << " boxes to " << path << "\n";
        }
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << "\n";
        return exitConfigError;
    } catch (const std::exception& e) {
        log << "export failed: " << e.what() << "\n";
        return exitFailed;
    }
    if (opt.verbose) log << "export-samples: " << cfg.samples.size() << " sample sets, " << cfg.boxes.size()
                         << " box sets\n";
    return exitVerified;
}

} // namespace melcert
