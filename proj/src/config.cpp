#include "melcert/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace melcert {

namespace {

using nlohmann::json;

json parse_document(const std::string& text)
{
    try {
        json j = json::parse(text);
        if (!j.is_object()) throw ConfigError("config must be a JSON object");
        return j;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed JSON: ") + e.what());
    }
}

void require_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed)
{
    if (!j.is_object()) throw ConfigError(where + " must be an object");
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (const auto& [k, v] : j.items())
        if (!ok.count(k)) throw ConfigError("unknown key '" + k + "' in " + where);
}

double get_number(const json& j, const std::string& where)
{
    if (!j.is_number()) throw ConfigError(where + " must be a number");
    return j.get<double>();
}

long long get_integer(const json& j, const std::string& where)
{
    if (!j.is_number_integer() && !j.is_number_unsigned()) throw ConfigError(where + " must be an integer");
    return j.get<long long>();
}

bool get_bool(const json& j, const std::string& where)
{
    if (!j.is_boolean()) throw ConfigError(where + " must be a boolean");
    return j.get<bool>();
}

std::string get_string(const json& j, const std::string& where)
{
    if (!j.is_string()) throw ConfigError(where + " must be a string");
    return j.get<std::string>();
}

std::vector<std::string> get_strings(const json& j, const std::string& where)
{
    if (!j.is_array()) throw ConfigError(where + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : j) out.push_back(get_string(e, where));
    return out;
}

std::vector<double> get_numbers(const json& j, const std::string& where)
{
    if (!j.is_array()) throw ConfigError(where + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : j) out.push_back(get_number(e, where));
    return out;
}

// [[lo, hi], ...]; a bare number is a point interval
IntervalBox get_box(const json& j, const std::string& where)
{
    if (!j.is_array()) throw ConfigError(where + " must be an array of [lo, hi] pairs");
    IntervalBox b(j.size());
    for (std::size_t i = 0; i < j.size(); ++i) {
        const json& e = j[i];
        if (e.is_number()) {
            b[i] = Interval(e.get<double>());
            continue;
        }
        if (!e.is_array() || e.size() != 2) throw ConfigError(where + " entries must be [lo, hi] pairs");
        double lo = get_number(e[0], where), hi = get_number(e[1], where);
        if (!(lo <= hi)) throw ConfigError(where + " has an entry with lo > hi");
        b[i] = Interval(lo, hi);
    }
    return b;
}

Side get_side(const json& j, const std::string& where)
{
    std::string s = get_string(j, where);
    if (s == "unstable") return Side::unstable;
    if (s == "stable") return Side::stable;
    throw ConfigError(where + " must be \"unstable\" or \"stable\"");
}

void read_flow(const json& j, FlowSettings& f)
{
    require_keys(j, "flow", {"taylorOrder", "initialStep", "minStep", "maxStep", "wrapping", "lohnerSecondOrder",
                             "maxSteps", "stepTolerance"});
    if (j.contains("taylorOrder")) f.taylorOrder = int(get_integer(j["taylorOrder"], "flow.taylorOrder"));
    if (j.contains("initialStep")) f.initialStep = get_number(j["initialStep"], "flow.initialStep");
    if (j.contains("minStep")) f.minStep = get_number(j["minStep"], "flow.minStep");
    if (j.contains("maxStep")) f.maxStep = get_number(j["maxStep"], "flow.maxStep");
    if (j.contains("maxSteps")) f.maxSteps = int(get_integer(j["maxSteps"], "flow.maxSteps"));
    if (j.contains("stepTolerance")) f.stepTolerance = get_number(j["stepTolerance"], "flow.stepTolerance");
    if (j.contains("lohnerSecondOrder"))
        f.lohnerSecondOrder = get_bool(j["lohnerSecondOrder"], "flow.lohnerSecondOrder");
    if (j.contains("wrapping")) {
        std::string w = get_string(j["wrapping"], "flow.wrapping");
        if (w == "direct")
            f.wrapping = Wrapping::direct;
        else if (w == "parallelepiped")
            f.wrapping = Wrapping::parallelepiped;
        else
            throw ConfigError("flow.wrapping must be \"direct\" or \"parallelepiped\"");
    }
}

void read_fallback(const json& j, LUConfig& c)
{
    require_keys(j, "fallback", {"transportTime", "relTol", "referenceMixedBlock"});
    if (j.contains("transportTime"))
        c.fallbackTransportTime = get_number(j["transportTime"], "fallback.transportTime");
    if (j.contains("relTol")) c.fallbackRelTol = get_number(j["relTol"], "fallback.relTol");
    if (j.contains("referenceMixedBlock")) {
        const json& m = j["referenceMixedBlock"];
        if (!m.is_array()) throw ConfigError("fallback.referenceMixedBlock must be a 2 x 2 array");
        c.referenceMixedBlock.clear();
        for (const auto& row : m) c.referenceMixedBlock.push_back(get_numbers(row, "fallback.referenceMixedBlock"));
    }
}

LUConfig read_lu(const json& j, const std::string& where)
{
    require_keys(j, where, {"problem", "lambda", "omega", "epsMax", "R", "T", "localRadius", "lipschitz",
                            "secondDerivBound", "flow", "threads", "deltaSubdivisions", "companionCheck", "fallback"});
    LUConfig c;
    if (j.contains("problem") && get_string(j["problem"], "problem") != "lerman-umanskii")
        throw ConfigError("problem must be \"lerman-umanskii\"");
    auto num = [&](const char* k, double& dst) {
        if (j.contains(k)) dst = get_number(j[k], k);
    };
    num("lambda", c.lambda);
    num("omega", c.omega);
    num("epsMax", c.epsMax);
    num("R", c.R);
    num("T", c.T);
    num("localRadius", c.localRadius);
    num("lipschitz", c.lipschitz);
    num("secondDerivBound", c.secondDerivBound);
    if (j.contains("threads")) c.threads = int(get_integer(j["threads"], "threads"));
    if (j.contains("deltaSubdivisions"))
        c.deltaSubdivisions = int(get_integer(j["deltaSubdivisions"], "deltaSubdivisions"));
    if (j.contains("companionCheck")) c.companionCheck = get_bool(j["companionCheck"], "companionCheck");
    if (j.contains("flow")) read_flow(j["flow"], c.flow);
    if (j.contains("fallback")) read_fallback(j["fallback"], c);
    try {
        validate(c);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return c;
}

} // namespace

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

LUConfig parse_lu_config(const std::string& jsonText) { return read_lu(parse_document(jsonText), "config"); }

RootConfig parse_root_config(const std::string& jsonText)
{
    json j = parse_document(jsonText);
    require_keys(j, "config", {"name", "parameters", "variables", "equations", "X", "Y", "y0", "maxRefine"});
    for (const char* k : {"variables", "equations", "Y"})
        if (!j.contains(k)) throw ConfigError(std::string("missing key '") + k + "'");
    RootConfig c;
    if (j.contains("name")) c.name = get_string(j["name"], "name");
    if (j.contains("parameters")) c.parameters = get_strings(j["parameters"], "parameters");
    c.variables = get_strings(j["variables"], "variables");
    c.equations = get_strings(j["equations"], "equations");
    if (j.contains("X")) c.X = get_box(j["X"], "X");
    c.Y = get_box(j["Y"], "Y");
    if (j.contains("y0")) c.y0 = get_numbers(j["y0"], "y0");
    if (j.contains("maxRefine")) c.maxRefine = int(get_integer(j["maxRefine"], "maxRefine"));

    if (c.variables.empty()) throw ConfigError("variables must not be empty");
    if (c.equations.size() != c.variables.size()) throw ConfigError("need as many equations as variables");
    if (c.Y.size() != c.variables.size()) throw ConfigError("Y must have one interval per variable");
    if (c.X.size() != c.parameters.size()) throw ConfigError("X must have one interval per parameter");
    if (c.y0 && c.y0->size() != c.variables.size()) throw ConfigError("y0 must have one entry per variable");
    if (c.maxRefine < 0) throw ConfigError("maxRefine must be nonnegative");
    std::set<std::string> names(c.parameters.begin(), c.parameters.end());
    names.insert(c.variables.begin(), c.variables.end());
    if (names.size() != c.parameters.size() + c.variables.size()) throw ConfigError("variable names must be distinct");
    return c;
}

ExportConfig parse_export_config(const std::string& jsonText)
{
    json j = parse_document(jsonText);
    require_keys(j, "config", {"lu", "samples", "boxes"});
    ExportConfig c;
    if (j.contains("lu")) c.lu = read_lu(j["lu"], "lu");
    std::set<std::string> files;
    auto claim = [&](const std::string& f) {
        if (f.empty() || f.find('/') != std::string::npos || f.find('\\') != std::string::npos)
            throw ConfigError("file names must be plain, got '" + f + "'");
        if (!files.insert(f).second) throw ConfigError("file '" + f + "' listed twice");
    };
    if (j.contains("samples")) {
        if (!j["samples"].is_array()) throw ConfigError("samples must be an array");
        for (const auto& s : j["samples"]) {
            require_keys(s, "samples entry", {"side", "eps", "count", "rho", "time", "file"});
            SampleSpec sp;
            if (s.contains("side")) sp.side = get_side(s["side"], "samples.side");
            if (s.contains("eps")) sp.eps = get_number(s["eps"], "samples.eps");
            if (s.contains("count")) {
                long long n = get_integer(s["count"], "samples.count");
                if (n < 0) throw ConfigError("samples.count must be nonnegative");
                sp.count = std::size_t(n);
            }
            if (s.contains("rho")) sp.rho = get_number(s["rho"], "samples.rho");
            if (s.contains("time")) sp.time = get_number(s["time"], "samples.time");
            if (!(sp.rho >= 0) || !std::isfinite(sp.rho)) throw ConfigError("samples.rho must be nonnegative");
            if (!std::isfinite(sp.time) || !std::isfinite(sp.eps)) throw ConfigError("samples values must be finite");
            sp.file = s.contains("file") ? get_string(s["file"], "samples.file")
                                         : "samples_" + to_string(sp.side) + "_" + std::to_string(c.samples.size()) +
                                               ".csv";
            claim(sp.file);
            c.samples.push_back(sp);
        }
    }
    if (j.contains("boxes")) {
        if (!j["boxes"].is_array()) throw ConfigError("boxes must be an array");
        for (const auto& b : j["boxes"]) {
            require_keys(b, "boxes entry", {"side", "subdivisions", "file"});
            BoxSpec bp;
            if (b.contains("side")) bp.side = get_side(b["side"], "boxes.side");
            if (b.contains("subdivisions")) bp.subdivisions = int(get_integer(b["subdivisions"], "boxes.subdivisions"));
            if (bp.subdivisions < 1) throw ConfigError("boxes.subdivisions must be at least 1");
            bp.file = b.contains("file") ? get_string(b["file"], "boxes.file")
                                         : "boxes_" + to_string(bp.side) + "_" + std::to_string(c.boxes.size()) +
                                               ".csv";
            claim(bp.file);
            c.boxes.push_back(bp);
        }
    }
    return c;
}

} // namespace melcert
