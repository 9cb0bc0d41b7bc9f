#include "gmt/report.hpp"

#include <cmath>

#include "gmt/errors.hpp"
#include "json.hpp"

namespace gmt {

using nlohmann::json;

std::string version() { return GMT_VERSION; }

std::string to_json(const Report& r, int indent) {
    for (const auto& [k, v] : r.metrics)
        if (!std::isfinite(v)) throw ContractViolation("report metric " + k + " is not finite");
    json j;
    j["command"] = r.command;
    j["inputs"] = r.inputs;
    j["metrics"] = r.metrics;
    j["artifacts"] = r.artifacts;
    j["version"] = r.version;
    return j.dump(indent) + "\n";
}

Report report_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("report: ") + e.what(), e.byte);
    }
    try {
        Report r;
        r.command = j.at("command").get<std::string>();
        r.inputs = j.at("inputs").get<std::map<std::string, std::string>>();
        r.metrics = j.at("metrics").get<std::map<std::string, double>>();
        r.artifacts = j.at("artifacts").get<std::vector<std::string>>();
        r.version = j.at("version").get<std::string>();
        return r;
    } catch (const json::exception& e) {
        throw ParseError(std::string("report: ") + e.what(), 0);
    }
}

std::string to_json(const EdgeMeasure& m) {
    json faces = json::array();
    for (const Face& f : m.faces()) faces.push_back({f.a, f.b, f.weight});
    json j;
    j["value"] = m.total();
    j["faces"] = std::move(faces);
    return j.dump() + "\n";
}

}  // namespace gmt
