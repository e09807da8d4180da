#include "bootperc/family_io.hpp"

#include "bootperc/error.hpp"

#include <json.hpp>

#include <fstream>
#include <regex>
#include <sstream>

namespace bootperc {

ThresholdFamily parse_family_literal(std::string_view text) {
    static const std::regex pattern(R"(^\s*N\s*\[\s*(\d+(?:\s*,\s*\d+)*)\s*\]\s*r\s*=\s*(\d+)\s*$)");
    const std::string s(text);
    std::smatch m;
    if (!std::regex_match(s, m, pattern)) {
        throw UsageError("malformed family literal '" + s + "', expected e.g. N[1,2,4]r=6");
    }
    std::vector<int> radii;
    std::istringstream is(m[1].str());
    std::string item;
    try {
        while (std::getline(is, item, ',')) radii.push_back(std::stoi(item));
        return ThresholdFamily(NeighborhoodSpec(std::move(radii)), std::stoi(m[2].str()));
    } catch (const std::out_of_range&) {
        throw UsageError("family literal '" + s + "' has out-of-range integers");
    }
}

ExplicitFamily parse_explicit_family(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw UsageError(std::string("explicit family is not valid JSON: ") + e.what());
    }
    try {
        const int dims = doc.at("dims").get<int>();
        auto rules = doc.at("rules").get<std::vector<std::vector<IntVec>>>();
        return ExplicitFamily(dims, std::move(rules));
    } catch (const nlohmann::json::exception& e) {
        throw UsageError(std::string("explicit family document: ") + e.what());
    }
}

ExplicitFamily load_explicit_family(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open explicit family file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_explicit_family(buf.str());
}

std::string explicit_family_to_json(const ExplicitFamily& family) {
    nlohmann::json doc;
    doc["dims"] = family.dims();
    doc["rules"] = family.rules();
    return doc.dump();
}

} // namespace bootperc
