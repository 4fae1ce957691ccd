#include "ginet/model_io.hpp"

#include <json.hpp>

#include "ginet/error.hpp"

namespace ginet {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw Error(ErrorCode::InvalidModel, msg); }

const json& field(const json& doc, const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) fail(std::string("model document lacks \"") + key + "\"");
    return *it;
}

double number(const json& v, const std::string& where) {
    if (!v.is_number()) fail(where + " must be a number");
    return v.get<double>();
}

Levels levels(const json& doc, const char* key) {
    const json& arr = field(doc, key);
    if (!arr.is_array()) fail(std::string(key) + " must be an array of level names");
    std::vector<std::string> names;
    for (const auto& v : arr) {
        if (!v.is_string()) fail(std::string(key) + " entries must be strings");
        names.push_back(v.get<std::string>());
    }
    return Levels(std::move(names));
}

std::vector<double> per_level(const json& doc, const char* key, const Levels& lv) {
    const json& obj = field(doc, key);
    if (!obj.is_object()) fail(std::string(key) + " must map level names to probabilities");
    std::vector<double> out(lv.size());
    for (std::size_t i = 0; i < lv.size(); ++i) {
        auto it = obj.find(lv.name(i));
        if (it == obj.end()) fail(std::string(key) + " has no entry for level '" + lv.name(i) + "'");
        out[i] = number(*it, std::string(key) + "." + lv.name(i));
    }
    for (const auto& [name, v] : obj.items()) {
        if (!lv.contains(name)) fail(std::string(key) + " names unknown level '" + name + "'");
    }
    return out;
}

// Nested {a: {b: value}}. With `fill`, unlisted cells take that value;
// otherwise the grid must be complete.
Grid nested(const json& obj, const std::string& key, const Levels& la, const Levels& lb,
            std::optional<double> fill = std::nullopt) {
    if (!obj.is_object()) fail(key + " must be a nested mapping");
    for (const auto& [a, row] : obj.items()) {
        if (!la.contains(a)) fail(key + " names unknown A level '" + a + "'");
        if (!row.is_object()) fail(key + "." + a + " must be a mapping");
        for (const auto& [b, v] : row.items()) {
            if (!lb.contains(b)) fail(key + "." + a + " names unknown B level '" + b + "'");
        }
    }
    Grid g(la.size(), lb.size(), fill.value_or(0.0));
    for (std::size_t a = 0; a < la.size(); ++a) {
        auto row = obj.find(la.name(a));
        for (std::size_t b = 0; b < lb.size(); ++b) {
            const std::string where = key + "." + la.name(a) + "." + lb.name(b);
            if (row == obj.end() || row->find(lb.name(b)) == row->end()) {
                if (!fill) fail(where + " is missing");
                continue;
            }
            g(a, b) = number((*row)[lb.name(b)], where);
        }
    }
    return g;
}

json nested_json(const Grid& g, const Levels& la, const Levels& lb) {
    json obj = json::object();
    for (std::size_t a = 0; a < la.size(); ++a) {
        json row = json::object();
        for (std::size_t b = 0; b < lb.size(); ++b) row[lb.name(b)] = g(a, b);
        obj[la.name(a)] = std::move(row);
    }
    return obj;
}

json parse_text(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail(std::string("model document is not valid JSON: ") + e.what());
    }
}

ModelSpec model_from(const json& doc) {
    ModelSpec spec;
    auto& m = spec.model;
    m.levelsA = levels(doc, "levelsA");
    m.levelsB = levels(doc, "levelsB");
    m.survivalA = per_level(doc, "survivalA", m.levelsA);
    m.survivalB = per_level(doc, "survivalB", m.levelsB);
    m.survivalZ = number(field(doc, "survivalZ"), "survivalZ");
    m.jointFactorDist = nested(field(doc, "jointFactorDist"), "jointFactorDist", m.levelsA, m.levelsB);
    m.validate();
    if (auto it = doc.find("perturbation"); it != doc.end() && !it->is_null()) {
        spec.perturbation = InteractionPerturbation{nested(*it, "perturbation", m.levelsA, m.levelsB, 1.0)};
    }
    return spec;
}

ObservableTable table_from(const json& doc) {
    ObservableTable t;
    t.levelsA = levels(doc, "levelsA");
    t.levelsB = levels(doc, "levelsB");
    t.survival = nested(field(doc, "survival"), "survival", t.levelsA, t.levelsB);
    if (auto it = doc.find("jointFactorDist"); it != doc.end() && !it->is_null()) {
        t.jointFactorDist = nested(*it, "jointFactorDist", t.levelsA, t.levelsB);
    }
    t.validate();
    return t;
}

}  // namespace

SpecDocument parse_spec_document(std::string_view text) {
    const json doc = parse_text(text);
    if (!doc.is_object()) fail("model document must be a JSON object");
    if (doc.contains("survival")) return table_from(doc);
    return model_from(doc);
}

ModelSpec parse_model_spec(std::string_view text) {
    const json doc = parse_text(text);
    if (!doc.is_object()) fail("model document must be a JSON object");
    return model_from(doc);
}

std::string to_json(const ModelSpec& spec) {
    const auto& m = spec.model;
    json doc;
    doc["levelsA"] = m.levelsA.names();
    doc["levelsB"] = m.levelsB.names();
    json sa = json::object(), sb = json::object();
    for (std::size_t i = 0; i < m.levelsA.size(); ++i) sa[m.levelsA.name(i)] = m.survivalA[i];
    for (std::size_t i = 0; i < m.levelsB.size(); ++i) sb[m.levelsB.name(i)] = m.survivalB[i];
    doc["survivalA"] = std::move(sa);
    doc["survivalB"] = std::move(sb);
    doc["survivalZ"] = m.survivalZ;
    doc["jointFactorDist"] = nested_json(m.jointFactorDist, m.levelsA, m.levelsB);
    if (spec.perturbation) doc["perturbation"] = nested_json(spec.perturbation->multiplier, m.levelsA, m.levelsB);
    return doc.dump(2);
}

std::string to_json(const ObservableTable& t) {
    json doc;
    doc["levelsA"] = t.levelsA.names();
    doc["levelsB"] = t.levelsB.names();
    doc["survival"] = nested_json(t.survival, t.levelsA, t.levelsB);
    if (t.jointFactorDist) doc["jointFactorDist"] = nested_json(*t.jointFactorDist, t.levelsA, t.levelsB);
    return doc.dump(2);
}

}  // namespace ginet
