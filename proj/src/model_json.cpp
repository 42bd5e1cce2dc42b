#include "imhit/model_json.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace imhit {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& what) {
    throw Error(ErrorKind::InvalidModel, "model schema: " + what);
}

Relation parse_relation(const std::string& rel) {
    if (rel == "<=") return Relation::LessEqual;
    if (rel == ">=") return Relation::GreaterEqual;
    if (rel == "=" || rel == "==") return Relation::Equal;
    schema_error("unknown relation '" + rel + "'");
}

const char* relation_text(Relation rel) {
    switch (rel) {
    case Relation::LessEqual: return "<=";
    case Relation::GreaterEqual: return ">=";
    case Relation::Equal: return "=";
    }
    return "?";
}

double number(const json& j, const std::string& where) {
    if (!j.is_number()) schema_error(where + " must be a number");
    return j.get<double>();
}

} // namespace

ModelData model_from_json(const json& doc) {
    if (!doc.is_object()) schema_error("top level must be an object");
    for (const char* key : {"states", "target", "rows"}) {
        if (!doc.contains(key)) schema_error(std::string("missing \"") + key + "\"");
    }

    ModelData data;
    std::map<std::string, std::size_t> index;
    if (!doc["states"].is_array()) schema_error("\"states\" must be an array");
    for (const auto& s : doc["states"]) {
        if (!s.is_string()) schema_error("state labels must be strings");
        index.emplace(s.get<std::string>(), data.labels.size());
        data.labels.push_back(s.get<std::string>());
    }
    const auto lookup = [&](const std::string& label, const std::string& where) {
        auto it = index.find(label);
        if (it == index.end()) schema_error(where + " names unknown state '" + label + "'");
        return it->second;
    };

    if (!doc["target"].is_array()) schema_error("\"target\" must be an array");
    for (const auto& t : doc["target"]) {
        if (!t.is_string()) schema_error("target entries must be state labels");
        data.target.push_back(lookup(t.get<std::string>(), "target"));
    }

    const json& rows = doc["rows"];
    if (!rows.is_object()) schema_error("\"rows\" must be an object keyed by state label");
    for (const auto& [label, _] : rows.items()) (void)lookup(label, "rows");

    const std::size_t n = data.labels.size();
    for (const auto& label : data.labels) {
        if (!rows.contains(label)) schema_error("no row for state '" + label + "'");
        const json& row = rows[label];
        const bool has_v = row.is_object() && row.contains("vertices");
        const bool has_c = row.is_object() && row.contains("constraints");
        if (has_v == has_c) schema_error("row '" + label + "' needs exactly one of \"vertices\" or \"constraints\"");

        if (has_v) {
            VertexRow vrow;
            if (!row["vertices"].is_array()) schema_error("row '" + label + "': \"vertices\" must be an array");
            for (const auto& v : row["vertices"]) {
                if (!v.is_array()) schema_error("row '" + label + "': each vertex must be an array");
                Vector p;
                for (const auto& e : v) p.push_back(number(e, "row '" + label + "' vertex entry"));
                vrow.vertices.push_back(std::move(p));
            }
            data.rows.emplace_back(std::move(vrow));
        } else {
            ConstraintRow crow;
            if (!row["constraints"].is_array()) schema_error("row '" + label + "': \"constraints\" must be an array");
            for (const auto& c : row["constraints"]) {
                if (!c.is_object() || !c.contains("a") || !c.contains("rel") || !c.contains("b")) {
                    schema_error("row '" + label + "': constraint needs \"a\", \"rel\", \"b\"");
                }
                if (!c["a"].is_object()) schema_error("row '" + label + "': \"a\" must map labels to numbers");
                if (!c["rel"].is_string()) schema_error("row '" + label + "': \"rel\" must be a string");
                LinearConstraint lc{Vector(n, 0.0), parse_relation(c["rel"].get<std::string>()),
                                    number(c["b"], "row '" + label + "' bound")};
                for (const auto& [y, coef] : c["a"].items()) {
                    lc.coefficients[lookup(y, "row '" + label + "' constraint")] +=
                        number(coef, "row '" + label + "' coefficient");
                }
                crow.constraints.push_back(std::move(lc));
            }
            data.rows.emplace_back(std::move(crow));
        }
    }
    return data;
}

json model_to_json(const ModelData& data) {
    json doc;
    doc["states"] = data.labels;
    json target = json::array();
    for (std::size_t t : data.target) target.push_back(data.labels.at(t));
    doc["target"] = std::move(target);

    json rows = json::object();
    for (std::size_t x = 0; x < data.rows.size(); ++x) {
        json row;
        if (const auto* v = std::get_if<VertexRow>(&data.rows[x])) {
            row["vertices"] = v->vertices;
        } else {
            json cs = json::array();
            for (const auto& c : std::get<ConstraintRow>(data.rows[x]).constraints) {
                json a = json::object();
                for (std::size_t y = 0; y < c.coefficients.size(); ++y) {
                    if (c.coefficients[y] != 0.0) a[data.labels.at(y)] = c.coefficients[y];
                }
                cs.push_back({{"a", std::move(a)}, {"rel", relation_text(c.relation)}, {"b", c.bound}});
            }
            row["constraints"] = std::move(cs);
        }
        rows[data.labels.at(x)] = std::move(row);
    }
    doc["rows"] = std::move(rows);
    return doc;
}

ModelData parse_model(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::InvalidModel, std::string("model is not valid JSON: ") + e.what());
    }
    return model_from_json(doc);
}

ModelData load_model_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw FileError("cannot open model file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model(buf.str());
}

std::string serialize_model(const ModelData& data) { return model_to_json(data).dump(2) + "\n"; }

} // namespace imhit
