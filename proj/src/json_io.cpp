#include "bnaco/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bnaco/errors.hpp"

namespace bnaco {

std::string cpdag_to_json(const Cpdag& p, const std::vector<std::string>& names) {
    if (static_cast<int>(names.size()) != p.node_count())
        throw std::invalid_argument("cpdag_to_json: name count does not match node count");
    nlohmann::ordered_json doc;
    doc["n"] = p.node_count();
    doc["names"] = names;
    doc["directed"] = nlohmann::ordered_json::array();
    for (const auto& [t, h] : p.directed_edges()) doc["directed"].push_back({t, h});
    doc["undirected"] = nlohmann::ordered_json::array();
    for (const auto& [a, b] : p.undirected_edges()) doc["undirected"].push_back({a, b});
    return doc.dump(2) + "\n";
}

NamedCpdag cpdag_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("cpdag: invalid JSON: ") + e.what());
    }
    try {
        NamedCpdag out;
        const int n = doc.at("n").get<int>();
        out.graph = Cpdag(n);
        out.names = doc.at("names").get<std::vector<std::string>>();
        if (static_cast<int>(out.names.size()) != n)
            throw ParseError("cpdag: names length does not match n");
        for (const auto& e : doc.at("directed"))
            out.graph.add_directed(e.at(0).get<int>(), e.at(1).get<int>());
        for (const auto& e : doc.at("undirected"))
            out.graph.add_undirected(e.at(0).get<int>(), e.at(1).get<int>());
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("cpdag: schema violation: ") + e.what());
    }
}

NamedCpdag load_cpdag_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cpdag: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return cpdag_from_json(buf.str());
}

void write_file(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open '" + tmp + "' for writing");
        out << contents;
        if (!out) {
            std::remove(tmp.c_str());
            throw Error("write failed for '" + path + "'");
        }
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error("cannot move output into place at '" + path + "'");
    }
}

}  // namespace bnaco
