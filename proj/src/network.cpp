#include "bnaco/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "bnaco/errors.hpp"
#include "bnaco/rng.hpp"

namespace bnaco {

namespace {

bool valid_label(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

}  // namespace

DiscreteBayesNet::DiscreteBayesNet(std::string name, std::vector<Variable> variables,
                                   Dag structure, std::vector<std::vector<double>> cpts)
    : name_(std::move(name)),
      vars_(std::move(variables)),
      structure_(std::move(structure)),
      cpts_(std::move(cpts)) {
    if (structure_.node_count() != static_cast<int>(vars_.size()))
        throw ParseError("network: structure size does not match variable count");
    if (cpts_.size() != vars_.size()) throw ParseError("network: one CPT required per variable");
    if (!structure_.is_acyclic()) throw ParseError("network: structure contains a cycle");
    for (int i = 0; i < var_count(); ++i) {
        const int r = vars_[i].cardinality();
        if (r < 2) throw ParseError("network: variable '" + vars_[i].name + "' needs >= 2 values");
        const std::int64_t q = config_count(i);
        if (static_cast<std::int64_t>(cpts_[i].size()) != q * r)
            throw ParseError("network: CPT size mismatch for variable '" + vars_[i].name + "'");
        for (std::int64_t j = 0; j < q; ++j) {
            double row_sum = 0.0;
            for (int k = 0; k < r; ++k) {
                const double p = cpts_[i][j * r + k];
                if (p < 0.0 || p > 1.0)
                    throw ParseError("network: probability out of range in CPT of '" +
                                     vars_[i].name + "', row " + std::to_string(j));
                row_sum += p;
            }
            if (std::abs(row_sum - 1.0) > 1e-9)
                throw ParseError("network: CPT row " + std::to_string(j) + " of '" +
                                 vars_[i].name + "' sums to " + std::to_string(row_sum));
        }
    }
}

std::int64_t DiscreteBayesNet::config_count(int i) const {
    std::int64_t q = 1;
    for (int p : structure_.parents(i)) q *= vars_[p].cardinality();
    return q;
}

int DiscreteBayesNet::index_of(const std::string& var_name) const {
    for (int i = 0; i < var_count(); ++i)
        if (vars_[i].name == var_name) return i;
    return -1;
}

DiscreteBayesNet parse_network(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("network: invalid JSON: ") + e.what());
    }
    try {
        std::string name = doc.value("name", std::string("network"));
        std::vector<Variable> vars;
        std::map<std::string, int> index;
        for (const auto& v : doc.at("variables")) {
            Variable var;
            var.name = v.at("name").get<std::string>();
            for (const auto& lbl : v.at("values")) var.values.push_back(lbl.get<std::string>());
            if (index.count(var.name))
                throw ParseError("network: duplicate variable '" + var.name + "'");
            index[var.name] = static_cast<int>(vars.size());
            vars.push_back(std::move(var));
        }
        Dag structure(static_cast<int>(vars.size()));
        for (const auto& arc : doc.at("arcs")) {
            const std::string parent = arc.at(0).get<std::string>();
            const std::string child = arc.at(1).get<std::string>();
            if (!index.count(parent))
                throw ParseError("network: arc references unknown parent '" + parent + "'");
            if (!index.count(child))
                throw ParseError("network: arc references unknown child '" + child + "'");
            structure.add_arc(index[parent], index[child]);
        }
        if (!structure.is_acyclic()) throw ParseError("network: arcs form a cycle");
        std::vector<std::vector<double>> cpts(vars.size());
        const auto& cpt_doc = doc.at("cpts");
        for (std::size_t i = 0; i < vars.size(); ++i) {
            if (!cpt_doc.contains(vars[i].name))
                throw ParseError("network: missing CPT for variable '" + vars[i].name + "'");
            for (const auto& row : cpt_doc.at(vars[i].name))
                for (const auto& p : row) cpts[i].push_back(p.get<double>());
        }
        return DiscreteBayesNet(std::move(name), std::move(vars), std::move(structure),
                                std::move(cpts));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("network: schema violation: ") + e.what());
    }
}

std::string serialize_network(const DiscreteBayesNet& net) {
    nlohmann::ordered_json doc;
    doc["name"] = net.name();
    doc["variables"] = nlohmann::ordered_json::array();
    for (const auto& v : net.variables())
        doc["variables"].push_back({{"name", v.name}, {"values", v.values}});
    doc["arcs"] = nlohmann::ordered_json::array();
    for (const auto& [t, h] : net.structure().arcs())
        doc["arcs"].push_back({net.variable(t).name, net.variable(h).name});
    doc["cpts"] = nlohmann::ordered_json::object();
    for (int i = 0; i < net.var_count(); ++i) {
        const int r = net.variable(i).cardinality();
        const std::int64_t q = net.config_count(i);
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (std::int64_t j = 0; j < q; ++j) {
            nlohmann::ordered_json row = nlohmann::ordered_json::array();
            for (int k = 0; k < r; ++k) row.push_back(net.cpt(i)[j * r + k]);
            rows.push_back(std::move(row));
        }
        doc["cpts"][net.variable(i).name] = std::move(rows);
    }
    return doc.dump(2) + "\n";
}

DiscreteBayesNet load_network_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("network: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_network(buf.str());
}

Dataset forward_sample(const DiscreteBayesNet& net, int n, std::uint64_t seed) {
    if (n < 0) throw std::invalid_argument("forward_sample: negative sample count");
    const int nv = net.var_count();
    Dataset out(net.variables(), n);
    const std::vector<int> order = net.structure().topological_order();
    Rng rng = Rng(seed).stream(0x5A11u);

    std::vector<int> row_values(nv, 0);
    for (int row = 0; row < n; ++row) {
        for (int v : order) {
            const int r = net.variable(v).cardinality();
            std::int64_t j = 0;
            for (int p : net.structure().parents(v))
                j = j * net.variable(p).cardinality() + row_values[p];
            const double u = rng.next_uniform();
            const double* probs = net.cpt(v).data() + j * r;
            double acc = 0.0;
            int value = -1;
            for (int k = 0; k < r; ++k) {
                acc += probs[k];
                if (u < acc) {
                    value = k;
                    break;
                }
            }
            if (value < 0) {
                // rounding left u past the accumulated mass; take the last
                // value with positive probability
                for (int k = r - 1; k >= 0; --k) {
                    if (probs[k] > 0) {
                        value = k;
                        break;
                    }
                }
            }
            row_values[v] = value;
            out.set_value(row, v, static_cast<std::uint8_t>(value));
        }
    }
    return out;
}

namespace {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && in.eof()) break;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            std::size_t comma = line.find(',', start);
            cells.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        rows.push_back(std::move(cells));
    }
    return rows;
}

Dataset dataset_from_cells(const std::vector<std::vector<std::string>>& rows,
                           std::vector<Variable> vars) {
    const std::size_t nv = vars.size();
    std::vector<std::map<std::string, int>> code(nv);
    for (std::size_t v = 0; v < nv; ++v)
        for (std::size_t k = 0; k < vars[v].values.size(); ++k)
            code[v][vars[v].values[k]] = static_cast<int>(k);

    Dataset out(std::move(vars), static_cast<int>(rows.size()) - 1);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != nv)
            throw DataError("dataset: row " + std::to_string(r) + " has " +
                            std::to_string(rows[r].size()) + " cells, expected " +
                            std::to_string(nv));
        for (std::size_t v = 0; v < nv; ++v) {
            const std::string& cell = rows[r][v];
            auto it = code[v].find(cell);
            if (it == code[v].end())
                throw DataError("dataset: unknown label '" + cell + "' at row " +
                                std::to_string(r) + ", column '" + out.variable(static_cast<int>(v)).name +
                                "'");
            out.set_value(static_cast<int>(r) - 1, static_cast<int>(v),
                          static_cast<std::uint8_t>(it->second));
        }
    }
    return out;
}

}  // namespace

Dataset load_dataset(const std::string& text) {
    const auto rows = parse_csv(text);
    if (rows.empty()) throw DataError("dataset: missing header line");
    std::vector<Variable> vars;
    for (const auto& name : rows[0]) vars.push_back({name, {}});
    // Embedded vocabulary: distinct labels per column, sorted.
    std::vector<std::set<std::string>> seen(vars.size());
    for (std::size_t r = 1; r < rows.size(); ++r) {
        if (rows[r].size() != vars.size())
            throw DataError("dataset: row " + std::to_string(r) + " has " +
                            std::to_string(rows[r].size()) + " cells, expected " +
                            std::to_string(vars.size()));
        for (std::size_t v = 0; v < vars.size(); ++v) {
            if (rows[r][v].empty())
                throw DataError("dataset: empty cell at row " + std::to_string(r) + ", column '" +
                                vars[v].name + "'");
            seen[v].insert(rows[r][v]);
        }
    }
    for (std::size_t v = 0; v < vars.size(); ++v)
        vars[v].values.assign(seen[v].begin(), seen[v].end());
    // a dataset with zero rows keeps single-placeholder vocabularies
    for (auto& var : vars)
        if (var.values.empty()) var.values.push_back("0");
    return dataset_from_cells(rows, std::move(vars));
}

Dataset load_dataset(const std::string& text, const DiscreteBayesNet& vocab) {
    const auto rows = parse_csv(text);
    if (rows.empty()) throw DataError("dataset: missing header line");
    std::vector<Variable> vars;
    for (const auto& name : rows[0]) {
        const int i = vocab.index_of(name);
        if (i < 0) throw DataError("dataset: column '" + name + "' not in network vocabulary");
        vars.push_back(vocab.variable(i));
    }
    return dataset_from_cells(rows, std::move(vars));
}

std::string write_dataset(const Dataset& data) {
    std::ostringstream out;
    for (int v = 0; v < data.var_count(); ++v) {
        if (v) out << ',';
        out << data.variable(v).name;
    }
    out << '\n';
    for (int v = 0; v < data.var_count(); ++v)
        for (const auto& lbl : data.variable(v).values)
            if (!valid_label(lbl))
                throw DataError("dataset: label '" + lbl + "' is not [A-Za-z0-9_]+");
    for (int r = 0; r < data.row_count(); ++r) {
        for (int v = 0; v < data.var_count(); ++v) {
            if (v) out << ',';
            out << data.variable(v).values[data.value(r, v)];
        }
        out << '\n';
    }
    return out.str();
}

Dataset load_dataset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("dataset: cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_dataset(buf.str());
}

}  // namespace bnaco
