#pragma once

#include <string>
#include <vector>

#include "bnaco/graph.hpp"

namespace bnaco {

// CPDAG document: {"n", "names", "directed", "undirected"} with undirected
// pairs stored a < b and both edge lists lexicographically sorted. The
// byte layout is stable so equal graphs serialize identically.
std::string cpdag_to_json(const Cpdag& p, const std::vector<std::string>& names);

struct NamedCpdag {
    Cpdag graph{0};
    std::vector<std::string> names;
};

NamedCpdag cpdag_from_json(const std::string& text);
NamedCpdag load_cpdag_file(const std::string& path);

// Atomic write: contents hit `path` completely or not at all.
void write_file(const std::string& path, const std::string& contents);

}  // namespace bnaco
