#pragma once

// Built-in loop corpus and corpus files (one entry per line, `#` comments).

#include <istream>
#include <string>
#include <utility>
#include <vector>

#include "masterfield/planar.hpp"

namespace mf::corpus {

std::vector<planar::Loop> default_loops();
// Pairs of embeddings with the same combinatorics and face areas.
std::vector<std::pair<planar::Loop, planar::Loop>> default_area_pairs();
std::vector<std::pair<double, double>> default_divisibility_pairs();
std::vector<double> default_times();

// Each non-comment line is split on commas and whitespace into loops.
std::vector<std::vector<planar::Loop>> parse_lines(std::istream& in);
std::vector<std::vector<planar::Loop>> read_file(const std::string& path);

// "default" or a path; one loop per line.
std::vector<planar::Loop> load_loops(const std::string& spec);
// "default" or a path; two loops per line.
std::vector<std::pair<planar::Loop, planar::Loop>> load_pairs(const std::string& spec);

}  // namespace mf::corpus
