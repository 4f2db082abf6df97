#include "masterfield/corpus.hpp"

#include <fstream>
#include <sstream>

#include "masterfield/error.hpp"

namespace mf::corpus {

using planar::Loop;

std::vector<Loop> default_loops() {
  static const char* words[] = {
      "ENWS",                // unit square
      "NESW",                // the same square, clockwise
      "EENWWS",              // 2x1 rectangle
      "EENWSW",              // square reached through a tail
      "ENWSENWS",            // square twice
      "ENWSSWNE",            // figure eight, opposite orientations
      "ENWSWSENNESWSWNE",    // commutator of two diagonal squares
      "EENWWSENWS",          // rectangle then its left half
      "ENWSWSENNWSE",        // three squares around the origin
      "EEENWWWSENWSEENWSW",  // a row of three squares, each visited
  };
  std::vector<Loop> out;
  for (const char* w : words) out.push_back(Loop::parse(w));
  return out;
}

std::vector<std::pair<Loop, Loop>> default_area_pairs() {
  static const std::pair<const char*, const char*> words[] = {
      {"ENWS", "EENWSW"},            // translated and returned
      {"EENWWS", "ENNWSS"},          // 2x1 against 1x2
      {"EENWNWSS", "NNWSWSEE"},      // L shape against its mirror image
      {"ENWSSWNE", "NWSEESWN"},      // figure eight, rotated
      {"ENWSENWS", "NWSENWSE"},      // doubled square, rotated
  };
  std::vector<std::pair<Loop, Loop>> out;
  for (auto [a, b] : words) out.emplace_back(Loop::parse(a), Loop::parse(b));
  return out;
}

std::vector<std::pair<double, double>> default_divisibility_pairs() {
  return {{0.0, 0.0}, {0.5, 0.5}, {0.3, 0.7}, {0.25, 1.75}, {1.0, 1.0}};
}

std::vector<double> default_times() { return {0.25, 0.5, 1.0, 2.0}; }

std::vector<std::vector<Loop>> parse_lines(std::istream& in) {
  std::vector<std::vector<Loop>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream ss(line);
    std::vector<Loop> row;
    std::string tok;
    try {
      while (ss >> tok) row.push_back(Loop::parse(tok));
    } catch (const Error& e) {
      throw Error("line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!row.empty()) out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::vector<Loop>> read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file '" + path + "'");
  try {
    return parse_lines(in);
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

std::vector<Loop> load_loops(const std::string& spec) {
  if (spec == "default") return default_loops();
  std::vector<Loop> out;
  for (auto& row : read_file(spec))
    for (auto& l : row) out.push_back(std::move(l));
  return out;
}

std::vector<std::pair<Loop, Loop>> load_pairs(const std::string& spec) {
  if (spec == "default") return default_area_pairs();
  std::vector<std::pair<Loop, Loop>> out;
  for (auto& row : read_file(spec)) {
    if (row.size() != 2) throw Error(spec + ": area corpus lines need exactly two loops");
    out.emplace_back(row[0], row[1]);
  }
  return out;
}

}  // namespace mf::corpus
