#pragma once

#include <cstddef>
#include <fstream>
#include <string>
#include <vector>

#include "mscs/error.hpp"

namespace mscs::testing {

struct MalformedCase {
  std::size_t offset = 0;
  std::string text;
};

/// Lines of "<offset>\t<expression>"; '#' starts a comment line.
inline std::vector<MalformedCase> load_malformed_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot open " + path);
  std::vector<MalformedCase> cases;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw Error(ErrorKind::FormatError, "bad corpus line: " + line);
    cases.push_back({std::stoul(line.substr(0, tab)), line.substr(tab + 1)});
  }
  return cases;
}

}  // namespace mscs::testing
