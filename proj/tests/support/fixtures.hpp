#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "mkh/diagram.hpp"

namespace mkh::testing {

inline std::string fixture_path(const std::string& name) { return std::string(MKH_FIXTURES) + "/" + name; }

inline Diagram load_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_diagram(ss.str());
}

}  // namespace mkh::testing
