#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "stralg/ranks.hpp"

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name + ".sqa");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline stralg::Algebra fixture(const std::string& name) {
  return stralg::Algebra(stralg::parse_presentation(read_fixture(name)));
}

inline std::string fmt(const stralg::Algebra& A, const stralg::Word& w) { return stralg::format_word(A, w); }

inline stralg::Word w(const stralg::Algebra& A, const std::string& s) { return stralg::parse_word(A, s); }
