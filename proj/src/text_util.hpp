#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "luinv/rational.hpp"

namespace luinv::detail {

inline std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  std::string s = hash == std::string::npos ? line : line.substr(0, hash);
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline int parse_key_int(const std::string& token, const std::string& key, int line_no) {
  const std::string prefix = key + "=";
  if (token.rfind(prefix, 0) != 0) {
    throw ParseError("line " + std::to_string(line_no) + ": expected '" + prefix + "<int>'");
  }
  try {
    std::size_t used = 0;
    const int v = std::stoi(token.substr(prefix.size()), &used);
    if (used != token.size() - prefix.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": bad integer in '" + token + "'");
  }
}

inline std::vector<int> parse_int_list(const std::string& text, char sep, int line_no) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(line_no) + ": bad index '" + item + "'");
    }
  }
  return out;
}

}  // namespace luinv::detail
