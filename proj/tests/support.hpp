#ifndef SRN_TEST_SUPPORT_HPP
#define SRN_TEST_SUPPORT_HPP

#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

#include "srn/parser.hpp"

namespace srn::test {

inline std::string read_network_text(const std::string& name) {
  std::ifstream in(std::string(SRN_NETWORK_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing network file " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline ReactionNetwork load(const std::string& name, const std::map<std::string, Rational>& params = {}) {
  return parse(read_network_text(name), params);
}

inline Rational Q(const std::string& text) { return parse_rational(text); }

}  // namespace srn::test

#endif  // SRN_TEST_SUPPORT_HPP
