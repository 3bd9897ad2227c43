#ifndef SMX_TESTS_TOY_HPP
#define SMX_TESTS_TOY_HPP

// TOY-A as a plain oracle DAG plus set-arithmetic reference values.

#include <cmath>
#include <map>
#include <string>

#include "support/oracle.hpp"

namespace toy {

inline const std::vector<std::string>& names() {
  static const std::vector<std::string> n{"root", "A", "B", "C", "D", "E", "F"};
  return n;
}

inline int idx(const std::string& s) {
  const auto& n = names();
  return static_cast<int>(std::find(n.begin(), n.end(), s) - n.begin());
}

inline oracle::Dag dag() {
  oracle::Dag d;
  d.parents = {{}, {0}, {0}, {1}, {1}, {3}, {2}};
  return d;
}

inline double ic(const std::string& c) { return oracle::seco(dag(), idx(c)); }

inline double mica_ic(const std::string& u, const std::string& v) {
  auto d = dag();
  double best = 0.0;
  for (int a : oracle::common_ancestors(d, idx(u), idx(v))) best = std::max(best, oracle::seco(d, a));
  return best;
}

inline double lin(const std::string& u, const std::string& v) { return 2.0 * mica_ic(u, v) / (ic(u) + ic(v)); }

}  // namespace toy

#endif  // SMX_TESTS_TOY_HPP
