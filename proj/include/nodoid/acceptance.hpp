#ifndef NODOID_ACCEPTANCE_HPP
#define NODOID_ACCEPTANCE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace nodoid::acceptance {

struct CriterionResult {
  int id;
  std::string name;
  bool pass;
  std::string detail;
};

/// Runs the full verification suite (13 criteria), printing one PASS/FAIL
/// line per criterion to `log` as results arrive.
std::vector<CriterionResult> run_all(std::ostream& log);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace nodoid::acceptance

#endif
