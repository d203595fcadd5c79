#pragma once

#include <string>
#include <vector>

#include "senlab/senmod/senmod.hpp"

namespace senlab::accept {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Result {
  int id = 0;
  std::string title;
  std::vector<Check> checks;
  double seconds = 0;
  double budget = 0;  ///< runtime budget in seconds
  /// Set when the run itself threw.
  std::string error;

  bool within_budget() const { return seconds < budget; }
  bool pass() const;
};

inline constexpr int kCriteria = 10;

Result run(int id);

/// Criterion ids for a suite name: all, padic, field, dps, senmod, gamma, picard, or a number.
std::vector<int> suite(const std::string& name);

/// One line per criterion, "[PASS] 3 title (0.12 s / 5 s)".
std::string summary_line(const Result& r);

/// char(Theta^p - e^(p-1) Theta)(t) computed as the resultant
/// Res_S(char_Theta(S), t - S^p + e^(p-1) S) through a Sylvester determinant.
senmod::Element resultant_char_q(const senmod::Matrix& theta, const senmod::Element& e, const senmod::Element& t);

}  // namespace senlab::accept
