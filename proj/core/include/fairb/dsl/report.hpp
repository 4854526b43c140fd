#pragma once

#include <string>
#include <vector>

#include "fairb/dsl/elaborate.hpp"
#include "fairb/obligations.hpp"

namespace fairb::dsl {

inline constexpr const char* kReportVersion = "0.1.0";

struct Tally {
  std::size_t pass = 0;
  std::size_t fail = 0;
  std::size_t hypothesis_failed = 0;

  std::size_t total() const noexcept { return pass + fail + hypothesis_failed; }
  bool all_passed() const noexcept { return fail == 0 && hypothesis_failed == 0; }
};

Tally tally(const std::vector<ObligationReport>& reports);

std::string render_text(const Model& model, const std::string& model_name,
                        const std::vector<ObligationReport>& reports);
/// {version, model, obligations: [{id, subject, verdict, witnesses, refs,
/// narrative, lasso?, goal?}], summary}
std::string render_json(const Model& model, const std::string& model_name,
                        const std::vector<ObligationReport>& reports);

}  // namespace fairb::dsl
