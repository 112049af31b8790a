#pragma once

#include <string>
#include <vector>

#include "pk/fixtures.hpp"
#include "pk/moebius.hpp"

namespace pk {

struct Check {
  std::string name;
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;
  double seconds = 0.0;  // in-memory only, never serialized
};

struct Report {
  std::string label;
  std::vector<Check> checks;  // sorted by name
  bool pass = false;
};

enum class SuiteKind { core, weyl, resolvent, gres, all };

SuiteKind suite_from_string(const std::string& s);

Report run_suite(const InstanceFile& file, SuiteKind kind, unsigned seed,
                 double tolerance);

std::string report_text(const Report& r);
json report_json(const Report& r);

}  // namespace pk
