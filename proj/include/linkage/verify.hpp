#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "linkage/engine.hpp"

namespace linkage {

struct VerifyOptions {
  long long ell = 2;
  int radius = 4;
  int count = 10;      // randomized suites
  unsigned seed = 20240901;
  int jobs = 1;        // parallel instance evaluation; report order is fixed
};

std::vector<std::string> verify_suite_names();

// Runs one property suite and returns a machine-readable report with one
// pass/fail line per instance. Deterministic for a fixed request.
nlohmann::ordered_json run_verify_suite(const std::string& suite, const Engine& e,
                                        const VerifyOptions& opt);

// All facets contained in the closure of the fundamental alcove, as eq/open
// data; deterministic order.
std::vector<Facet> fundamental_facets(const Weyl& w);

}  // namespace linkage
