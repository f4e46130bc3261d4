#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "pfq/classifier.hpp"

namespace pfq {

struct CensusOptions {
  bool exhaustive = false;
  uint64_t samples = 0;
  double cross_check = 0.0;  // fraction; classifier-planar rows always checked
  uint64_t seed = 0;
  uint32_t workers = 1;
  uint64_t budget = 2'000'000'000ull;
};

struct CensusSummary {
  uint64_t rows = 0;
  uint64_t cross_checked = 0;
  uint64_t disagreements = 0;
  std::map<std::string, uint64_t> class_counts;
};

// Classify every selected c, cross-check a deterministic subset (plus every
// classifier-planar c) against brute force, stream CSV rows in canonical
// order. error: BudgetExceeded
CensusSummary run_census(const FieldTower& tw, const CensusOptions& opt,
                         std::ostream* csv);

struct SuiteResult {
  std::string name;
  uint64_t checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

struct VerifyOptions {
  std::vector<std::array<uint32_t, 3>> fields = {
      {3, 1, 1}, {3, 3, 1}, {3, 3, 2}, {5, 1, 1}};
  uint64_t seed = 1;
  uint64_t identity_samples = 200;
  uint64_t geometry_samples = 60;
  uint64_t verdict_samples = 40;
  bool inject_e4_fault = false;  // negative control: must make the run fail
};

// Invariant suites across modules: exact identities, geometric structure,
// two-to-one/planarity equivalence, gcd and parity closed forms.
std::vector<SuiteResult> run_verify(const VerifyOptions& opt);

// uniformly random nonzero coefficient vector
CoeffVec random_coeff_vec(const FieldTower& tw, std::uint64_t& state);

}  // namespace pfq
