#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "runge/congruence.hpp"

namespace runge {

struct ReferencePair {
  std::string name;
  int N = 0;
  std::vector<Mat2> generators;
};

// GL2(Z/3), Borel mod 4, 5, 6, and {+-(1 0; 0 *)} mod 5.
std::vector<ReferencePair> reference_pairs();

struct SuiteResult {
  std::string tag;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Tags: dimension, small-basis, eisenstein, combinatorial, certificate,
// bound-chain, eisenstein-bounds. The first six are the acceptance criteria.
std::vector<std::string> suite_tags();
std::vector<std::string> acceptance_tags();

// Runs the suites whose tag is listed (all when empty). The seed only changes
// sampled inputs.
std::vector<SuiteResult> run_suites(const std::vector<std::string>& tags, uint64_t seed);
SuiteResult run_suite(const std::string& tag, uint64_t seed);

}  // namespace runge
