#pragma once

// Property suites: ostrowski, congruence, newton, ogroup, implications.

#include <cstdint>
#include <string>
#include <vector>

#include "vallab/ogroup.hpp"

namespace vallab {

struct SuiteResult {
  std::string suite;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::vector<std::string> failures;

  bool ok() const { return failed == 0 && passed > 0; }
  void record(bool ok, const std::string& what);
};

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, std::uint64_t seed, const std::string& corpus_dir);

SuiteResult ostrowski_suite();
SuiteResult congruence_suite(std::uint64_t seed, std::size_t trials = 200);
SuiteResult newton_suite(std::uint64_t seed, std::size_t cases = 100);
SuiteResult ogroup_suite(std::uint64_t seed, std::size_t cases = 100);
SuiteResult implications_suite(const std::string& corpus_dir);

// Brute-force oracles over open-generator groups (no p-closed part); rank <= 2 membership is exact.
bool brute_contains(const std::vector<LexValue>& gens, const LexValue& x, long box = 15);
// Cosets of span(h) in span(g) found by enumerating small combinations; h must be sized like g.
std::size_t brute_index(const std::vector<LexValue>& g, const std::vector<LexValue>& h,
                        long gbox = 3, long hbox = 24);

}  // namespace vallab
