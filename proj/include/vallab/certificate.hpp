#pragma once

// Per-depth defect bookkeeping for tower sequences.

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

#include "vallab/ogroup.hpp"
#include "vallab/resfield.hpp"
#include "vallab/tower.hpp"
#include "vallab/vbase.hpp"

namespace vallab {

struct CertRow {
  std::size_t n = 0;
  std::size_t degree = 0;
  unsigned long e = 1, f = 1, m = 0;
  std::string kind;
  std::string new_value;
  std::string new_residue;
};

struct Check {
  std::string name;
  bool ok = false;
  std::string detail;
};

/// Top step adjoined over the depth-n field, with that field's value group and residue field.
struct DepthRecord {
  std::size_t n = 0;
  StepInfo top;
  OGroup group = OGroup::trivial(1);
  ResFieldDesc field = ResFieldDesc::finite(2);
};

struct DefectCertificate {
  std::string construction;
  unsigned long p = 0;
  nlohmann::json params = nlohmann::json::object();
  std::vector<CertRow> rows;
  std::vector<bool> absorption;
  std::string limit_claim;
  Precision precision;
  std::vector<Check> checks;
  // (degree, e, f, m) of every step of the deepest tower built.
  std::vector<StepInfo> steps;

  void check(std::string name, bool ok, std::string detail = "");
  bool all_ok() const;
  const Check* find(const std::string& name) const;
};

// Smallest perfection level holding x (0 for elements of the base function field).
unsigned minimal_level(const ResElem& x);

// Rows plus absorption of the depth-n top contribution into the depth-(n+1) field.
// Throws ConstructionError if absorption fails.
DefectCertificate limit_claim(const std::string& construction, unsigned long p,
                              const std::vector<DepthRecord>& records);

template <class G>
std::vector<StepInfo> step_invariants(const Tower<G>& t) {
  return t.steps();
}

nlohmann::json to_json(const DefectCertificate& c);
std::string to_tsv(const DefectCertificate& c);

}  // namespace vallab
