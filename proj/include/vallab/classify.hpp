#pragma once

// Field-class conditions on symbolic field descriptors.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "vallab/ogroup.hpp"
#include "vallab/resfield.hpp"

namespace vallab {

enum class Verdict { no, yes, unknown, not_applicable };

std::string to_string(Verdict v);
Verdict verdict_from_json(const nlohmann::json& j);
Verdict verdict_and(Verdict a, Verdict b);
inline Verdict verdict_of(bool b) { return b ? Verdict::yes : Verdict::no; }

struct OracleFlags {
  Verdict henselian = Verdict::unknown;
  Verdict defectless = Verdict::unknown;
  Verdict frobenius_surjective = Verdict::unknown;
  Verdict independent_defect = Verdict::unknown;
  Verdict tame = Verdict::unknown;
};

struct FieldDescriptor {
  std::string name;
  unsigned long characteristic = 0;
  unsigned long res_char = 0;
  OGroup value_group = OGroup::trivial(1);
  std::optional<LexValue> vp;
  std::optional<ResFieldDesc> residue_field;  // nullopt: abstract
  Verdict residue_perfect = Verdict::unknown;  // used when abstract
  OracleFlags flags;
  std::map<std::string, std::string> sources;  // flag -> justification
  std::shared_ptr<const FieldDescriptor> outer, core;

  bool mixed() const { return characteristic == 0 && res_char > 0; }
  bool equal_char() const { return characteristic == res_char; }
};

void validate(const FieldDescriptor& d);
FieldDescriptor descriptor_from_json(const nlohmann::json& j);
nlohmann::json to_json(const FieldDescriptor& d);

struct Evidence {
  std::string source;  // computed | oracle | derived
  std::string detail;
};

struct ClassReport {
  std::string name;
  std::map<std::string, Verdict> verdicts;
  std::map<std::string, Evidence> evidence;

  Verdict at(const std::string& k) const { return verdicts.at(k); }
};

FieldDescriptor core_field(const FieldDescriptor& d);
ClassReport check(const FieldDescriptor& d);
nlohmann::json to_json(const ClassReport& r);

FieldDescriptor compose(const FieldDescriptor& outer, const FieldDescriptor& core);

struct AuditEntry {
  std::string descriptor;
  std::string implication;
  std::string status;  // holds | violated | skipped
};

struct AuditReport {
  std::vector<AuditEntry> entries;
  std::size_t violations = 0;
  std::size_t skipped = 0;
};

AuditReport audit_implications(const std::vector<FieldDescriptor>& corpus);
nlohmann::json to_json(const AuditReport& a);

std::vector<FieldDescriptor> load_corpus(const std::string& dir);

}  // namespace vallab
