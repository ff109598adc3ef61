#include "vallab/certificate.hpp"

#include <algorithm>
#include <sstream>

#include "vallab/errors.hpp"

namespace vallab {

void DefectCertificate::check(std::string name, bool ok, std::string detail) {
  checks.push_back({std::move(name), ok, std::move(detail)});
}

bool DefectCertificate::all_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.ok; });
}

const Check* DefectCertificate::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

unsigned minimal_level(const ResElem& x) {
  ResElem y = x;
  while (y.field().level() > 0) {
    const auto comps = decompose(y);
    if (!std::all_of(comps.begin() + 1, comps.end(), [](const ResElem& c) { return c.is_zero(); })) {
      break;
    }
    y = comps[0];
  }
  return y.field().level();
}

namespace {

bool absorbed(const DepthRecord& here, const DepthRecord& next) {
  if (here.top.kind == StepKind::ramified) return contains(next.group, LexValue(here.top.new_value));
  if (!here.top.new_residue) return false;
  if (!next.field.is_function_field()) return false;
  return minimal_level(*here.top.new_residue) <= next.field.level();
}

}  // namespace

DefectCertificate limit_claim(const std::string& construction, unsigned long p,
                              const std::vector<DepthRecord>& records) {
  if (records.empty()) throw PreconditionError("limit_claim needs at least one depth");
  DefectCertificate c;
  c.construction = construction;
  c.p = p;
  for (const auto& r : records) {
    CertRow row;
    row.n = r.n;
    row.degree = r.top.degree;
    row.e = r.top.e;
    row.f = r.top.f;
    row.m = r.top.m;
    row.kind = r.top.kind_name();
    row.new_value = to_string(r.top.new_value);
    if (r.top.new_residue) row.new_residue = r.top.new_residue->to_string();
    c.rows.push_back(row);
  }
  for (std::size_t i = 0; i + 1 < records.size(); ++i) {
    const bool ok = absorbed(records[i], records[i + 1]);
    if (!ok) {
      throw ConstructionError("top step contribution at depth " + std::to_string(records[i].n) +
                              " is not absorbed at depth " + std::to_string(records[i + 1].n));
    }
    c.absorption.push_back(ok);
  }
  const auto& last = records.back().top;
  std::ostringstream os;
  os << "CLAIM: over the union F of the tower the top extension of degree " << last.degree
     << " is immediate (";
  if (last.kind == StepKind::ramified) {
    os << "its value contribution is absorbed one level up";
  } else {
    os << "its residue contribution is absorbed one level up";
  }
  os << ", verified at depths " << records.front().n << ".." << records.back().n
     << "), hence a defect extension of degree " << last.degree
     << ". Only the finite-depth absorption is machine-checked.";
  if (records.size() == 1) {
    os.str("");
    os << "single depth: no absorption to check, no limit statement";
  }
  c.limit_claim = os.str();
  return c;
}

nlohmann::json to_json(const DefectCertificate& c) {
  nlohmann::json j;
  j["schema"] = 1;
  j["construction"] = c.construction;
  j["p"] = c.p;
  j["params"] = c.params;
  auto rows = nlohmann::json::array();
  for (const auto& r : c.rows) {
    nlohmann::json row{{"n", r.n}, {"degree", r.degree}, {"e", r.e}, {"f", r.f}, {"m", r.m},
                       {"kind", r.kind}, {"new_value", r.new_value}};
    if (!r.new_residue.empty()) row["new_residue"] = r.new_residue;
    rows.push_back(row);
  }
  j["rows"] = rows;
  j["absorption"] = c.absorption;
  j["limit_claim"] = c.limit_claim;
  j["precision"] = {{"series_cap", to_string(c.precision.series_cap)},
                    {"padic_cap", c.precision.padic_cap}};
  auto checks = nlohmann::json::array();
  for (const auto& ch : c.checks) {
    checks.push_back({{"name", ch.name}, {"ok", ch.ok}, {"detail", ch.detail}});
  }
  j["checks"] = checks;
  auto steps = nlohmann::json::array();
  for (const auto& s : c.steps) {
    steps.push_back({{"degree", s.degree}, {"e", s.e}, {"f", s.f}, {"m", s.m},
                     {"kind", s.kind_name()}, {"embedded", s.embedded},
                     {"defect", s.defect()}});
  }
  j["steps"] = steps;
  return j;
}

std::string to_tsv(const DefectCertificate& c) {
  std::ostringstream os;
  os << "n\tdegree\te\tf\tm\tkind\tnew_value\tnew_residue\n";
  for (const auto& r : c.rows) {
    os << r.n << "\t" << r.degree << "\t" << r.e << "\t" << r.f << "\t" << r.m << "\t" << r.kind
       << "\t" << r.new_value << "\t" << (r.new_residue.empty() ? "-" : r.new_residue) << "\n";
  }
  return os.str();
}

}  // namespace vallab
