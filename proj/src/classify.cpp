#include "vallab/classify.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "vallab/errors.hpp"

namespace vallab {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::no: return "false";
    case Verdict::yes: return "true";
    case Verdict::unknown: return "unknown";
    case Verdict::not_applicable: return "not_applicable";
  }
  return "unknown";
}

Verdict verdict_from_json(const nlohmann::json& j) {
  if (j.is_boolean()) return verdict_of(j.get<bool>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "true") return Verdict::yes;
    if (s == "false") return Verdict::no;
    if (s == "unknown") return Verdict::unknown;
    if (s == "not_applicable") return Verdict::not_applicable;
  }
  if (j.is_null()) return Verdict::unknown;
  throw PreconditionError("verdict must be true, false or \"unknown\"");
}

Verdict verdict_and(Verdict a, Verdict b) {
  if (a == Verdict::no || b == Verdict::no) return Verdict::no;
  if (a == Verdict::yes && b == Verdict::yes) return Verdict::yes;
  return Verdict::unknown;
}

namespace {

nlohmann::json verdict_json(Verdict v) {
  if (v == Verdict::yes) return true;
  if (v == Verdict::no) return false;
  return to_string(v);
}

// Raise unknown to yes only.
Verdict inherit(Verdict mine, Verdict from) {
  return mine == Verdict::unknown && from == Verdict::yes ? Verdict::yes : mine;
}

OracleFlags flags_from_json(const nlohmann::json& j) {
  OracleFlags f;
  if (j.contains("henselian")) f.henselian = verdict_from_json(j["henselian"]);
  if (j.contains("defectless")) f.defectless = verdict_from_json(j["defectless"]);
  if (j.contains("frobenius_surjective")) {
    f.frobenius_surjective = verdict_from_json(j["frobenius_surjective"]);
  }
  if (j.contains("independent_defect")) {
    f.independent_defect = verdict_from_json(j["independent_defect"]);
  }
  if (j.contains("tame")) f.tame = verdict_from_json(j["tame"]);
  return f;
}

LexValue lift_value(const LexValue& v, std::size_t outer_rank) {
  std::vector<Rational> cs(outer_rank, Rational(0));
  cs.insert(cs.end(), v.coords().begin(), v.coords().end());
  return LexValue(std::move(cs));
}

}  // namespace

void validate(const FieldDescriptor& d) {
  if (d.characteristic != 0 && d.characteristic != d.res_char) {
    throw PreconditionError(d.name + ": positive characteristic requires equal residue characteristic");
  }
  if (d.res_char != 0 && !is_prime(d.res_char)) {
    throw PreconditionError(d.name + ": residue characteristic must be 0 or prime");
  }
  if (d.residue_field && d.residue_field->characteristic() != d.res_char) {
    throw PreconditionError(d.name + ": residue field characteristic mismatch");
  }
  if (d.mixed()) {
    if (!d.vp) throw PreconditionError(d.name + ": mixed characteristic requires vp");
    if (d.vp->rank() != d.value_group.rank()) throw PreconditionError(d.name + ": vp rank mismatch");
    if (!d.vp->is_positive() || !contains(d.value_group, *d.vp)) {
      throw PreconditionError(d.name + ": vp must be a positive element of the value group");
    }
  }
}

FieldDescriptor compose(const FieldDescriptor& outer, const FieldDescriptor& core) {
  if (outer.res_char != 0) throw PreconditionError("outer descriptor must have residue characteristic 0");
  FieldDescriptor d;
  d.name = outer.name + " o " + core.name;
  d.characteristic = outer.characteristic;
  d.res_char = core.res_char;
  d.value_group = lex_compose(outer.value_group, core.value_group);
  if (core.vp) d.vp = lift_value(*core.vp, outer.value_group.rank());
  if (d.characteristic == 0 && d.res_char > 0 && !d.vp) {
    d.vp = lift_value(LexValue(Rational(1)), outer.value_group.rank());
  }
  d.residue_field = core.residue_field;
  d.residue_perfect = core.residue_perfect;
  d.flags.henselian = verdict_and(outer.flags.henselian, core.flags.henselian);
  d.flags.defectless = verdict_and(outer.flags.defectless, core.flags.defectless);
  d.flags.frobenius_surjective = core.flags.frobenius_surjective;
  d.sources["henselian"] = "derived: composition is henselian iff both parts are";
  d.sources["defectless"] = "derived: composition is defectless iff both parts are";
  d.sources["frobenius_surjective"] =
      "derived: the outer maximal ideal lies in pO, so O/pO is the core ring mod p";
  d.outer = std::make_shared<FieldDescriptor>(outer);
  d.core = std::make_shared<FieldDescriptor>(core);
  return d;
}

FieldDescriptor descriptor_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("composition")) {
      const auto& c = j.at("composition");
      FieldDescriptor d = compose(descriptor_from_json(c.at("outer")), descriptor_from_json(c.at("core")));
      if (j.contains("name")) d.name = j["name"].get<std::string>();
      if (j.contains("flags")) {
        const OracleFlags f = flags_from_json(j["flags"]);
        d.flags.independent_defect = f.independent_defect;
        d.flags.tame = f.tame;
      }
      validate(d);
      return d;
    }
    FieldDescriptor d;
    d.name = j.value("name", std::string("unnamed"));
    d.characteristic = j.at("char").get<unsigned long>();
    d.res_char = j.at("res_char").get<unsigned long>();
    d.value_group = ogroup_from_json(j.at("value_group"));
    if (j.contains("vp") && !j["vp"].is_null()) {
      d.vp = lex_value_from_json(j["vp"], d.value_group.rank());
    }
    const auto& rf = j.at("residue_field");
    if (rf.value("abstract", false)) {
      d.residue_perfect = verdict_from_json(rf.value("perfect", nlohmann::json("unknown")));
    } else {
      d.residue_field = resfield_from_json(rf);
    }
    if (j.contains("flags")) d.flags = flags_from_json(j["flags"]);
    if (j.contains("sources")) {
      for (const auto& [k, v] : j["sources"].items()) d.sources[k] = v.get<std::string>();
    }
    validate(d);
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(std::string("malformed descriptor JSON: ") + e.what());
  }
}

nlohmann::json to_json(const FieldDescriptor& d) {
  nlohmann::json j;
  j["name"] = d.name;
  j["char"] = d.characteristic;
  j["res_char"] = d.res_char;
  j["value_group"] = to_json(d.value_group);
  j["vp"] = d.vp ? to_json(*d.vp) : nlohmann::json();
  if (d.residue_field) {
    j["residue_field"] = to_json(*d.residue_field);
  } else {
    j["residue_field"] = {{"abstract", true}, {"perfect", verdict_json(d.residue_perfect)}};
  }
  j["flags"] = {{"henselian", verdict_json(d.flags.henselian)},
                {"defectless", verdict_json(d.flags.defectless)},
                {"frobenius_surjective", verdict_json(d.flags.frobenius_surjective)},
                {"independent_defect", verdict_json(d.flags.independent_defect)},
                {"tame", verdict_json(d.flags.tame)}};
  j["sources"] = d.sources;
  if (d.outer && d.core) j["composition"] = {{"outer", to_json(*d.outer)}, {"core", to_json(*d.core)}};
  return j;
}

FieldDescriptor core_field(const FieldDescriptor& d) {
  if (d.core) {
    FieldDescriptor c = *d.core;
    c.flags.henselian = inherit(c.flags.henselian, d.flags.henselian);
    c.flags.defectless = inherit(c.flags.defectless, d.flags.defectless);
    return core_field(c);
  }
  if (!d.mixed()) return d;
  const ConvexPart part = convex_core(d.value_group, *d.vp, d.res_char);
  if (part.cut_index == 0) return d;
  FieldDescriptor c = d;
  c.name = "core of " + d.name;
  c.value_group = part.group;
  c.outer.reset();
  c.core.reset();
  c.sources["henselian"] = "derived: core of a henselian field is henselian";
  c.sources["defectless"] = "derived: core of a defectless field is defectless";
  return c;
}

ClassReport check(const FieldDescriptor& d) {
  ClassReport r;
  r.name = d.name;
  auto set = [&](const std::string& k, Verdict v, std::string source, std::string detail) {
    r.verdicts[k] = v;
    r.evidence[k] = {std::move(source), std::move(detail)};
  };
  const unsigned long p = d.res_char;
  const bool res0 = p == 0;
  const std::string gs = d.value_group.to_string();

  if (res0) {
    set("TF1", Verdict::yes, "computed", "residue characteristic 0: vacuous");
    set("TF2", Verdict::yes, "computed", "residue characteristic 0: perfect");
  } else {
    set("TF1", verdict_of(is_p_divisible(d.value_group, p)), "computed", "is_p_divisible(" + gs + ")");
    if (d.residue_field) {
      set("TF2", verdict_of(is_perfect(*d.residue_field)), "computed",
          "is_perfect(" + d.residue_field->to_string() + ")");
    } else {
      set("TF2", d.residue_perfect, "oracle", "abstract residue field perfect flag");
    }
  }
  auto src = [&](const std::string& k) {
    const auto it = d.sources.find(k);
    return it == d.sources.end() ? std::string("oracle flag") : it->second;
  };
  set("TF3", d.flags.defectless, "oracle", src("defectless"));

  auto gate = [&](Verdict v) {
    if (d.flags.henselian == Verdict::no) return Verdict::not_applicable;
    if (d.flags.henselian == Verdict::unknown) return v == Verdict::no ? Verdict::no : Verdict::unknown;
    return v;
  };
  set("tame", gate(verdict_and(verdict_and(r.at("TF1"), r.at("TF2")), r.at("TF3"))), "derived",
      "TF1 and TF2 and TF3, henselian required");

  if (res0) {
    set("RTF1", Verdict::yes, "computed", "residue characteristic 0: vacuous");
  } else if (!d.mixed()) {
    set("RTF1", r.at("TF1"), "derived", "equal characteristic: the coarsening v_0 is trivial");
  } else {
    set("RTF1", verdict_of(is_roughly_p_divisible(d.value_group, d.vp, p)), "computed",
        "is_p_divisible(convex_core(" + gs + ", " + d.vp->to_string() + "))");
  }
  set("RTF2", r.at("TF2"), "derived", "same condition as TF2");
  set("RTF3", r.at("TF3"), "derived", "same condition as TF3");
  set("roughly_tame", gate(verdict_and(verdict_and(r.at("RTF1"), r.at("RTF2")), r.at("RTF3"))),
      "derived", "RTF1 and RTF2 and RTF3, henselian required");

  if (res0) {
    set("rdr_1", Verdict::yes, "computed", "residue characteristic 0: vacuous");
    set("rdr_2", Verdict::yes, "computed", "residue characteristic 0: vacuous");
  } else {
    set("rdr_1", d.flags.frobenius_surjective, "oracle", src("frobenius_surjective"));
    if (!d.mixed()) {
      set("rdr_2", Verdict::yes, "computed", "equal characteristic: vp is infinite");
    } else {
      set("rdr_2", verdict_of(has_element_below(d.value_group, *d.vp)), "computed",
          "search for 0 < g < " + d.vp->to_string() + " in " + gs);
    }
  }
  set("semitame", verdict_and(r.at("rdr_1"), r.at("TF1")), "derived", "rdr_1 and TF1");
  set("rdr", verdict_and(r.at("rdr_1"), r.at("rdr_2")), "derived", "rdr_1 and rdr_2");
  return r;
}

nlohmann::json to_json(const ClassReport& r) {
  nlohmann::json j;
  j["schema"] = 1;
  j["descriptor"] = r.name;
  nlohmann::json v, e;
  for (const auto& [k, x] : r.verdicts) v[k] = verdict_json(x);
  for (const auto& [k, x] : r.evidence) e[k] = {{"source", x.source}, {"detail", x.detail}};
  j["verdicts"] = v;
  j["evidence"] = e;
  return j;
}

namespace {

std::string implies(Verdict a, Verdict b) {
  if (a == Verdict::no) return "holds";
  if (a != Verdict::yes) return "skipped";
  if (b == Verdict::yes) return "holds";
  if (b == Verdict::no) return "violated";
  return "skipped";
}

bool decided(Verdict v) { return v == Verdict::yes || v == Verdict::no; }

}  // namespace

AuditReport audit_implications(const std::vector<FieldDescriptor>& corpus) {
  AuditReport a;
  for (const auto& d : corpus) {
    const ClassReport r = check(d);
    auto add = [&](const std::string& imp, std::string status) {
      if (status == "violated") ++a.violations;
      if (status == "skipped") ++a.skipped;
      a.entries.push_back({d.name, imp, std::move(status)});
    };
    add("tame => semitame", implies(r.at("tame"), r.at("semitame")));
    add("semitame and roughly_tame => tame",
        implies(verdict_and(r.at("semitame"), r.at("roughly_tame")), r.at("tame")));
    add("roughly_tame => rdr", implies(r.at("roughly_tame"), r.at("rdr")));
    add("tame => roughly_tame", implies(r.at("tame"), r.at("roughly_tame")));
    if (d.equal_char() && d.res_char > 0) {
      const Verdict t = r.at("tame"), rt = r.at("roughly_tame");
      add("equal characteristic: roughly_tame <=> tame",
          !decided(t) || !decided(rt) ? "skipped" : (t == rt ? "holds" : "violated"));
    }
  }
  return a;
}

nlohmann::json to_json(const AuditReport& a) {
  nlohmann::json j;
  j["schema"] = 1;
  j["violations"] = a.violations;
  j["skipped"] = a.skipped;
  auto es = nlohmann::json::array();
  for (const auto& e : a.entries) {
    es.push_back({{"descriptor", e.descriptor}, {"implication", e.implication}, {"status", e.status}});
  }
  j["entries"] = es;
  return j;
}

std::vector<FieldDescriptor> load_corpus(const std::string& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<FieldDescriptor> out;
  for (const auto& f : files) {
    std::ifstream in(f);
    out.push_back(descriptor_from_json(nlohmann::json::parse(in)));
  }
  return out;
}

}  // namespace vallab
