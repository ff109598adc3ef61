// vallab command-line front end.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "vallab/classify.hpp"
#include "vallab/constructions.hpp"
#include "vallab/errors.hpp"
#include "vallab/ogroup.hpp"
#include "vallab/rational.hpp"
#include "vallab/verify.hpp"

#ifndef VALLAB_DEFAULT_CORPUS
#define VALLAB_DEFAULT_CORPUS "data/descriptors"
#endif

using namespace vallab;

namespace {

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw PreconditionError(path + ": " + e.what());
  }
}

// Opens the output early so an unwritable path fails before any computation.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_.open(path);
    if (!file_) throw PreconditionError("cannot write " + path);
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

nlohmann::json flags_json(const FieldDescriptor& d) { return to_json(d)["flags"]; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"valued field towers, defect certificates and field-class checks"};
  app.require_subcommand(1);

  auto* construct = app.add_subcommand("construct", "build a tower construction and its certificate");
  std::string example, out_path, format = "json", core_path;
  unsigned long p = 3;
  std::size_t depth = 2;
  std::optional<std::string> series_cap;
  std::optional<long> padic_cap;
  construct->add_option("--example", example, "as-valgp|lemma33|as-resf|kummer-valgp|two-ext|kummer-resf|compose-desc")
      ->required();
  construct->add_option("--p", p, "residue characteristic");
  construct->add_option("--depth", depth, "tower depth");
  construct->add_option("--series-cap", series_cap, "series precision cap");
  construct->add_option("--padic-cap", padic_cap, "p-adic precision cap");
  construct->add_option("--out", out_path, "output file (default stdout)");
  construct->add_option("--format", format, "json|tsv")->check(CLI::IsMember({"json", "tsv"}));
  construct->add_option("--descriptor", core_path, "core descriptor for compose-desc");

  auto* classify = app.add_subcommand("classify", "evaluate field-class conditions on a descriptor");
  std::string desc_path, cls_out;
  bool audit = false;
  classify->add_option("--descriptor", desc_path, "descriptor JSON file or corpus directory")->required();
  classify->add_flag("--audit", audit, "audit the implications over the given descriptors");
  classify->add_option("--out", cls_out, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "run a property suite");
  std::string suite, corpus = VALLAB_DEFAULT_CORPUS;
  std::uint64_t seed = 0;
  verify->add_option("--suite", suite, "ostrowski|congruence|newton|ogroup|implications|all")->required();
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--corpus", corpus, "descriptor corpus directory");

  auto* hullc = app.add_subcommand("hull", "p-divisible or p'-divisible hull of a group");
  std::string group_path, kind = "p_div", hull_out;
  std::optional<unsigned> level;
  unsigned long hp = 3;
  hullc->add_option("--group", group_path, "group JSON file")->required();
  hullc->add_option("--kind", kind, "p_div|p_prime_div")->check(CLI::IsMember({"p_div", "p_prime_div"}));
  hullc->add_option("--level", level, "truncation level (p_div: omit for the exact hull)");
  hullc->add_option("--p", hp, "prime");
  hullc->add_option("--out", hull_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (construct->parsed()) {
      Output out(out_path);
      if (example == "compose-desc") {
        if (core_path.empty()) throw PreconditionError("compose-desc requires --descriptor CORE.json");
        const auto core = descriptor_from_json(read_json(core_path));
        const auto d = build_counterexample_descriptor(core);
        nlohmann::json j{{"schema", 1}, {"descriptor", to_json(d)}, {"report", to_json(check(d))}};
        out.stream() << j.dump(2) << "\n";
        return 0;
      }
      Precision prec = default_precision(p, depth);
      if (series_cap) prec.series_cap = parse_rational(*series_cap);
      if (padic_cap) prec.padic_cap = *padic_cap;
      const auto cert = build_example(example, p, depth, prec);
      if (format == "tsv") {
        out.stream() << to_tsv(cert);
      } else {
        out.stream() << to_json(cert).dump(2) << "\n";
      }
      return cert.all_ok() ? 0 : 3;
    }
    if (classify->parsed()) {
      Output out(cls_out);
      std::vector<FieldDescriptor> ds;
      if (std::filesystem::is_directory(desc_path)) {
        ds = load_corpus(desc_path);
      } else {
        ds.push_back(descriptor_from_json(read_json(desc_path)));
      }
      nlohmann::json j{{"schema", 1}};
      auto reports = nlohmann::json::array();
      for (const auto& d : ds) {
        auto r = to_json(check(d));
        r["oracle_flags"] = flags_json(d);
        r["core"] = to_json(core_field(d))["name"];
        reports.push_back(r);
      }
      j["reports"] = reports;
      int code = 0;
      if (audit) {
        const auto a = audit_implications(ds);
        j["audit"] = to_json(a);
        if (a.violations > 0) code = 3;
      }
      out.stream() << j.dump(2) << "\n";
      return code;
    }
    if (verify->parsed()) {
      std::vector<std::string> names = suite == "all" ? suite_names() : std::vector<std::string>{suite};
      bool ok = true;
      for (const auto& n : names) {
        const auto r = run_suite(n, seed, corpus);
        std::cout << r.suite << ": " << r.passed << " passed, " << r.failed << " failed\n";
        for (const auto& f : r.failures) std::cout << "  FAIL " << f << "\n";
        ok = ok && r.ok();
      }
      return ok ? 0 : 3;
    }
    if (hullc->parsed()) {
      Output out(hull_out);
      const OGroup g = ogroup_from_json(read_json(group_path));
      const OGroup h = hull(g, kind == "p_div" ? HullKind::p_div : HullKind::p_prime_div, level, hp);
      nlohmann::json j{{"schema", 1}, {"kind", kind}, {"group", to_json(h)}, {"text", h.to_string()}};
      j["level"] = level ? nlohmann::json(*level) : nlohmann::json("exact");
      out.stream() << j.dump(2) << "\n";
      return 0;
    }
  } catch (const PrecisionError& e) {
    std::cerr << "precision: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
