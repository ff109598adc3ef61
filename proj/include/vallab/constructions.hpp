#pragma once

// Builders for the defect-extension towers. Each returns a certificate with
// per-depth rows and named checks.

#include <cstdint>
#include <string>
#include <vector>

#include "vallab/certificate.hpp"
#include "vallab/classify.hpp"

namespace vallab {

// Budget: series cap p^{depth+1} + 1, p-adic cap p^{depth+2}.
Precision required_precision(unsigned long p, std::size_t depth);
// required_precision, overridden by VALLAB_PRECISION_DEFAULT="series=Q,padic=N".
Precision default_precision(unsigned long p, std::size_t depth);
Precision parse_precision(const std::string& text, Precision base);

DefectCertificate build_as_valgp(unsigned long p, std::size_t depth, const Precision& prec);
// vd: value of d = t^vd, must be negative.
DefectCertificate build_lemma_3_3(unsigned long p, const Precision& prec, long vd = -1);
DefectCertificate build_as_resf(unsigned long p, std::size_t depth, const Precision& prec);
DefectCertificate build_kummer_valgp(unsigned long p, std::size_t depth, const Precision& prec);
// vd: value of d = (zeta_p - 1)^s p^r; 0 selects -1/(p^2 (p-1)), or -1/8 for p = 2.
DefectCertificate build_2ext(unsigned long p, const Precision& prec, const Rational& vd = 0);
DefectCertificate build_kummer_resf(unsigned long p, std::size_t depth, const Precision& prec);

// Z lex core, with henselian/defectless flags composed. Core must be flagged tame.
FieldDescriptor build_counterexample_descriptor(const FieldDescriptor& core);

// Names: as-valgp, lemma33, as-resf, kummer-valgp, two-ext, kummer-resf.
DefectCertificate build_example(const std::string& name, unsigned long p, std::size_t depth,
                                const Precision& prec);
const std::vector<std::string>& example_names();

struct CongruenceReport {
  unsigned long p = 0;
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::vector<std::string> failures;
};

// Random c_1..c_n with v(c_i) >= -vp/p: checks v((sum c_i)^p - sum c_i^p) >= 0.
CongruenceReport congruence_trials(unsigned long p, std::size_t trials, std::uint64_t seed);

}  // namespace vallab
