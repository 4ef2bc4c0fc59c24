#pragma once

#include <string>
#include <vector>

#include "henon/morse_verify.hpp"

namespace henon {

/// One spectrum series for an emitted per-case CSV: (k, index, lambda) rows.
struct SpectrumSeries {
  std::string case_label;
  std::vector<ModeSpectrum> modes;
};

struct ProfileSeries {
  std::string case_label;
  RadialProfile profile;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::string> details;  ///< one line per sub-check that failed or matters
  double worst_margin = 0.0;
};

struct SuiteReport {
  std::vector<CriterionResult> criteria;
  std::vector<SpectrumSeries> spectra;   ///< per-case data for CSV emission
  std::vector<ProfileSeries> profiles;   ///< (r, u) series for plot emission
  bool all_pass = false;
};

struct SuiteOptions {
  VerifyOptions verify;
  bool collect_series = true;  ///< keep spectra/profiles for emission
};

/// Runs the verification matrix behind `verify suite`: the Bessel oracle
/// benchmark, the Lane-Emden/Henon correspondence sweep, Morse bounds for
/// both theorem families, the quadratic-form comparison on seeded test
/// functions, the transform identities, non-degeneracy and inertia checks.
/// Every threshold is fixed here, not configurable.
SuiteReport run_acceptance_suite(const SuiteOptions& options = {});

}  // namespace henon
