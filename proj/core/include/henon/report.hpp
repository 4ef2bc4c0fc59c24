#pragma once

#include <cstdint>
#include <string>

#include "henon/acceptance.hpp"
#include "henon/domain.hpp"
#include "henon/morse_verify.hpp"
#include "henon/spectral.hpp"
#include "henon/transform.hpp"

namespace henon {

/// Validated run parameters; embedded verbatim in every emitted artifact.
struct RunConfig {
  std::string command;
  double alpha = 0.0;
  double p = 3.0;
  int nodal = 2;
  std::string domain_spec = "ball";
  double inner_radius = 0.0;
  double outer_radius = 1.0;
  std::size_t grid = 4000;
  int modes = 8;
  double kappa = 0.5;
  bool weighted = false;
  double even_upto = 0.0;
  std::uint64_t seed = 0x48656e6f6eull;
  Tolerances tol;
  std::string profile_path;
  std::string out_path;
  std::string out_dir;
  std::string plots_dir;
  bool pretty = false;

  Domain domain() const;
};

/// Deterministic JSON: insertion-ordered keys, floats at 17 significant
/// digits, "\n" newlines.  Same input, byte-identical output.
class JsonWriter {
 public:
  std::string str() const { return out_; }

  void begin_object();
  void end_object();
  void begin_array();
  void end_array();
  void key(const std::string& name);
  void value(const std::string& v);
  void value(const char* v);
  void value(double v);
  void value(int v);
  void value(std::size_t v);
  void value(std::uint64_t v);
  void value(bool v);

 private:
  void comma();
  std::string out_;
  std::vector<bool> first_stack_;
  bool pending_key_ = false;
};

std::string format_double(double v);  ///< %.17g

std::string to_json(const RunConfig& config);
std::string to_json(const IdentityReport& report);
std::string to_json(const MorseReport& report, const RunConfig& config);
std::string to_json(const VerdictBundle& bundle, const RunConfig& config);
std::string to_json(const SuiteReport& report, const RunConfig& config);

/// Human-readable table for --pretty.
std::string pretty_morse(const MorseReport& report);
std::string pretty_bundle(const VerdictBundle& bundle);

/// Writes content to path; I/O errors are reported with the path.
void write_text_file(const std::string& path, const std::string& content);

/// Spectrum CSV: header "k,index,lambda", 1-based eigenvalue index.
std::string spectrum_csv(const std::vector<ModeSpectrum>& modes, const RunConfig& config);

}  // namespace henon
