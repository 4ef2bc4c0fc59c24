#include "henon/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace henon {

Domain RunConfig::domain() const { return Domain(inner_radius, outer_radius); }

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void JsonWriter::comma() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!first_stack_.empty()) {
    if (first_stack_.back()) {
      first_stack_.back() = false;
    } else {
      out_ += ',';
    }
  }
}

void JsonWriter::begin_object() {
  comma();
  out_ += '{';
  first_stack_.push_back(true);
}

void JsonWriter::end_object() {
  first_stack_.pop_back();
  out_ += '}';
}

void JsonWriter::begin_array() {
  comma();
  out_ += '[';
  first_stack_.push_back(true);
}

void JsonWriter::end_array() {
  first_stack_.pop_back();
  out_ += ']';
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

}  // namespace

void JsonWriter::key(const std::string& name) {
  if (!first_stack_.empty()) {
    if (first_stack_.back()) {
      first_stack_.back() = false;
    } else {
      out_ += ',';
    }
  }
  out_ += '"';
  out_ += escape(name);
  out_ += "\":";
  pending_key_ = true;
}

void JsonWriter::value(const std::string& v) {
  comma();
  out_ += '"';
  out_ += escape(v);
  out_ += '"';
}

void JsonWriter::value(const char* v) { value(std::string(v)); }

void JsonWriter::value(double v) {
  comma();
  if (std::isfinite(v)) {
    out_ += format_double(v);
  } else {
    out_ += "null";
  }
}

void JsonWriter::value(int v) {
  comma();
  out_ += std::to_string(v);
}

void JsonWriter::value(std::size_t v) {
  comma();
  out_ += std::to_string(v);
}

void JsonWriter::value(std::uint64_t v) {
  comma();
  out_ += std::to_string(v);
}

void JsonWriter::value(bool v) {
  comma();
  out_ += v ? "true" : "false";
}

namespace {

void write_config(JsonWriter& w, const RunConfig& config) {
  w.begin_object();
  w.key("command");
  w.value(config.command);
  w.key("alpha");
  w.value(config.alpha);
  w.key("p");
  w.value(config.p);
  w.key("nodal");
  w.value(config.nodal);
  w.key("domain");
  w.value(config.domain_spec);
  w.key("grid");
  w.value(config.grid);
  w.key("modes");
  w.value(config.modes);
  w.key("kappa");
  w.value(config.kappa);
  w.key("weighted");
  w.value(config.weighted);
  w.key("seed");
  w.value(config.seed);
  w.key("tolerances");
  w.begin_object();
  w.key("ode");
  w.value(config.tol.ode);
  w.key("eigen");
  w.value(config.tol.eigen);
  w.key("identity");
  w.value(config.tol.identity);
  w.end_object();
  w.end_object();
}

void write_identity(JsonWriter& w, const IdentityReport& report) {
  w.begin_object();
  w.key("lhs");
  w.value(report.lhs);
  w.key("rhs");
  w.value(report.rhs);
  w.key("rel_error");
  w.value(report.rel_error);
  w.key("tolerance");
  w.value(report.tolerance);
  w.key("pass");
  w.value(report.pass);
  w.end_object();
}

void write_morse(JsonWriter& w, const MorseReport& report) {
  w.begin_object();
  w.key("per_mode");
  w.begin_array();
  for (const auto& mode : report.per_mode) {
    w.begin_object();
    w.key("k");
    w.value(mode.mode);
    w.key("eigenvalues");
    w.begin_array();
    for (double lambda : mode.eigenvalues) w.value(lambda);
    w.end_array();
    w.key("negative_count");
    w.value(mode.negative_count);
    w.key("size");
    w.value(mode.size);
    w.key("degenerate");
    w.value(mode.degenerate);
    w.end_object();
  }
  w.end_array();
  w.key("weighted_negative_counts");
  w.begin_array();
  for (int count : report.weighted_negative_counts) w.value(count);
  w.end_array();
  w.key("radial_count");
  w.value(report.radial_negative_count);
  w.key("total");
  w.value(report.total_index);
  w.key("k_max");
  w.value(report.k_max);
  w.key("bound");
  w.value(report.theoretical_bound);
  w.key("verdict");
  w.value(report.verdict);
  w.key("inertia_equal");
  w.value(report.inertia_equal);
  w.key("mode_monotonic");
  w.value(report.mode_monotonic);
  w.key("degenerate_flags");
  w.begin_array();
  for (int k : report.degenerate_modes) w.value(k);
  w.end_array();
  w.end_object();
}

}  // namespace

std::string to_json(const RunConfig& config) {
  JsonWriter w;
  write_config(w, config);
  return w.str();
}

std::string to_json(const IdentityReport& report) {
  JsonWriter w;
  write_identity(w, report);
  return w.str();
}

std::string to_json(const MorseReport& report, const RunConfig& config) {
  JsonWriter w;
  w.begin_object();
  w.key("config");
  write_config(w, config);
  w.key("report");
  write_morse(w, report);
  w.end_object();
  return w.str();
}

std::string to_json(const VerdictBundle& bundle, const RunConfig& config) {
  JsonWriter w;
  w.begin_object();
  w.key("config");
  write_config(w, config);
  w.key("case");
  w.begin_object();
  w.key("alpha");
  w.value(bundle.alpha);
  w.key("p");
  w.value(bundle.p);
  w.key("nodal");
  w.value(bundle.nodal);
  w.key("inner_radius");
  w.value(bundle.domain.inner_radius());
  w.key("outer_radius");
  w.value(bundle.domain.outer_radius());
  w.end_object();
  w.key("solver");
  w.begin_object();
  w.key("parameter");
  w.value(bundle.solver.parameter);
  w.key("residual_sup");
  w.value(bundle.solver.residual_sup);
  w.key("boundary_value");
  w.value(bundle.solver.boundary_value);
  w.key("nodal_sets");
  w.value(bundle.solver.nodal_sets);
  w.end_object();
  w.key("checks");
  w.begin_array();
  for (const auto& check : bundle.checks) {
    w.begin_object();
    w.key("name");
    w.value(check.name);
    w.key("pass");
    w.value(check.pass);
    w.key("skipped");
    w.value(check.skipped);
    w.key("value");
    w.value(check.value);
    w.key("threshold");
    w.value(check.threshold);
    if (!check.note.empty()) {
      w.key("note");
      w.value(check.note);
    }
    w.end_object();
  }
  w.end_array();
  w.key("morse");
  write_morse(w, bundle.morse);
  w.key("pass");
  w.value(bundle.all_pass);
  w.end_object();
  return w.str();
}

std::string to_json(const SuiteReport& report, const RunConfig& config) {
  JsonWriter w;
  w.begin_object();
  w.key("config");
  write_config(w, config);
  w.key("criteria");
  w.begin_array();
  for (const auto& criterion : report.criteria) {
    w.begin_object();
    w.key("id");
    w.value(criterion.id);
    w.key("name");
    w.value(criterion.name);
    w.key("pass");
    w.value(criterion.pass);
    w.key("worst_margin");
    w.value(criterion.worst_margin);
    w.key("details");
    w.begin_array();
    for (const auto& line : criterion.details) w.value(line);
    w.end_array();
    w.end_object();
  }
  w.end_array();
  w.key("pass");
  w.value(report.all_pass);
  w.end_object();
  return w.str();
}

std::string pretty_morse(const MorseReport& report) {
  std::ostringstream out;
  out << "mode  negatives  lowest eigenvalues\n";
  for (const auto& mode : report.per_mode) {
    out << "  " << mode.mode << "     " << mode.negative_count << "        ";
    for (std::size_t i = 0; i < std::min<std::size_t>(mode.eigenvalues.size(), 4); ++i) {
      out << format_double(mode.eigenvalues[i]) << (i + 1 < 4 ? " " : "");
    }
    out << "\n";
  }
  out << "radial count " << report.radial_negative_count << ", total index "
      << report.total_index << ", bound " << report.theoretical_bound << ", verdict "
      << (report.verdict ? "pass" : "fail") << "\n";
  return out.str();
}

std::string pretty_bundle(const VerdictBundle& bundle) {
  std::ostringstream out;
  out << "alpha=" << bundle.alpha << " p=" << bundle.p << " n=" << bundle.nodal << "\n";
  for (const auto& check : bundle.checks) {
    out << "  [" << (check.skipped ? "skip" : (check.pass ? "pass" : "FAIL")) << "] "
        << check.name << "  value=" << check.value << " threshold=" << check.threshold;
    if (!check.note.empty()) out << "  (" << check.note << ")";
    out << "\n";
  }
  out << "overall: " << (bundle.all_pass ? "pass" : "FAIL") << "\n";
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string spectrum_csv(const std::vector<ModeSpectrum>& modes, const RunConfig& config) {
  std::string out = "# " + to_json(config) + "\n";
  out += "k,index,lambda\n";
  for (const auto& mode : modes) {
    for (std::size_t i = 0; i < mode.eigenvalues.size(); ++i) {
      out += std::to_string(mode.mode) + "," + std::to_string(i + 1) + "," +
             format_double(mode.eigenvalues[i]) + "\n";
    }
  }
  return out;
}

}  // namespace henon
