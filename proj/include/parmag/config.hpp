#pragma once

#include <map>
#include <optional>
#include <string>

#include "parmag/model.hpp"
#include "parmag/sweep.hpp"

namespace parmag {

// Flat dotted-key configuration: one `key = value` pair per line, with `#`
// starting a comment and blank lines ignored.  Later assignments to the same
// key win.  Keys are validated against the known-key registry so typos fail
// loudly instead of being silently ignored.
class Config {
 public:
  Config() = default;

  static Config from_file(const std::string& path);
  static Config from_string(const std::string& text);

  // Assigns one key (registry-checked).
  void set(const std::string& key, const std::string& value);

  // Applies one `key=value` override as given on the command line.
  void apply_override(const std::string& assignment);

  [[nodiscard]] bool has(const std::string& key) const;
  [[nodiscard]] std::string get_string(const std::string& key,
                                       const std::string& fallback) const;
  [[nodiscard]] double get_double(const std::string& key, double fallback) const;
  [[nodiscard]] long get_int(const std::string& key, long fallback) const;
  [[nodiscard]] bool get_bool(const std::string& key, bool fallback) const;

  [[nodiscard]] const std::map<std::string, std::string>& entries() const {
    return kv_;
  }

  // Model parameters: symmetric.* keys expand first, then model.* keys
  // override field by field.
  [[nodiscard]] ModelParams<double> resolve_model() const;

  // Symmetric parameters from symmetric.* keys only; rejects configurations
  // that also carry model.* keys, since those cannot be expressed in the
  // symmetric form reliably.
  [[nodiscard]] SymmetricParams<double> resolve_symmetric() const;

  // Axis described by `<prefix>` (name), `<prefix>_min`, `<prefix>_max`,
  // `<prefix>_count`; nullopt when the name key is absent.
  [[nodiscard]] std::optional<Axis<double>> resolve_axis(
      const std::string& prefix) const;

 private:
  std::map<std::string, std::string> kv_;
};

// Uniformly spaced grid including both endpoints (a single point sits at lo).
[[nodiscard]] std::vector<double> linspace(double lo, double hi,
                                           std::size_t count);

}  // namespace parmag
