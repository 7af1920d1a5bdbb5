#include "parmag/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "parmag/version.hpp"

namespace parmag {

std::string format_double(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

namespace {

std::string render(const Cell& cell) {
  return cell.is_number ? format_double(cell.number) : cell.text;
}

}  // namespace

void write_csv(std::ostream& os, const KeyValueList& config,
               const KeyValueList& summaries, const Table& table) {
  for (const auto& [key, value] : config) os << "# " << key << " = " << value << "\n";
  for (const auto& [key, value] : summaries)
    os << "## " << key << " = " << value << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c)
    os << (c ? "," : "") << table.columns[c];
  os << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      os << (c ? "," : "") << render(row[c]);
    os << "\n";
  }
}

void write_json(std::ostream& os, const std::string& command,
                const KeyValueList& config, const KeyValueList& summaries,
                const Table& table) {
  nlohmann::ordered_json doc;
  doc["schema_version"] = output_schema_version;
  doc["generator"] = std::string("parmag ") + version_string;
  doc["command"] = command;
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [key, value] : config) cfg[key] = value;
  doc["config"] = std::move(cfg);
  nlohmann::ordered_json sums = nlohmann::ordered_json::object();
  for (const auto& [key, value] : summaries) sums[key] = value;
  doc["summaries"] = std::move(sums);
  doc["columns"] = table.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json jrow = nlohmann::ordered_json::array();
    for (const auto& cell : row) {
      if (!cell.is_number)
        jrow.push_back(cell.text);
      else if (std::isfinite(cell.number))
        jrow.push_back(cell.number);
      else
        jrow.push_back(nullptr);
    }
    rows.push_back(std::move(jrow));
  }
  doc["rows"] = std::move(rows);
  os << doc.dump(2) << "\n";
}

}  // namespace parmag
