#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace parmag {

// One output cell: either a number (rendered with %.17g so re-parsing
// reproduces the exact double) or a literal token such as a sentinel.
struct Cell {
  bool is_number = false;
  double number = 0;
  std::string text;

  static Cell num(double v) { return {true, v, {}}; }
  static Cell str(std::string s) { return {false, 0, std::move(s)}; }
};

// One output table: column names plus rows of cells.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

using KeyValueList = std::vector<std::pair<std::string, std::string>>;

// Shortest exact decimal rendering of a double (%.17g).
[[nodiscard]] std::string format_double(double v);

// CSV layout:
//   # key = value        resolved configuration, one line per key
//   ## key = value       informational summaries (not configuration)
//   col1,col2,...        header row
//   cell,cell,...        data rows
// Config lines round-trip: stripping the leading "# " yields a valid config
// file that reproduces the run.
void write_csv(std::ostream& os, const KeyValueList& config,
               const KeyValueList& summaries, const Table& table);

// JSON layout: schema_version, generator, command, config (strings),
// summaries (numbers where parsable), columns, rows.  Non-finite numbers
// are emitted as null.
void write_json(std::ostream& os, const std::string& command,
                const KeyValueList& config, const KeyValueList& summaries,
                const Table& table);

}  // namespace parmag
