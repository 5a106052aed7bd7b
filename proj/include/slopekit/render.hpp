#pragma once

// Text output. Human mode prints exact values with a 6-significant-digit
// decimal; CSV mode prints exact values only, comma separated, LF endings.

#include <algorithm>
#include <ostream>
#include <string>
#include <vector>

#include "slopekit/bounds.hpp"

namespace slopekit {

struct OutputOptions {
  bool csv = false;
  bool quiet = false;
};

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::string human_value(const Rational& x) {
  const std::string exact = to_string(x);
  const std::string dec = to_decimal(x);
  return exact == dec ? exact : exact + "  (" + dec + ")";
}

/// Rows of (section, quantity, value).
class Sheet {
 public:
  void add(std::string section, std::string label, const Rational& v) {
    rows_.push_back({std::move(section), std::move(label), to_string(v), human_value(v)});
  }
  void add_text(std::string section, std::string label, std::string text) {
    rows_.push_back({std::move(section), std::move(label), text, text});
  }
  void add_bool(std::string section, std::string label, bool v) {
    add_text(std::move(section), std::move(label), v ? "true" : "false");
  }

  void write(std::ostream& os, const OutputOptions& opt) const {
    if (opt.csv) {
      os << "section,quantity,value\n";
      for (const auto& r : rows_)
        os << csv_field(r.section) << ',' << csv_field(r.label) << ',' << csv_field(r.exact) << '\n';
      return;
    }
    std::size_t width = 0;
    for (const auto& r : rows_) width = std::max(width, r.label.size());
    const std::string* current = nullptr;
    for (const auto& r : rows_) {
      if (!current || *current != r.section) {
        os << "[" << r.section << "]\n";
        current = &r.section;
      }
      os << "  " << r.label << std::string(width - r.label.size(), ' ') << "  " << r.human << '\n';
    }
  }

  bool empty() const { return rows_.empty(); }

 private:
  struct Row {
    std::string section, label, exact, human;
  };
  std::vector<Row> rows_;
};

/// Header plus rows, for the table command.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(std::vector<std::string> row) { rows_.push_back(std::move(row)); }
  std::size_t size() const { return rows_.size(); }

  void write(std::ostream& os) const {
    write_row(os, header_);
    for (const auto& r : rows_) write_row(os, r);
  }

 private:
  static void write_row(std::ostream& os, const std::vector<std::string>& r) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
    os << '\n';
  }
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline std::string verdict_text(const BoundReport& r) {
  std::string v = r.satisfied ? "satisfied" : "violated";
  if (r.equality()) v += " (equality)";
  return v;
}

inline void append_report(Sheet& sheet, const BoundReport& r, const std::string& section) {
  for (const auto& h : r.hypotheses)
    sheet.add_text(section, "hypothesis: " + h.label,
                   std::string(h.holds ? "yes" : "no") + (h.asserted ? " (asserted flag)" : " (verified)"));
  sheet.add(section, r.lhs_label, r.lhs);
  sheet.add(section, r.rhs_label, r.rhs);
  sheet.add_text(section, "verdict", verdict_text(r));
  for (const auto& t : r.trace) sheet.add(section, "step: " + t.label, t.value);
  for (const auto& c : r.checks) sheet.add_text(section, "check: " + c.label, c.ok ? "ok" : "FAILED");
  for (std::size_t i = 0; i < r.notes.size(); ++i) sheet.add_text(section, "note", r.notes[i]);
}

}  // namespace slopekit
