#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sepwidth::cli {

enum class Compare { kLe, kLt, kGe, kGt, kEq };
enum class Role { kHard, kReportOnly };

/// One numeric record. pass() uses only the stored fields:
///   le: value <= bound + tol + 4 se      lt: value < bound + tol + 4 se
///   ge: value >= bound - tol - 4 se      gt: value > bound - tol - 4 se
///   eq: |value - bound| <= tol + 4 se
struct Check {
  std::string name;
  double value = 0.0;
  double se = 0.0;
  double tol = 0.0;
  double bound = 0.0;
  Compare compare = Compare::kLe;
  Role role = Role::kHard;
  std::string basis;  // exact, bound, mc, empirical, count

  bool pass() const;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add(std::vector<std::string> row) { rows.push_back(std::move(row)); }
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  const std::string& command() const { return command_; }

  void config(const std::string& key, const std::string& value);
  void config(const std::string& key, double value);
  void config(const std::string& key, std::int64_t value);
  void config(const std::string& key, int value) { config(key, static_cast<std::int64_t>(value)); }
  void config(const std::string& key, std::uint64_t value);

  void value(const std::string& key, const std::string& value);
  void value(const std::string& key, double value);
  void value(const std::string& key, std::int64_t value);
  void value(const std::string& key, int value) { this->value(key, static_cast<std::int64_t>(value)); }
  void value(const std::string& key, std::uint64_t value);
  void value(const std::string& key, bool value) { this->value(key, std::string(value ? "true" : "false")); }

  Check& check(Check c);
  const std::vector<Check>& checks() const { return checks_; }
  const Check* find_check(const std::string& name) const;
  const std::string* find_value(const std::string& key) const;

  Table& table(const std::string& name, std::vector<std::string> header);
  const std::map<std::string, Table>& tables() const { return tables_; }

  /// Hard checks that fail.
  std::size_t hard_failures() const;
  bool ok() const { return hard_failures() == 0; }

  /// Sorted key=value lines.
  std::string text() const;
  /// One CSV per table plus `checks.csv`, named <stem>.<table>.csv in dir.
  void write_csv(const std::string& dir, const std::string& stem) const;
  std::string csv(const Table& t) const;
  Table checks_table() const;

 private:
  std::string command_;
  std::map<std::string, std::string> config_;
  std::map<std::string, std::string> values_;
  std::vector<Check> checks_;
  std::map<std::string, Table> tables_;
};

std::string to_string(Compare c);
std::string to_string(Role r);

}  // namespace sepwidth::cli
