#include "sepwidth/cli/report.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sepwidth/common/errors.hpp"
#include "sepwidth/common/format.hpp"
#include "sepwidth/common/tolerances.hpp"

namespace sepwidth::cli {

bool Check::pass() const {
  const double slack = tol + tol::kMcSigmas * se;
  switch (compare) {
    case Compare::kLe: return value <= bound + slack;
    case Compare::kLt: return value < bound + slack;
    case Compare::kGe: return value >= bound - slack;
    case Compare::kGt: return value > bound - slack;
    case Compare::kEq: return std::abs(value - bound) <= slack;
  }
  return false;
}

std::string to_string(Compare c) {
  switch (c) {
    case Compare::kLe: return "le";
    case Compare::kLt: return "lt";
    case Compare::kGe: return "ge";
    case Compare::kGt: return "gt";
    case Compare::kEq: return "eq";
  }
  return "";
}

std::string to_string(Role r) { return r == Role::kHard ? "hard" : "report-only"; }

void Report::config(const std::string& key, const std::string& value) { config_[key] = value; }
void Report::config(const std::string& key, double value) { config_[key] = format_double(value); }
void Report::config(const std::string& key, std::int64_t value) { config_[key] = std::to_string(value); }
void Report::config(const std::string& key, std::uint64_t value) { config_[key] = std::to_string(value); }

void Report::value(const std::string& key, const std::string& value) { values_[key] = value; }
void Report::value(const std::string& key, double value) { values_[key] = format_double(value); }
void Report::value(const std::string& key, std::int64_t value) { values_[key] = std::to_string(value); }
void Report::value(const std::string& key, std::uint64_t value) { values_[key] = std::to_string(value); }

Check& Report::check(Check c) {
  for (const auto& existing : checks_)
    if (existing.name == c.name) throw Error("report: duplicate check " + c.name);
  checks_.push_back(std::move(c));
  return checks_.back();
}

const Check* Report::find_check(const std::string& name) const {
  for (const auto& c : checks_)
    if (c.name == name) return &c;
  return nullptr;
}

const std::string* Report::find_value(const std::string& key) const {
  const auto it = values_.find(key);
  return it == values_.end() ? nullptr : &it->second;
}

Table& Report::table(const std::string& name, std::vector<std::string> header) {
  auto& t = tables_[name];
  t.header = std::move(header);
  return t;
}

std::size_t Report::hard_failures() const {
  std::size_t n = 0;
  for (const auto& c : checks_)
    if (c.role == Role::kHard && !c.pass()) ++n;
  return n;
}

std::string Report::text() const {
  std::map<std::string, std::string> lines;
  lines["command"] = command_;
  for (const auto& [k, v] : config_) lines["config." + k] = v;
  for (const auto& [k, v] : values_) lines["value." + k] = v;
  for (const auto& c : checks_) {
    const std::string p = "check." + c.name + ".";
    lines[p + "basis"] = c.basis;
    lines[p + "bound"] = format_double(c.bound);
    lines[p + "compare"] = to_string(c.compare);
    lines[p + "role"] = to_string(c.role);
    lines[p + "se"] = format_double(c.se);
    lines[p + "status"] = c.pass() ? "pass" : "fail";
    lines[p + "tol"] = format_double(c.tol);
    lines[p + "value"] = format_double(c.value);
  }
  lines["summary.checks"] = std::to_string(checks_.size());
  lines["summary.hard_failures"] = std::to_string(hard_failures());
  std::ostringstream out;
  for (const auto& [k, v] : lines) out << k << '=' << v << '\n';
  return out.str();
}

Table Report::checks_table() const {
  Table t;
  t.header = {"name", "value", "se", "tol", "bound", "compare", "role", "basis", "status"};
  for (const auto& c : checks_)
    t.add({c.name, format_double(c.value), format_double(c.se), format_double(c.tol), format_double(c.bound),
           to_string(c.compare), to_string(c.role), c.basis, c.pass() ? "pass" : "fail"});
  return t;
}

std::string Report::csv(const Table& t) const {
  std::ostringstream out;
  auto row = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  row(t.header);
  for (const auto& r : t.rows) row(r);
  return out.str();
}

void Report::write_csv(const std::string& dir, const std::string& stem) const {
  auto write = [&](const std::string& name, const Table& t) {
    const std::string path = dir + "/" + stem + "." + name + ".csv";
    std::ofstream f(path);
    if (!f) throw IoError("cannot write " + path);
    f << csv(t);
  };
  write("checks", checks_table());
  for (const auto& [name, t] : tables_) write(name, t);
}

}  // namespace sepwidth::cli
