#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace anisoperim {

/// One verification row. AtMost rows pass when value <= tolerance, AtLeast
/// rows when value >= tolerance (their names start with "min_" by convention).
struct CheckRow {
  enum class Relation { AtMost, AtLeast };

  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::AtMost;
  bool pass = false;
};

class Report {
 public:
  void at_most(std::string name, double value, double tolerance);
  void at_least(std::string name, double value, double bound);
  /// Records a failed row carrying an error message in the name column.
  void failure(std::string name, const std::string& message);
  void append(const Report& other, const std::string& prefix = "");

  const std::vector<CheckRow>& rows() const { return rows_; }
  bool all_pass() const;
  std::size_t size() const { return rows_.size(); }

  /// CSV with header check_name,value,tolerance,pass.
  void write_csv(std::ostream& os) const;

 private:
  std::vector<CheckRow> rows_;
};

/// Shortest round-trip decimal form; deterministic across runs.
std::string format_double(double v);

}  // namespace anisoperim
