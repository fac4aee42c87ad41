#include "anisoperim/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>

#include "anisoperim/error.hpp"

namespace anisoperim {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::SingularPoint: return "singular-point";
    case ErrorKind::InvalidCurve: return "invalid-curve";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Stencil: return "stencil";
    case ErrorKind::SingularGradient: return "singular-gradient";
    case ErrorKind::InternalConsistency: return "internal-consistency";
    case ErrorKind::EmptyLevel: return "empty-level";
    case ErrorKind::Extraction: return "extraction";
    case ErrorKind::Profile: return "profile";
    case ErrorKind::InvalidData: return "invalid-data";
    case ErrorKind::ManufacturedSolution: return "manufactured-solution";
    case ErrorKind::Parse: return "parse";
    case ErrorKind::Io: return "io";
  }
  return "unknown";
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

void Report::at_most(std::string name, double value, double tolerance) {
  rows_.push_back({std::move(name), value, tolerance, CheckRow::Relation::AtMost,
                   std::isfinite(value) && value <= tolerance});
}

void Report::at_least(std::string name, double value, double bound) {
  rows_.push_back({std::move(name), value, bound, CheckRow::Relation::AtLeast,
                   std::isfinite(value) && value >= bound});
}

void Report::failure(std::string name, const std::string& message) {
  std::string cleaned = message;
  std::replace(cleaned.begin(), cleaned.end(), ',', ';');
  std::replace(cleaned.begin(), cleaned.end(), '\n', ' ');
  rows_.push_back({std::move(name) + " [" + cleaned + "]", std::nan(""), 0.0,
                   CheckRow::Relation::AtMost, false});
}

void Report::append(const Report& other, const std::string& prefix) {
  for (CheckRow row : other.rows_) {
    row.name = prefix + row.name;
    rows_.push_back(std::move(row));
  }
}

bool Report::all_pass() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const CheckRow& r) { return r.pass; });
}

void Report::write_csv(std::ostream& os) const {
  os << "check_name,value,tolerance,pass\n";
  for (const auto& r : rows_) {
    os << r.name << ',' << format_double(r.value) << ',' << format_double(r.tolerance) << ','
       << (r.pass ? "true" : "false") << '\n';
  }
}

}  // namespace anisoperim
