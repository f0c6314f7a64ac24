#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "plan.hpp"

namespace dirca::cli {

// monostate renders as an empty CSV cell / JSON null.
using Value = std::variant<std::monostate, bool, std::int64_t, std::uint64_t, double, std::string>;

struct Column {
  std::string name;
  bool in_csv = true;
};

struct Report {
  nlohmann::json plan;
  std::vector<Column> columns;
  std::vector<std::vector<Value>> records;
  std::map<std::string, bool> asserted;
  nlohmann::json observed = nlohmann::json::object();
  nlohmann::json summary = nlohmann::json::object();

  void add_row(std::vector<Value> row);
  bool ok() const;
  std::vector<std::string> failed() const;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

nlohmann::json plan_json(const ExperimentPlan& plan);

std::string render_csv(const Report& report);
std::string render_json(const Report& report);

// "-" goes to `stdout_stream`. Throws IoError.
void emit(const Report& report, Format format, const std::string& path, std::ostream& stdout_stream);
void write_text(const std::string& text, const std::string& path, std::ostream& stdout_stream);

}  // namespace dirca::cli
