#include "report.hpp"

#include <cstdio>
#include <fstream>

namespace dirca::cli {

using dirca::to_string;

void Report::add_row(std::vector<Value> row) {
  if (row.size() != columns.size()) throw std::logic_error("record width does not match columns");
  records.push_back(std::move(row));
}

bool Report::ok() const { return failed().empty(); }

std::vector<std::string> Report::failed() const {
  std::vector<std::string> out;
  for (const auto& [name, pass] : asserted) {
    if (!pass) out.push_back(name);
  }
  return out;
}

nlohmann::json plan_json(const ExperimentPlan& p) {
  nlohmann::json j;
  j["subcommand"] = std::string(to_string(p.command));
  j["seed"] = p.seed;
  j["budget"] = p.budget;
  j["format"] = std::string(to_string(p.format));
  j["log_base"] = std::string(to_string(p.log_base));
  if (!p.rule.empty()) j["rule"] = p.rule;
  switch (p.command) {
    case Command::entropy:
      j["M"] = p.M;
      j["seq"] = p.seq;
      if (p.seq2) j["seq2"] = *p.seq2;
      break;
    case Command::mixing:
      j["mode"] = p.mode;
      if (p.mode == "decay") {
        j["B"] = p.B;
        j["C"] = p.C;
        j["beta"] = p.beta;
        j["b"] = p.width;
        j["k_max"] = p.k_max;
      } else {
        j["M"] = p.M;
        j["N"] = p.N;
        j["n_max"] = p.n_max;
        j["m_probe"] = p.m_probe;
      }
      break;
    case Command::ergodic:
      j["dir"] = p.direction;
      j["B"] = p.B;
      j["N"] = p.N;
      j["seeds"] = p.seeds;
      j["tol"] = p.tol;
      j["stride"] = p.stride;
      break;
    case Command::binom:
      j["k"] = p.k;
      j["N"] = p.N;
      j["n_max"] = p.n_max;
      j["seeds"] = p.seeds;
      j["tol"] = p.tol;
      j["variant"] = p.variant;
      break;
    case Command::selftest:
      break;
  }
  return j;
}

namespace {

std::string csv_cell(const Value& v) {
  struct {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t i) const { return std::to_string(i); }
    std::string operator()(std::uint64_t u) const { return std::to_string(u); }
    std::string operator()(double d) const {
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", d);
      return buf;
    }
    std::string operator()(const std::string& s) const {
      if (s.find_first_of(",\"\n") == std::string::npos) return s;
      std::string q = "\"";
      for (const char ch : s) {
        if (ch == '"') q += '"';
        q += ch;
      }
      return q + "\"";
    }
  } visit;
  return std::visit(visit, v);
}

nlohmann::json json_cell(const Value& v) {
  return std::visit(
      [](const auto& x) -> nlohmann::json {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, std::monostate>) {
          return nullptr;
        } else {
          return x;
        }
      },
      v);
}

}  // namespace

std::string render_csv(const Report& report) {
  std::string out;
  bool first = true;
  for (const auto& c : report.columns) {
    if (!c.in_csv) continue;
    if (!first) out += ',';
    out += c.name;
    first = false;
  }
  out += '\n';
  for (const auto& row : report.records) {
    first = true;
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (!report.columns[i].in_csv) continue;
      if (!first) out += ',';
      out += csv_cell(row[i]);
      first = false;
    }
    out += '\n';
  }
  return out;
}

std::string render_json(const Report& report) {
  nlohmann::json records = nlohmann::json::array();
  for (const auto& row : report.records) {
    nlohmann::json rec = nlohmann::json::object();
    for (std::size_t i = 0; i < row.size(); ++i) rec[report.columns[i].name] = json_cell(row[i]);
    records.push_back(std::move(rec));
  }
  nlohmann::json asserted = nlohmann::json::object();
  for (const auto& [name, pass] : report.asserted) asserted[name] = pass;
  nlohmann::json doc;
  doc["plan"] = report.plan;
  doc["records"] = std::move(records);
  doc["flags"] = {{"asserted", asserted}, {"observed", report.observed}, {"summary", report.summary}};
  return doc.dump(2) + "\n";
}

void write_text(const std::string& text, const std::string& path, std::ostream& stdout_stream) {
  if (path == "-") {
    stdout_stream << text;
    stdout_stream.flush();
    if (!stdout_stream) throw IoError("writing to stdout failed");
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open '" + path + "' for writing");
  file << text;
  file.close();
  if (!file) throw IoError("writing '" + path + "' failed");
}

void emit(const Report& report, Format format, const std::string& path, std::ostream& stdout_stream) {
  write_text(format == Format::csv ? render_csv(report) : render_json(report), path, stdout_stream);
}

}  // namespace dirca::cli
