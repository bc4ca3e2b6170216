#include "homascend/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace homascend {

namespace {

using nlohmann::json;

json fact_to_json(const FactValue& v) {
  return std::visit([](const auto& x) -> json { return json(x); }, v);
}

FactValue fact_from_json(const json& j) {
  if (j.is_boolean()) return j.get<bool>();
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) return j.get<std::string>();
  if (j.is_array()) return j.get<std::vector<std::int64_t>>();
  throw std::invalid_argument("report: unsupported fact value");
}

std::string fact_to_text(const FactValue& v) {
  struct V {
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t x) const { return std::to_string(x); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(const std::vector<std::int64_t>& xs) const {
      std::string out = "(";
      for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + std::to_string(xs[i]);
      return out + ")";
    }
  };
  return std::visit(V{}, v);
}

}  // namespace

std::string to_string(CommandStatus s) {
  switch (s) {
    case CommandStatus::Ok: return "ok";
    case CommandStatus::AssertionFailed: return "assertion-failed";
    case CommandStatus::Error: return "error";
    case CommandStatus::ResourceExceeded: return "resource-exceeded";
    case CommandStatus::Skipped: return "skipped";
  }
  return "error";
}

CommandStatus command_status_from_string(const std::string& s) {
  for (auto st : {CommandStatus::Ok, CommandStatus::AssertionFailed, CommandStatus::Error,
                  CommandStatus::ResourceExceeded, CommandStatus::Skipped})
    if (to_string(st) == s) return st;
  throw std::invalid_argument("unknown command status: " + s);
}

int Report::exit_code() const {
  for (const auto& c : commands) {
    switch (c.status) {
      case CommandStatus::AssertionFailed: return 1;
      case CommandStatus::Error: return 2;
      case CommandStatus::ResourceExceeded: return 3;
      default: break;
    }
  }
  return 0;
}

std::string emit(const Report& r, Format f) {
  if (f == Format::Json) {
    json j;
    j["schema"] = Report::schema;
    j["seed"] = r.seed;
    j["complete"] = r.complete;
    j["declarations"] = json::object();
    for (const auto& [k, v] : r.declarations) j["declarations"][k] = v;
    j["commands"] = json::array();
    for (const auto& c : r.commands) {
      json cj;
      cj["line"] = c.line;
      cj["command"] = c.text;
      cj["status"] = to_string(c.status);
      if (!c.message.empty()) cj["message"] = c.message;
      json res = json::object(), prov = json::object();
      for (const auto& [k, v] : c.facts.items()) {
        res[k] = fact_to_json(v);
        bool asserted = std::find(c.asserted.begin(), c.asserted.end(), k) != c.asserted.end();
        prov[k] = asserted ? "asserted-by-theorem" : "computed";
      }
      cj["result"] = res;
      cj["provenance"] = prov;
      j["commands"].push_back(cj);
    }
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  out << "homascend report (schema " << Report::schema << ", seed " << r.seed << ")\n";
  if (!r.complete) out << "incomplete: a command was stopped\n";
  for (std::size_t i = 0; i < r.commands.size(); ++i) {
    const auto& c = r.commands[i];
    char secs[32];
    std::snprintf(secs, sizeof secs, "%.3fs", c.seconds);
    out << "[" << i + 1 << "] line " << c.line << ": " << c.text << "  (" << to_string(c.status) << ", " << secs
        << ")\n";
    for (const auto& [k, v] : c.facts.items()) {
      out << "    " << k << " = " << fact_to_text(v);
      if (std::find(c.asserted.begin(), c.asserted.end(), k) != c.asserted.end()) out << "  [asserted-by-theorem]";
      out << "\n";
    }
    if (!c.message.empty()) out << "    ! " << c.message << "\n";
  }
  return out.str();
}

Report report_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("report: ") + e.what());
  }
  if (!j.contains("schema") || j["schema"].get<int>() != Report::schema)
    throw std::invalid_argument("report: unsupported schema");
  Report r;
  r.seed = j.at("seed").get<std::uint64_t>();
  r.complete = j.at("complete").get<bool>();
  for (const auto& [k, v] : j.at("declarations").items()) r.declarations[k] = v.get<std::size_t>();
  for (const auto& cj : j.at("commands")) {
    CommandResult c;
    c.line = cj.at("line").get<std::size_t>();
    c.text = cj.at("command").get<std::string>();
    c.status = command_status_from_string(cj.at("status").get<std::string>());
    if (cj.contains("message")) c.message = cj["message"].get<std::string>();
    for (const auto& [k, v] : cj.at("result").items()) c.facts.set(k, fact_from_json(v));
    for (const auto& [k, v] : cj.at("provenance").items())
      if (v.get<std::string>() == "asserted-by-theorem") c.asserted.push_back(k);
    r.commands.push_back(std::move(c));
  }
  return r;
}

}  // namespace homascend
