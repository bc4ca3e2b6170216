#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "homascend/facts.hpp"

namespace homascend {

enum class CommandStatus { Ok, AssertionFailed, Error, ResourceExceeded, Skipped };
std::string to_string(CommandStatus s);
CommandStatus command_status_from_string(const std::string& s);

struct CommandResult {
  std::size_t line = 0;
  std::string text;  // the command as written
  CommandStatus status = CommandStatus::Ok;
  Facts facts;
  /// Keys whose values are predicted by a theorem rather than computed.
  std::vector<std::string> asserted;
  std::string message;  // error or failing witness
  double seconds = 0;   // text output only
};

struct Report {
  static constexpr int schema = 1;
  std::uint64_t seed = 0;
  bool complete = true;
  std::map<std::string, std::size_t> declarations;  // kind -> count
  std::vector<CommandResult> commands;
  /// 0 ok, 1 assertion failed, 2 usage or parse error, 3 resource bound.
  int exit_code() const;
};

enum class Format { Text, Json };
/// JSON keys are sorted; wall time is omitted so equal runs give equal bytes.
std::string emit(const Report& r, Format f);
/// Inverse of emit(r, Format::Json); throws std::invalid_argument.
Report report_from_json(const std::string& json);

}  // namespace homascend
