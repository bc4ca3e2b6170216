#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "homascend/complexes.hpp"
#include "homascend/fmodule.hpp"
#include "homascend/pidmodel.hpp"
#include "homascend/report.hpp"

namespace homascend {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t col, const std::string& msg);
  std::size_t line() const { return line_; }
  std::size_t column() const { return col_; }

 private:
  std::size_t line_, col_;
};

struct SessionConfig {
  std::uint64_t seed = 0;
  std::size_t ext_range = 5;          // L, at most 12
  int precision = 16;                 // PID model, 1..64
  std::uint64_t search_bound = 1u << 20;
  std::size_t dim_cap = 12;           // exhaustive searches, 1..16
};

struct Command {
  std::size_t line = 0;
  std::string op;
  std::vector<std::string> args;
  std::string text;
};

/// Declarations are verified when parsed; every object in a Session satisfies
/// its structural invariants.
struct Session {
  SessionConfig config;
  std::map<std::string, Field> fields;
  std::map<std::string, Algebra> algebras;
  std::map<std::string, AlgebraMap> maps;
  std::map<std::string, FModule> modules;
  std::map<std::string, PIDModule> pid_modules;
  std::map<std::string, BoundedComplex> complexes;
  std::vector<std::string> order;  // identifiers in declaration order
  std::vector<Command> commands;
};

/// Grammar: docs/session-grammar.ebnf. Throws ParseError.
Session parse_session(const std::string& text);

struct RunOptions {
  std::optional<std::uint64_t> seed;  // overrides `config seed`
  std::optional<std::chrono::milliseconds> timeout;
  std::size_t threads = 1;
};
/// Threads default to HOMASCEND_THREADS (or 1).
RunOptions default_run_options();

/// Commands run in order of appearance (in parallel up to opts.threads);
/// after the first failing command the remaining ones are skipped.
Report run(const Session& s, const RunOptions& opts = default_run_options());

}  // namespace homascend
