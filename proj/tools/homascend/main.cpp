#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "homascend/session.hpp"

namespace {

using namespace homascend;

int report(const Report& r, Format f) {
  std::cout << emit(r, f);
  if (r.exit_code() == 1)
    for (const auto& c : r.commands)
      if (c.status == CommandStatus::AssertionFailed)
        std::cerr << "line " << c.line << ": assertion failed: " << c.message << "\n";
  return r.exit_code();
}

int run_text(const std::string& name, const std::string& text, const RunOptions& opts, Format f) {
  Session s;
  try {
    s = parse_session(text);
  } catch (const ParseError& e) {
    std::cerr << name << ":" << e.line() << ":" << e.column() << ": error: " << e.what() << "\n";
    return 2;
  }
  return report(run(s, opts), f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"homascend: module structures along local homomorphisms"};
  app.require_subcommand(1);

  std::string file, gallery_id, format = "text";
  std::uint64_t seed = 0;
  double timeout = 0;
  std::vector<std::string> gallery_opts;

  auto* run_cmd = app.add_subcommand("run", "run a session file");
  run_cmd->add_option("session", file, "session file ('-' for stdin)")->required();
  auto* seed_opt = run_cmd->add_option("--seed", seed, "override the session seed");
  run_cmd->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  run_cmd->add_option("--timeout", timeout, "wall-clock limit in seconds")->check(CLI::PositiveNumber);

  auto* gal = app.add_subcommand("gallery", "reproduce a worked example (2.8, 2.9, 2.10, 2.11)");
  gal->add_option("id", gallery_id)->required();
  gal->add_option("options", gallery_opts, "key=value overrides (L, p, N, n)");
  gal->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const Format f = format == "json" ? Format::Json : Format::Text;
  RunOptions opts = default_run_options();

  if (*gal) {
    std::string line = "cmd gallery " + gallery_id;
    for (const auto& o : gallery_opts) line += " " + o;
    return run_text("<gallery>", line + "\n", opts, f);
  }

  if (*seed_opt) opts.seed = seed;
  if (timeout > 0) opts.timeout = std::chrono::milliseconds(static_cast<long long>(std::ceil(timeout * 1000)));
  std::ostringstream buf;
  if (file == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(file);
    if (!in) {
      std::cerr << "homascend: cannot read " << file << "\n";
      return 2;
    }
    buf << in.rdbuf();
  }
  return run_text(file, buf.str(), opts, f);
}
