#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace cohcheck {

enum class Command { Check, Elaborate, Meta, Interp, DumpCorpus };

struct CliConfig {
    Command command = Command::Check;
    // .coh files or directories; empty means the embedded corpus. For
    // dump-corpus, the single output directory.
    std::vector<std::string> paths;
    bool json = false;
    bool fail_fast = false;
    std::optional<std::string> model;  // interp only
    std::optional<std::string> decl;   // restrict output to one declaration
    bool color = false;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int error = 1;  // type or lemma failure
inline constexpr int parse = 2;
inline constexpr int usage = 3;
}  // namespace exit_code

/// Runs one command. Reports go to `out`, human-readable diagnostics to `err`.
int run(const CliConfig& config, std::ostream& out, std::ostream& err);

/// Parses a command line (argv[0] is the program name) and runs it.
/// COHCHECK_COLOR=1 in the environment turns on colored output.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Orders .coh sources so that files defining names come before files using
/// them; ties and cycles fall back to the given order.
std::vector<std::size_t> dependency_order(const std::vector<std::string>& texts);

}  // namespace cohcheck
