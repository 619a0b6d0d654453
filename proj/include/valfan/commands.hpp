#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace valfan {

/// Outcome of one command invocation. Exit codes: 0 success / verified
/// positive, 1 verified negative, 2 engine exhaustion or sign-oracle stall,
/// 3 malformed or inconsistent input.
struct CommandResult {
    int exit_code = 0;
    std::string output; // a fan document, a JSON report, or an SVG
};

/// Emit a built-in fan document. Names: dart, dart-lift, dart-completion,
/// badnorm (uses n, r), thm45, model (uses m, n).
CommandResult cmd_fixture(const std::string& name, std::size_t n, unsigned long r, std::size_t m);

/// Admissibility / fan-axiom / completeness / finite-type report. With
/// `against_text` nonempty, instead verifies that the document completes the
/// given subfan. Exit 1 on a verified negative.
CommandResult cmd_check(const std::string& text, const std::string& against_text = "");

/// Noetherian reduction of a half-space document: emits the rational lift
/// with the correspondence in the metadata.
CommandResult cmd_reduce(const std::string& text);

/// Completion. Half-space documents with a value group run the full
/// reduce-complete-pullback pipeline; full documents run the rational engine
/// directly and embed the trace in the metadata. `strategies` is a comma
/// list of star-join, contact-fill, sliver-fill (empty = default order).
/// With `replay_text` (a previously emitted completion) the trace is
/// re-committed on the input and checked against the recorded result.
CommandResult cmd_complete(const std::string& text, std::size_t cap, const std::string& strategies,
                           std::uint64_t seed, const std::string& replay_text = "");

/// Per-cone coordinate-algebra presentations, the dual complex, segment
/// models, and the semistability verdict, as JSON.
CommandResult cmd_toric_report(const std::string& text);

/// SVG drawing of the height-one complex at the given enclosure depth.
CommandResult cmd_render(const std::string& text, int depth);

/// Full argv driver (excluding argv[0]); handles files, "-" for stdin,
/// and -o. Returns the process exit code.
int run_cli(const std::vector<std::string>& args);

} // namespace valfan
