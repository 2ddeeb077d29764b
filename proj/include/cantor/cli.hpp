#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cantor::cli {

// Parses and dispatches one invocation. Returns 0 on success, 1 on domain
// errors, 2 on usage errors. All output is deterministic: rationals render
// as "num/den", floats at 15 significant digits, fixed key order.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct SubcommandInfo {
  std::string name;
  std::vector<std::string> operations;  // library operations it reaches
};

const std::vector<SubcommandInfo>& dispatch_table();

// Registry of every public library operation; the dispatch table must
// cover it.
const std::vector<std::string>& all_operations();

// Embedded invariant suite behind the `selftest` subcommand.
int selftest(std::ostream& out);

}  // namespace cantor::cli
