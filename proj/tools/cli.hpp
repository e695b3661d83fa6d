#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace rgcli {

constexpr const char* kSchema = "riccati-galois/1";

enum ExitCode { Ok = 0, Failure = 1, Syntax = 2, UnsupportedField = 3, Verification = 4 };

/// Runs one invocation; args excludes the program name. Reports go to out, diagnostics to err.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

/// Human-readable rendering of a report; depends on the JSON only.
std::string render_text(const nlohmann::ordered_json& report);

}  // namespace rgcli
