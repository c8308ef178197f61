#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace kolchin::cli {

using Json = nlohmann::ordered_json;

// Ring context; unset sizes are inferred from the expressions of a command.
struct Context {
  std::optional<int> n, m, k;
  std::vector<mpq_class> shifts;  // sigma(t_i) = t_i + shifts[i]; missing entries are 0
};

struct Binding {
  std::string kind;  // poly, list, point, matrix
  std::string text;
};

// Contents of a .dds.json file.
struct Session {
  Context context;
  std::map<std::string, Binding> bindings;
  std::vector<std::string> history;

  static Session load(const std::string& path);
  void save(const std::string& path) const;
  Json to_json() const;
  static Session from_json(const Json& j);
  // Parses text as the given kind in this context; throws on mismatch.
  void bind(const std::string& name, const std::string& kind, const std::string& text);
  // Replaces $name by the bound text, parenthesized for polys.
  std::string expand(const std::string& arg) const;
};

struct Outcome {
  Json result;
  int exit_code = 0;  // 0 definite, 2 unknown, 1 error
  std::string text;   // non-JSON output (help), printed verbatim when set
};

// args excludes the program name. Global flags (--json, --session, --n, --m,
// --k, --shift) may appear anywhere.
Outcome run(std::vector<std::string> args);

// Splits a command line on whitespace honouring single and double quotes.
std::vector<std::string> split_command_line(const std::string& line);

// Runs one command per line (blank lines and # comments skipped) and writes a
// transcript. A line holding a JSON array is taken as the argument vector.
void run_batch(std::istream& in, std::ostream& out, bool json_only);

int main(int argc, char** argv, std::ostream& out);

}  // namespace kolchin::cli
