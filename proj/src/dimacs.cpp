#include <charconv>
#include <cstdlib>
#include <sstream>
#include <string>

#include "symcert/cnf.hpp"
#include "symcert/error.hpp"

namespace symcert {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parse_int(std::string_view text, long long& out) {
  const char* first = text.data();
  const char* last = first + text.size();
  if (first != last && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc{} && ptr == last;
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    f(++lineno, text.substr(start, end - start));
    start = end + 1;
  }
}

[[noreturn]] void io_error(std::size_t line, const std::string& message) {
  throw SpecError(Stage::Io, SourceLoc{static_cast<std::uint32_t>(line), 1}, "DIMACS: " + message);
}

}  // namespace

std::string write_dimacs(const Cnf& cnf, bool include_name_comments) {
  std::string out;
  if (include_name_comments) {
    for (const auto& named : cnf.name_map) {
      out += "c name ";
      out += named.name;
      out += named.is_boolean ? " bool" : " nat";
      for (const int v : named.vars) out += " " + std::to_string(v);
      out += "\n";
    }
  }
  out += "p cnf " + std::to_string(cnf.num_vars) + " " + std::to_string(cnf.clauses.size()) + "\n";
  for (const auto& clause : cnf.clauses) {
    for (const int l : clause) {
      out += std::to_string(l);
      out += ' ';
    }
    out += "0\n";
  }
  return out;
}

Cnf parse_dimacs(std::string_view text) {
  Cnf cnf;
  bool have_header = false;
  long long declared_clauses = 0;
  std::vector<int> current;
  for_each_line(text, [&](std::size_t lineno, std::string_view line) {
    const auto fields = split_ws(line);
    if (fields.empty()) return;
    if (fields[0] == "c") {
      if (fields.size() >= 3 && fields[1] == "name") {
        NamedVars named;
        named.name = std::string(fields[2]);
        std::size_t first_var = 3;
        if (fields.size() >= 4 && (fields[3] == "bool" || fields[3] == "nat")) {
          named.is_boolean = fields[3] == "bool";
          first_var = 4;
        }
        for (std::size_t i = first_var; i < fields.size(); ++i) {
          long long v = 0;
          if (!parse_int(fields[i], v) || v <= 0) io_error(lineno, "bad variable in name comment");
          named.vars.push_back(static_cast<int>(v));
        }
        cnf.name_map.push_back(std::move(named));
      }
      return;
    }
    if (fields[0] == "p") {
      long long vars = 0;
      if (have_header) io_error(lineno, "duplicate header");
      if (fields.size() != 4 || fields[1] != "cnf" || !parse_int(fields[2], vars) ||
          !parse_int(fields[3], declared_clauses) || vars < 0 || declared_clauses < 0) {
        io_error(lineno, "malformed header, expected 'p cnf <vars> <clauses>'");
      }
      cnf.num_vars = static_cast<int>(vars);
      have_header = true;
      return;
    }
    if (fields[0] == "%") return;  // trailer used by some benchmark sets
    if (!have_header) io_error(lineno, "clause before 'p cnf' header");
    for (const auto field : fields) {
      long long l = 0;
      if (!parse_int(field, l)) io_error(lineno, "bad literal '" + std::string(field) + "'");
      if (l == 0) {
        cnf.clauses.push_back(std::move(current));
        current.clear();
        continue;
      }
      if (std::llabs(l) > cnf.num_vars) io_error(lineno, "literal exceeds declared variable count");
      current.push_back(static_cast<int>(l));
    }
  });
  if (!have_header) io_error(1, "missing 'p cnf' header");
  if (!current.empty()) cnf.clauses.push_back(std::move(current));
  if (static_cast<long long>(cnf.clauses.size()) != declared_clauses) {
    io_error(1, "header declares " + std::to_string(declared_clauses) + " clauses but " +
                    std::to_string(cnf.clauses.size()) + " were read");
  }
  return cnf;
}

std::string_view status_name(SatStatus status) {
  switch (status) {
    case SatStatus::Sat: return "SATISFIABLE";
    case SatStatus::Unsat: return "UNSATISFIABLE";
    case SatStatus::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

ParsedModel parse_dimacs_model(std::string_view output) {
  ParsedModel result;
  bool have_status = false;
  bool have_values = false;
  bool terminated = false;
  auto fail = [](std::size_t line, const std::string& msg) -> void {
    throw SpecError(Stage::Solve, SourceLoc{static_cast<std::uint32_t>(line), 1},
                    "solver output: " + msg);
  };
  for_each_line(output, [&](std::size_t lineno, std::string_view line) {
    const auto fields = split_ws(line);
    if (fields.empty() || fields[0] == "c") return;
    if (fields[0] == "s") {
      if (have_status) fail(lineno, "more than one status line");
      const std::string rest = fields.size() >= 2 ? std::string(fields[1]) : std::string();
      if (rest == "SATISFIABLE") {
        result.status = SatStatus::Sat;
      } else if (rest == "UNSATISFIABLE") {
        result.status = SatStatus::Unsat;
      } else if (rest == "UNKNOWN" || rest == "INDETERMINATE") {
        result.status = SatStatus::Unknown;
      } else {
        fail(lineno, "unrecognised status line '" + std::string(line) + "'");
      }
      have_status = true;
      return;
    }
    if (fields[0] == "v") {
      have_values = true;
      for (std::size_t i = 1; i < fields.size(); ++i) {
        long long l = 0;
        if (!parse_int(fields[i], l)) fail(lineno, "bad literal '" + std::string(fields[i]) + "'");
        if (l == 0) {
          terminated = true;
          continue;
        }
        if (terminated) fail(lineno, "literal after terminating 0");
        const auto var = static_cast<std::uint32_t>(std::llabs(l));
        const auto prev = result.assignment.get(var);
        if (prev && *prev != (l > 0)) fail(lineno, "contradictory literals for variable " + std::to_string(var));
        result.assignment.set(var, l > 0);
      }
      return;
    }
    fail(lineno, "unexpected line '" + std::string(line) + "'");
  });
  if (!have_status) fail(1, "missing 's' status line");
  if (have_values && result.status != SatStatus::Sat) fail(1, "value lines without SATISFIABLE status");
  return result;
}

std::string write_dimacs_model(SatStatus status, const Assignment& model, int num_vars) {
  std::string out = "s " + std::string(status_name(status)) + "\n";
  if (status != SatStatus::Sat) return out;
  std::string line = "v";
  for (int v = 1; v <= num_vars; ++v) {
    const bool value = model.get(static_cast<std::uint32_t>(v)).value_or(false);
    const std::string lit = " " + std::to_string(value ? v : -v);
    if (line.size() + lit.size() > 78) {
      out += line + "\n";
      line = "v";
    }
    line += lit;
  }
  out += line + " 0\n";
  return out;
}

}  // namespace symcert
