#include "symcert/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include <toml++/toml.hpp>

#include "symcert/error.hpp"

namespace symcert {

namespace fs = std::filesystem;

namespace {

[[noreturn]] void manifest_error(const fs::path& path, const std::string& message) {
  throw SpecError(Stage::Io, path.string() + ": " + message);
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SpecError(Stage::Io, "cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> string_list(const toml::node_view<const toml::node>& node, const fs::path& path,
                                     std::string_view key) {
  std::vector<std::string> out;
  if (!node) return out;
  const toml::array* arr = node.as_array();
  if (!arr) manifest_error(path, std::string(key) + " must be an array of strings");
  for (const auto& item : *arr) {
    const auto s = item.value<std::string>();
    if (!s) manifest_error(path, std::string(key) + " must be an array of strings");
    out.push_back(*s);
  }
  return out;
}

std::string required_string(const toml::node_view<const toml::node>& node, const fs::path& path,
                            std::string_view key) {
  const auto s = node.value<std::string>();
  if (!s) manifest_error(path, "missing string field '" + std::string(key) + "'");
  return *s;
}

Knobs read_knobs(const toml::table* table, const fs::path& path) {
  Knobs knobs;
  if (!table) return knobs;
  for (const auto& [key, value] : *table) {
    if (key.str() == "width") continue;
    const auto n = value.value<std::int64_t>();
    if (!n || *n < 0) manifest_error(path, "knob '" + std::string(key.str()) + "' must be a natural number");
    knobs.emplace_back(std::string(key.str()), static_cast<std::uint64_t>(*n));
  }
  return knobs;
}

SatStatus parse_status(const std::string& s, const fs::path& path) {
  if (s == "sat") return SatStatus::Sat;
  if (s == "unsat") return SatStatus::Unsat;
  manifest_error(path, "expected status must be \"sat\" or \"unsat\", not \"" + s + "\"");
}

AssertionKind parse_kind(const std::string& s, const fs::path& path) {
  if (s == "full") return AssertionKind::Full;
  if (s == "soundness") return AssertionKind::Soundness;
  if (s == "xor-only") return AssertionKind::XorOnly;
  manifest_error(path, "unknown assertion kind \"" + s + "\"");
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

std::string CorpusCase::fragment(std::string_view name) const {
  return read_text(dir / "fragments" / std::string(name));
}

std::string CorpusCase::run_source() const { return substitute_knobs(spec_text, run_knobs); }

CorpusCase load_case(const fs::path& dir) {
  const fs::path manifest = dir / "expect.toml";
  toml::table parsed;
  try {
    parsed = toml::parse_file(manifest.string());
  } catch (const toml::parse_error& e) {
    std::ostringstream msg;
    msg << e.description() << " at line " << e.source().begin.line;
    manifest_error(manifest, msg.str());
  }

  const toml::table& root = parsed;
  CorpusCase c;
  c.id = dir.filename().string();
  c.dir = dir;
  c.spec_text = read_text(dir / "spec.urs");

  const std::string role = required_string(root["role"], manifest, "role");
  if (role == "solver") {
    c.role = CaseRole::Solver;
  } else if (role == "reduction-solver") {
    c.role = CaseRole::ReductionSolver;
  } else if (role == "verification") {
    c.role = CaseRole::Verification;
  } else {
    manifest_error(manifest, "unknown role \"" + role + "\"");
  }
  c.reference = root["reference"].value_or(std::string());
  c.width = static_cast<unsigned>(root["width"].value_or(std::int64_t{8}));
  c.fragments = string_list(root["fragments"], manifest, "fragments");
  c.knobs = read_knobs(root["knobs"].as_table(), manifest);

  c.run_knobs = c.knobs;
  c.run_width = c.width;
  if (const toml::table* run = root["run"].as_table()) {
    for (const auto& [name, value] : read_knobs(run, manifest)) {
      auto it = std::find_if(c.run_knobs.begin(), c.run_knobs.end(), [&](const auto& k) { return k.first == name; });
      if (it == c.run_knobs.end()) manifest_error(manifest, "[run] knob '" + name + "' is not a knob");
      it->second = value;
    }
    c.run_width = static_cast<unsigned>((*run)["width"].value_or(std::int64_t{c.width}));
  }

  const auto expect = root["expect"];
  if (!expect.as_table()) manifest_error(manifest, "missing [expect] table");
  c.expected_status = parse_status(required_string(expect["status"], manifest, "expect.status"), manifest);
  if (expect["model"]) c.expected_model = string_list(expect["model"], manifest, "expect.model");
  c.expected_prints = string_list(expect["prints"], manifest, "expect.prints");

  if (const auto v = root["verification"]; v.as_table()) {
    VerificationSpec spec;
    spec.assertion = parse_kind(required_string(v["assertion"], manifest, "verification.assertion"), manifest);
    spec.source = required_string(v["source"], manifest, "verification.source");
    spec.target = required_string(v["target"], manifest, "verification.target");
    spec.link = required_string(v["link"], manifest, "verification.link");
    spec.legality = string_list(v["legality"], manifest, "verification.legality");
    spec.instance_vars = string_list(v["instance_vars"], manifest, "verification.instance_vars");
    spec.source_cert_vars = string_list(v["source_cert_vars"], manifest, "verification.source_cert_vars");
    spec.target_cert_vars = string_list(v["target_cert_vars"], manifest, "verification.target_cert_vars");
    c.verification = std::move(spec);
  }
  if (c.role == CaseRole::Verification && !c.verification) {
    manifest_error(manifest, "verification case without [verification] table");
  }
  if (const auto r = root["reference_size"]; r.as_table()) {
    c.reference_size = ReferenceSize{static_cast<std::uint64_t>(r["variables"].value_or(std::int64_t{0})),
                                     static_cast<std::uint64_t>(r["clauses"].value_or(std::int64_t{0}))};
  }
  return c;
}

std::vector<CorpusCase> load_corpus(const fs::path& root) {
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() && fs::exists(entry.path() / "expect.toml")) dirs.push_back(entry.path());
  }
  std::sort(dirs.begin(), dirs.end());
  std::vector<CorpusCase> cases;
  for (const auto& d : dirs) cases.push_back(load_case(d));
  return cases;
}

std::string substitute_knobs(std::string_view source, const Knobs& knobs) {
  std::string text(source);
  for (const auto& [name, value] : knobs) {
    const std::regex line("(^|\\n)([ \\t]*" + name + "[ \\t]*=[ \\t]*)[0-9]+([ \\t]*;)");
    std::smatch m;
    if (!std::regex_search(text, m, line)) {
      throw SpecError(Stage::Io, "no '" + name + " = <number>;' line to substitute");
    }
    const auto digits_begin = m.position(0) + m.length(1) + m.length(2);
    const auto digits_len = m.length(0) - m.length(1) - m.length(2) - m.length(3);
    text.replace(static_cast<std::size_t>(digits_begin), static_cast<std::size_t>(digits_len), std::to_string(value));
  }
  return text;
}

std::string join_fragments(const CorpusCase& c, const std::vector<std::string>& names) {
  std::string text;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) text += '\n';
    text += c.fragment(names[i]);
  }
  return text;
}

std::string with_instance(const CorpusCase& c, std::string_view instance_text) {
  if (c.fragments.empty() || c.fragments.front() != "instance.urs") {
    throw SpecError(Stage::Io, c.id + ": first fragment is not instance.urs");
  }
  std::vector<std::string> rest(c.fragments.begin() + 1, c.fragments.end());
  std::string text(instance_text);
  if (!rest.empty()) text += '\n' + join_fragments(c, rest);
  return text;
}

std::string generated_assertion(const VerificationSpec& v, AssertionKind kind) {
  switch (kind) {
    case AssertionKind::Full:
      return "assert((" + v.source + " ^^ " + v.target + ") && " + v.link + ");\n";
    case AssertionKind::Soundness: {
      std::string conj;
      for (const auto& l : v.legality) conj += l + " && ";
      return "assert(" + conj + "!" + v.source + " && " + v.target + " && " + v.link + ");\n";
    }
    case AssertionKind::XorOnly:
      return "assert(" + v.source + " ^^ " + v.target + ");\n";
  }
  return {};
}

std::string compose_verification(const CorpusCase& c, const Knobs& knobs, std::string_view assertion) {
  std::vector<std::string> names;
  std::copy_if(c.fragments.begin(), c.fragments.end(), std::back_inserter(names),
               [](const std::string& n) { return n != "assertion.urs"; });
  std::string text = join_fragments(c, names);
  text += '\n';
  text += assertion;
  return substitute_knobs(text, knobs);
}

VerificationOutcome verify_source(const CorpusCase& c, std::string_view source, PipelineOptions options) {
  options.mode = Mode::Solve;
  VerificationOutcome out;
  out.pipeline = run_pipeline(source, options);
  out.status = out.pipeline.status;
  if (out.status != SatStatus::Sat) return out;

  const VerificationSpec empty;
  const VerificationSpec& v = c.verification ? *c.verification : empty;
  Counterexample cx;
  cx.model = out.pipeline.models.front();
  auto in = [](const std::vector<std::string>& names, const std::string& n) {
    return std::find(names.begin(), names.end(), n) != names.end();
  };
  for (const Unknown& u : out.pipeline.registry) {
    const std::string line = u.display() + "=" + unknown_value(u, cx.model) + ";";
    if (in(v.instance_vars, u.name)) {
      cx.instance.push_back(line);
    } else if (in(v.source_cert_vars, u.name)) {
      cx.source_certificate.push_back(line);
    } else if (in(v.target_cert_vars, u.name)) {
      cx.target_certificate.push_back(line);
    } else {
      cx.other.push_back(line);
    }
  }
  out.counterexample = std::move(cx);
  return out;
}

VerificationOutcome verify_reduction(const CorpusCase& c, const Knobs& knobs, AssertionKind kind,
                                     PipelineOptions options) {
  if (!c.verification) throw SpecError(Stage::Io, c.id + " is not a verification case");
  return verify_source(c, compose_verification(c, knobs, generated_assertion(*c.verification, kind)), options);
}

CaseCheck check_case(const CorpusCase& c, PipelineOptions options) {
  options.width = c.run_width;
  options.mode = Mode::Solve;
  CaseCheck check;
  check.result = run_pipeline(c.run_source(), options);
  const PipelineResult& r = check.result;
  auto fail = [&](std::string message) {
    check.message = c.id + ": " + std::move(message);
    return check;
  };
  if (r.status != c.expected_status) {
    return fail("expected " + std::string(status_name(c.expected_status)) + ", got " +
                std::string(status_name(r.status)));
  }
  std::vector<std::string> prints;
  for (const auto& p : r.prints) prints.push_back(format_print(p));
  if (prints != c.expected_prints) return fail("printed values differ");
  if (c.expected_model && r.status == SatStatus::Sat) {
    if (lines_of(report_model(r.registry, r.models.front())) != *c.expected_model) {
      return fail("model differs:\n" + report_model(r.registry, r.models.front()));
    }
  }
  check.passed = true;
  return check;
}

}  // namespace symcert
