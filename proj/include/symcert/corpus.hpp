#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "symcert/driver.hpp"

namespace symcert {

enum class CaseRole { Solver, ReductionSolver, Verification };

enum class AssertionKind {
  Full,       // (source ^^ target) && link
  Soundness,  // legality && !source && target && link
  XorOnly,    // source ^^ target, without the link (not a valid check)
};

/// Ordered scale knobs, e.g. {{"nV", 6}, {"nK_clique", 4}}.
using Knobs = std::vector<std::pair<std::string, std::uint64_t>>;

struct VerificationSpec {
  AssertionKind assertion = AssertionKind::Full;
  std::string source;  // boolean holding the source certificate check
  std::string target;  // boolean holding the target certificate check
  std::string link;    // boolean relating the two certificates
  std::vector<std::string> legality;
  // unknown base names, used to decode counterexamples
  std::vector<std::string> instance_vars;
  std::vector<std::string> source_cert_vars;
  std::vector<std::string> target_cert_vars;
};

struct ReferenceSize {
  std::uint64_t variables = 0;
  std::uint64_t clauses = 0;
};

struct CorpusCase {
  std::string id;
  std::filesystem::path dir;
  CaseRole role = CaseRole::Solver;
  std::string reference;
  unsigned width = 8;
  std::vector<std::string> fragments;  // file names under fragments/, in program order
  std::string spec_text;               // spec.urs
  Knobs knobs;                         // as written in spec.urs
  Knobs run_knobs;                     // harness scale (defaults to knobs)
  unsigned run_width = 8;
  SatStatus expected_status = SatStatus::Sat;
  std::optional<std::vector<std::string>> expected_model;
  std::vector<std::string> expected_prints;
  std::optional<VerificationSpec> verification;
  std::optional<ReferenceSize> reference_size;

  std::string fragment(std::string_view name) const;
  /// spec.urs with run_knobs substituted.
  std::string run_source() const;
};

/// Loads corpus/<id>/{spec.urs, expect.toml, fragments/}. Throws
/// SpecError(Stage::Io) on missing files or malformed manifests.
CorpusCase load_case(const std::filesystem::path& dir);

/// All cases under root, sorted by id.
std::vector<CorpusCase> load_corpus(const std::filesystem::path& root);

/// Rewrites the first `name = <decimal>;` statement of each knob. Throws
/// SpecError(Stage::Io) if a knob has no such line.
std::string substitute_knobs(std::string_view source, const Knobs& knobs);

/// The concatenation of the case's fragments (blank line between two).
std::string join_fragments(const CorpusCase& c, const std::vector<std::string>& names);

/// Replaces the instance fragment with `instance_text` and keeps the others.
std::string with_instance(const CorpusCase& c, std::string_view instance_text);

/// `assert(...);` line of the requested shape for a verification case.
std::string generated_assertion(const VerificationSpec& v, AssertionKind kind);

/// Fragments of a verification case (the paper's assertion dropped) followed
/// by `assertion`, with knobs substituted.
std::string compose_verification(const CorpusCase& c, const Knobs& knobs, std::string_view assertion);

struct Counterexample {
  std::vector<std::string> instance;
  std::vector<std::string> source_certificate;
  std::vector<std::string> target_certificate;
  std::vector<std::string> other;
  Assignment model;
};

struct VerificationOutcome {
  SatStatus status = SatStatus::Unknown;
  std::optional<Counterexample> counterexample;
  PipelineResult pipeline;
};

/// Runs the composed verification query. Unsat means the checked property
/// holds for every instance of that size; Sat yields a decoded counterexample.
VerificationOutcome verify_reduction(const CorpusCase& c, const Knobs& knobs, AssertionKind kind,
                                     PipelineOptions options = {});
VerificationOutcome verify_source(const CorpusCase& c, std::string_view source, PipelineOptions options);

struct CaseCheck {
  bool passed = false;
  std::string message;  // first mismatch, empty when passed
  PipelineResult result;
};

/// Runs run_source() at run_width and compares status, model lines and prints.
CaseCheck check_case(const CorpusCase& c, PipelineOptions options = {});

}  // namespace symcert
