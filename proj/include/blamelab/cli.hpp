#pragma once

// Corpus manifests and the command-line driver.

#include "blamelab/interpreter.hpp"

#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace blamelab {

/// A `.blame` program with the outcome expected under each strategy. The
/// manifest is the sibling `<name>.expect` file:
///
///     # free-form comments
///     [expect]
///     naive = blame(positive)
///     arity = attach-error(AmbiguousUnion)
///     stateful = success([1,"False"])
///
/// Strategies left out are not checked.
struct CorpusEntry {
    std::filesystem::path program;
    std::filesystem::path manifest;
    std::map<Strategy, std::string> expected;
};

class ManifestError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

CorpusEntry parse_manifest(const std::filesystem::path& manifest, std::string_view text);
CorpusEntry load_manifest(const std::filesystem::path& manifest);

/// Every `*.expect` in `dir`, sorted by name. Manifest errors are collected
/// per file instead of aborting the whole load.
struct CorpusLoad {
    std::vector<CorpusEntry> entries;
    std::vector<std::string> errors;
};
CorpusLoad load_corpus(const std::filesystem::path& dir);

/// `success` matches any success; `success(<json>)` compares JSON values.
bool expectation_matches(std::string_view expected, const Outcome& actual);

struct CorpusResult {
    std::string name;
    Strategy strategy;
    std::string expected;
    Outcome actual;
    bool pass;
};

std::vector<CorpusResult> run_corpus(const std::vector<CorpusEntry>& entries);

std::string read_file(const std::filesystem::path& path);

/// Full CLI: `run`, `export`, `diff`, `corpus` and `opt` subcommands.
/// Returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace blamelab
