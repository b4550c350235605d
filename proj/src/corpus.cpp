#include "blamelab/cli.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace blamelab {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

namespace {

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

bool valid_expectation(const std::string& v) {
    if (v == "success" || v == "blame(positive)" || v == "blame(negative)") return true;
    auto inside = [&](std::string_view prefix) {
        return v.size() > prefix.size() + 1 && v.compare(0, prefix.size(), prefix) == 0 && v.back() == ')';
    };
    if (inside("success(")) return nlohmann::json::accept(v.substr(8, v.size() - 9));
    for (std::string_view prefix : {"crash(", "attach-error("}) {
        if (inside(prefix) && parse_crash_kind(v.substr(prefix.size(), v.size() - prefix.size() - 1))) return true;
    }
    return false;
}

}  // namespace

CorpusEntry parse_manifest(const fs::path& manifest, std::string_view text) {
    CorpusEntry entry;
    entry.manifest = manifest;
    entry.program = fs::path(manifest).replace_extension(".blame");
    bool in_expect = false;
    std::istringstream lines{std::string(text)};
    std::string raw;
    for (int lineno = 1; std::getline(lines, raw); ++lineno) {
        auto where = [&] { return manifest.string() + ":" + std::to_string(lineno) + ": "; };
        std::string line = trim(raw);
        if (line.empty() || line.front() == '#') continue;
        if (line.front() == '[') {
            if (line != "[expect]") throw ManifestError(where() + "unknown section " + line);
            in_expect = true;
            continue;
        }
        auto eq = line.find('=');
        if (!in_expect || eq == std::string::npos) throw ManifestError(where() + "expected `strategy = outcome`");
        std::string key = trim(std::string_view(line).substr(0, eq));
        std::string value = trim(std::string_view(line).substr(eq + 1));
        auto strategy = parse_strategy(key);
        if (!strategy) throw ManifestError(where() + "unknown strategy '" + key + "'");
        if (!valid_expectation(value)) throw ManifestError(where() + "malformed outcome '" + value + "'");
        if (!entry.expected.emplace(*strategy, value).second) {
            throw ManifestError(where() + "strategy '" + key + "' given twice");
        }
    }
    if (entry.expected.empty()) throw ManifestError(manifest.string() + ": no expectations");
    return entry;
}

CorpusEntry load_manifest(const fs::path& manifest) { return parse_manifest(manifest, read_file(manifest)); }

CorpusLoad load_corpus(const fs::path& dir) {
    CorpusLoad load;
    std::vector<fs::path> manifests;
    for (const auto& item : fs::directory_iterator(dir)) {
        if (item.path().extension() == ".expect") manifests.push_back(item.path());
    }
    std::sort(manifests.begin(), manifests.end());
    for (const auto& m : manifests) {
        try {
            auto entry = load_manifest(m);
            if (!fs::exists(entry.program)) throw ManifestError(m.string() + ": missing " + entry.program.string());
            load.entries.push_back(std::move(entry));
        } catch (const std::exception& e) {
            load.errors.push_back(e.what());
        }
    }
    return load;
}

bool expectation_matches(std::string_view expected, const Outcome& actual) {
    std::string got = describe(actual);
    if (expected == "success") return actual.is_success();
    if (expected.substr(0, 8) == "success(") {
        if (!actual.is_success() || !actual.json) return false;
        auto want = nlohmann::json::parse(expected.substr(8, expected.size() - 9));
        return want == nlohmann::json::parse(*actual.json);
    }
    return expected == got;
}

std::vector<CorpusResult> run_corpus(const std::vector<CorpusEntry>& entries) {
    std::vector<CorpusResult> results;
    for (const auto& entry : entries) {
        std::string text = read_file(entry.program);
        for (const auto& [strategy, expected] : entry.expected) {
            Outcome actual = run_source(text, entry.program.filename().string(), strategy);
            bool pass = expectation_matches(expected, actual);
            results.push_back({entry.program.stem().string(), strategy, expected, std::move(actual), pass});
        }
    }
    return results;
}

}  // namespace blamelab
