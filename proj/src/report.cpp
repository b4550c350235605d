#include "blamelab/contracts.hpp"

#include <sstream>

namespace blamelab {

namespace {

constexpr std::string_view kRed = "\x1b[1;31m";
constexpr std::string_view kBlue = "\x1b[1;34m";
constexpr std::string_view kReset = "\x1b[0m";

std::string_view source_line(const Span& span) {
    std::string_view text = span.source->text;
    std::size_t start = text.rfind('\n', span.begin.offset == 0 ? 0 : span.begin.offset - 1);
    start = (start == std::string_view::npos || span.begin.offset == 0) ? 0 : start + 1;
    if (start > span.begin.offset) start = 0;
    std::size_t stop = text.find('\n', span.begin.offset);
    if (stop == std::string_view::npos) stop = text.size();
    return text.substr(start, stop - start);
}

void excerpt(std::ostream& out, const Span& span, std::string_view note, bool color) {
    if (!span.valid()) return;
    std::string_view line = source_line(span);
    std::string gutter = std::to_string(span.begin.line);
    std::string pad(gutter.size(), ' ');
    out << pad << " |\n" << gutter << " | " << line << "\n";
    std::size_t col = span.begin.column - 1;
    std::size_t width = span.end.line == span.begin.line ? span.end.offset - span.begin.offset : line.size() - col;
    if (width == 0) width = 1;
    out << pad << " | " << std::string(col, ' ');
    if (color) out << kRed;
    out << std::string(width, '^') << " " << note;
    if (color) out << kReset;
    out << "\n";
}

std::string path_line(const Label& l) {
    std::string out = l.contract ? render_contract(*l.contract) : "<contract>";
    for (const auto& step : l.path) out += ", " + render_step(step);
    return out;
}

}  // namespace

std::string render_report(const BlameReport& report, bool color) {
    std::ostringstream out;
    if (color) out << kRed;
    out << "error: Blame error: " << report.message << ".";
    if (color) out << kReset;
    out << "\n";
    const Label& l = report.label;
    if (color) out << kBlue;
    out << "  --> " << l.span.location();
    if (color) out << kReset;
    out << "\n";
    excerpt(out, l.span, "bound here", color);
    out << "  = path: " << path_line(l) << "\n";
    out << "  = witness: " << report.witness << "\n";
    if (report.call_site && report.call_site->valid()) {
        out << "  = called at " << report.call_site->location() << ": " << report.call_site->text() << "\n";
    }
    for (const auto& failure : report.branch_failures) {
        out << "  = branch failed: " << path_line(failure.label) << " on " << failure.witness << "\n";
    }
    return out.str();
}

}  // namespace blamelab
