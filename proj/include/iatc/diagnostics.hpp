#ifndef IATC_DIAGNOSTICS_HPP
#define IATC_DIAGNOSTICS_HPP

#include <string>
#include <vector>

namespace iatc {

// Half-open column range on a single input line. Lines and columns are
// 1-based; a span of (0,0,0) means "no position available".
struct SourceSpan {
    int line = 0;
    int col_begin = 0;
    int col_end = 0;
};

enum class Severity { Warning, Error };

struct Diagnostic {
    Severity severity = Severity::Error;
    std::string code;     // stable kebab-case identifier, e.g. "unknown-tag"
    std::string message;
    SourceSpan span;
};

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == Severity::Error) return true;
    return false;
}

std::string format_diagnostic(const Diagnostic& d, const std::string& filename = "");

} // namespace iatc

#endif
