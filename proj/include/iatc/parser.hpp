#ifndef IATC_PARSER_HPP
#define IATC_PARSER_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "iatc/schema.hpp"
#include "iatc/term.hpp"

namespace iatc {

struct ParseError : std::runtime_error {
    ParseError(const std::string& msg, SourceSpan sp)
        : std::runtime_error(msg), span(sp) {}
    SourceSpan span;
};

// Document-level failure: header missing or unusable. Everything else in a
// file degrades to per-stanza diagnostics.
struct FormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses a single stanza in linear notation. Whitespace inside atoms is
// normalized (trimmed, runs collapsed); a root :unspoken attribute is
// accepted and dropped. Throws ParseError.
Term parse_stanza(const std::string& text);

// Same, but reports whether the root carried :unspoken.
struct ParsedStanza {
    Term term;
    bool unspoken = false;
};
ParsedStanza parse_stanza_full(const std::string& text);

// Prints a term in the linear notation. Printing a parsed term and parsing
// it again yields an equal term, and the second print is byte-identical.
std::string print_stanza(const Term& t);

// Stanza-level print: re-attaches :unspoken to the root application.
std::string print_stanza(const Stanza& s);

struct AnnotationDoc {
    std::vector<Stanza> stanzas; // subgraph members included, in file order
    std::vector<Diagnostic> diagnostics;
};

// Parses a whole annotation file:
//   #!iatc 1                     header, required first
//   % comment
//   @locution <id>               following stanzas anchor to <id>
//   @analyst                     following stanzas are analyst-inserted
//   #NAME := { stanza; stanza }  subgraph definition (may span lines)
// Malformed stanzas and directives become error diagnostics and are
// skipped; only an unreadable header throws FormatError.
AnnotationDoc parse_annotation_file(const std::string& text,
                                    const std::string& filename = "");

// Schema checks for one stanza. Never throws; everything is reported as a
// diagnostic. Errors: unknown tag, arity violation, non-performative root
// on a speaker-attributed stanza. Warnings: category slips, set terms in
// non-set slots, Judge without a value-category node inside its argument.
std::vector<Diagnostic> validate(const Stanza& s, const TagRegistry& reg);

} // namespace iatc

#endif
