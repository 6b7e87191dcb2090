#include "iatc/parser.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace iatc {

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

bool ident_char(char c) {
    return std::isalnum((unsigned char)c) || c == '_';
}

bool subgraph_name_char(char c) {
    return std::isalnum((unsigned char)c) || c == '_' || c == '.' || c == '-';
}

std::string normalize_spaces(const std::string& raw) {
    std::string out;
    out.reserve(raw.size());
    bool pending_space = false;
    for (char c : raw) {
        if (is_ws(c)) {
            if (!out.empty()) pending_space = true;
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(c);
    }
    return out;
}

// Character cursor over one stanza. `line` and `col_offset` place the
// stanza within a larger document so spans point at the original file.
struct Scanner {
    const std::string& s;
    std::size_t pos = 0;
    int line = 1;
    int col_offset = 0;

    bool eof() const { return pos >= s.size(); }
    char peek() const { return s[pos]; }

    void skip_ws() {
        while (!eof() && is_ws(s[pos])) ++pos;
    }

    SourceSpan span(std::size_t begin, std::size_t end) const {
        return SourceSpan{line, (int)begin + 1 + col_offset, (int)end + 1 + col_offset};
    }

    [[noreturn]] void fail(const std::string& msg, std::size_t begin) const {
        throw ParseError(msg, span(begin, pos));
    }

    std::string take_while(bool (*pred)(char)) {
        std::size_t begin = pos;
        while (!eof() && pred(s[pos])) ++pos;
        return s.substr(begin, pos - begin);
    }
};

Term parse_term(Scanner& sc, bool root, bool* unspoken);

Term parse_application(Scanner& sc, Category cat, bool root, bool* unspoken) {
    // cursor sits on '['
    std::size_t tag_begin = sc.pos;
    ++sc.pos;
    std::string tag = sc.take_while(ident_char);
    if (tag.empty()) sc.fail("empty tag name", tag_begin);

    while (!sc.eof() && sc.peek() == ':') {
        std::size_t attr_begin = sc.pos;
        ++sc.pos;
        std::string attr = sc.take_while(ident_char);
        if (attr.empty()) sc.fail("empty attribute name", attr_begin);
        if (!root)
            sc.fail("attribute ':" + attr + "' is only allowed on the stanza root", attr_begin);
        if (attr == "unspoken") {
            if (unspoken) *unspoken = true;
        } else {
            sc.fail("unknown attribute ':" + attr + "'", attr_begin);
        }
    }
    if (sc.eof() || sc.peek() != ']')
        sc.fail("expected ']' after tag '" + tag + "'", tag_begin);
    ++sc.pos;

    sc.skip_ws();
    if (sc.eof() || sc.peek() != '(')
        sc.fail("expected '(' to open the argument list of '" + tag + "'", sc.pos);
    std::size_t args_begin = sc.pos;
    ++sc.pos;

    std::vector<Term> args;
    while (true) {
        args.push_back(parse_term(sc, false, nullptr));
        sc.skip_ws();
        if (!sc.eof() && sc.peek() == ',') {
            ++sc.pos;
            continue;
        }
        if (!sc.eof() && sc.peek() == ')') {
            ++sc.pos;
            break;
        }
        sc.fail("expected ',' or ')' in the argument list of '" + tag + "'", args_begin);
    }
    return make_app(cat, std::move(tag), std::move(args));
}

Term parse_set(Scanner& sc) {
    std::size_t begin = sc.pos;
    ++sc.pos; // '{'
    std::vector<Term> members;
    sc.skip_ws();
    if (!sc.eof() && sc.peek() == '}')
        sc.fail("empty set term", begin);
    while (true) {
        members.push_back(parse_term(sc, false, nullptr));
        sc.skip_ws();
        if (!sc.eof() && sc.peek() == ',') {
            ++sc.pos;
            continue;
        }
        if (!sc.eof() && sc.peek() == '}') {
            ++sc.pos;
            break;
        }
        sc.fail("expected ',' or '}' in set term", begin);
    }
    return make_set(std::move(members));
}

// Atoms are maximal free text: parentheses must balance, commas and the
// closers ')' '}' ';' end the atom only at paren depth zero, and the
// bracket characters are never part of an atom.
Term parse_atom(Scanner& sc) {
    std::size_t begin = sc.pos;
    int depth = 0;
    while (!sc.eof()) {
        char c = sc.peek();
        if (c == '[' || c == ']')
            sc.fail("'[' and ']' are not allowed inside an atom", sc.pos);
        if (c == '{')
            sc.fail("'{' is not allowed inside an atom", sc.pos);
        if (c == '}') {
            if (depth == 0) break;
            sc.fail("'}' inside unbalanced parentheses", begin);
        }
        if (c == '(') ++depth;
        else if (c == ')') {
            if (depth == 0) break;
            --depth;
        } else if ((c == ',' || c == ';') && depth == 0) {
            break;
        }
        ++sc.pos;
    }
    if (depth != 0)
        sc.fail("unbalanced parentheses in atom", begin);
    std::string text = normalize_spaces(sc.s.substr(begin, sc.pos - begin));
    if (text.empty())
        sc.fail("empty atom", begin);
    return make_atom(std::move(text));
}

Term parse_term(Scanner& sc, bool root, bool* unspoken) {
    sc.skip_ws();
    if (sc.eof()) sc.fail("unexpected end of input", sc.pos);
    char c = sc.peek();

    if (c == '#') {
        std::size_t begin = sc.pos;
        ++sc.pos;
        std::string name = sc.take_while(subgraph_name_char);
        if (name.empty()) sc.fail("empty subgraph reference", begin);
        return make_ref(std::move(name));
    }
    if (c == '{') return parse_set(sc);
    if (c == ',' || c == ')' || c == '}')
        sc.fail("empty argument", sc.pos);

    // A category name directly followed by '[' opens an application;
    // anything else falls back to an atom (which may itself start with a
    // letter or '(').
    if (std::isalpha((unsigned char)c)) {
        std::size_t mark = sc.pos;
        std::string ident = sc.take_while(ident_char);
        if (!sc.eof() && sc.peek() == '[') {
            if (auto cat = category_from_name(ident))
                return parse_application(sc, *cat, root, unspoken);
            sc.fail("unknown grammar category '" + ident + "'", mark);
        }
        sc.pos = mark;
    }
    return parse_atom(sc);
}

} // namespace

ParsedStanza parse_stanza_full(const std::string& text) {
    Scanner sc{text};
    ParsedStanza out;
    out.term = parse_term(sc, true, &out.unspoken);
    sc.skip_ws();
    if (!sc.eof())
        sc.fail("unexpected text after stanza", sc.pos);
    return out;
}

Term parse_stanza(const std::string& text) {
    return parse_stanza_full(text).term;
}

namespace {

void print_term(const Term& t, std::string& out, bool root_unspoken = false) {
    if (t.is_atom()) {
        out += t.atom().text;
    } else if (t.is_ref()) {
        out += '#';
        out += t.ref().name;
    } else if (t.is_set()) {
        out += '{';
        const auto& ms = t.set().members;
        for (std::size_t i = 0; i < ms.size(); ++i) {
            if (i) out += ", ";
            print_term(ms[i], out);
        }
        out += '}';
    } else {
        const auto& app = t.app();
        out += category_name(app.category);
        out += '[';
        out += app.tag;
        if (root_unspoken) out += ":unspoken";
        out += "](";
        for (std::size_t i = 0; i < app.args.size(); ++i) {
            if (i) out += ", ";
            print_term(app.args[i], out);
        }
        out += ')';
    }
}

} // namespace

std::string print_stanza(const Term& t) {
    std::string out;
    print_term(t, out);
    return out;
}

std::string print_stanza(const Stanza& s) {
    std::string out;
    print_term(s.term, out, s.unspoken && s.term.is_application());
    return out;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && is_ws(s[b])) ++b;
    while (e > b && is_ws(s[e - 1])) --e;
    return s.substr(b, e - b);
}

struct FileParser {
    const std::vector<std::string>& lines;
    AnnotationDoc& doc;
    std::optional<std::string> anchor;
    bool analyst = false;
    std::set<std::string> subgraph_names;

    void diag(Severity sev, std::string code, std::string msg, int lineno, int col = 1) {
        doc.diagnostics.push_back(
            Diagnostic{sev, std::move(code), std::move(msg), SourceSpan{lineno, col, col}});
    }

    void add_stanza(const std::string& text, int lineno, int col,
                    std::optional<std::string> owner) {
        Scanner sc{text};
        sc.line = lineno;
        sc.col_offset = col - 1;
        try {
            Stanza st;
            st.term = parse_term(sc, true, &st.unspoken);
            sc.skip_ws();
            if (!sc.eof()) sc.fail("unexpected text after stanza", sc.pos);
            st.anchor = anchor;
            st.analyst_inserted = analyst;
            st.subgraph_owner = std::move(owner);
            st.span = SourceSpan{lineno, col, col + (int)text.size()};
            doc.stanzas.push_back(std::move(st));
        } catch (const ParseError& e) {
            doc.diagnostics.push_back(
                Diagnostic{Severity::Error, "syntax-error", e.what(), e.span});
        }
    }

    void directive(const std::string& line, int lineno) {
        std::istringstream in(line);
        std::string head, arg, extra;
        in >> head >> arg >> extra;
        if (head == "@locution") {
            if (arg.empty()) {
                diag(Severity::Error, "bad-directive", "@locution requires a locution id",
                     lineno);
            } else if (!extra.empty()) {
                diag(Severity::Error, "bad-directive",
                     "locution id must be a single token", lineno);
            } else {
                anchor = arg;
                analyst = false;
            }
        } else if (head == "@analyst") {
            if (!arg.empty()) {
                diag(Severity::Error, "bad-directive", "@analyst takes no argument", lineno);
            } else {
                anchor.reset();
                analyst = true;
            }
        } else {
            diag(Severity::Error, "bad-directive", "unknown directive '" + head + "'", lineno);
        }
    }

    // Parses `#NAME := { stanza; stanza }` starting at lines[i]; the body
    // may span lines. Returns the index of the last consumed line.
    std::size_t subgraph_definition(std::size_t i, const std::string& line) {
        int lineno = (int)i + 1;
        std::size_t p = 0;
        while (p < line.size() && is_ws(line[p])) ++p;
        ++p; // '#'
        std::size_t name_begin = p;
        while (p < line.size() && subgraph_name_char(line[p])) ++p;
        std::string name = line.substr(name_begin, p - name_begin);
        while (p < line.size() && is_ws(line[p])) ++p;
        if (name.empty() || line.compare(p, 2, ":=") != 0) {
            diag(Severity::Error, "bad-subgraph",
                 "malformed subgraph definition, expected '#NAME := { ... }'", lineno);
            return i;
        }
        p += 2;
        while (p < line.size() && is_ws(line[p])) ++p;
        if (p >= line.size() || line[p] != '{') {
            diag(Severity::Error, "bad-subgraph",
                 "expected '{' after ':=' in subgraph definition", lineno);
            return i;
        }
        ++p;

        bool duplicate = subgraph_names.count(name) > 0;
        if (duplicate)
            diag(Severity::Error, "duplicate-subgraph",
                 "subgraph '" + name + "' is already defined", lineno);
        else
            subgraph_names.insert(name);

        // Walk characters across lines, splitting members on ';' at brace
        // depth 1 / paren depth 0. Set-term braces inside members nest.
        int brace_depth = 1;
        int paren_depth = 0;
        std::size_t li = i;
        std::string member;
        int member_line = lineno;
        int member_col = (int)p + 1;
        bool member_started = false;
        int members_parsed = 0;

        auto flush = [&](int end_line) {
            std::string text = trim(member);
            member.clear();
            if (text.empty()) {
                diag(Severity::Error, "bad-subgraph", "empty subgraph member",
                     member_started ? member_line : end_line);
                return;
            }
            ++members_parsed;
            if (!duplicate)
                add_stanza(text, member_line, member_col, name);
        };

        while (li < lines.size()) {
            const std::string& cur = lines[li];
            while (p < cur.size()) {
                char c = cur[p];
                if (c == '{') ++brace_depth;
                else if (c == '}') {
                    --brace_depth;
                    if (brace_depth == 0) {
                        if (!trim(member).empty() || members_parsed == 0) flush((int)li + 1);
                        std::string rest = trim(cur.substr(p + 1));
                        if (!rest.empty() && rest[0] != '%')
                            diag(Severity::Error, "bad-subgraph",
                                 "unexpected text after subgraph definition", (int)li + 1);
                        return li;
                    }
                } else if (c == '(') ++paren_depth;
                else if (c == ')' && paren_depth > 0) --paren_depth;

                if (c == ';' && brace_depth == 1 && paren_depth == 0) {
                    flush((int)li + 1);
                    member_started = false;
                } else {
                    if (!member_started && !is_ws(c)) {
                        member_started = true;
                        member_line = (int)li + 1;
                        member_col = (int)p + 1;
                    }
                    member.push_back(c);
                }
                ++p;
            }
            member.push_back('\n');
            ++li;
            p = 0;
        }
        diag(Severity::Error, "bad-subgraph",
             "unterminated subgraph definition '" + name + "'", lineno);
        return lines.size() - 1;
    }
};

} // namespace

AnnotationDoc parse_annotation_file(const std::string& text, const std::string& filename) {
    std::vector<std::string> lines;
    {
        std::string cur;
        for (char c : text) {
            if (c == '\n') {
                lines.push_back(cur);
                cur.clear();
            } else if (c != '\r') {
                cur.push_back(c);
            }
        }
        if (!cur.empty()) lines.push_back(cur);
    }

    AnnotationDoc doc;
    FileParser fp{lines, doc, std::nullopt, false, {}};
    std::string where = filename.empty() ? "document" : filename;

    bool saw_header = false;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        std::string t = trim(lines[i]);
        int lineno = (int)i + 1;
        if (t.empty() || t[0] == '%') continue;

        if (!saw_header) {
            std::istringstream in(t);
            std::string magic, version, extra;
            in >> magic >> version >> extra;
            if (magic != "#!iatc")
                throw FormatError(where + ": missing '#!iatc 1' header");
            if (version != "1" || !extra.empty())
                throw FormatError(where + ": unsupported annotation format version '" +
                                  version + "'");
            saw_header = true;
            continue;
        }

        if (t.rfind("#!", 0) == 0) {
            fp.diag(Severity::Error, "bad-header", "duplicate header line", lineno);
            continue;
        }
        if (t[0] == '@') {
            fp.directive(t, lineno);
            continue;
        }
        if (t[0] == '#') {
            i = fp.subgraph_definition(i, lines[i]);
            continue;
        }
        int col = 1;
        while (col <= (int)lines[i].size() && is_ws(lines[i][col - 1])) ++col;
        fp.add_stanza(t, lineno, col, std::nullopt);
    }
    if (!saw_header)
        throw FormatError(where + ": missing '#!iatc 1' header");
    return doc;
}

namespace {

bool subtree_has_value_node(const Term& t, const TagRegistry& reg) {
    if (t.is_application()) {
        const auto& app = t.app();
        auto res = reg.lookup(app.category, app.tag);
        Category cat = (res && res->sig) ? res->sig->category : app.category;
        if (cat == Category::value) return true;
        for (const auto& a : app.args)
            if (subtree_has_value_node(a, reg)) return true;
    } else if (t.is_set()) {
        for (const auto& m : t.set().members)
            if (subtree_has_value_node(m, reg)) return true;
    }
    return false;
}

void validate_term(const Term& t, const TagRegistry& reg, SourceSpan span,
                   std::vector<Diagnostic>& out) {
    if (t.is_set()) {
        for (const auto& m : t.set().members) validate_term(m, reg, span, out);
        return;
    }
    if (!t.is_application()) return;

    const auto& app = t.app();
    auto res = reg.lookup(app.category, app.tag);
    if (!res || !res->sig) {
        out.push_back(Diagnostic{Severity::Error, "unknown-tag",
                                 "unknown tag '" + app.tag + "' under category '" +
                                     category_name(app.category) + "'",
                                 span});
    } else {
        const TagSignature& sig = *res->sig;
        if (res->category_warning)
            out.push_back(Diagnostic{Severity::Warning, "category-mismatch",
                                     *res->category_warning, span});
        if (!sig.arity_ok(app.args.size())) {
            std::string expected = std::to_string(sig.min_arity);
            expected += sig.variadic ? " or more" : ".." + std::to_string(sig.max_arity);
            out.push_back(Diagnostic{Severity::Error, "arity-mismatch",
                                     "tag '" + sig.name + "' takes " + expected +
                                         " arguments, got " + std::to_string(app.args.size()),
                                     span});
        }
        for (std::size_t i = 0; i < app.args.size(); ++i) {
            if (app.args[i].is_set() && sig.slot_at(i).kind != SlotKind::set)
                out.push_back(Diagnostic{Severity::Warning, "set-in-nonset-slot",
                                         "set term passed to non-set slot '" +
                                             sig.slot_at(i).name + "' of '" + sig.name + "'",
                                         span});
        }
        if (sig.category == Category::perf && sig.name == "Judge" && !app.args.empty()) {
            bool found = false;
            for (const auto& a : app.args)
                if (subtree_has_value_node(a, reg)) found = true;
            if (!found)
                out.push_back(Diagnostic{Severity::Warning, "judge-without-value",
                                         "Judge argument contains no value-category node",
                                         span});
        }
    }
    for (const auto& a : app.args) validate_term(a, reg, span, out);
}

} // namespace

std::vector<Diagnostic> validate(const Stanza& s, const TagRegistry& reg) {
    std::vector<Diagnostic> out;
    if (!s.analyst_inserted) {
        bool perf_root = false;
        if (s.term.is_application()) {
            const auto& app = s.term.app();
            auto res = reg.lookup(app.category, app.tag);
            Category cat = (res && res->sig) ? res->sig->category : app.category;
            perf_root = (cat == Category::perf);
        }
        if (!perf_root)
            out.push_back(Diagnostic{Severity::Error, "root-not-performative",
                                     "speaker-attributed stanza must be rooted in a "
                                     "performative application",
                                     s.span});
    }
    validate_term(s.term, reg, s.span, out);
    return out;
}

std::string format_diagnostic(const Diagnostic& d, const std::string& filename) {
    std::ostringstream out;
    if (!filename.empty()) out << filename << ":";
    if (d.span.line > 0) {
        out << d.span.line << ":";
        if (d.span.col_begin > 0) out << d.span.col_begin << ":";
    }
    out << " " << (d.severity == Severity::Error ? "error" : "warning") << ": " << d.message
        << " [" << d.code << "]";
    return out.str();
}

} // namespace iatc
