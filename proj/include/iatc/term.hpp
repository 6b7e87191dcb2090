#ifndef IATC_TERM_HPP
#define IATC_TERM_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "iatc/diagnostics.hpp"

namespace iatc {

// The five grammar categories. "struct" is spelled struct_ because of the
// keyword; category_name() prints the surface form.
enum class Category { perf, rel, value, meta, struct_ };

constexpr int kCategoryCount = 5;

const char* category_name(Category c);
std::optional<Category> category_from_name(const std::string& name); // case-insensitive

struct Term;

// Opaque content atom. Text is whitespace-normalized at parse time and
// compared case-sensitively everywhere.
struct Atom {
    std::string text;
};

// Reference to a named subgraph definition (#NAME in source).
struct SubgraphRef {
    std::string name;
};

// Tagged application, e.g. rel[implies](a, b). The tag is kept as written;
// canonicalize() rewrites aliases and capitalization.
struct Application {
    Category category;
    std::string tag;
    std::vector<Term> args;
};

// Brace-delimited collection, e.g. {p1(X), p2(X)}. Member order is preserved.
struct SetTerm {
    std::vector<Term> members;
};

struct Term {
    std::variant<Atom, Application, SetTerm, SubgraphRef> node;

    bool is_atom() const { return std::holds_alternative<Atom>(node); }
    bool is_application() const { return std::holds_alternative<Application>(node); }
    bool is_set() const { return std::holds_alternative<SetTerm>(node); }
    bool is_ref() const { return std::holds_alternative<SubgraphRef>(node); }

    const Atom& atom() const { return std::get<Atom>(node); }
    const Application& app() const { return std::get<Application>(node); }
    Application& app() { return std::get<Application>(node); }
    const SetTerm& set() const { return std::get<SetTerm>(node); }
    const SubgraphRef& ref() const { return std::get<SubgraphRef>(node); }
};

Term make_atom(std::string text);
Term make_ref(std::string name);
Term make_app(Category c, std::string tag, std::vector<Term> args);
Term make_set(std::vector<Term> members);

// Structural equality. Atom text is case-sensitive, tags are compared
// case-insensitively (tag lookup itself is case-insensitive).
bool equal(const Term& a, const Term& b);

// Total number of nodes in the tree, counting every atom, application,
// set and subgraph reference.
std::size_t node_count(const Term& t);

// One annotation line as it appears in a file: the term plus its section
// context. Stanzas inside a subgraph definition carry the owner name.
struct Stanza {
    Term term;
    std::optional<std::string> anchor;  // locution id from @locution section
    bool unspoken = false;              // root carried :unspoken
    bool analyst_inserted = false;      // @analyst section
    std::optional<std::string> subgraph_owner;
    SourceSpan span;
};

} // namespace iatc

#endif
