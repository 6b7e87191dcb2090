#ifndef IATC_SCHEMA_HPP
#define IATC_SCHEMA_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iatc/term.hpp"

namespace iatc {

// Declared kind of an argument slot. Kinds are advisory: the validator only
// enforces them for `set` slots (a SetTerm elsewhere draws a warning).
enum class SlotKind { statement, object, method, property, value_expr, set, any };

const char* slot_kind_name(SlotKind k);
std::optional<SlotKind> slot_kind_from_name(const std::string& name);

struct SlotRole {
    std::string name; // role label carried onto graph edges, e.g. "s"
    SlotKind kind = SlotKind::any;
};

struct TagSignature {
    Category category;
    std::string name; // canonical spelling, e.g. "Assert", "used_in"
    std::vector<SlotRole> slots;
    int min_arity = 0;
    int max_arity = 0;    // ignored when variadic
    bool variadic = false;

    // Role for the i-th argument. Variadic applications reuse the last
    // declared slot for overflow arguments.
    const SlotRole& slot_at(std::size_t i) const;
    bool arity_ok(std::size_t n) const;
};

struct DuplicateTagError : std::logic_error {
    using std::logic_error::logic_error;
};

struct RegistryFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Result of resolving a written (category, tag) pair. `reversed` means the
// written argument order is the mirror of the canonical signature and must
// be flipped during canonicalization.
struct Resolution {
    const TagSignature* sig = nullptr;
    bool reversed = false;
    // Set when the tag was found under a different category than written.
    std::optional<std::string> category_warning;
    // Set when the written name was an alias of the canonical name.
    std::optional<std::string> via_alias;
};

// Immutable map of tag signatures plus alias spellings. Mutating operations
// return a new registry; lookups are case-insensitive on tag names.
class TagRegistry {
public:
    struct Alias {
        std::string name;
        Category category;
        std::string canonical;
        bool reversed = false;
    };

    static TagRegistry defaults();

    // Fails with DuplicateTagError if the name or any alias is already bound
    // (canonical names and alias names share one namespace).
    TagRegistry with_tag(const TagSignature& sig,
                         const std::vector<Alias>& aliases = {}) const;

    // Resolution order: exact category match, alias table, then a scan of the
    // other categories (warning attached). Returns nullopt for unknown tags.
    std::optional<Resolution> lookup(Category category, const std::string& name) const;

    const TagSignature* find_exact(Category category, const std::string& name) const;

    std::vector<const TagSignature*> all() const;

    // Parses a registry extension file and layers it on top of *this.
    // Line format:
    //   category name min max kind... [alias=name[:rev]]
    // where max is a number or `*` (variadic) and kinds come from
    // slot_kind_name(). `#` starts a comment. Throws RegistryFormatError.
    TagRegistry extend_with_file(const std::string& path) const;
    TagRegistry extend_with_text(const std::string& text,
                                 const std::string& filename = "<registry>") const;

private:
    // Keyed by (category, lowercased name).
    std::map<std::pair<Category, std::string>, TagSignature> sigs_;
    std::map<std::string, Alias> aliases_; // lowercased alias name
};

// Rewrites every application to its canonical form: alias names replaced,
// canonical capitalization applied, reversed-alias argument orders flipped
// (only when the argument count permits). Unknown tags are left as written.
Term canonicalize(const Term& t, const TagRegistry& reg);

} // namespace iatc

#endif
