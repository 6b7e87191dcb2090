#include "iatc/schema.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace iatc {

static std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

const char* slot_kind_name(SlotKind k) {
    switch (k) {
        case SlotKind::statement: return "statement";
        case SlotKind::object: return "object";
        case SlotKind::method: return "method";
        case SlotKind::property: return "property";
        case SlotKind::value_expr: return "value";
        case SlotKind::set: return "set";
        case SlotKind::any: return "any";
    }
    return "?";
}

std::optional<SlotKind> slot_kind_from_name(const std::string& name) {
    std::string n = lower(name);
    if (n == "statement") return SlotKind::statement;
    if (n == "object") return SlotKind::object;
    if (n == "method") return SlotKind::method;
    if (n == "property") return SlotKind::property;
    if (n == "value") return SlotKind::value_expr;
    if (n == "set") return SlotKind::set;
    if (n == "any") return SlotKind::any;
    return std::nullopt;
}

const SlotRole& TagSignature::slot_at(std::size_t i) const {
    if (i < slots.size()) return slots[i];
    return slots.back();
}

bool TagSignature::arity_ok(std::size_t n) const {
    if ((int)n < min_arity) return false;
    if (!variadic && (int)n > max_arity) return false;
    return true;
}

TagRegistry TagRegistry::defaults() {
    TagRegistry r;
    auto sig = [](Category c, const char* name, std::vector<SlotRole> slots,
                  int min, int max, bool variadic = false) {
        return TagSignature{c, name, std::move(slots), min, max, variadic};
    };
    SlotRole s{"s", SlotKind::statement};
    SlotRole t{"t", SlotKind::statement};
    SlotRole a{"a", SlotKind::any};
    SlotRole o{"o", SlotKind::object};
    SlotRole p{"p", SlotKind::property};
    SlotRole m{"m", SlotKind::method};

    // Performatives. Assert-family tags take an optional annotation
    // argument (the corpus writes e.g. assert(equivalent(..), cycle_partition)).
    r = r.with_tag(sig(Category::perf, "Assert", {s, a}, 1, 2));
    r = r.with_tag(sig(Category::perf, "Agree", {s, a}, 1, 2));
    r = r.with_tag(sig(Category::perf, "Challenge", {s, a}, 1, 2));
    r = r.with_tag(sig(Category::perf, "Retract", {s, a}, 1, 2));
    r = r.with_tag(sig(Category::perf, "Define", {o, p}, 2, 2));
    r = r.with_tag(sig(Category::perf, "Suggest", {s}, 1, 1));
    // Judge takes the judged statement whole; the value tag lives inside it.
    r = r.with_tag(sig(Category::perf, "Judge", {s}, 1, 1));
    r = r.with_tag(sig(Category::perf, "Query", {s}, 1, 1),
                   {Alias{"question", Category::perf, "Query", false}});
    // QueryE asks for instances; accepts a set or a single description.
    r = r.with_tag(sig(Category::perf, "QueryE", {SlotRole{"X", SlotKind::set}}, 1, 1));

    // Inferential relations.
    r = r.with_tag(sig(Category::rel, "implies", {s, t}, 2, 2),
                   {Alias{"stronger", Category::rel, "implies", false}});
    r = r.with_tag(sig(Category::rel, "equivalent", {s, t}, 2, 2));
    r = r.with_tag(sig(Category::rel, "not", {s}, 1, 1));
    r = r.with_tag(sig(Category::rel, "conjunction", {s, t}, 2, 2, true));
    r = r.with_tag(sig(Category::rel, "has_property", {o, p}, 2, 2));
    r = r.with_tag(sig(Category::rel, "instance_of",
                       {o, SlotRole{"m", SlotKind::any}}, 2, 2));
    r = r.with_tag(sig(Category::rel, "indep_of", {o, SlotRole{"d", SlotKind::object}}, 2, 2));
    // case_split(s, cases...): cases may be a SetTerm or flat arguments.
    r = r.with_tag(sig(Category::rel, "case_split",
                       {s, SlotRole{"s_i", SlotKind::set}}, 2, 2, true));
    r = r.with_tag(sig(Category::rel, "wlog", {s, t}, 2, 2));

    // Heuristic value judgements. easy(s[, relative-to]).
    r = r.with_tag(sig(Category::value, "easy", {s, t}, 1, 2));
    r = r.with_tag(sig(Category::value, "plausible", {s}, 1, 1));
    r = r.with_tag(sig(Category::value, "beautiful", {s}, 1, 1));
    r = r.with_tag(sig(Category::value, "useful", {s}, 1, 1));

    // Reasoning tactics.
    r = r.with_tag(sig(Category::meta, "goal", {s}, 1, 1));
    r = r.with_tag(sig(Category::meta, "strategy", {m, s}, 2, 2));
    r = r.with_tag(sig(Category::meta, "auxiliary", {s, a}, 2, 2));
    r = r.with_tag(sig(Category::meta, "analogy", {s, t}, 2, 2));
    r = r.with_tag(sig(Category::meta, "implements", {s, m}, 2, 2));
    r = r.with_tag(sig(Category::meta, "generalise",
                       {m, SlotRole{"n", SlotKind::method}}, 2, 2));

    // Content structure. The `structural` alias is the statement-first
    // spelling, so its arguments are reversed relative to used_in(o, s).
    r = r.with_tag(sig(Category::struct_, "used_in", {o, s}, 2, 2),
                   {Alias{"structural", Category::struct_, "used_in", true}});
    r = r.with_tag(sig(Category::struct_, "reform", {s, t}, 2, 2));
    r = r.with_tag(sig(Category::struct_, "instantiates", {s, t}, 2, 2));
    r = r.with_tag(sig(Category::struct_, "expands",
                       {SlotRole{"x", SlotKind::object}, SlotRole{"y", SlotKind::object}}, 2, 2));
    r = r.with_tag(sig(Category::struct_, "sums",
                       {SlotRole{"x", SlotKind::object}, SlotRole{"y", SlotKind::object}}, 2, 2));
    r = r.with_tag(sig(Category::struct_, "cont_summand",
                       {SlotRole{"x", SlotKind::object}, SlotRole{"y", SlotKind::object}}, 2, 2));
    return r;
}

TagRegistry TagRegistry::with_tag(const TagSignature& sig,
                                  const std::vector<Alias>& aliases) const {
    if (sig.slots.empty())
        throw DuplicateTagError("tag '" + sig.name + "' declares no slots");
    TagRegistry out = *this;
    std::string key = lower(sig.name);
    auto k = std::make_pair(sig.category, key);
    if (out.sigs_.count(k))
        throw DuplicateTagError("tag '" + sig.name + "' already registered under " +
                                category_name(sig.category));
    if (out.aliases_.count(key))
        throw DuplicateTagError("name '" + sig.name + "' is already an alias");
    out.sigs_[k] = sig;
    for (const auto& al : aliases) {
        std::string akey = lower(al.name);
        if (out.aliases_.count(akey))
            throw DuplicateTagError("alias '" + al.name + "' already registered");
        for (int c = 0; c < kCategoryCount; ++c)
            if (out.sigs_.count({static_cast<Category>(c), akey}))
                throw DuplicateTagError("alias '" + al.name + "' collides with a tag name");
        out.aliases_[akey] = al;
    }
    return out;
}

const TagSignature* TagRegistry::find_exact(Category category, const std::string& name) const {
    auto it = sigs_.find({category, lower(name)});
    return it == sigs_.end() ? nullptr : &it->second;
}

std::optional<Resolution> TagRegistry::lookup(Category category, const std::string& name) const {
    std::string key = lower(name);
    if (auto it = sigs_.find({category, key}); it != sigs_.end())
        return Resolution{&it->second, false, std::nullopt, std::nullopt};

    if (auto it = aliases_.find(key); it != aliases_.end()) {
        const Alias& al = it->second;
        const TagSignature* sig = find_exact(al.category, al.canonical);
        Resolution res{sig, al.reversed, std::nullopt, name};
        if (al.category != category)
            res.category_warning = std::string("tag '") + name + "' written under " +
                                   category_name(category) + " but belongs to " +
                                   category_name(al.category);
        return res;
    }

    // Cross-category fallback. The published annotations slip between rel
    // and struct for the structural tags, so a mismatch is a warning, not a
    // failure. rel[used_in] follows the statement-first convention of its
    // struct[structural] sibling, hence the argument reversal.
    for (int c = 0; c < kCategoryCount; ++c) {
        Category cat = static_cast<Category>(c);
        if (cat == category) continue;
        if (auto it = sigs_.find({cat, key}); it != sigs_.end()) {
            Resolution res{&it->second, false, std::nullopt, std::nullopt};
            res.category_warning = std::string("tag '") + name + "' written under " +
                                   category_name(category) + " but belongs to " +
                                   category_name(cat);
            if (cat == Category::struct_ && key == "used_in" && category == Category::rel)
                res.reversed = true;
            return res;
        }
    }
    return std::nullopt;
}

std::vector<const TagSignature*> TagRegistry::all() const {
    std::vector<const TagSignature*> out;
    out.reserve(sigs_.size());
    for (const auto& [k, v] : sigs_) out.push_back(&v);
    return out;
}

TagRegistry TagRegistry::extend_with_file(const std::string& path) const {
    std::ifstream in(path);
    if (!in)
        throw RegistryFormatError("cannot open registry file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return extend_with_text(ss.str(), path);
}

TagRegistry TagRegistry::extend_with_text(const std::string& text,
                                          const std::string& filename) const {
    TagRegistry out = *this;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto err = [&](const std::string& msg) {
            return RegistryFormatError(filename + ":" + std::to_string(lineno) + ": " + msg);
        };
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        std::string cat_tok, name, min_tok, max_tok;
        if (!(ls >> cat_tok)) continue; // blank line
        if (!(ls >> name >> min_tok >> max_tok))
            throw err("expected: category name min max kind... [alias=name[:rev]]");
        auto cat = category_from_name(cat_tok);
        if (!cat) throw err("unknown category '" + cat_tok + "'");

        TagSignature sig;
        sig.category = *cat;
        sig.name = name;
        try {
            sig.min_arity = std::stoi(min_tok);
        } catch (...) {
            throw err("bad min arity '" + min_tok + "'");
        }
        if (max_tok == "*") {
            sig.variadic = true;
            sig.max_arity = sig.min_arity;
        } else {
            try {
                sig.max_arity = std::stoi(max_tok);
            } catch (...) {
                throw err("bad max arity '" + max_tok + "'");
            }
            if (sig.max_arity < sig.min_arity) throw err("max arity below min arity");
        }

        std::vector<Alias> aliases;
        std::string tok;
        int slot_no = 0;
        while (ls >> tok) {
            if (tok.rfind("alias=", 0) == 0) {
                std::string spec = tok.substr(6);
                bool rev = false;
                if (auto colon = spec.find(':'); colon != std::string::npos) {
                    std::string mod = spec.substr(colon + 1);
                    if (mod != "rev") throw err("unknown alias modifier '" + mod + "'");
                    rev = true;
                    spec.erase(colon);
                }
                if (spec.empty()) throw err("empty alias name");
                aliases.push_back(Alias{spec, sig.category, sig.name, rev});
                continue;
            }
            auto kind = slot_kind_from_name(tok);
            if (!kind) throw err("unknown slot kind '" + tok + "'");
            // Generated role names keep extension edges labelled.
            sig.slots.push_back(SlotRole{"a" + std::to_string(++slot_no), *kind});
        }
        if (sig.slots.empty()) throw err("tag '" + name + "' declares no slots");
        int declared_max = sig.variadic ? sig.min_arity : sig.max_arity;
        if ((int)sig.slots.size() > std::max(declared_max, sig.min_arity))
            throw err("more slot kinds than the declared arity allows");
        try {
            out = out.with_tag(sig, aliases);
        } catch (const DuplicateTagError& e) {
            throw err(e.what());
        }
    }
    return out;
}

Term canonicalize(const Term& t, const TagRegistry& reg) {
    if (t.is_atom() || t.is_ref()) return t;
    if (t.is_set()) {
        std::vector<Term> members;
        members.reserve(t.set().members.size());
        for (const auto& m : t.set().members) members.push_back(canonicalize(m, reg));
        return make_set(std::move(members));
    }
    const Application& app = t.app();
    std::vector<Term> args;
    args.reserve(app.args.size());
    for (const auto& a : app.args) args.push_back(canonicalize(a, reg));
    auto res = reg.lookup(app.category, app.tag);
    if (!res || !res->sig)
        return make_app(app.category, app.tag, std::move(args));
    if (res->reversed && args.size() == 2)
        std::swap(args[0], args[1]);
    return make_app(res->sig->category, res->sig->name, std::move(args));
}

} // namespace iatc
