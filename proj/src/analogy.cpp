#include "iatc/analogy.hpp"

#include <cctype>
#include <map>

#include "iatc/parser.hpp"

namespace iatc {

namespace {

bool tags_match(const Application& a, const Application& b) {
    if (a.category != b.category) return false;
    if (a.tag.size() != b.tag.size()) return false;
    for (std::size_t i = 0; i < a.tag.size(); ++i)
        if (std::tolower((unsigned char)a.tag[i]) != std::tolower((unsigned char)b.tag[i]))
            return false;
    return true;
}

struct Aligner {
    // Position-wise correspondences keyed by printed form. Printing is
    // injective on parsed terms, so string equality is term equality.
    std::map<std::string, std::string> left_to_right;
    std::map<std::string, std::string> right_to_left;
    std::map<std::pair<std::string, std::string>, std::size_t> placeholder_of;
    AnalogyMapping result;
    bool ok = true;

    // Every aligned position, matched or not, joins the correspondence
    // relation; the mapping is only valid if that relation stays a partial
    // bijection. This is what makes wholesale substitution well defined.
    void record(const Term& l, const Term& r) {
        std::string ls = print_stanza(l);
        std::string rs = print_stanza(r);
        auto [it, fresh] = left_to_right.emplace(ls, rs);
        if (!fresh && it->second != rs) ok = false;
        auto [it2, fresh2] = right_to_left.emplace(rs, ls);
        if (!fresh2 && it2->second != ls) ok = false;
    }

    Term placeholder(const Term& l, const Term& r) {
        record(l, r);
        auto key = std::make_pair(print_stanza(l), print_stanza(r));
        auto it = placeholder_of.find(key);
        std::size_t idx;
        if (it != placeholder_of.end()) {
            idx = it->second;
        } else {
            idx = result.pairs.size();
            placeholder_of.emplace(key, idx);
            result.pairs.emplace_back(l, r);
        }
        if (l.is_atom() && r.is_atom()) result.matched += 1;
        return make_atom("?" + std::to_string(idx + 1));
    }

    Term walk(const Term& a, const Term& b) {
        if (a.is_atom() && b.is_atom() && a.atom().text == b.atom().text) {
            record(a, b);
            result.matched += 1;
            result.shared_atoms.insert(a.atom().text);
            return a;
        }
        if (a.is_ref() && b.is_ref() && a.ref().name == b.ref().name) {
            record(a, b);
            result.matched += 1;
            return a;
        }
        if (a.is_set() && b.is_set() && a.set().members.size() == b.set().members.size()) {
            record(a, b);
            result.matched += 1;
            std::vector<Term> members;
            members.reserve(a.set().members.size());
            for (std::size_t i = 0; i < a.set().members.size(); ++i)
                members.push_back(walk(a.set().members[i], b.set().members[i]));
            return make_set(std::move(members));
        }
        if (a.is_application() && b.is_application() && tags_match(a.app(), b.app()) &&
            a.app().args.size() == b.app().args.size()) {
            record(a, b);
            result.matched += 1;
            std::vector<Term> args;
            args.reserve(a.app().args.size());
            for (std::size_t i = 0; i < a.app().args.size(); ++i)
                args.push_back(walk(a.app().args[i], b.app().args[i]));
            return make_app(a.app().category, a.app().tag, std::move(args));
        }
        return placeholder(a, b);
    }
};

} // namespace

std::optional<AnalogyMapping> align(const Term& a, const Term& b) {
    // A root-level clash of application tags has no placeholder to absorb
    // it; that is the one structural failure rather than a partial match.
    if (a.is_application() && b.is_application() && !tags_match(a.app(), b.app()))
        return std::nullopt;

    Aligner al;
    al.result.max_nodes = (long)std::max(node_count(a), node_count(b));
    al.result.skeleton = al.walk(a, b);
    if (!al.ok) return std::nullopt;
    return al.result;
}

namespace {

bool is_identity_mapping(const AnalogyMapping& m) {
    return m.pairs.empty() && m.shared_atoms.empty() && m.skeleton.is_atom() &&
           m.skeleton.atom().text.empty();
}

Term apply_rec(const std::map<std::string, const Term*>& lefts,
               const std::set<std::string>& shared, const Term& t) {
    auto it = lefts.find(print_stanza(t));
    if (it != lefts.end()) return *it->second;
    if (t.is_atom()) {
        if (shared.count(t.atom().text)) return t;
        throw UnmappedAtomError("atom '" + t.atom().text +
                                "' is not covered by the analogy mapping");
    }
    if (t.is_application()) {
        std::vector<Term> args;
        args.reserve(t.app().args.size());
        for (const auto& a : t.app().args) args.push_back(apply_rec(lefts, shared, a));
        return make_app(t.app().category, t.app().tag, std::move(args));
    }
    if (t.is_set()) {
        std::vector<Term> members;
        members.reserve(t.set().members.size());
        for (const auto& m2 : t.set().members) members.push_back(apply_rec(lefts, shared, m2));
        return make_set(std::move(members));
    }
    return t; // subgraph reference
}

} // namespace

Term apply_mapping(const AnalogyMapping& m, const Term& t) {
    if (is_identity_mapping(m)) return t;
    std::map<std::string, const Term*> lefts;
    for (const auto& [l, r] : m.pairs) lefts.emplace(print_stanza(l), &r);
    return apply_rec(lefts, m.shared_atoms, t);
}

} // namespace iatc
