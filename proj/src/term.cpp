#include "iatc/term.hpp"

#include <algorithm>
#include <cctype>

namespace iatc {

const char* category_name(Category c) {
    switch (c) {
        case Category::perf: return "perf";
        case Category::rel: return "rel";
        case Category::value: return "value";
        case Category::meta: return "meta";
        case Category::struct_: return "struct";
    }
    return "?";
}

static std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::optional<Category> category_from_name(const std::string& name) {
    std::string n = lower(name);
    if (n == "perf") return Category::perf;
    if (n == "rel") return Category::rel;
    if (n == "value") return Category::value;
    if (n == "meta") return Category::meta;
    if (n == "struct") return Category::struct_;
    return std::nullopt;
}

Term make_atom(std::string text) { return Term{Atom{std::move(text)}}; }
Term make_ref(std::string name) { return Term{SubgraphRef{std::move(name)}}; }

Term make_app(Category c, std::string tag, std::vector<Term> args) {
    return Term{Application{c, std::move(tag), std::move(args)}};
}

Term make_set(std::vector<Term> members) { return Term{SetTerm{std::move(members)}}; }

static bool iequal(const std::string& a, const std::string& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (std::tolower((unsigned char)a[i]) != std::tolower((unsigned char)b[i]))
            return false;
    return true;
}

bool equal(const Term& a, const Term& b) {
    if (a.node.index() != b.node.index()) return false;
    if (a.is_atom()) return a.atom().text == b.atom().text;
    if (a.is_ref()) return a.ref().name == b.ref().name;
    if (a.is_set()) {
        const auto& ma = a.set().members;
        const auto& mb = b.set().members;
        if (ma.size() != mb.size()) return false;
        for (std::size_t i = 0; i < ma.size(); ++i)
            if (!equal(ma[i], mb[i])) return false;
        return true;
    }
    const auto& pa = a.app();
    const auto& pb = b.app();
    if (pa.category != pb.category || !iequal(pa.tag, pb.tag)) return false;
    if (pa.args.size() != pb.args.size()) return false;
    for (std::size_t i = 0; i < pa.args.size(); ++i)
        if (!equal(pa.args[i], pb.args[i])) return false;
    return true;
}

std::size_t node_count(const Term& t) {
    std::size_t n = 1;
    if (t.is_application())
        for (const auto& a : t.app().args) n += node_count(a);
    else if (t.is_set())
        for (const auto& m : t.set().members) n += node_count(m);
    return n;
}

} // namespace iatc
