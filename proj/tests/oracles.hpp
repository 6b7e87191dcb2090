#ifndef IATC_TESTS_ORACLES_HPP
#define IATC_TESTS_ORACLES_HPP

// Independent reimplementations used to cross-check the library: a random
// term generator, a label-propagation components oracle, a zipper-style
// analogy recompute, and a brute-force atom-bijection search.

#include <algorithm>
#include <array>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "iatc/analogy.hpp"
#include "iatc/graph.hpp"
#include "iatc/parser.hpp"
#include "iatc/term.hpp"

namespace oracles {

inline std::string corpus_path(const std::string& name) {
    return std::string(IATC_CORPUS_DIR) + "/" + name;
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------- terms

// Atom texts are kept inside the grammar: no brackets or braces, balanced
// parentheses, no top-level ',' or ';', already whitespace-normalized.
inline std::string random_atom_text(std::mt19937& rng) {
    static const std::vector<std::string> pool = {
        "x",
        "y",
        "z",
        "problem",
        "perm_view",
        "a b",
        "f(x, y)",
        "(sqrt(2) + sqrt(3))^2012",
        "a #b",
        "n >= 2",
        "G != H",
        "compute 500th digit of (x+y)^2012",
        "0.577",
        "case A",
        "S(n) - S(n-1)",
    };
    std::uniform_int_distribution<int> which(0, 9);
    if (which(rng) < 7) {
        std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
        return pool[pick(rng)];
    }
    static const char cs[] = "abcdefghijklmnopqrstuvwxyz0123456789_";
    std::uniform_int_distribution<int> len(1, 12);
    std::uniform_int_distribution<int> ch(0, (int)sizeof(cs) - 2);
    std::string s;
    int n = len(rng);
    for (int i = 0; i < n; ++i) s.push_back(cs[ch(rng)]);
    return s;
}

inline iatc::Term random_term(std::mt19937& rng, int max_depth) {
    static const std::vector<std::pair<iatc::Category, std::string>> tags = {
        {iatc::Category::perf, "Assert"},     {iatc::Category::perf, "Judge"},
        {iatc::Category::rel, "implies"},     {iatc::Category::rel, "not"},
        {iatc::Category::rel, "conjunction"}, {iatc::Category::struct_, "used_in"},
        {iatc::Category::meta, "goal"},       {iatc::Category::meta, "strategy"},
        {iatc::Category::value, "easy"},      {iatc::Category::rel, "zzz_custom"},
        {iatc::Category::meta, "MyTag"},      {iatc::Category::value, "q1"},
    };
    static const std::vector<std::string> refs = {"G1", "lemma.2", "sub-proof", "S"};

    std::uniform_int_distribution<int> kind(0, 99);
    int k = max_depth <= 0 ? kind(rng) % 35 : kind(rng);
    if (k < 30) return iatc::make_atom(random_atom_text(rng));
    if (k < 35) {
        std::uniform_int_distribution<std::size_t> pick(0, refs.size() - 1);
        return iatc::make_ref(refs[pick(rng)]);
    }
    if (k < 50) {
        std::uniform_int_distribution<int> n(1, 3);
        std::vector<iatc::Term> members;
        int c = n(rng);
        for (int i = 0; i < c; ++i) members.push_back(random_term(rng, max_depth - 1));
        return iatc::make_set(std::move(members));
    }
    std::uniform_int_distribution<std::size_t> pick(0, tags.size() - 1);
    std::uniform_int_distribution<int> n(1, 3);
    auto [cat, tag] = tags[pick(rng)];
    std::vector<iatc::Term> args;
    int c = n(rng);
    for (int i = 0; i < c; ++i) args.push_back(random_term(rng, max_depth - 1));
    return iatc::make_app(cat, tag, std::move(args));
}

// ----------------------------------------------------------- components

// Label propagation to a fixpoint, then relabeled in first-encounter
// order to match the library's convention.
inline std::vector<int> components_oracle(std::size_t n, const std::vector<iatc::Edge>& edges) {
    std::vector<int> label(n);
    std::iota(label.begin(), label.end(), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& e : edges) {
            int m = std::min(label[e.from], label[e.to]);
            if (label[e.from] != m) {
                label[e.from] = m;
                changed = true;
            }
            if (label[e.to] != m) {
                label[e.to] = m;
                changed = true;
            }
        }
    }
    std::map<int, int> renumber;
    std::vector<int> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto [it, fresh] = renumber.emplace(label[i], (int)renumber.size());
        out[i] = it->second;
    }
    return out;
}

// -------------------------------------------------------------- analogy

struct ZipRow {
    std::string l, r;
    bool atoms = false;      // both sides are atoms
    bool structural = false; // shapes agree at this position
};

inline bool zip_tags_match(const iatc::Application& a, const iatc::Application& b) {
    if (a.category != b.category || a.tag.size() != b.tag.size()) return false;
    for (std::size_t i = 0; i < a.tag.size(); ++i)
        if (std::tolower((unsigned char)a.tag[i]) != std::tolower((unsigned char)b.tag[i]))
            return false;
    return true;
}

inline void zip_walk(const iatc::Term& a, const iatc::Term& b, std::vector<ZipRow>& rows) {
    ZipRow row{iatc::print_stanza(a), iatc::print_stanza(b),
               a.is_atom() && b.is_atom(), false};
    bool recurse = false;
    if (a.is_atom() && b.is_atom()) {
        row.structural = a.atom().text == b.atom().text;
    } else if (a.is_ref() && b.is_ref()) {
        row.structural = a.ref().name == b.ref().name;
    } else if (a.is_set() && b.is_set()) {
        row.structural = a.set().members.size() == b.set().members.size();
        recurse = row.structural;
    } else if (a.is_application() && b.is_application()) {
        row.structural = zip_tags_match(a.app(), b.app()) &&
                         a.app().args.size() == b.app().args.size();
        recurse = row.structural;
    }
    rows.push_back(row);
    if (!recurse) return;
    if (a.is_set()) {
        for (std::size_t i = 0; i < a.set().members.size(); ++i)
            zip_walk(a.set().members[i], b.set().members[i], rows);
    } else {
        for (std::size_t i = 0; i < a.app().args.size(); ++i)
            zip_walk(a.app().args[i], b.app().args[i], rows);
    }
}

struct ZipOutcome {
    bool aligns = false;
    long matched = 0;
    long max_nodes = 0;
    std::vector<std::pair<std::string, std::string>> pairs; // placeholder order
    std::set<std::string> shared;
};

inline ZipOutcome zip_oracle(const iatc::Term& a, const iatc::Term& b) {
    ZipOutcome out;
    if (a.is_application() && b.is_application() && !zip_tags_match(a.app(), b.app()))
        return out;
    std::vector<ZipRow> rows;
    zip_walk(a, b, rows);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows.size(); ++j) {
            if (rows[i].l == rows[j].l && rows[i].r != rows[j].r) return out;
            if (rows[i].r == rows[j].r && rows[i].l != rows[j].l) return out;
        }
    out.aligns = true;
    out.max_nodes = (long)std::max(iatc::node_count(a), iatc::node_count(b));
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& row : rows) {
        if (row.structural) {
            out.matched += 1;
            if (row.atoms) out.shared.insert(row.l);
        } else {
            if (row.atoms) out.matched += 1;
            if (seen.insert({row.l, row.r}).second) out.pairs.push_back({row.l, row.r});
        }
    }
    return out;
}

// Brute-force bijection search over the fixed 3-atom universe. Tag and
// category spellings in that universe avoid the letters x, y, z, so a
// character substitution on the printed form is a faithful atom renaming.
inline std::vector<iatc::Term> analogy_universe(int depth) {
    std::vector<iatc::Term> atoms = {iatc::make_atom("x"), iatc::make_atom("y"),
                                     iatc::make_atom("z")};
    if (depth <= 1) return atoms;
    std::vector<iatc::Term> prev = analogy_universe(depth - 1);
    std::vector<iatc::Term> out = atoms;
    for (const auto& t : prev) {
        out.push_back(iatc::make_app(iatc::Category::rel, "not", {t}));
        out.push_back(iatc::make_app(iatc::Category::value, "useful", {t}));
    }
    for (const auto& s : prev)
        for (const auto& t : prev)
            out.push_back(iatc::make_app(iatc::Category::rel, "implies", {s, t}));
    return out;
}

inline std::string charsub(std::string s, const std::array<char, 3>& image) {
    for (auto& c : s) {
        if (c == 'x') c = image[0];
        else if (c == 'y') c = image[1];
        else if (c == 'z') c = image[2];
    }
    return s;
}

// True iff some injective atom renaming maps a onto b. Every partial
// injective map on {x,y,z} extends to a permutation, so permutations
// suffice.
inline bool renaming_exists(const std::string& a_print, const std::string& b_print) {
    static const std::array<std::array<char, 3>, 6> perms = {{{'x', 'y', 'z'},
                                                              {'x', 'z', 'y'},
                                                              {'y', 'x', 'z'},
                                                              {'y', 'z', 'x'},
                                                              {'z', 'x', 'y'},
                                                              {'z', 'y', 'x'}}};
    for (const auto& p : perms)
        if (charsub(a_print, p) == b_print) return true;
    return false;
}

} // namespace oracles

#endif
