#include "iatc/graph.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

namespace iatc {

const char* node_kind_name(NodeKind k) {
    switch (k) {
        case NodeKind::atom: return "atom";
        case NodeKind::expr: return "expr";
        case NodeKind::performative: return "performative";
        case NodeKind::subgraph: return "subgraph";
    }
    return "?";
}

NodeId ArgGraph::intern_atom(const std::string& text) {
    auto it = atom_ids_.find(text);
    if (it != atom_ids_.end()) return it->second;
    NodeId id = (NodeId)nodes_.size();
    Node n;
    n.kind = NodeKind::atom;
    n.text = text;
    nodes_.push_back(std::move(n));
    atom_ids_.emplace(text, id);
    return id;
}

NodeId ArgGraph::add_node(Node n) {
    NodeId id = (NodeId)nodes_.size();
    if (n.kind == NodeKind::atom) return intern_atom(n.text);
    nodes_.push_back(std::move(n));
    return id;
}

void ArgGraph::add_edge(NodeId from, NodeId to, std::string role) {
    edges_.push_back(Edge{from, to, std::move(role)});
}

std::optional<NodeId> ArgGraph::find_atom(const std::string& text) const {
    auto it = atom_ids_.find(text);
    if (it == atom_ids_.end()) return std::nullopt;
    return it->second;
}

namespace {

void collect_refs(const Term& t, std::vector<std::string>& out) {
    if (t.is_ref()) {
        out.push_back(t.ref().name);
    } else if (t.is_application()) {
        for (const auto& a : t.app().args) collect_refs(a, out);
    } else if (t.is_set()) {
        for (const auto& m : t.set().members) collect_refs(m, out);
    }
}

struct Builder {
    ArgGraph& g;
    const TagRegistry& reg;
    const std::map<std::string, NodeId>& subgraph_ids;

    NodeId build(const Term& t, Category parent_cat) {
        if (t.is_atom()) return g.intern_atom(t.atom().text);
        if (t.is_ref()) return subgraph_ids.at(t.ref().name);
        if (t.is_set()) {
            Node n;
            n.kind = NodeKind::expr;
            n.category = parent_cat;
            n.tag = "set";
            NodeId id = g.add_node(std::move(n));
            for (const auto& m : t.set().members)
                g.add_edge(id, build(m, parent_cat), "member");
            return id;
        }
        const Application& app = t.app();
        Node n;
        n.kind = NodeKind::expr;
        n.category = app.category;
        n.tag = app.tag;
        NodeId id = g.add_node(std::move(n));
        attach_args(id, app);
        return id;
    }

    void attach_args(NodeId id, const Application& app) {
        const TagSignature* sig = reg.find_exact(app.category, app.tag);
        for (std::size_t i = 0; i < app.args.size(); ++i) {
            std::string role = sig && !sig->slots.empty() ? sig->slot_at(i).name
                                                          : "a" + std::to_string(i + 1);
            g.add_edge(id, build(app.args[i], app.category), role);
        }
    }

    NodeId build_root(const Stanza& st) {
        // Perf-rooted stanzas become performative nodes; analyst-inserted
        // structural stanzas stay pure expression trees.
        if (st.term.is_application() && st.term.app().category == Category::perf) {
            const Application& app = st.term.app();
            Node n;
            n.kind = NodeKind::performative;
            n.tag = app.tag;
            n.anchor = st.anchor;
            n.unspoken = st.unspoken;
            NodeId id = g.add_node(std::move(n));
            attach_args(id, app);
            return id;
        }
        return build(st.term, st.term.is_application() ? st.term.app().category
                                                       : Category::struct_);
    }
};

} // namespace

ArgGraph build_graph(const std::vector<Stanza>& stanzas, const Dialogue& dialogue,
                     const TagRegistry& reg) {
    std::vector<Stanza> canon = stanzas;
    for (auto& st : canon) st.term = canonicalize(st.term, reg);

    // Subgraph definitions bind across the whole input, so owners are
    // collected before any reference is resolved.
    std::vector<std::string> owner_order;
    std::set<std::string> owners;
    for (const auto& st : canon)
        if (st.subgraph_owner && owners.insert(*st.subgraph_owner).second)
            owner_order.push_back(*st.subgraph_owner);

    for (const auto& st : canon) {
        if (st.anchor && !dialogue.find(*st.anchor))
            throw GraphBuildError("stanza anchored to unknown locution '" + *st.anchor + "'");
        std::vector<std::string> refs;
        collect_refs(st.term, refs);
        for (const auto& r : refs)
            if (!owners.count(r))
                throw GraphBuildError("reference to undefined subgraph '#" + r + "'");
    }

    // Nesting must be acyclic: a subgraph whose members reference their own
    // owner (directly or transitively) has no meaningful expansion.
    {
        std::map<std::string, std::set<std::string>> deps;
        for (const auto& st : canon) {
            if (!st.subgraph_owner) continue;
            std::vector<std::string> refs;
            collect_refs(st.term, refs);
            for (const auto& r : refs) deps[*st.subgraph_owner].insert(r);
        }
        std::map<std::string, int> state; // 0 new, 1 open, 2 done
        std::function<void(const std::string&)> visit = [&](const std::string& name) {
            int& s = state[name];
            if (s == 1)
                throw GraphBuildError("cyclic subgraph nesting involving '" + name + "'");
            if (s == 2) return;
            s = 1;
            for (const auto& d : deps[name]) visit(d);
            s = 2;
        };
        for (const auto& o : owner_order) visit(o);
    }

    ArgGraph g;
    std::map<std::string, NodeId> subgraph_ids;
    for (const auto& name : owner_order) {
        Node n;
        n.kind = NodeKind::subgraph;
        n.text = name;
        subgraph_ids[name] = g.add_node(std::move(n));
    }

    Builder b{g, reg, subgraph_ids};
    for (const auto& st : canon) {
        NodeId root = b.build_root(st);
        if (st.subgraph_owner)
            g.add_edge(subgraph_ids.at(*st.subgraph_owner), root, "member");
    }
    return g;
}

ArgGraph merge(const ArgGraph& a, const ArgGraph& b) {
    ArgGraph out;
    for (const auto& n : a.nodes()) out.add_node(n);
    for (const auto& e : a.edges()) out.add_edge(e.from, e.to, e.role);
    std::vector<NodeId> remap(b.nodes().size());
    for (std::size_t i = 0; i < b.nodes().size(); ++i)
        remap[i] = out.add_node(b.nodes()[i]); // atoms unify, the rest append
    for (const auto& e : b.edges()) out.add_edge(remap[e.from], remap[e.to], e.role);
    return out;
}

std::vector<std::pair<NodeId, NodeId>> used_in_pairs(const ArgGraph& g) {
    std::vector<std::pair<NodeId, NodeId>> out;
    const auto& nodes = g.nodes();
    std::vector<std::optional<NodeId>> obj(nodes.size()), stmt(nodes.size());
    for (const auto& e : g.edges()) {
        const Node& n = nodes[e.from];
        if (n.kind != NodeKind::expr || n.category != Category::struct_ || n.tag != "used_in")
            continue;
        if (e.role == "o") obj[e.from] = e.to;
        else if (e.role == "s") stmt[e.from] = e.to;
    }
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (obj[i] && stmt[i]) out.emplace_back(*obj[i], *stmt[i]);
    return out;
}

std::vector<NodeId> used_in_closure(const ArgGraph& g, const std::string& atom_text) {
    auto start = g.find_atom(atom_text);
    if (!start)
        throw UnknownAtomError("no content atom named '" + atom_text + "'");
    std::multimap<NodeId, NodeId> next;
    for (const auto& [o, s] : used_in_pairs(g)) next.emplace(o, s);

    std::set<NodeId> seen;
    std::vector<NodeId> queue{*start};
    while (!queue.empty()) {
        NodeId cur = queue.back();
        queue.pop_back();
        auto [lo, hi] = next.equal_range(cur);
        for (auto it = lo; it != hi; ++it)
            if (seen.insert(it->second).second) queue.push_back(it->second);
    }
    return std::vector<NodeId>(seen.begin(), seen.end());
}

Components components(const ArgGraph& g) {
    std::size_t n = g.nodes().size();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (const auto& e : g.edges()) {
        int a = find(e.from), b = find(e.to);
        if (a != b) parent[a] = b;
    }
    Components out;
    out.component_of.resize(n);
    std::map<int, int> label;
    for (std::size_t i = 0; i < n; ++i) {
        int root = find((int)i);
        auto [it, fresh] = label.emplace(root, out.count);
        if (fresh) ++out.count;
        out.component_of[i] = it->second;
    }
    return out;
}

std::vector<std::pair<std::string, int>> degree_centrality(const ArgGraph& g) {
    std::vector<int> degree(g.nodes().size(), 0);
    for (const auto& e : g.edges()) {
        ++degree[e.from];
        ++degree[e.to];
    }
    std::vector<std::pair<std::string, int>> out;
    for (std::size_t i = 0; i < g.nodes().size(); ++i)
        if (g.nodes()[i].kind == NodeKind::atom)
            out.emplace_back(g.nodes()[i].text, degree[i]);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    return out;
}

std::optional<ExportFormat> export_format_from_name(const std::string& name) {
    if (name == "dot") return ExportFormat::dot;
    if (name == "graphml") return ExportFormat::graphml;
    if (name == "json") return ExportFormat::json;
    return std::nullopt;
}

namespace {

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string node_label(const Node& n) {
    switch (n.kind) {
        case NodeKind::atom: return n.text;
        case NodeKind::subgraph: return "#" + n.text;
        case NodeKind::performative: {
            std::string l = "perf[" + n.tag + "]";
            if (n.unspoken) l += " :unspoken";
            if (n.anchor) l += "\n@" + *n.anchor;
            return l;
        }
        case NodeKind::expr: return std::string(category_name(n.category)) + "[" + n.tag + "]";
    }
    return "";
}

const char* node_shape(NodeKind k) {
    switch (k) {
        case NodeKind::atom: return "box";
        case NodeKind::expr: return "ellipse";
        case NodeKind::performative: return "hexagon";
        case NodeKind::subgraph: return "folder";
    }
    return "box";
}

// Expression and performative nodes reachable from a subgraph's member
// roots; atoms stay outside clusters because they are shared globally.
std::vector<std::vector<NodeId>> cluster_members(const ArgGraph& g,
                                                 std::vector<NodeId>& cluster_roots) {
    const auto& nodes = g.nodes();
    std::multimap<NodeId, NodeId> adj;
    std::multimap<NodeId, NodeId> member_roots;
    for (const auto& e : g.edges()) {
        if (nodes[e.from].kind == NodeKind::subgraph && e.role == "member")
            member_roots.emplace(e.from, e.to);
        else
            adj.emplace(e.from, e.to);
    }
    std::vector<std::vector<NodeId>> out;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i].kind != NodeKind::subgraph) continue;
        cluster_roots.push_back((NodeId)i);
        std::set<NodeId> seen;
        std::vector<NodeId> stack;
        auto [lo, hi] = member_roots.equal_range((NodeId)i);
        for (auto it = lo; it != hi; ++it) stack.push_back(it->second);
        std::vector<NodeId> members;
        while (!stack.empty()) {
            NodeId cur = stack.back();
            stack.pop_back();
            NodeKind k = nodes[cur].kind;
            if (k == NodeKind::atom || k == NodeKind::subgraph) continue;
            if (!seen.insert(cur).second) continue;
            members.push_back(cur);
            auto [l2, h2] = adj.equal_range(cur);
            for (auto it = l2; it != h2; ++it) stack.push_back(it->second);
        }
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
    }
    return out;
}

} // namespace

std::string export_dot(const ArgGraph& g) {
    std::ostringstream out;
    out << "digraph iatc {\n  rankdir=LR;\n";

    std::vector<NodeId> cluster_roots;
    auto clusters = cluster_members(g, cluster_roots);
    std::vector<char> clustered(g.nodes().size(), 0);
    for (const auto& c : clusters)
        for (NodeId id : c) clustered[id] = 1;

    auto emit_node = [&](NodeId i, const char* indent) {
        const Node& n = g.nodes()[i];
        out << indent << "n" << i << " [shape=" << node_shape(n.kind) << ", label=\"";
        std::string label = node_label(n);
        for (char c : label) {
            if (c == '\n') out << "\\n";
            else if (c == '"' || c == '\\') out << '\\' << c;
            else out << c;
        }
        out << "\"];\n";
    };

    for (std::size_t i = 0; i < g.nodes().size(); ++i)
        if (!clustered[i]) emit_node((NodeId)i, "  ");
    for (std::size_t c = 0; c < clusters.size(); ++c) {
        out << "  subgraph cluster_" << c << " {\n    label=\""
            << dot_escape(g.nodes()[cluster_roots[c]].text) << "\";\n";
        for (NodeId id : clusters[c]) emit_node(id, "    ");
        out << "  }\n";
    }
    for (const auto& e : g.edges())
        out << "  n" << e.from << " -> n" << e.to << " [label=\"" << dot_escape(e.role)
            << "\"];\n";
    out << "}\n";
    return out.str();
}

namespace {

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&apos;"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace

std::string export_graphml(const ArgGraph& g) {
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"kind\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n"
        << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
        << "  <key id=\"category\" for=\"node\" attr.name=\"category\" attr.type=\"string\"/>\n"
        << "  <key id=\"tag\" for=\"node\" attr.name=\"tag\" attr.type=\"string\"/>\n"
        << "  <key id=\"anchor\" for=\"node\" attr.name=\"anchor\" attr.type=\"string\"/>\n"
        << "  <key id=\"unspoken\" for=\"node\" attr.name=\"unspoken\" attr.type=\"boolean\"/>\n"
        << "  <key id=\"role\" for=\"edge\" attr.name=\"role\" attr.type=\"string\"/>\n"
        << "  <graph id=\"G\" edgedefault=\"directed\">\n";
    for (std::size_t i = 0; i < g.nodes().size(); ++i) {
        const Node& n = g.nodes()[i];
        out << "    <node id=\"n" << i << "\">\n";
        out << "      <data key=\"kind\">" << node_kind_name(n.kind) << "</data>\n";
        switch (n.kind) {
            case NodeKind::atom:
            case NodeKind::subgraph:
                out << "      <data key=\"label\">" << xml_escape(n.text) << "</data>\n";
                break;
            case NodeKind::expr:
                out << "      <data key=\"category\">" << category_name(n.category)
                    << "</data>\n";
                out << "      <data key=\"tag\">" << xml_escape(n.tag) << "</data>\n";
                break;
            case NodeKind::performative:
                out << "      <data key=\"category\">perf</data>\n";
                out << "      <data key=\"tag\">" << xml_escape(n.tag) << "</data>\n";
                if (n.anchor)
                    out << "      <data key=\"anchor\">" << xml_escape(*n.anchor)
                        << "</data>\n";
                out << "      <data key=\"unspoken\">" << (n.unspoken ? "true" : "false")
                    << "</data>\n";
                break;
        }
        out << "    </node>\n";
    }
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
        const Edge& e = g.edges()[i];
        out << "    <edge id=\"e" << i << "\" source=\"n" << e.from << "\" target=\"n" << e.to
            << "\">\n      <data key=\"role\">" << xml_escape(e.role)
            << "</data>\n    </edge>\n";
    }
    out << "  </graph>\n</graphml>\n";
    return out.str();
}

std::string export_json(const ArgGraph& g) {
    nlohmann::ordered_json doc;
    doc["format"] = "iatc-graph";
    doc["version"] = 1;
    doc["nodes"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < g.nodes().size(); ++i) {
        const Node& n = g.nodes()[i];
        nlohmann::ordered_json j;
        j["id"] = i;
        j["kind"] = node_kind_name(n.kind);
        switch (n.kind) {
            case NodeKind::atom: j["text"] = n.text; break;
            case NodeKind::subgraph: j["name"] = n.text; break;
            case NodeKind::expr:
                j["category"] = category_name(n.category);
                j["tag"] = n.tag;
                break;
            case NodeKind::performative:
                j["tag"] = n.tag;
                if (n.anchor) j["anchor"] = *n.anchor;
                else j["anchor"] = nullptr;
                j["unspoken"] = n.unspoken;
                break;
        }
        doc["nodes"].push_back(std::move(j));
    }
    doc["edges"] = nlohmann::ordered_json::array();
    for (const auto& e : g.edges()) {
        nlohmann::ordered_json j;
        j["from"] = e.from;
        j["to"] = e.to;
        j["role"] = e.role;
        doc["edges"].push_back(std::move(j));
    }
    return doc.dump(2) + "\n";
}

std::string export_graph(const ArgGraph& g, ExportFormat f) {
    switch (f) {
        case ExportFormat::dot: return export_dot(g);
        case ExportFormat::graphml: return export_graphml(g);
        case ExportFormat::json: return export_json(g);
    }
    return "";
}

} // namespace iatc
