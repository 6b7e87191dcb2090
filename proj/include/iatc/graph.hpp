#ifndef IATC_GRAPH_HPP
#define IATC_GRAPH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "iatc/dialogue.hpp"
#include "iatc/schema.hpp"
#include "iatc/term.hpp"

namespace iatc {

enum class NodeKind { atom, expr, performative, subgraph };

const char* node_kind_name(NodeKind k);

// One graph node. Which fields are meaningful depends on kind:
//   atom         text (normalized content text, globally unique)
//   expr         category + tag (one node per tag occurrence)
//   performative tag + anchor + unspoken (one per perf-rooted stanza)
//   subgraph     text (the definition name)
struct Node {
    NodeKind kind = NodeKind::atom;
    std::string text;
    Category category = Category::perf;
    std::string tag;
    std::optional<std::string> anchor;
    bool unspoken = false;
};

using NodeId = std::int32_t;

struct Edge {
    NodeId from = 0;
    NodeId to = 0;
    std::string role; // signature slot name, or "member"
};

struct GraphBuildError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownAtomError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Append-only typed multigraph. Node ids are dense indexes in creation
// order, which keeps every export byte-deterministic for a given build.
class ArgGraph {
public:
    NodeId intern_atom(const std::string& text);
    NodeId add_node(Node n);
    void add_edge(NodeId from, NodeId to, std::string role);

    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<Edge>& edges() const { return edges_; }
    std::optional<NodeId> find_atom(const std::string& text) const;

private:
    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    std::map<std::string, NodeId> atom_ids_;
};

// Compiles stanzas into a graph. Terms are canonicalized first, so aliases
// land on canonical tags and edge roles come from canonical signatures.
// Content atoms unify across all stanzas, subgraph members included.
// Throws GraphBuildError for anchors missing from the dialogue, references
// to undefined subgraphs, and cyclic subgraph nesting.
ArgGraph build_graph(const std::vector<Stanza>& stanzas, const Dialogue& dialogue,
                     const TagRegistry& reg);

// Disjoint union except for content atoms, which unify by text.
ArgGraph merge(const ArgGraph& a, const ArgGraph& b);

// The object->statement usage pairs derived from used_in expression nodes.
std::vector<std::pair<NodeId, NodeId>> used_in_pairs(const ArgGraph& g);

// Nodes reachable from the named atom by following used_in pairs forward.
// The start node is excluded unless it sits on a cycle. Throws
// UnknownAtomError when no such atom exists.
std::vector<NodeId> used_in_closure(const ArgGraph& g, const std::string& atom_text);

struct Components {
    std::vector<int> component_of; // indexed by NodeId
    int count = 0;
};

// Connected components ignoring edge direction.
Components components(const ArgGraph& g);

// Content atoms ranked by total degree, ties broken by text. Every atom in
// the graph appears exactly once.
std::vector<std::pair<std::string, int>> degree_centrality(const ArgGraph& g);

enum class ExportFormat { dot, graphml, json };
std::optional<ExportFormat> export_format_from_name(const std::string& name);

std::string export_dot(const ArgGraph& g);
std::string export_graphml(const ArgGraph& g);
std::string export_json(const ArgGraph& g);
std::string export_graph(const ArgGraph& g, ExportFormat f);

} // namespace iatc

#endif
