#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "iatc/analogy.hpp"
#include "iatc/analysis.hpp"
#include "iatc/dialogue.hpp"
#include "iatc/graph.hpp"
#include "iatc/parser.hpp"
#include "iatc/schema.hpp"

namespace {

// I/O failures exit 2; everything downstream of a successful read is a
// domain error and exits 1.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("cannot read '" + path + "'");
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("cannot write '" + path + "'");
}

struct LoadedCorpus {
    std::vector<iatc::Stanza> stanzas;
    std::vector<std::string> report; // formatted diagnostic lines, file order
    int errors = 0;
    int warnings = 0;
    int files = 0;
};

LoadedCorpus load_corpus(const std::vector<std::string>& files, const iatc::TagRegistry& reg) {
    LoadedCorpus out;
    for (const auto& f : files) {
        std::string text = read_file(f);
        out.files += 1;
        iatc::AnnotationDoc doc;
        try {
            doc = iatc::parse_annotation_file(text, f);
        } catch (const iatc::FormatError& e) {
            out.report.push_back(std::string("error: ") + e.what());
            out.errors += 1;
            continue;
        }
        auto diags = doc.diagnostics;
        for (const auto& s : doc.stanzas) {
            auto v = iatc::validate(s, reg);
            diags.insert(diags.end(), v.begin(), v.end());
        }
        for (const auto& d : diags) {
            out.report.push_back(iatc::format_diagnostic(d, f));
            if (d.severity == iatc::Severity::Error)
                out.errors += 1;
            else
                out.warnings += 1;
        }
        out.stanzas.insert(out.stanzas.end(), doc.stanzas.begin(), doc.stanzas.end());
    }
    return out;
}

int run_lint(const std::vector<std::string>& files, const iatc::TagRegistry& reg, bool strict) {
    LoadedCorpus c = load_corpus(files, reg);
    for (const auto& line : c.report) std::cout << line << "\n";
    std::cout << "checked " << c.stanzas.size() << " stanza(s) in " << c.files << " file(s): "
              << c.errors << " error(s), " << c.warnings << " warning(s)\n";
    if (c.errors > 0) return 1;
    if (strict && c.warnings > 0) return 1;
    return 0;
}

// Shared front half of graph/stats: load, validate, bail on errors.
std::optional<LoadedCorpus> load_validated(const std::vector<std::string>& files,
                                           const iatc::TagRegistry& reg, bool strict) {
    LoadedCorpus c = load_corpus(files, reg);
    for (const auto& line : c.report) std::cerr << line << "\n";
    if (c.errors > 0 || (strict && c.warnings > 0)) return std::nullopt;
    return c;
}

int run_graph(const std::vector<std::string>& files, const std::string& dialogue_path,
              const std::string& format_name, const std::string& output_path,
              const iatc::TagRegistry& reg, bool strict) {
    auto c = load_validated(files, reg, strict);
    if (!c) return 1;
    iatc::Dialogue dialogue;
    if (!dialogue_path.empty())
        dialogue = iatc::Dialogue::from_json_text(read_file(dialogue_path), dialogue_path);
    iatc::ArgGraph g = iatc::build_graph(c->stanzas, dialogue, reg);
    auto fmt = iatc::export_format_from_name(format_name);
    if (!fmt) {
        std::cerr << "iatc: error: unknown format '" << format_name << "'\n";
        return 2;
    }
    std::string doc = iatc::export_graph(g, *fmt);
    if (output_path.empty())
        std::cout << doc;
    else
        write_file(output_path, doc);
    return 0;
}

int run_stats(const std::vector<std::string>& files, const std::string& dialogue_path,
              int bin_minutes, const std::string& labels_path, const std::string& output_dir,
              const std::string& span_start_text, const std::string& span_end_text,
              const iatc::TagRegistry& reg, bool strict) {
    auto c = load_validated(files, reg, strict);
    if (!c) return 1;

    auto emit = [&](const std::string& name, const std::string& content) {
        std::string path = output_dir + "/" + name;
        write_file(path, content);
        std::cout << "wrote " << path << "\n";
    };

    emit("counts.csv", iatc::counts_csv(iatc::count_tags(c->stanzas, reg)));

    if (!dialogue_path.empty()) {
        iatc::Dialogue dialogue =
            iatc::Dialogue::from_json_text(read_file(dialogue_path), dialogue_path);
        std::optional<iatc::Minute> start, end;
        if (!span_start_text.empty()) {
            start = iatc::parse_iso_minute(span_start_text);
            if (!start) {
                std::cerr << "iatc: error: bad --span-start '" << span_start_text << "'\n";
                return 2;
            }
        }
        if (!span_end_text.empty()) {
            end = iatc::parse_iso_minute(span_end_text);
            if (!end) {
                std::cerr << "iatc: error: bad --span-end '" << span_end_text << "'\n";
                return 2;
            }
        }
        // Default span: tight hull of the anchored stanzas' timestamps.
        for (const auto& s : c->stanzas) {
            if (!s.anchor) continue;
            const iatc::Locution* loc = dialogue.find(*s.anchor);
            if (!loc) continue; // timeline() reports the missing anchor
            if (span_start_text.empty())
                start = start ? std::min(*start, loc->timestamp) : loc->timestamp;
            if (span_end_text.empty())
                end = end ? std::max(*end, loc->timestamp) : loc->timestamp;
        }
        if (start && end) {
            auto bins = iatc::timeline(c->stanzas, dialogue, bin_minutes, *start, *end, reg);
            emit("timeline.csv", iatc::timeline_csv(bins));
        } else {
            std::cerr << "no anchored stanzas and no explicit span; skipping timeline.csv\n";
        }
    }

    if (!labels_path.empty()) {
        iatc::LabelMap labels = iatc::parse_labels_text(read_file(labels_path), labels_path);
        emit("composition.csv",
             iatc::composition_csv(iatc::category_composition(c->stanzas, labels, reg)));
        emit("shares.csv", iatc::shares_csv(iatc::label_shares(labels)));
    }
    return 0;
}

int run_analogy(const std::vector<std::string>& inputs, const iatc::TagRegistry& reg) {
    std::vector<std::string> texts = inputs;
    int stdin_uses = 0;
    for (auto& t : texts)
        if (t == "-") stdin_uses += 1;
    if (stdin_uses > 1) {
        std::cerr << "iatc: error: at most one stanza may come from stdin\n";
        return 2;
    }
    for (auto& t : texts) {
        if (t != "-") continue;
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        t = ss.str();
    }
    iatc::Term a, b;
    try {
        a = iatc::canonicalize(iatc::parse_stanza(texts[0]), reg);
        b = iatc::canonicalize(iatc::parse_stanza(texts[1]), reg);
    } catch (const iatc::ParseError& e) {
        std::cerr << "iatc: error: " << e.what() << "\n";
        return 1;
    }
    auto m = iatc::align(a, b);
    if (!m) {
        std::cout << "no alignment: the root applications differ\n";
        return 1;
    }
    for (std::size_t i = 0; i < m->pairs.size(); ++i)
        std::cout << "?" << (i + 1) << ": " << iatc::print_stanza(m->pairs[i].first) << "  ~  "
                  << iatc::print_stanza(m->pairs[i].second) << "\n";
    std::cout << "skeleton: " << iatc::print_stanza(m->skeleton) << "\n";
    if (!m->shared_atoms.empty()) {
        std::cout << "shared:";
        for (const auto& s : m->shared_atoms) std::cout << " " << s;
        std::cout << "\n";
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", m->score());
    std::cout << "score: " << buf << " (" << m->matched << "/" << m->max_nodes << ")\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"IATC annotation toolkit: lint, graph, stats, analogy"};
    app.require_subcommand(1);

    std::string registry_path;
    bool strict = false;
    app.add_option("--registry", registry_path, "registry extension file")
        ->envname("IATC_REGISTRY");
    app.add_flag("--strict", strict, "treat warnings as errors");

    auto* lint = app.add_subcommand("lint", "parse and validate annotation files");
    std::vector<std::string> lint_files;
    lint->add_option("files", lint_files, "annotation files")->required();

    auto* graph = app.add_subcommand("graph", "compile annotations into an argument graph");
    std::vector<std::string> g_ann;
    std::string g_dialogue, g_format = "dot", g_output;
    graph->add_option("--annotations", g_ann, "annotation files")->required();
    graph->add_option("--dialogue", g_dialogue, "dialogue JSON file");
    graph->add_option("--format", g_format, "dot, graphml or json");
    graph->add_option("--output", g_output, "write here instead of stdout");

    auto* stats = app.add_subcommand("stats", "emit corpus statistics as CSV");
    std::vector<std::string> s_ann;
    std::string s_dialogue, s_labels, s_outdir = ".", s_span_start, s_span_end;
    int s_bin_minutes = 5;
    stats->add_option("--annotations", s_ann, "annotation files")->required();
    stats->add_option("--dialogue", s_dialogue, "dialogue JSON file (enables timeline.csv)");
    stats->add_option("--bin-minutes", s_bin_minutes, "timeline bin width")
        ->check(CLI::PositiveNumber);
    stats->add_option("--labels", s_labels, "locution labels file (enables composition.csv)");
    stats->add_option("--output-dir", s_outdir, "directory for the CSV files");
    stats->add_option("--span-start", s_span_start, "timeline span start, ISO minute");
    stats->add_option("--span-end", s_span_end, "timeline span end, ISO minute");

    auto* analogy = app.add_subcommand("analogy", "align two stanzas");
    std::vector<std::string> an_inputs;
    analogy->add_option("stanzas", an_inputs, "two stanza literals ('-' reads one from stdin)")
        ->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        iatc::TagRegistry reg = iatc::TagRegistry::defaults();
        if (!registry_path.empty())
            reg = reg.extend_with_text(read_file(registry_path), registry_path);

        if (lint->parsed()) return run_lint(lint_files, reg, strict);
        if (graph->parsed())
            return run_graph(g_ann, g_dialogue, g_format, g_output, reg, strict);
        if (stats->parsed())
            return run_stats(s_ann, s_dialogue, s_bin_minutes, s_labels, s_outdir, s_span_start,
                             s_span_end, reg, strict);
        if (analogy->parsed()) return run_analogy(an_inputs, reg);
    } catch (const IoError& e) {
        std::cerr << "iatc: error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "iatc: error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
