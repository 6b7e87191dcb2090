#include "iatc/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace iatc {

void TagCounts::add(const TagCounts& other) {
    for (const auto& [k, v] : other.by_tag) by_tag[k] += v;
    for (const auto& [k, v] : other.alias_spellings) alias_spellings[k] += v;
    for (int i = 0; i < kCategoryCount; ++i) by_category[i] += other.by_category[i];
    total += other.total;
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

void count_term(const Term& t, const TagRegistry& reg, TagCounts& out) {
    if (t.is_set()) {
        for (const auto& m : t.set().members) count_term(m, reg, out);
        return;
    }
    if (!t.is_application()) return;
    const Application& app = t.app();

    Category cat = app.category;
    std::string name = app.tag;
    if (auto res = reg.lookup(app.category, app.tag); res && res->sig) {
        cat = res->sig->category;
        name = res->sig->name;
    }
    out.by_tag[{cat, name}] += 1;
    out.by_category[(int)cat] += 1;
    out.total += 1;
    if (lower(app.tag) != lower(name))
        out.alias_spellings[lower(app.tag)] += 1;

    for (const auto& a : app.args) count_term(a, reg, out);
}

} // namespace

TagCounts count_tags(const Term& term, const TagRegistry& reg) {
    TagCounts out;
    count_term(term, reg, out);
    return out;
}

TagCounts count_tags(const std::vector<Stanza>& stanzas, const TagRegistry& reg) {
    TagCounts out;
    for (const auto& st : stanzas) count_term(st.term, reg, out);
    return out;
}

std::vector<TimelineBin> timeline(const std::vector<Stanza>& stanzas,
                                  const Dialogue& dialogue, int bin_minutes,
                                  Minute span_start, Minute span_end,
                                  const TagRegistry& reg) {
    if (bin_minutes <= 0)
        throw std::invalid_argument("bin width must be positive");
    if (span_end < span_start)
        throw std::invalid_argument("span end precedes span start");

    // D minutes covered, end inclusive. The tail that does not fill a whole
    // bin is folded into the final bin, so the final bin is the only one
    // whose width may differ (it lands in (bin_minutes, 2*bin_minutes]).
    const Minute covered = span_end - span_start + 1;
    const long bins_n = std::max<long>(1, (long)((covered - 1) / bin_minutes));

    std::vector<TimelineBin> bins((std::size_t)bins_n);
    for (long i = 0; i < bins_n; ++i) {
        bins[(std::size_t)i].start = span_start + i * bin_minutes;
        bins[(std::size_t)i].width = bin_minutes;
    }
    bins.back().width = (int)(covered - (bins_n - 1) * (Minute)bin_minutes);

    for (const auto& st : stanzas) {
        if (!st.anchor) continue;
        const Locution* loc = dialogue.find(*st.anchor);
        if (!loc)
            throw std::invalid_argument("anchor '" + *st.anchor + "' not in dialogue");
        if (loc->timestamp < span_start || loc->timestamp > span_end)
            throw AnchorOutsideSpanError(
                "locution '" + loc->id + "' at " + format_iso_minute(loc->timestamp) +
                " falls outside the span " + format_iso_minute(span_start) + " to " +
                format_iso_minute(span_end));
        long idx = std::min<long>((loc->timestamp - span_start) / bin_minutes, bins_n - 1);
        TagCounts c = count_tags(st.term, reg);
        for (int k = 0; k < kCategoryCount; ++k)
            bins[(std::size_t)idx].by_category[k] += c.by_category[k];
    }
    return bins;
}

const char* label_name(ContentLabel l) {
    switch (l) {
        case ContentLabel::Example: return "Example";
        case ContentLabel::Conjecture: return "Conjecture";
        case ContentLabel::Concept: return "Concept";
        case ContentLabel::Proof: return "Proof";
        case ContentLabel::Other: return "Other";
    }
    return "?";
}

std::optional<ContentLabel> label_from_name(const std::string& name) {
    std::string n = lower(name);
    if (n == "example") return ContentLabel::Example;
    if (n == "conjecture") return ContentLabel::Conjecture;
    if (n == "concept") return ContentLabel::Concept;
    if (n == "proof") return ContentLabel::Proof;
    if (n == "other") return ContentLabel::Other;
    return std::nullopt;
}

LabelMap parse_labels_text(const std::string& text, const std::string& filename) {
    LabelMap out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        std::string id, label_tok, extra;
        if (!(ls >> id)) continue;
        auto err = [&](const std::string& msg) {
            return LabelsFormatError(filename + ":" + std::to_string(lineno) + ": " + msg);
        };
        if (!(ls >> label_tok)) throw err("expected '<locution-id> <label>'");
        if (ls >> extra) throw err("unexpected trailing token '" + extra + "'");
        auto label = label_from_name(label_tok);
        if (!label) throw err("unknown label '" + label_tok + "'");
        if (!out.emplace(id, *label).second)
            throw err("locution '" + id + "' labeled twice");
    }
    return out;
}

LabelMap load_labels_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw LabelsFormatError("cannot open labels file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_labels_text(ss.str(), path);
}

std::map<ContentLabel, TagCounts> category_composition(const std::vector<Stanza>& stanzas,
                                                       const LabelMap& labels,
                                                       const TagRegistry& reg) {
    std::map<ContentLabel, TagCounts> out;
    for (const auto& st : stanzas) {
        if (!st.anchor) continue;
        auto it = labels.find(*st.anchor);
        if (it == labels.end())
            throw UnlabeledLocutionError("locution '" + *st.anchor + "' has no label");
        out[it->second].add(count_tags(st.term, reg));
    }
    return out;
}

std::map<ContentLabel, double> label_shares(const LabelMap& labels) {
    if (labels.empty())
        throw EmptyLabelsError("label shares are undefined for an empty label set");
    std::array<long, kLabelCount> counts{};
    for (const auto& [id, l] : labels) counts[(int)l] += 1;
    std::map<ContentLabel, double> out;
    for (int i = 0; i < kLabelCount; ++i)
        out[(ContentLabel)i] = (double)counts[i] / (double)labels.size();
    return out;
}

std::string counts_csv(const TagCounts& counts) {
    std::ostringstream out;
    out << "category,tag,count\n";
    for (const auto& [key, n] : counts.by_tag)
        out << category_name(key.first) << "," << key.second << "," << n << "\n";
    return out.str();
}

std::string timeline_csv(const std::vector<TimelineBin>& bins) {
    std::ostringstream out;
    out << "bin_start,width_minutes,perf,rel,value,meta,struct\n";
    for (const auto& b : bins) {
        out << format_iso_minute(b.start) << "," << b.width;
        for (int i = 0; i < kCategoryCount; ++i) out << "," << b.by_category[i];
        out << "\n";
    }
    return out.str();
}

std::string composition_csv(const std::map<ContentLabel, TagCounts>& comp) {
    std::ostringstream out;
    out << "label,category,tag,count\n";
    for (int i = 0; i < kLabelCount; ++i) {
        auto it = comp.find((ContentLabel)i);
        if (it == comp.end()) continue;
        for (const auto& [key, n] : it->second.by_tag)
            out << label_name((ContentLabel)i) << "," << category_name(key.first) << ","
                << key.second << "," << n << "\n";
    }
    return out.str();
}

std::string shares_csv(const std::map<ContentLabel, double>& shares) {
    std::ostringstream out;
    out << "label,share\n";
    for (int i = 0; i < kLabelCount; ++i) {
        auto it = shares.find((ContentLabel)i);
        if (it == shares.end()) continue;
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", it->second);
        out << label_name((ContentLabel)i) << "," << buf << "\n";
    }
    return out.str();
}

} // namespace iatc
