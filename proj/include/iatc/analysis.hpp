#ifndef IATC_ANALYSIS_HPP
#define IATC_ANALYSIS_HPP

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "iatc/dialogue.hpp"
#include "iatc/schema.hpp"
#include "iatc/term.hpp"

namespace iatc {

// Tag occurrence tallies. Every application node counts once under its
// canonical (category, tag); non-canonical spellings (stronger, structural,
// question) are additionally tallied by their written name so alias usage
// stays visible.
struct TagCounts {
    std::map<std::pair<Category, std::string>, long> by_tag;
    std::map<std::string, long> alias_spellings;
    std::array<long, kCategoryCount> by_category{};
    long total = 0;

    void add(const TagCounts& other);
};

TagCounts count_tags(const std::vector<Stanza>& stanzas, const TagRegistry& reg);
TagCounts count_tags(const Term& term, const TagRegistry& reg);

struct AnchorOutsideSpanError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TimelineBin {
    Minute start = 0;
    int width = 0; // minutes
    std::array<long, kCategoryCount> by_category{};
};

// Bins anchored tag occurrences into fixed-width intervals over the span
// [span_start, span_end], both ends inclusive minutes. All bins have width
// bin_minutes except the final one, which absorbs the tail and is wider
// than bin_minutes (up to twice) whenever the span exceeds one bin.
// Unanchored stanzas are ignored; an anchor timestamped outside the span
// raises AnchorOutsideSpanError. Bad arguments raise std::invalid_argument.
std::vector<TimelineBin> timeline(const std::vector<Stanza>& stanzas,
                                  const Dialogue& dialogue, int bin_minutes,
                                  Minute span_start, Minute span_end,
                                  const TagRegistry& reg);

// The five-part typology used to label locutions.
enum class ContentLabel { Example, Conjecture, Concept, Proof, Other };
constexpr int kLabelCount = 5;

const char* label_name(ContentLabel l);
std::optional<ContentLabel> label_from_name(const std::string& name); // case-insensitive

struct LabelsFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using LabelMap = std::map<std::string, ContentLabel>; // locution id -> label

// Labels file: one `<locution-id> <label>` pair per line, `#` comments.
LabelMap parse_labels_text(const std::string& text,
                           const std::string& filename = "<labels>");
LabelMap load_labels_file(const std::string& path);

struct UnlabeledLocutionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyLabelsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Tag tallies bucketed by the label of each stanza's anchor. Anchored
// stanzas whose locution has no label raise UnlabeledLocutionError;
// unanchored stanzas are not attributable to a label and are skipped.
std::map<ContentLabel, TagCounts> category_composition(const std::vector<Stanza>& stanzas,
                                                       const LabelMap& labels,
                                                       const TagRegistry& reg);

// Fraction of labeled locutions carrying each label. Sums to 1.
std::map<ContentLabel, double> label_shares(const LabelMap& labels);

std::string counts_csv(const TagCounts& counts);
std::string timeline_csv(const std::vector<TimelineBin>& bins);
std::string composition_csv(const std::map<ContentLabel, TagCounts>& comp);
std::string shares_csv(const std::map<ContentLabel, double>& shares);

} // namespace iatc

#endif
