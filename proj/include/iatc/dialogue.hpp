#ifndef IATC_DIALOGUE_HPP
#define IATC_DIALOGUE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace iatc {

struct DialogueFormatError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Timestamps are minutes since the Unix epoch, UTC. The corpus never needs
// finer resolution; seconds in input are truncated.
using Minute = std::int64_t;

// Accepts YYYY-MM-DDTHH:MM with optional :SS and optional zone
// (Z or +hh:mm / -hh:mm). Returns nullopt on malformed input.
std::optional<Minute> parse_iso_minute(const std::string& text);
std::string format_iso_minute(Minute m);

struct Locution {
    std::string id;
    std::string speaker;
    Minute timestamp = 0;
    std::optional<std::string> parent;
    std::string text;
};

// Ordered list of utterances. Ids are unique, parents reference earlier
// entries, timestamps are non-decreasing; violations raise
// DialogueFormatError at load time.
class Dialogue {
public:
    Dialogue() = default;
    explicit Dialogue(std::vector<Locution> locutions);

    static Dialogue from_json_text(const std::string& text,
                                   const std::string& filename = "<dialogue>");
    static Dialogue from_json_file(const std::string& path);

    const Locution* find(const std::string& id) const;
    const std::vector<Locution>& locutions() const { return locutions_; }
    bool empty() const { return locutions_.empty(); }

private:
    std::vector<Locution> locutions_;
    std::map<std::string, std::size_t> index_;
};

} // namespace iatc

#endif
