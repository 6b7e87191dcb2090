#include "iatc/dialogue.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace iatc {

namespace {

// Days between 1970-01-01 and y-m-d in the proleptic Gregorian calendar
// (Howard Hinnant's civil-days algorithm).
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097LL + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yy + (m <= 2));
}

bool valid_date(int y, int mo, int d) {
    static const int dim[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (mo < 1 || mo > 12 || d < 1) return false;
    int max = dim[mo - 1];
    bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
    if (mo == 2 && leap) max = 29;
    return d <= max;
}

} // namespace

std::optional<Minute> parse_iso_minute(const std::string& text) {
    int y, mo, d, h, mi;
    int n = 0;
    if (std::sscanf(text.c_str(), "%4d-%2d-%2dT%2d:%2d%n", &y, &mo, &d, &h, &mi, &n) != 5)
        return std::nullopt;
    if (!valid_date(y, mo, d) || h < 0 || h > 23 || mi < 0 || mi > 59)
        return std::nullopt;

    std::string rest = text.substr(n);
    if (rest.size() >= 3 && rest[0] == ':') { // seconds, truncated
        if (!std::isdigit((unsigned char)rest[1]) || !std::isdigit((unsigned char)rest[2]))
            return std::nullopt;
        int sec = (rest[1] - '0') * 10 + (rest[2] - '0');
        if (sec > 60) return std::nullopt;
        rest.erase(0, 3);
    }
    int offset = 0;
    if (rest == "Z" || rest == "z" || rest.empty()) {
        // UTC; a bare local time is taken as UTC
    } else if ((rest[0] == '+' || rest[0] == '-')) {
        int oh, om;
        if (std::sscanf(rest.c_str() + 1, "%2d:%2d", &oh, &om) != 2 &&
            std::sscanf(rest.c_str() + 1, "%2d%2d", &oh, &om) != 2)
            return std::nullopt;
        if (oh > 14 || om > 59) return std::nullopt;
        offset = oh * 60 + om;
        if (rest[0] == '-') offset = -offset;
    } else {
        return std::nullopt;
    }
    return days_from_civil(y, (unsigned)mo, (unsigned)d) * 1440 + h * 60 + mi - offset;
}

std::string format_iso_minute(Minute m) {
    std::int64_t days = m / 1440;
    std::int64_t rem = m % 1440;
    if (rem < 0) {
        rem += 1440;
        --days;
    }
    int y;
    unsigned mo, d;
    civil_from_days(days, y, mo, d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02dZ", y, mo, d, (int)(rem / 60),
                  (int)(rem % 60));
    return buf;
}

Dialogue::Dialogue(std::vector<Locution> locutions) : locutions_(std::move(locutions)) {
    Minute prev = 0;
    for (std::size_t i = 0; i < locutions_.size(); ++i) {
        const Locution& l = locutions_[i];
        if (l.id.empty())
            throw DialogueFormatError("locution " + std::to_string(i) + " has an empty id");
        if (!index_.emplace(l.id, i).second)
            throw DialogueFormatError("duplicate locution id '" + l.id + "'");
        if (l.parent) {
            auto it = index_.find(*l.parent);
            if (it == index_.end() || it->second == i)
                throw DialogueFormatError("locution '" + l.id +
                                          "' replies to unknown or later locution '" +
                                          *l.parent + "'");
        }
        if (i > 0 && l.timestamp < prev)
            throw DialogueFormatError("locution '" + l.id +
                                      "' is timestamped before its predecessor");
        prev = l.timestamp;
    }
}

Dialogue Dialogue::from_json_text(const std::string& text, const std::string& filename) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DialogueFormatError(filename + ": " + e.what());
    }
    if (!j.is_array())
        throw DialogueFormatError(filename + ": top level must be an array of locutions");

    std::vector<Locution> locs;
    locs.reserve(j.size());
    for (const auto& item : j) {
        if (!item.is_object())
            throw DialogueFormatError(filename + ": locution entries must be objects");
        Locution l;
        if (!item.contains("id") || !item["id"].is_string())
            throw DialogueFormatError(filename + ": locution missing string 'id'");
        l.id = item["id"].get<std::string>();
        if (!item.contains("speaker") || !item["speaker"].is_string())
            throw DialogueFormatError(filename + ": locution '" + l.id +
                                      "' missing string 'speaker'");
        l.speaker = item["speaker"].get<std::string>();
        if (!item.contains("timestamp") || !item["timestamp"].is_string())
            throw DialogueFormatError(filename + ": locution '" + l.id +
                                      "' missing string 'timestamp'");
        auto ts = parse_iso_minute(item["timestamp"].get<std::string>());
        if (!ts)
            throw DialogueFormatError(filename + ": locution '" + l.id +
                                      "' has a malformed timestamp '" +
                                      item["timestamp"].get<std::string>() + "'");
        l.timestamp = *ts;
        if (item.contains("parent") && !item["parent"].is_null()) {
            if (!item["parent"].is_string())
                throw DialogueFormatError(filename + ": locution '" + l.id +
                                          "' has a non-string 'parent'");
            l.parent = item["parent"].get<std::string>();
        }
        if (item.contains("text")) {
            if (!item["text"].is_string())
                throw DialogueFormatError(filename + ": locution '" + l.id +
                                          "' has a non-string 'text'");
            l.text = item["text"].get<std::string>();
        }
        locs.push_back(std::move(l));
    }
    try {
        return Dialogue(std::move(locs));
    } catch (const DialogueFormatError& e) {
        throw DialogueFormatError(filename + ": " + e.what());
    }
}

Dialogue Dialogue::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DialogueFormatError("cannot open dialogue file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str(), path);
}

const Locution* Dialogue::find(const std::string& id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &locutions_[it->second];
}

} // namespace iatc
