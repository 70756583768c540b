#include "compclust/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <set>
#include <sstream>

#include "compclust/csv.hpp"
#include "compclust/errors.hpp"

namespace compclust {

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string fold_name(std::string_view s) {
    std::string out = trim(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

namespace {

std::int64_t parse_int(const std::string& raw, const std::string& column, std::size_t line) {
    std::string t = trim(raw);
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size()) {
        throw ValidationError("line " + std::to_string(line) + ": invalid integer '" + raw +
                              "' in column " + column);
    }
    return value;
}

// Header lookup by folded column name.
class Header {
public:
    explicit Header(const csv::Row& row) {
        for (std::size_t i = 0; i < row.fields.size(); ++i) {
            index_.emplace(fold_name(row.fields[i]), i);
        }
    }

    std::size_t require(const std::string& name) const {
        auto it = index_.find(name);
        if (it == index_.end()) {
            throw ValidationError("header is missing required column '" + name + "'");
        }
        return it->second;
    }

    std::size_t columns() const { return index_.size(); }

private:
    std::unordered_map<std::string, std::size_t> index_;
};

const std::string& field_at(const csv::Row& row, std::size_t idx, std::size_t expected) {
    if (row.fields.size() != expected) {
        throw ValidationError("line " + std::to_string(row.line_no) + ": expected " +
                              std::to_string(expected) + " fields, got " +
                              std::to_string(row.fields.size()));
    }
    return row.fields[idx];
}

void validate_agents(const std::array<std::string, 5>& agents, std::size_t line,
                     const std::string& context) {
    std::set<std::string> seen;
    for (const auto& a : agents) {
        if (a.empty()) {
            throw ValidationError("line " + std::to_string(line) + ": blank agent name" + context);
        }
        if (!seen.insert(fold_name(a)).second) {
            throw ValidationError("line " + std::to_string(line) + ": duplicate agent '" + a +
                                  "'" + context);
        }
    }
}

void validate_counts(RawRecord& rec) {
    if (rec.wins_by_map < 0 || rec.losses_by_map < 0) {
        throw ValidationError("line " + std::to_string(rec.source_line) +
                              ": negative win/loss count");
    }
    if (rec.maps_played < 1) {
        throw ValidationError("line " + std::to_string(rec.source_line) +
                              ": maps_played must be >= 1, got " +
                              std::to_string(rec.maps_played));
    }
}

std::vector<RawRecord> parse_wide(csv::Reader& reader, const csv::Row& header_row,
                                  Strictness strictness, IngestStats* stats) {
    Header header(header_row);
    const std::size_t n_cols = header_row.fields.size();
    const std::size_t c_tournament = header.require("tournament");
    const std::size_t c_stage = header.require("stage");
    const std::size_t c_match_type = header.require("match_type");
    const std::size_t c_map = header.require("map");
    const std::size_t c_team = header.require("team");
    std::array<std::size_t, 5> c_agents{};
    for (int i = 0; i < 5; ++i) {
        c_agents[static_cast<std::size_t>(i)] = header.require("agent_" + std::to_string(i + 1));
    }
    const std::size_t c_wins = header.require("wins");
    const std::size_t c_losses = header.require("losses");
    const std::size_t c_maps = header.require("maps_played");

    std::vector<RawRecord> records;
    csv::Row row;
    while (reader.next(row)) {
        if (stats) ++stats->rows_read;
        try {
            RawRecord rec;
            rec.source_line = row.line_no;
            rec.tournament = trim(field_at(row, c_tournament, n_cols));
            rec.stage = trim(row.fields[c_stage]);
            rec.match_type = trim(row.fields[c_match_type]);
            rec.map = trim(row.fields[c_map]);
            rec.team = trim(row.fields[c_team]);
            for (std::size_t i = 0; i < 5; ++i) {
                rec.agents[i] = trim(row.fields[c_agents[i]]);
            }
            rec.wins_by_map = parse_int(row.fields[c_wins], "wins", row.line_no);
            rec.losses_by_map = parse_int(row.fields[c_losses], "losses", row.line_no);
            rec.maps_played = parse_int(row.fields[c_maps], "maps_played", row.line_no);
            validate_agents(rec.agents, row.line_no, "");
            validate_counts(rec);
            records.push_back(std::move(rec));
        } catch (const ValidationError& e) {
            if (strictness == Strictness::Strict) throw;
            if (stats) {
                ++stats->groups_skipped;
                stats->skip_reasons.push_back(e.what());
            }
        }
    }
    return records;
}

struct LongGroup {
    RawRecord rec;                       // metadata from the first row
    std::vector<std::string> agents;     // one per row
    std::string key_display;             // for error messages
};

std::vector<RawRecord> parse_long(csv::Reader& reader, const csv::Row& header_row,
                                  Strictness strictness, IngestStats* stats) {
    Header header(header_row);
    const std::size_t n_cols = header_row.fields.size();
    const std::size_t c_tournament = header.require("tournament");
    const std::size_t c_stage = header.require("stage");
    const std::size_t c_match_type = header.require("match_type");
    const std::size_t c_map = header.require("map");
    const std::size_t c_team = header.require("team");
    const std::size_t c_agent = header.require("agent");
    const std::size_t c_key = header.require("composition_key");
    const std::size_t c_wins = header.require("wins");
    const std::size_t c_losses = header.require("losses");
    const std::size_t c_maps = header.require("maps_played");

    // Groups keep first-appearance order so output is deterministic.
    std::vector<LongGroup> groups;
    std::unordered_map<std::string, std::size_t> group_index;

    csv::Row row;
    while (reader.next(row)) {
        if (stats) ++stats->rows_read;
        const std::string tournament = trim(field_at(row, c_tournament, n_cols));
        const std::string stage = trim(row.fields[c_stage]);
        const std::string match_type = trim(row.fields[c_match_type]);
        const std::string map = trim(row.fields[c_map]);
        const std::string team = trim(row.fields[c_team]);
        const std::string key = trim(row.fields[c_key]);

        std::string group_key;
        for (const auto* part : {&tournament, &stage, &match_type, &map, &team, &key}) {
            group_key += *part;
            group_key += '\x1f';
        }

        auto [it, inserted] = group_index.emplace(group_key, groups.size());
        if (inserted) {
            LongGroup g;
            g.rec.source_line = row.line_no;
            g.rec.tournament = tournament;
            g.rec.stage = stage;
            g.rec.match_type = match_type;
            g.rec.map = map;
            g.rec.team = team;
            g.rec.wins_by_map = parse_int(row.fields[c_wins], "wins", row.line_no);
            g.rec.losses_by_map = parse_int(row.fields[c_losses], "losses", row.line_no);
            g.rec.maps_played = parse_int(row.fields[c_maps], "maps_played", row.line_no);
            g.key_display = "(tournament=" + tournament + ", stage=" + stage +
                            ", match_type=" + match_type + ", map=" + map + ", team=" + team +
                            ", composition_key=" + key + ")";
            groups.push_back(std::move(g));
        }
        LongGroup& g = groups[it->second];
        if (!inserted) {
            // Rows of one group must agree on the per-map numbers.
            std::int64_t wins = parse_int(row.fields[c_wins], "wins", row.line_no);
            std::int64_t losses = parse_int(row.fields[c_losses], "losses", row.line_no);
            std::int64_t maps = parse_int(row.fields[c_maps], "maps_played", row.line_no);
            if (wins != g.rec.wins_by_map || losses != g.rec.losses_by_map ||
                maps != g.rec.maps_played) {
                throw ValidationError("line " + std::to_string(row.line_no) +
                                      ": inconsistent wins/losses/maps_played within group " +
                                      g.key_display);
            }
        }
        g.agents.push_back(trim(row.fields[c_agent]));
    }

    std::vector<RawRecord> records;
    records.reserve(groups.size());
    for (auto& g : groups) {
        try {
            if (g.agents.size() != 5) {
                throw ValidationError("group " + g.key_display + " has " +
                                      std::to_string(g.agents.size()) + " agents, expected 5");
            }
            std::copy(g.agents.begin(), g.agents.end(), g.rec.agents.begin());
            validate_agents(g.rec.agents, g.rec.source_line, " in group " + g.key_display);
            validate_counts(g.rec);
            records.push_back(std::move(g.rec));
        } catch (const ValidationError& e) {
            if (strictness == Strictness::Strict) throw;
            if (stats) {
                ++stats->groups_skipped;
                stats->skip_reasons.push_back(e.what());
            }
        }
    }
    return records;
}

}  // namespace

std::vector<RawRecord> parse_records(std::istream& in, InputFormat format, Strictness strictness,
                                     IngestStats* stats) {
    csv::Reader reader(in);
    csv::Row header_row;
    if (!reader.next(header_row)) {
        // No content at all: zero records, reported downstream.
        return {};
    }
    std::vector<RawRecord> records = (format == InputFormat::Wide)
                                         ? parse_wide(reader, header_row, strictness, stats)
                                         : parse_long(reader, header_row, strictness, stats);
    if (stats) stats->records_parsed += records.size();
    return records;
}

std::vector<TeamComposition> expand_and_filter(const std::vector<RawRecord>& records,
                                               const std::optional<std::string>& map_filter,
                                               IngestStats* stats) {
    const std::optional<std::string> filter_key =
        map_filter ? std::optional<std::string>(fold_name(*map_filter)) : std::nullopt;

    std::vector<TeamComposition> comps;
    for (const auto& rec : records) {
        const std::string map_key = fold_name(rec.map);
        if (filter_key) {
            if (map_key.empty()) {
                if (stats) ++stats->blank_map_records_dropped;
                continue;
            }
            if (map_key != *filter_key) {
                if (stats) ++stats->records_dropped_by_filter;
                continue;
            }
        } else if (map_key.empty()) {
            if (stats) ++stats->blank_map_records_retained;
        }

        std::array<std::string, 5> sorted_agents = rec.agents;
        std::sort(sorted_agents.begin(), sorted_agents.end(),
                  [](const std::string& a, const std::string& b) {
                      return fold_name(a) < fold_name(b);
                  });
        for (std::int64_t copy = 1; copy <= rec.maps_played; ++copy) {
            TeamComposition comp;
            comp.composition_id =
                "row" + std::to_string(rec.source_line) + "#" + std::to_string(copy);
            comp.map = rec.map;
            comp.team = rec.team;
            comp.agents = sorted_agents;
            comps.push_back(std::move(comp));
        }
    }
    if (stats) stats->compositions += comps.size();
    return comps;
}

Roster Roster::from_compositions(const std::vector<TeamComposition>& comps) {
    // Display name of an agent is its first occurrence in composition order.
    std::unordered_map<std::string, std::string> display;
    std::vector<std::string> order;
    for (const auto& comp : comps) {
        for (const auto& agent : comp.agents) {
            if (display.emplace(fold_name(agent), agent).second) {
                order.push_back(agent);
            }
        }
    }
    return from_names(order);
}

Roster Roster::from_names(const std::vector<std::string>& names) {
    Roster roster;
    std::unordered_map<std::string, std::string> display;
    for (const auto& name : names) {
        display.emplace(fold_name(name), trim(name));
    }
    std::vector<std::string> keys;
    keys.reserve(display.size());
    for (const auto& [key, _] : display) keys.push_back(key);
    std::sort(keys.begin(), keys.end());
    for (std::size_t i = 0; i < keys.size(); ++i) {
        roster.names_.push_back(display[keys[i]]);
        roster.index_.emplace(keys[i], i);
    }
    return roster;
}

std::optional<std::size_t> Roster::find(std::string_view agent) const {
    auto it = index_.find(fold_name(agent));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t Roster::index_of(std::string_view agent) const {
    auto idx = find(agent);
    if (!idx) {
        throw InternalError("agent '" + std::string(agent) + "' is not in the roster");
    }
    return *idx;
}

Roster build_roster(const std::vector<TeamComposition>& comps) {
    if (comps.empty()) {
        throw ValidationError("no compositions after filtering");
    }
    return Roster::from_compositions(comps);
}

std::string compositions_to_wide_csv(const std::vector<TeamComposition>& comps) {
    std::ostringstream os;
    csv::write_row(os, {"tournament", "stage", "match_type", "map", "team", "agent_1", "agent_2",
                        "agent_3", "agent_4", "agent_5", "wins", "losses", "maps_played"});
    for (const auto& comp : comps) {
        std::vector<std::string> fields = {"", "", "", comp.map, comp.team};
        fields.insert(fields.end(), comp.agents.begin(), comp.agents.end());
        fields.insert(fields.end(), {"0", "0", "1"});
        csv::write_row(os, fields);
    }
    return os.str();
}

}  // namespace compclust
