#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace compclust {

enum class InputFormat { Wide, Long };

// Strict aborts on the first bad row/group; Lenient skips it and records why.
enum class Strictness { Strict, Lenient };

std::string trim(std::string_view s);

// Matching key for agent/map names: trimmed and ASCII case-folded.
// Original casing is preserved for display.
std::string fold_name(std::string_view s);

// One team-composition entry as read from the input file.
struct RawRecord {
    std::string tournament;
    std::string stage;
    std::string match_type;
    std::string map;
    std::string team;
    std::array<std::string, 5> agents;  // trimmed, original casing
    std::int64_t wins_by_map = 0;
    std::int64_t losses_by_map = 0;
    std::int64_t maps_played = 1;
    std::size_t source_line = 0;
};

// One observed team: exactly five distinct agents, canonically sorted.
struct TeamComposition {
    std::string composition_id;
    std::string map;
    std::string team;
    std::array<std::string, 5> agents;  // sorted by fold_name
};

// Data-quality counters accumulated across parse and expansion.
struct IngestStats {
    std::size_t rows_read = 0;
    std::size_t records_parsed = 0;
    std::size_t groups_skipped = 0;  // lenient mode
    std::vector<std::string> skip_reasons;
    std::size_t records_dropped_by_filter = 0;
    std::size_t blank_map_records_dropped = 0;
    std::size_t blank_map_records_retained = 0;
    std::size_t compositions = 0;
};

// Parses delimited text with a header row into validated RawRecords.
//
// Wide columns: tournament, stage, match_type, map, team, agent_1..agent_5,
// wins, losses, maps_played. Long format replaces the agent columns with
// `agent` plus a `composition_key`; the five rows sharing
// (tournament, stage, match_type, map, team, composition_key) form one record
// and must agree on wins/losses/maps_played.
//
// An input with no content yields an empty record list. Malformed rows and
// invalid groups throw ValidationError (strict) or are skipped into `stats`
// (lenient).
std::vector<RawRecord> parse_records(std::istream& in, InputFormat format,
                                     Strictness strictness = Strictness::Strict,
                                     IngestStats* stats = nullptr);

// Expands each record into maps_played compositions. When `map_filter` is
// set, records on other maps are dropped (blank maps count separately in the
// stats); without a filter, blank-map records are retained.
std::vector<TeamComposition> expand_and_filter(
    const std::vector<RawRecord>& records,
    const std::optional<std::string>& map_filter = std::nullopt,
    IngestStats* stats = nullptr);

// Unique agents over all compositions, sorted by fold key.
class Roster {
public:
    Roster() = default;
    static Roster from_compositions(const std::vector<TeamComposition>& comps);
    // Same dedupe/sort rules applied to a plain name list.
    static Roster from_names(const std::vector<std::string>& names);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const { return names_; }

    std::optional<std::size_t> find(std::string_view agent) const;
    // Throws InternalError if the agent is unknown.
    std::size_t index_of(std::string_view agent) const;

private:
    std::vector<std::string> names_;                       // display names
    std::unordered_map<std::string, std::size_t> index_;   // fold key -> position
};

// Throws ValidationError("no compositions after filtering") on empty input.
Roster build_roster(const std::vector<TeamComposition>& comps);

// Re-export of canonical compositions in the wide format; parsing the result
// back reproduces the same composition list (one row per composition,
// maps_played = 1).
std::string compositions_to_wide_csv(const std::vector<TeamComposition>& comps);

}  // namespace compclust
