#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "compclust/ingest.hpp"

namespace compclust {

// splitmix64 (Steele, Lea, Vigna). Chosen over std::mt19937 because every
// derived sample below is specified here, so datasets reproduce bit-for-bit
// across standard libraries and languages.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1): top 53 bits scaled by 2^-53.
    double next_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // Uniform in [0,n) via 128-bit multiply-shift.
    std::uint64_t next_below(std::uint64_t n) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

private:
    std::uint64_t state_;
};

struct RoleSpec {
    std::string name;
    std::vector<std::string> agents;
    std::vector<double> affinity;  // distribution over roles, by role index
};

struct PlantedModel {
    std::vector<RoleSpec> roles;   // member sets disjoint
    double noise = 0.0;            // per-slot probability of a uniform random role
    std::int64_t num_compositions = 0;
    std::uint64_t seed = 0;
    std::string map = "Synth";
    std::string team = "GEN";

    static constexpr int team_size = 5;
};

// Throws ValidationError on an inconsistent or infeasible model.
void validate_model(const PlantedModel& model);

// Reads the JSON model description (see README for the schema). A missing
// "affinity" defaults to uniform over all roles.
PlantedModel load_model(std::istream& in);

// Draws num_compositions teams. Each composition samples a role template --
// one slot per role in role order, extra slots drawn from the affinity
// distribution of a uniformly chosen existing slot (with more than five
// roles, a random five-role subset). Each slot's role is then replaced by a
// uniform random role with probability `noise`, and slots are filled with
// distinct agents (uniform among the role's unused members, falling back to
// any unused agent when the role is exhausted). Deterministic given the
// model and seed.
std::vector<TeamComposition> generate(const PlantedModel& model);

// Ground-truth role index per agent fold key, for recovery checks.
std::unordered_map<std::string, int> planted_labels(const PlantedModel& model);

}  // namespace compclust
