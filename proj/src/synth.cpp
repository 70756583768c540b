#include "compclust/synth.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numeric>
#include <set>

#include <json.hpp>

#include "compclust/errors.hpp"

namespace compclust {

void validate_model(const PlantedModel& model) {
    if (model.roles.empty()) {
        throw ValidationError("model has no roles");
    }
    if (model.noise < 0.0 || model.noise > 1.0) {
        throw ValidationError("noise must be in [0,1]");
    }
    if (model.num_compositions < 1) {
        throw ValidationError("num_compositions must be >= 1");
    }
    std::set<std::string> seen;
    std::size_t total_agents = 0;
    for (const auto& role : model.roles) {
        if (role.agents.empty()) {
            throw ValidationError("role '" + role.name + "' has no agents");
        }
        for (const auto& agent : role.agents) {
            if (trim(agent).empty()) {
                throw ValidationError("role '" + role.name + "' contains a blank agent name");
            }
            if (!seen.insert(fold_name(agent)).second) {
                throw ValidationError("agent '" + agent + "' appears in more than one role");
            }
        }
        total_agents += role.agents.size();
        if (role.affinity.size() != model.roles.size()) {
            throw ValidationError("role '" + role.name + "' affinity has " +
                                  std::to_string(role.affinity.size()) + " entries, expected " +
                                  std::to_string(model.roles.size()));
        }
        double sum = 0.0;
        for (double a : role.affinity) {
            if (a < 0.0) throw ValidationError("role '" + role.name + "' has negative affinity");
            sum += a;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw ValidationError("role '" + role.name + "' affinity does not sum to 1");
        }
    }
    if (total_agents < static_cast<std::size_t>(PlantedModel::team_size)) {
        throw ValidationError("model is infeasible: fewer than 5 agents in total");
    }
}

PlantedModel load_model(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("model spec is not valid JSON: ") + e.what());
    }

    PlantedModel model;
    try {
        model.seed = j.value("seed", std::uint64_t{0});
        model.num_compositions = j.at("num_compositions").get<std::int64_t>();
        model.noise = j.value("noise", 0.0);
        model.map = j.value("map", std::string("Synth"));
        model.team = j.value("team", std::string("GEN"));

        const auto& roles = j.at("roles");
        const std::size_t n_roles = roles.size();
        std::unordered_map<std::string, std::size_t> role_index;
        for (std::size_t i = 0; i < n_roles; ++i) {
            role_index.emplace(roles[i].at("name").get<std::string>(), i);
        }
        for (const auto& jr : roles) {
            RoleSpec role;
            role.name = jr.at("name").get<std::string>();
            role.agents = jr.at("agents").get<std::vector<std::string>>();
            if (jr.contains("affinity")) {
                const auto& aff = jr.at("affinity");
                if (aff.is_array()) {
                    role.affinity = aff.get<std::vector<double>>();
                } else {
                    // Object form keyed by role name.
                    role.affinity.assign(n_roles, 0.0);
                    for (const auto& [key, value] : aff.items()) {
                        auto it = role_index.find(key);
                        if (it == role_index.end()) {
                            throw ValidationError("affinity of role '" + role.name +
                                                  "' references unknown role '" + key + "'");
                        }
                        role.affinity[it->second] = value.get<double>();
                    }
                }
            } else {
                role.affinity.assign(n_roles, 1.0 / static_cast<double>(n_roles));
            }
            model.roles.push_back(std::move(role));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("model spec is malformed: ") + e.what());
    }
    validate_model(model);
    return model;
}

namespace {

// Cumulative walk in role order; the final bucket absorbs rounding slack.
std::size_t sample_categorical(SplitMix64& rng, const std::vector<double>& weights) {
    const double u = rng.next_unit();
    double acc = 0.0;
    for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
        acc += weights[i];
        if (u < acc) return i;
    }
    return weights.size() - 1;
}

}  // namespace

std::vector<TeamComposition> generate(const PlantedModel& model) {
    validate_model(model);
    const std::size_t n_roles = model.roles.size();
    const std::size_t team_size = static_cast<std::size_t>(PlantedModel::team_size);

    SplitMix64 rng(model.seed);
    std::vector<TeamComposition> comps;
    comps.reserve(static_cast<std::size_t>(model.num_compositions));

    std::vector<std::size_t> slots;
    std::vector<std::size_t> role_order(n_roles);
    std::vector<const std::string*> picked;

    for (std::int64_t c = 0; c < model.num_compositions; ++c) {
        // Role template: one slot per role, role order; with more than five
        // roles, a random five-subset via partial Fisher-Yates.
        slots.clear();
        std::iota(role_order.begin(), role_order.end(), std::size_t{0});
        if (n_roles > team_size) {
            for (std::size_t i = 0; i < team_size; ++i) {
                const std::size_t j = i + rng.next_below(n_roles - i);
                std::swap(role_order[i], role_order[j]);
                slots.push_back(role_order[i]);
            }
        } else {
            slots.assign(role_order.begin(), role_order.end());
            while (slots.size() < team_size) {
                const std::size_t anchor = slots[rng.next_below(slots.size())];
                slots.push_back(sample_categorical(rng, model.roles[anchor].affinity));
            }
        }

        // Noise: independently re-roll each slot's role.
        if (model.noise > 0.0) {
            for (auto& slot : slots) {
                if (rng.next_unit() < model.noise) slot = rng.next_below(n_roles);
            }
        }

        // Fill slots with distinct agents.
        picked.clear();
        std::set<std::string> chosen;
        for (std::size_t slot : slots) {
            const auto& members = model.roles[slot].agents;
            std::vector<const std::string*> candidates;
            for (const auto& agent : members) {
                if (!chosen.count(fold_name(agent))) candidates.push_back(&agent);
            }
            if (candidates.empty()) {
                // Role exhausted; fall back to any unused agent, role order.
                for (const auto& role : model.roles) {
                    for (const auto& agent : role.agents) {
                        if (!chosen.count(fold_name(agent))) candidates.push_back(&agent);
                    }
                }
            }
            if (candidates.empty()) {
                throw InternalError("generate: ran out of agents while filling a composition");
            }
            const std::string* pick = candidates[rng.next_below(candidates.size())];
            chosen.insert(fold_name(*pick));
            picked.push_back(pick);
        }

        TeamComposition comp;
        comp.composition_id = "synth#" + std::to_string(c + 1);
        comp.map = model.map;
        comp.team = model.team;
        for (std::size_t i = 0; i < team_size; ++i) comp.agents[i] = *picked[i];
        std::sort(comp.agents.begin(), comp.agents.end(),
                  [](const std::string& a, const std::string& b) {
                      return fold_name(a) < fold_name(b);
                  });
        comps.push_back(std::move(comp));
    }
    return comps;
}

std::unordered_map<std::string, int> planted_labels(const PlantedModel& model) {
    std::unordered_map<std::string, int> labels;
    for (std::size_t r = 0; r < model.roles.size(); ++r) {
        for (const auto& agent : model.roles[r].agents) {
            labels.emplace(fold_name(agent), static_cast<int>(r));
        }
    }
    return labels;
}

}  // namespace compclust
