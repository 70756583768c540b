#include "compclust/exports.hpp"

#include <cstdio>
#include <sstream>

#include "compclust/csv.hpp"
#include "compclust/errors.hpp"

namespace compclust {

std::string fmt_g17(double value) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string hex64(std::uint64_t value) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
    return buf;
}

namespace {

// Newick labels with structural characters or blanks get single-quoted.
std::string newick_label(const std::string& name) {
    const bool needs_quotes = name.find_first_of(" \t()[]:;,'") != std::string::npos;
    if (!needs_quotes) return name;
    std::string out = "'";
    for (char c : name) {
        if (c == '\'') out += '\'';
        out += c;
    }
    out += "'";
    return out;
}

struct NewickWriter {
    const Dendrogram& dendro;
    int leaf_count;

    double node_height(int node) const {
        return node < leaf_count ? 0.0
                                 : dendro.merges[static_cast<std::size_t>(node - leaf_count)].height;
    }

    void write(std::ostream& os, int node, double parent_height) const {
        if (node < leaf_count) {
            os << newick_label(dendro.leaves[static_cast<std::size_t>(node)]);
        } else {
            const Merge& mg = dendro.merges[static_cast<std::size_t>(node - leaf_count)];
            os << '(';
            write(os, mg.left, mg.height);
            os << ',';
            write(os, mg.right, mg.height);
            os << ')';
        }
        os << ':' << fmt_g17(parent_height - node_height(node));
    }
};

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

}  // namespace

std::string to_newick(const Dendrogram& dendro) {
    const int m = static_cast<int>(dendro.leaf_count());
    if (m == 1) {
        return newick_label(dendro.leaves[0]) + ";";
    }
    std::ostringstream os;
    NewickWriter writer{dendro, m};
    const Merge& top = dendro.merges.back();
    os << '(';
    writer.write(os, top.left, top.height);
    os << ',';
    writer.write(os, top.right, top.height);
    os << ");";
    return os.str();
}

std::string to_dot(const Dendrogram& dendro) {
    const int m = static_cast<int>(dendro.leaf_count());
    std::ostringstream os;
    os << "digraph dendrogram {\n";
    os << "  rankdir=BT;\n";
    os << "  node [shape=box];\n";
    for (int i = 0; i < m; ++i) {
        os << "  n" << i << " [label=\"" << dot_escape(dendro.leaves[static_cast<std::size_t>(i)])
           << "\"];\n";
    }
    for (std::size_t t = 0; t < dendro.merges.size(); ++t) {
        const Merge& mg = dendro.merges[t];
        const int node = m + static_cast<int>(t);
        os << "  n" << node << " [shape=point, xlabel=\"" << fmt_g17(mg.height) << "\"];\n";
        os << "  n" << mg.left << " -> n" << node << ";\n";
        os << "  n" << mg.right << " -> n" << node << ";\n";
    }
    os << "}\n";
    return os.str();
}

nlohmann::ordered_json dendrogram_json(const Dendrogram& dendro) {
    nlohmann::ordered_json j;
    j["leaves"] = dendro.leaves;
    auto& merges = j["merges"] = nlohmann::ordered_json::array();
    for (const auto& mg : dendro.merges) {
        merges.push_back({{"left", mg.left},
                          {"right", mg.right},
                          {"height", mg.height},
                          {"size", mg.size}});
    }
    return j;
}

std::string cooccurrence_csv(const CooccurrenceMatrix& matrix) {
    std::ostringstream os;
    std::vector<std::string> header = {"agent"};
    for (const auto& name : matrix.roster().names()) header.push_back(name);
    csv::write_row(os, header);
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        std::vector<std::string> row = {matrix.roster().name(i)};
        for (std::size_t j = 0; j < matrix.size(); ++j) {
            row.push_back(std::to_string(matrix.at(i, j)));
        }
        csv::write_row(os, row);
    }
    return os.str();
}

nlohmann::ordered_json cooccurrence_json(const CooccurrenceMatrix& matrix) {
    nlohmann::ordered_json j;
    j["roster"] = matrix.roster().names();
    auto& counts = j["counts"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t j2 = 0; j2 < matrix.size(); ++j2) row.push_back(matrix.at(i, j2));
        counts.push_back(std::move(row));
    }
    return j;
}

std::string vectors_csv(const std::vector<ProbabilityVector>& vectors, const Roster& roster) {
    std::ostringstream os;
    std::vector<std::string> header = {"agent", "support_count", "defined"};
    for (const auto& name : roster.names()) header.push_back("p_" + name);
    csv::write_row(os, header);
    for (const auto& v : vectors) {
        std::vector<std::string> row = {v.agent, std::to_string(v.support_count),
                                        v.defined() ? "1" : "0"};
        for (double p : v.probs) row.push_back(fmt_g17(p));
        csv::write_row(os, row);
    }
    return os.str();
}

nlohmann::ordered_json vectors_json(const std::vector<ProbabilityVector>& vectors,
                                    const Roster& roster) {
    nlohmann::ordered_json j;
    j["roster"] = roster.names();
    auto& list = j["vectors"] = nlohmann::ordered_json::array();
    for (const auto& v : vectors) {
        list.push_back({{"agent", v.agent},
                        {"support_count", v.support_count},
                        {"defined", v.defined()},
                        {"probs", v.probs}});
    }
    return j;
}

std::string distance_csv(const DistanceMatrix& d) {
    std::ostringstream os;
    std::vector<std::string> header = {"agent"};
    for (const auto& label : d.labels()) header.push_back(label);
    csv::write_row(os, header);
    for (std::size_t i = 0; i < d.size(); ++i) {
        std::vector<std::string> row = {d.labels()[i]};
        for (std::size_t j = 0; j < d.size(); ++j) row.push_back(fmt_g17(d.at(i, j)));
        csv::write_row(os, row);
    }
    return os.str();
}

nlohmann::ordered_json distance_json(const DistanceMatrix& d) {
    nlohmann::ordered_json j;
    j["labels"] = d.labels();
    j["log_base"] = DistanceMatrix::log_base;
    j["sqrt_applied"] = d.sqrt_applied();
    auto& rows = j["distances"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < d.size(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (std::size_t j2 = 0; j2 < d.size(); ++j2) row.push_back(d.at(i, j2));
        rows.push_back(std::move(row));
    }
    return j;
}

std::string assignment_csv(const ClusterAssignment& assignment) {
    std::ostringstream os;
    csv::write_row(os, {"agent", "cluster_id"});
    for (std::size_t i = 0; i < assignment.agents.size(); ++i) {
        csv::write_row(os, {assignment.agents[i], std::to_string(assignment.labels[i])});
    }
    return os.str();
}

std::string sweep_csv(const SilhouetteSweep& sweep) {
    std::ostringstream os;
    csv::write_row(os, {"k", "mean_silhouette"});
    for (const auto& [k, score] : sweep.scores) {
        csv::write_row(os, {std::to_string(k), fmt_g17(score)});
    }
    return os.str();
}

}  // namespace compclust
