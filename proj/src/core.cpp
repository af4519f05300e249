#include "peersel/core.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace peersel {

Assignment Assignment::from_pools(int n, std::vector<std::vector<AgentId>> pools) {
    Assignment a;
    a.pools = std::move(pools);
    a.pools.resize(std::max<std::size_t>(a.pools.size(), n + 1));
    a.reviewers.assign(n + 1, {});
    for (AgentId i = 1; i <= n; ++i)
        for (AgentId j : a.pools[i])
            if (j >= 1 && j <= n) a.reviewers[j].push_back(i);
    return a;
}

Profile::Profile(int n, std::vector<std::vector<AgentId>> order)
    : n_(n), order_(std::move(order)) {
    order_.resize(n + 1);
    rank_.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0);
    for (AgentId i = 1; i <= n; ++i) {
        int r = 1;
        for (AgentId j : order_[i]) {
            if (j < 1 || j > n) throw std::invalid_argument("profile: agent id out of range");
            auto& slot = rank_[static_cast<std::size_t>(i) * (n_ + 1) + j];
            if (slot != 0) throw std::invalid_argument("profile: duplicate (tied) entry in ranking");
            slot = r++;
        }
    }
}

void Profile::set_order(AgentId reviewer, std::vector<AgentId> new_order) {
    std::vector<AgentId> a = order_[reviewer], b = new_order;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) throw std::invalid_argument("set_order: new ranking must cover the same pool");
    for (AgentId j : order_[reviewer]) rank_[static_cast<std::size_t>(reviewer) * (n_ + 1) + j] = 0;
    order_[reviewer] = std::move(new_order);
    int r = 1;
    for (AgentId j : order_[reviewer]) rank_[static_cast<std::size_t>(reviewer) * (n_ + 1) + j] = r++;
}

bool SelectionResult::contains(AgentId j) const {
    return std::binary_search(accepted.begin(), accepted.end(), j);
}

ValidationReport validate_assignment(const Instance& instance, const Assignment& assignment) {
    ValidationReport report;
    const int n = instance.n, m = instance.m;
    auto note = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

    if (static_cast<int>(assignment.pools.size()) < n + 1) {
        note("pools missing for some agents");
        return report;
    }

    std::vector<int> reviewed_count(n + 1, 0);
    for (AgentId i = 1; i <= n; ++i) {
        const auto& pool = assignment.pools[i];
        if (static_cast<int>(pool.size()) != m)
            note("agent " + std::to_string(i) + " reviews " + std::to_string(pool.size()) +
                 " != m agents");
        std::set<AgentId> seen;
        for (AgentId j : pool) {
            if (j < 1 || j > n) {
                note("agent " + std::to_string(i) + " reviews out-of-range agent " +
                     std::to_string(j));
                continue;
            }
            if (j == i) note("self-review by " + std::to_string(i));
            if (!seen.insert(j).second)
                note("agent " + std::to_string(i) + " reviews " + std::to_string(j) + " twice");
            ++reviewed_count[j];
        }
    }
    for (AgentId j = 1; j <= n; ++j)
        if (reviewed_count[j] != m)
            note("agent " + std::to_string(j) + " reviewed " + std::to_string(reviewed_count[j]) +
                 " != m times");

    // inverse consistency, when an inverse is present
    if (static_cast<int>(assignment.reviewers.size()) >= n + 1) {
        for (AgentId j = 1; j <= n; ++j) {
            for (AgentId i : assignment.reviewers[j]) {
                const auto& pool = assignment.pools[i];
                if (std::find(pool.begin(), pool.end(), j) == pool.end())
                    note("inverse lists " + std::to_string(i) + " as reviewer of " +
                         std::to_string(j) + " but pool disagrees");
            }
        }
    }
    return report;
}

Profile truthful_profile(const Instance& instance, const Assignment& assignment) {
    std::vector<std::vector<AgentId>> order(instance.n + 1);
    for (AgentId i = 1; i <= instance.n; ++i) {
        order[i] = assignment.pools[i];
        std::sort(order[i].begin(), order[i].end());
    }
    return Profile(instance.n, std::move(order));
}

namespace {

std::string format_lines(const std::vector<std::vector<AgentId>>& rows) {
    std::ostringstream out;
    for (AgentId i = 1; i < static_cast<AgentId>(rows.size()); ++i) {
        out << i << ":";
        for (std::size_t p = 0; p < rows[i].size(); ++p) out << (p == 0 ? " " : ">") << rows[i][p];
        out << "\n";
    }
    return out.str();
}

std::vector<std::vector<AgentId>> parse_lines(int n, const std::string& text) {
    std::vector<std::vector<AgentId>> rows(n + 1);
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto colon = line.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("missing ':' in line: " + line);
        int reviewer = std::stoi(line.substr(0, colon));
        if (reviewer < 1 || reviewer > n)
            throw std::invalid_argument("reviewer id out of range: " + line);
        std::string rest = line.substr(colon + 1);
        for (char& c : rest)
            if (c == '>') c = ' ';
        std::istringstream items(rest);
        AgentId j;
        while (items >> j) rows[reviewer].push_back(j);
    }
    return rows;
}

}  // namespace

std::string format_profile(const Profile& profile) {
    std::vector<std::vector<AgentId>> rows(profile.n() + 1);
    for (AgentId i = 1; i <= profile.n(); ++i) rows[i] = profile.order_of(i);
    return format_lines(rows);
}

std::string format_assignment(const Assignment& assignment) { return format_lines(assignment.pools); }

Profile parse_profile(int n, const std::string& text) { return Profile(n, parse_lines(n, text)); }

Assignment parse_assignment(int n, const std::string& text) {
    return Assignment::from_pools(n, parse_lines(n, text));
}

}  // namespace peersel
