#include "lyap/multicone.hpp"

#include <algorithm>
#include <numeric>

namespace lyap {

std::string BranchSystem::label(int r, const std::vector<std::string>& alphabet) const
{
    const auto& s = states[r];
    return alphabet[s.i] + std::to_string(s.a + 1) + ">" + alphabet[s.j] + std::to_string(s.b + 1);
}

BranchSystem build_branch_system(const SignTable& table, const Digraph& support)
{
    BranchSystem B;
    std::vector<int> order(table.edges.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return table.edges[x] < table.edges[y]; });
    for (int k : order) {
        B.states.push_back(table.edges[k]);
        B.signs.push_back(table.signs[k]);
    }
    const int n = static_cast<int>(B.states.size());
    B.graph.assign(n, {});
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const auto &r = B.states[x], &s = B.states[y];
            if (r.j == s.i && r.b == s.a) {
                const auto& out = support[s.i];
                if (std::find(out.begin(), out.end(), s.j) != out.end())
                    B.graph[x].push_back(y);
            }
        }
    B.classes = sink_components(B.graph);
    return B;
}

const std::vector<int>& select_class(const BranchSystem& B, std::optional<int> choice)
{
    int k = choice.value_or(0);
    if (k < 0 || k >= static_cast<int>(B.classes.size()))
        throw ValidationError("class choice " + std::to_string(k) + " out of range (" +
                              std::to_string(B.classes.size()) + " recurrent classes)");
    return B.classes[k];
}

} // namespace lyap
