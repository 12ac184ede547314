#include "lyap/markov.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>

namespace lyap {

std::vector<int> strongly_connected(const Digraph& g, int* count)
{
    const int n = static_cast<int>(g.size());
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
    std::vector<char> on_stack(n, 0);
    int next = 0, ncomp = 0;

    // iterative Tarjan: frames of (vertex, next edge position)
    for (int root = 0; root < n; ++root) {
        if (index[root] >= 0)
            continue;
        std::vector<std::pair<int, std::size_t>> frames{{root, 0}};
        index[root] = low[root] = next++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            auto& [v, pos] = frames.back();
            if (pos < g[v].size()) {
                int w = g[v][pos++];
                if (index[w] < 0) {
                    index[w] = low[w] = next++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], index[w]);
                }
                continue;
            }
            if (low[v] == index[v]) {
                int w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = ncomp;
                } while (w != v);
                ++ncomp;
            }
            int done = v;
            frames.pop_back();
            if (!frames.empty())
                low[frames.back().first] = std::min(low[frames.back().first], low[done]);
        }
    }
    if (count)
        *count = ncomp;
    return comp;
}

std::vector<std::vector<int>> sink_components(const Digraph& g)
{
    int nc = 0;
    auto comp = strongly_connected(g, &nc);
    std::vector<char> sink(nc, 1);
    for (std::size_t v = 0; v < g.size(); ++v)
        for (int w : g[v])
            if (comp[w] != comp[v])
                sink[comp[v]] = 0;
    std::vector<std::vector<int>> out(nc);
    for (std::size_t v = 0; v < g.size(); ++v)
        if (sink[comp[v]])
            out[comp[v]].push_back(static_cast<int>(v));
    std::vector<std::vector<int>> res;
    for (auto& c : out)
        if (!c.empty())
            res.push_back(std::move(c));
    std::sort(res.begin(), res.end(), [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return res;
}

Digraph induced(const Digraph& g, const std::vector<int>& vertices)
{
    std::vector<int> pos(g.size(), -1);
    for (std::size_t i = 0; i < vertices.size(); ++i)
        pos[vertices[i]] = static_cast<int>(i);
    Digraph h(vertices.size());
    for (std::size_t i = 0; i < vertices.size(); ++i)
        for (int w : g[vertices[i]])
            if (pos[w] >= 0)
                h[i].push_back(pos[w]);
    return h;
}

namespace {
std::vector<int> bfs_levels(const Digraph& g, int src)
{
    std::vector<int> level(g.size(), -1);
    std::queue<int> q;
    level[src] = 0;
    q.push(src);
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : g[v])
            if (level[w] < 0) {
                level[w] = level[v] + 1;
                q.push(w);
            }
    }
    return level;
}
} // namespace

void require_irreducible(const Digraph& g, const std::vector<std::string>& labels)
{
    int nc = 0;
    auto comp = strongly_connected(g, &nc);
    if (nc <= 1)
        return;
    auto reach = bfs_levels(g, 0);
    for (std::size_t v = 1; v < g.size(); ++v)
        if (comp[v] != comp[0]) {
            bool fwd = reach[v] >= 0;
            std::string a = labels[0], b = labels[v];
            throw ValidationError("reducible chain: " + (fwd ? b + " cannot reach " + a : a + " cannot reach " + b));
        }
}

int period(const Digraph& g)
{
    auto level = bfs_levels(g, 0);
    int d = 0;
    for (std::size_t v = 0; v < g.size(); ++v) {
        if (level[v] < 0)
            throw ValidationError("period of a reducible chain");
        for (int w : g[v])
            d = std::gcd(d, std::abs(level[v] + 1 - level[w]));
    }
    return d == 0 ? 1 : d;
}

std::vector<int> cyclic_classes(const Digraph& g, int d, int anchor)
{
    auto level = bfs_levels(g, anchor);
    std::vector<int> cls(g.size());
    for (std::size_t v = 0; v < g.size(); ++v)
        cls[v] = ((level[v] % d) + d) % d;
    return cls;
}

std::vector<std::vector<int>> block_paths(const Digraph& g, int d, int anchor)
{
    auto cls = cyclic_classes(g, d, anchor);
    std::vector<std::vector<int>> out;
    std::vector<int> path;
    std::function<void()> extend = [&] {
        if (static_cast<int>(path.size()) == d) {
            out.push_back(path);
            return;
        }
        auto next = g[path.back()];
        std::sort(next.begin(), next.end());
        for (int w : next) {
            path.push_back(w);
            extend();
            path.pop_back();
        }
    };
    for (std::size_t v = 0; v < g.size(); ++v)
        if (cls[v] == 0) {
            path = {static_cast<int>(v)};
            extend();
        }
    return out;
}

Digraph block_graph(const Digraph& g, const std::vector<std::vector<int>>& blocks)
{
    Digraph h(blocks.size());
    for (std::size_t a = 0; a < blocks.size(); ++a)
        for (std::size_t b = 0; b < blocks.size(); ++b) {
            const auto& out = g[blocks[a].back()];
            if (std::find(out.begin(), out.end(), blocks[b].front()) != out.end())
                h[a].push_back(static_cast<int>(b));
        }
    return h;
}

int smallest_label(const std::vector<std::string>& labels)
{
    return static_cast<int>(std::min_element(labels.begin(), labels.end()) - labels.begin());
}

} // namespace lyap
