#include "torsionlab/quiver.hpp"

#include <algorithm>
#include <queue>
#include <set>

namespace torsionlab {

namespace {

// Simply-laced Dynkin check on the underlying undirected graph: a tree whose
// degree sequence matches A_n, D_n (n >= 4), or E_6/7/8.
DynkinSeries classify(int n, const std::vector<std::pair<int, int>>& arrows) {
    if (n <= 0) throw contract_error("quiver must have at least one vertex");
    if (static_cast<int>(arrows.size()) != n - 1)
        throw contract_error("underlying graph is not a tree (wrong edge count)");
    std::set<std::pair<int, int>> seen;
    std::vector<std::vector<int>> adj(n);
    for (auto [s, t] : arrows) {
        if (s < 0 || s >= n || t < 0 || t >= n) throw contract_error("arrow endpoint out of range");
        if (s == t) throw contract_error("loops are not allowed");
        auto key = std::minmax(s, t);
        if (!seen.insert(key).second) throw contract_error("multiple edges are not allowed");
        adj[s].push_back(t);
        adj[t].push_back(s);
    }
    // connectivity
    std::vector<bool> vis(n, false);
    std::queue<int> q;
    q.push(0);
    vis[0] = true;
    int cnt = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int w : adj[v])
            if (!vis[w]) {
                vis[w] = true;
                ++cnt;
                q.push(w);
            }
    }
    if (cnt != n) throw contract_error("underlying graph is disconnected");

    std::vector<int> deg(n);
    for (int v = 0; v < n; ++v) deg[v] = static_cast<int>(adj[v].size());
    int branch = -1;
    for (int v = 0; v < n; ++v) {
        if (deg[v] > 3) throw contract_error("vertex of degree > 3: not a Dynkin diagram");
        if (deg[v] == 3) {
            if (branch >= 0) throw contract_error("two branch vertices: not a Dynkin diagram");
            branch = v;
        }
    }
    if (branch < 0) return DynkinSeries::A;
    // arm lengths from the branch vertex
    std::vector<int> arms;
    for (int w : adj[branch]) {
        int len = 1, prev = branch, cur = w;
        while (deg[cur] == 2) {
            int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
            prev = cur;
            cur = nxt;
            ++len;
        }
        arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] == 1 && arms[1] == 1) return DynkinSeries::D;
    if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return DynkinSeries::E;
    throw contract_error("underlying graph is not of type A/D/E");
}

// Directed cycle check via Kahn's algorithm.
void check_acyclic(int n, const std::vector<std::pair<int, int>>& arrows) {
    std::vector<int> indeg(n, 0);
    std::vector<std::vector<int>> out(n);
    for (auto [s, t] : arrows) {
        out[s].push_back(t);
        ++indeg[t];
    }
    std::queue<int> q;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) q.push(v);
    int removed = 0;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        ++removed;
        for (int w : out[v])
            if (--indeg[w] == 0) q.push(w);
    }
    if (removed != n) throw contract_error("quiver has a directed cycle");
}

}  // namespace

Quiver::Quiver(int vertices, std::vector<std::pair<int, int>> arrows)
    : vertices_(vertices), arrows_(std::move(arrows)) {
    check_acyclic(vertices_, arrows_);
    series_ = classify(vertices_, arrows_);
}

Quiver Quiver::linear_a(int n) {
    std::vector<std::pair<int, int>> arrows;
    for (int i = 0; i + 1 < n; ++i) arrows.emplace_back(i, i + 1);
    return Quiver(n, std::move(arrows));
}

std::string Quiver::type_name() const {
    char c = series_ == DynkinSeries::A ? 'A' : series_ == DynkinSeries::D ? 'D' : 'E';
    return std::string(1, c) + std::to_string(vertices_);
}

std::vector<std::vector<int>> Quiver::positive_roots() const {
    // Closure of the simple roots under the simple reflections of the
    // underlying diagram, keeping positive vectors.
    int n = vertices_;
    std::vector<std::vector<int>> adj(n);
    for (auto [s, t] : arrows_) {
        adj[s].push_back(t);
        adj[t].push_back(s);
    }
    std::set<std::vector<int>> roots;
    std::queue<std::vector<int>> work;
    for (int i = 0; i < n; ++i) {
        std::vector<int> e(n, 0);
        e[i] = 1;
        roots.insert(e);
        work.push(e);
    }
    while (!work.empty()) {
        auto a = work.front();
        work.pop();
        for (int i = 0; i < n; ++i) {
            int pairing = 2 * a[i];
            for (int j : adj[i]) pairing -= a[j];
            std::vector<int> b = a;
            b[i] -= pairing;
            if (std::all_of(b.begin(), b.end(), [](int x) { return x >= 0; }) &&
                std::any_of(b.begin(), b.end(), [](int x) { return x > 0; }) &&
                roots.insert(b).second)
                work.push(b);
        }
    }
    return {roots.begin(), roots.end()};
}

std::vector<std::vector<int>> Quiver::paths_from(int v) const {
    std::vector<std::vector<int>> out;
    std::vector<std::vector<int>> stack;
    stack.push_back({});
    out.push_back({});
    while (!stack.empty()) {
        auto p = stack.back();
        stack.pop_back();
        int end = v;
        for (int a : p) end = arrows_[a].second;
        for (int a = 0; a < static_cast<int>(arrows_.size()); ++a) {
            if (arrows_[a].first != end) continue;
            auto q = p;
            q.push_back(a);
            out.push_back(q);
            stack.push_back(q);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

uint64_t Quiver::hash() const {
    uint64_t h = 1469598103934665603ull;
    auto mix = [&h](uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    mix(static_cast<uint64_t>(vertices_));
    for (auto [s, t] : arrows_) {
        mix(static_cast<uint64_t>(s) + 1);
        mix(static_cast<uint64_t>(t) + 1);
    }
    return h;
}

}  // namespace torsionlab
