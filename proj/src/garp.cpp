#include "revpref/garp.hpp"

#include <deque>

namespace revpref {

using Eigen::Index;

BoolMatrix transitive_closure(const BoolMatrix& direct) {
    BoolMatrix c = direct;
    const Index n = c.rows();
    for (Index k = 0; k < n; ++k) c(k, k) = true;
    for (Index m = 0; m < n; ++m)
        for (Index i = 0; i < n; ++i)
            if (c(i, m))
                for (Index j = 0; j < n; ++j) c(i, j) = c(i, j) || c(m, j);
    return c;
}

PreferenceRelation build_relation(const Eigen::MatrixXd& afford, double tol) {
    PreferenceRelation rel;
    rel.direct = (afford.array() <= tol).matrix();
    rel.closure = transitive_closure(rel.direct);
    return rel;
}

namespace {

// Shortest chain of direct edges from `from` to `to` (BFS, lowest index first).
std::vector<Index> shortest_chain(const BoolMatrix& direct, Index from, Index to) {
    const Index n = direct.rows();
    std::vector<Index> parent(n, -1);
    std::vector<bool> seen(n, false);
    std::deque<Index> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
        const Index v = queue.front();
        queue.pop_front();
        if (v == to) break;
        for (Index w = 0; w < n; ++w) {
            if (w == v || !direct(v, w) || seen[w]) continue;
            seen[w] = true;
            parent[w] = v;
            queue.push_back(w);
        }
    }
    std::vector<Index> chain;
    if (!seen[to]) return chain;
    for (Index v = to; v != -1; v = parent[v]) chain.insert(chain.begin(), v);
    return chain;
}

}  // namespace

GarpReport check_garp(const Eigen::MatrixXd& afford, double tol) {
    const PreferenceRelation rel = build_relation(afford, tol);
    GarpReport report;
    const Index n = rel.size();
    for (Index k = 0; k < n; ++k) {
        for (Index j = 0; j < n; ++j) {
            if (k == j || !rel.closure(k, j) || afford(j, k) >= -tol) continue;
            report.holds = false;
            report.violation = GarpViolation{k, j, shortest_chain(rel.direct, k, j), afford(j, k)};
            return report;
        }
    }
    return report;
}

}  // namespace revpref
