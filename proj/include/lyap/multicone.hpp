#pragma once

#include "lyap/markov.hpp"
#include "lyap/projective.hpp"

#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace lyap {

// ((i,a),(j,b)): component a of letter i now, component b of letter j next.
struct BranchState {
    int i, a, j, b;
    auto operator<=>(const BranchState&) const = default;
};

// Per admissible (i, a, j): the containing component b = beta(i,a,j) and the
// sign of target^{-1} A_j source.
struct SignTable {
    std::vector<BranchState> edges;
    std::vector<int> signs;
};

struct BranchSystem {
    std::vector<BranchState> states;  // sorted
    std::vector<int> signs;
    Digraph graph;
    std::vector<std::vector<int>> classes;  // sink components, by smallest state

    std::string label(int r, const std::vector<std::string>& alphabet) const;
};

template <class S>
using Multicone = std::vector<std::vector<Arc<S>>>;

template <class S>
SignTable validate_multicone(const std::vector<Mat2<S>>& A, const Digraph& support,
                             const Multicone<S>& M, const std::vector<std::string>& labels)
{
    const int n = static_cast<int>(A.size());
    for (int i = 0; i < n; ++i) {
        if (M[i].empty())
            throw ValidationError("letter " + labels[i] + " has no multicone component");
        for (std::size_t a = 0; a < M[i].size(); ++a) {
            try {
                inverse2(M[i][a].frame);
            } catch (const SingularError&) {
                throw ValidationError("degenerate arc " + labels[i] + ":" + std::to_string(a + 1));
            }
        }
        for (std::size_t a = 0; a < M[i].size(); ++a)
            for (std::size_t b = a + 1; b < M[i].size(); ++b) {
                const auto &U = M[i][a], &V = M[i][b];
                bool apart = true;
                for (int c = 0; c < 2; ++c) {
                    ProjPoint<S> u{U.frame.col(c)}, v{V.frame.col(c)};
                    apart = apart && arc_excludes(V, u) && arc_excludes(U, v);
                }
                if (!apart)
                    throw ValidationError("components " + labels[i] + ":" + std::to_string(a + 1) + " and " +
                                          labels[i] + ":" + std::to_string(b + 1) + " have overlapping closures");
            }
    }

    SignTable table;
    std::string violations;
    for (int i = 0; i < n; ++i)
        for (std::size_t a = 0; a < M[i].size(); ++a)
            for (int j : support[i]) {
                int found = -1, sign = 0;
                for (std::size_t b = 0; b < M[j].size(); ++b) {
                    auto s = strict_image_containment(M[j][b], A[j], M[i][a]);
                    if (!s)
                        continue;
                    if (found >= 0)
                        throw std::logic_error("image contained in two disjoint components");
                    found = static_cast<int>(b);
                    sign = *s;
                }
                if (found < 0) {
                    violations += " (" + labels[i] + "," + std::to_string(a + 1) + "," + labels[j] + ")";
                    continue;
                }
                table.edges.push_back({i, static_cast<int>(a), j, found});
                table.signs.push_back(sign);
            }
    if (!violations.empty())
        throw ValidationError("multicone condition fails on edges" + violations);
    return table;
}

BranchSystem build_branch_system(const SignTable& table, const Digraph& support);

// Default: the class holding the smallest branch state.
const std::vector<int>& select_class(const BranchSystem& B, std::optional<int> choice);

// Q restricted to C: Q(r, r') = P(j, k) when r = (i,a,j,b), r' = (j,b,k,c).
template <class S>
Matrix<S> branch_transition(const BranchSystem& B, const std::vector<int>& C, const Matrix<S>& P)
{
    const int n = static_cast<int>(C.size());
    Matrix<S> Q = Matrix<S>::Constant(n, n, S(0));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const auto &r = B.states[C[x]], &s = B.states[C[y]];
            if (r.j == s.i && r.b == s.a)
                Q(x, y) = P(s.i, s.j);
        }
    return Q;
}

} // namespace lyap
