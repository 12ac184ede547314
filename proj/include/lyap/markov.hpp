#pragma once

#include "lyap/numeric.hpp"

#include <Eigen/Core>
#include <string>
#include <vector>

namespace lyap {

template <class S> using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S> using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

// Support digraph: adjacency lists, vertices 0..n-1.
using Digraph = std::vector<std::vector<int>>;

// Strongly connected components (Tarjan). comp[v] is the component id;
// components are numbered in reverse topological order.
std::vector<int> strongly_connected(const Digraph& g, int* count = nullptr);

// Sink components, each sorted ascending, ordered by smallest vertex.
std::vector<std::vector<int>> sink_components(const Digraph& g);

// Subgraph induced on `vertices` (renumbered by position).
Digraph induced(const Digraph& g, const std::vector<int>& vertices);

// Throws ValidationError naming two mutually unreachable vertices.
void require_irreducible(const Digraph& g, const std::vector<std::string>& labels);

// gcd of BFS level differences along edges; g must be irreducible.
int period(const Digraph& g);

// Cyclic class (0..d-1) of every vertex, class 0 containing `anchor`.
std::vector<int> cyclic_classes(const Digraph& g, int d, int anchor);

// Admissible paths of d vertices starting in class 0 (anchor's class), in
// lexicographic order of vertex indices.
std::vector<std::vector<int>> block_paths(const Digraph& g, int d, int anchor);

// Block transition support: last vertex of b1 -> first vertex of b2.
Digraph block_graph(const Digraph& g, const std::vector<std::vector<int>>& blocks);

// Index of the lexicographically smallest label.
int smallest_label(const std::vector<std::string>& labels);

template <class S>
Digraph support_of(const Matrix<S>& P)
{
    Digraph g(P.rows());
    for (int i = 0; i < P.rows(); ++i)
        for (int j = 0; j < P.cols(); ++j)
            if (!(P(i, j) == S(0)))
                g[i].push_back(j);
    return g;
}

// Row-sum / sign report; throws ValidationError listing offending rows.
template <class S>
void validate_stochastic(const Matrix<S>& P, const std::vector<std::string>& labels)
{
    if (P.rows() == 0 || P.rows() != P.cols())
        throw ValidationError("transition matrix must be square and nonempty");
    std::string bad;
    Real tol = Num<S>::exact ? Real(0) : pow2(8 - static_cast<long>(precision()));
    for (int i = 0; i < P.rows(); ++i) {
        S sum(0);
        bool negative = false;
        for (int j = 0; j < P.cols(); ++j) {
            sum += P(i, j);
            if (Num<S>::real(P(i, j)) < 0)
                negative = true;
        }
        Real dev = abs(Num<S>::real(sum) - 1);
        bool off = Num<S>::exact ? !(sum == S(1)) : dev > tol;
        if (negative || off)
            bad += " " + labels[i] + (negative ? "(negative entry)" : "(row sum " + to_string(Num<S>::real(sum), 10) + ")");
    }
    if (!bad.empty())
        throw ValidationError("not row-stochastic:" + bad);
}

// Gaussian elimination with partial pivoting by magnitude.
template <class S>
Vector<S> solve_linear(Matrix<S> A, Vector<S> b)
{
    const int n = static_cast<int>(A.rows());
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = Num<S>::mag(A(k, k));
        for (int i = k + 1; i < n; ++i) {
            double m = Num<S>::mag(A(i, k));
            if (m > best) {
                best = m;
                piv = i;
            }
        }
        if (best == 0)
            throw SingularError("linear system");
        if (piv != k) {
            A.row(k).swap(A.row(piv));
            std::swap(b(k), b(piv));
        }
        for (int i = k + 1; i < n; ++i) {
            if (A(i, k) == S(0))
                continue;
            S f = A(i, k) / A(k, k);
            for (int j = k + 1; j < n; ++j)
                A(i, j) -= f * A(k, j);
            b(i) -= f * b(k);
        }
    }
    Vector<S> x(n);
    for (int k = n - 1; k >= 0; --k) {
        S s = b(k);
        for (int j = k + 1; j < n; ++j)
            s -= A(k, j) * x(j);
        x(k) = s / A(k, k);
    }
    return x;
}

// Row vector pi with pi^T M = e_pivot^T, where M = I - P with the pivot
// column replaced by ones; pi P = pi and sum(pi) = 1 whenever M is invertible.
template <class S>
Vector<S> stationary(const Matrix<S>& P, int pivot)
{
    const int n = static_cast<int>(P.rows());
    Matrix<S> Mt(n, n);  // transpose of M
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            Mt(j, i) = (i == j ? S(1) : S(0)) - P(i, j);
    for (int i = 0; i < n; ++i)
        Mt(pivot, i) = S(1);
    Vector<S> e = Vector<S>::Constant(n, S(0));
    e(pivot) = S(1);
    return solve_linear<S>(Mt, e);
}

// Block transition probabilities: P(last(b1), first(b2)) * internal(b2).
template <class S>
Matrix<S> block_transition(const Matrix<S>& P, const std::vector<std::vector<int>>& blocks)
{
    const int nb = static_cast<int>(blocks.size());
    std::vector<S> internal(nb, S(1));
    for (int b = 0; b < nb; ++b)
        for (std::size_t k = 0; k + 1 < blocks[b].size(); ++k)
            internal[b] = internal[b] * P(blocks[b][k], blocks[b][k + 1]);
    Matrix<S> Pt = Matrix<S>::Constant(nb, nb, S(0));
    for (int a = 0; a < nb; ++a)
        for (int b = 0; b < nb; ++b)
            Pt(a, b) = P(blocks[a].back(), blocks[b].front()) * internal[b];
    return Pt;
}

} // namespace lyap
