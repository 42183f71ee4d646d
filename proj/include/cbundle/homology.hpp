#pragma once

// Exact integer chain complexes, Smith normal form and (co)homology.

#include <algorithm>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "complex.hpp"
#include "error.hpp"

namespace cbundle {

using Integer = boost::multiprecision::cpp_int;

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
        rows_ = int(init.size());
        cols_ = rows_ ? int(init.begin()->size()) : 0;
        for (const auto& row : init) {
            require(int(row.size()) == cols_, ErrorKind::Malformed, "ragged matrix literal");
            for (long v : row)
                data_.emplace_back(v);
        }
    }

    static IntMatrix identity(int n) {
        IntMatrix I(n, n);
        for (int i = 0; i < n; ++i)
            I(i, i) = 1;
        return I;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Integer& operator()(int r, int c) { return data_[std::size_t(r) * cols_ + c]; }
    const Integer& operator()(int r, int c) const { return data_[std::size_t(r) * cols_ + c]; }

    IntMatrix transpose() const {
        IntMatrix T(cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c)
                T(c, r) = (*this)(r, c);
        return T;
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const Integer& v) { return v == 0; });
    }

    friend IntMatrix operator*(const IntMatrix& A, const IntMatrix& B) {
        require(A.cols_ == B.rows_, ErrorKind::OutOfRange, "matrix product: shape mismatch");
        IntMatrix C(A.rows_, B.cols_);
        for (int i = 0; i < A.rows_; ++i)
            for (int k = 0; k < A.cols_; ++k) {
                const Integer& a = A(i, k);
                if (a == 0)
                    continue;
                for (int j = 0; j < B.cols_; ++j)
                    if (B(k, j) != 0)
                        C(i, j) += a * B(k, j);
            }
        return C;
    }

    bool operator==(const IntMatrix&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Integer> data_;
};

/// Boundary ∂_q: rows are (q-1)-simplices, columns are q-simplices.
inline IntMatrix boundary_matrix(const SemiSimplicialSet& X, int q) {
    require(q >= 1 && q <= X.top_dim(), ErrorKind::OutOfRange,
            "boundary_matrix: dimension " + std::to_string(q) + " out of range");
    IntMatrix M(X.count(q - 1), X.count(q));
    for (int c = 0; c < X.count(q); ++c)
        for (int i = 0; i <= q; ++i)
            M(X.face(q, c, i), c) += (i % 2 == 0) ? 1 : -1;
    return M;
}

// ---------------------------------------------------------------------------
// Smith normal form

struct SmithForm {
    std::vector<Integer> diagonal; // d_1 | d_2 | ... | d_r, all positive
    std::optional<IntMatrix> U;    // U * M * V = diag(diagonal) padded with zeros
    std::optional<IntMatrix> V;

    int rank() const { return int(diagonal.size()); }
};

namespace detail {

struct SmithWork {
    IntMatrix A;
    std::optional<IntMatrix> U, V;

    void swap_rows(int a, int b) {
        if (a == b)
            return;
        for (int c = 0; c < A.cols(); ++c)
            std::swap(A(a, c), A(b, c));
        if (U)
            for (int c = 0; c < U->cols(); ++c)
                std::swap((*U)(a, c), (*U)(b, c));
    }
    void swap_cols(int a, int b) {
        if (a == b)
            return;
        for (int r = 0; r < A.rows(); ++r)
            std::swap(A(r, a), A(r, b));
        if (V)
            for (int r = 0; r < V->rows(); ++r)
                std::swap((*V)(r, a), (*V)(r, b));
    }
    // row_dst += m * row_src
    void add_row(int dst, int src, const Integer& m) {
        for (int c = 0; c < A.cols(); ++c)
            if (A(src, c) != 0)
                A(dst, c) += m * A(src, c);
        if (U)
            for (int c = 0; c < U->cols(); ++c)
                if ((*U)(src, c) != 0)
                    (*U)(dst, c) += m * (*U)(src, c);
    }
    void add_col(int dst, int src, const Integer& m) {
        for (int r = 0; r < A.rows(); ++r)
            if (A(r, src) != 0)
                A(r, dst) += m * A(r, src);
        if (V)
            for (int r = 0; r < V->rows(); ++r)
                if ((*V)(r, src) != 0)
                    (*V)(r, dst) += m * (*V)(r, src);
    }
    void negate_row(int r) {
        for (int c = 0; c < A.cols(); ++c)
            A(r, c) = -A(r, c);
        if (U)
            for (int c = 0; c < U->cols(); ++c)
                (*U)(r, c) = -(*U)(r, c);
    }
};

} // namespace detail

/// Row/column gcd reduction, always pivoting on the entry of least absolute value.
inline SmithForm smith_normal_form(const IntMatrix& M, bool with_transforms = false) {
    detail::SmithWork w{M, std::nullopt, std::nullopt};
    if (with_transforms) {
        w.U = IntMatrix::identity(M.rows());
        w.V = IntMatrix::identity(M.cols());
    }
    IntMatrix& A = w.A;
    const int R = A.rows(), C = A.cols();
    SmithForm out;
    for (int t = 0; t < std::min(R, C); ++t) {
        int pr = -1, pc = -1;
        Integer best;
        for (int r = t; r < R; ++r)
            for (int c = t; c < C; ++c)
                if (A(r, c) != 0 && (pr < 0 || abs(A(r, c)) < best)) {
                    best = abs(A(r, c));
                    pr = r;
                    pc = c;
                }
        if (pr < 0)
            break;
        w.swap_rows(t, pr);
        w.swap_cols(t, pc);
        for (;;) {
            bool residue = false;
            for (int r = t + 1; r < R; ++r)
                if (A(r, t) != 0) {
                    Integer q = A(r, t) / A(t, t);
                    if (q != 0)
                        w.add_row(r, t, -q);
                    residue |= A(r, t) != 0;
                }
            for (int c = t + 1; c < C; ++c)
                if (A(t, c) != 0) {
                    Integer q = A(t, c) / A(t, t);
                    if (q != 0)
                        w.add_col(c, t, -q);
                    residue |= A(t, c) != 0;
                }
            if (residue) {
                // a remainder smaller than the pivot survived; make it the pivot
                int br = t, bc = t;
                for (int r = t + 1; r < R; ++r)
                    if (A(r, t) != 0 && abs(A(r, t)) < abs(A(br, bc))) {
                        br = r;
                        bc = t;
                    }
                for (int c = t + 1; c < C; ++c)
                    if (A(t, c) != 0 && abs(A(t, c)) < abs(A(br, bc))) {
                        br = t;
                        bc = c;
                    }
                w.swap_rows(t, br);
                w.swap_cols(t, bc);
                continue;
            }
            int bad_row = -1;
            for (int r = t + 1; r < R && bad_row < 0; ++r)
                for (int c = t + 1; c < C; ++c)
                    if (A(r, c) % A(t, t) != 0) {
                        bad_row = r;
                        break;
                    }
            if (bad_row < 0)
                break;
            w.add_row(t, bad_row, 1);
        }
        if (A(t, t) < 0)
            w.negate_row(t);
        out.diagonal.push_back(A(t, t));
    }
    out.U = std::move(w.U);
    out.V = std::move(w.V);
    return out;
}

// ---------------------------------------------------------------------------
// Homology

struct HomologyGroup {
    int betti = 0;
    std::vector<Integer> torsion; // each >= 2, each dividing the next

    bool operator==(const HomologyGroup&) const = default;
};

inline std::string to_string(const HomologyGroup& g) {
    std::string s;
    if (g.betti == 1)
        s = "Z";
    else if (g.betti > 1)
        s = "Z^" + std::to_string(g.betti);
    for (const auto& t : g.torsion)
        s += (s.empty() ? "" : " + ") + std::string("Z/") + t.str();
    return s.empty() ? "0" : s;
}

struct HomologyGroups {
    std::vector<HomologyGroup> groups; // index = dimension

    const HomologyGroup& operator[](int q) const { return groups[std::size_t(q)]; }
    bool operator==(const HomologyGroups&) const = default;
    std::vector<int> betti() const {
        std::vector<int> b;
        for (const auto& g : groups)
            b.push_back(g.betti);
        return b;
    }
};

inline HomologyGroups homology_groups(const SemiSimplicialSet& X) {
    const int top = X.top_dim();
    std::vector<int> rank(std::size_t(top + 2), 0);
    std::vector<std::vector<Integer>> diag(std::size_t(top + 2));
    for (int q = 1; q <= top; ++q) {
        auto snf = smith_normal_form(boundary_matrix(X, q));
        rank[std::size_t(q)] = snf.rank();
        diag[std::size_t(q)] = std::move(snf.diagonal);
    }
    HomologyGroups H;
    for (int q = 0; q <= top; ++q) {
        HomologyGroup g;
        g.betti = X.count(q) - rank[std::size_t(q)] - rank[std::size_t(q + 1)];
        for (const auto& d : diag[std::size_t(q + 1)])
            if (d > 1)
                g.torsion.push_back(d);
        H.groups.push_back(std::move(g));
    }
    return H;
}

// ---------------------------------------------------------------------------
// Cochains

struct IntCochain {
    int dim = 0;
    std::vector<Integer> values; // indexed by simplex id

    bool operator==(const IntCochain&) const = default;

    static IntCochain zero(const SemiSimplicialSet& X, int q) {
        return {q, std::vector<Integer>(std::size_t(X.count(q)))};
    }
    static IntCochain from_bits(int q, const std::vector<int>& bits) {
        IntCochain u{q, {}};
        for (int b : bits)
            u.values.emplace_back(b);
        return u;
    }
    bool is_binary() const {
        return std::all_of(values.begin(), values.end(),
                           [](const Integer& v) { return v == 0 || v == 1; });
    }
    std::vector<int> bits() const {
        std::vector<int> out;
        for (const auto& v : values)
            out.push_back(int(v));
        return out;
    }
};

inline void require_on(const SemiSimplicialSet& X, const IntCochain& u) {
    require(int(u.values.size()) == X.count(u.dim), ErrorKind::Malformed,
            "cochain of dimension " + std::to_string(u.dim) + " has " +
                std::to_string(u.values.size()) + " values, complex has " +
                std::to_string(X.count(u.dim)) + " simplices");
}

inline IntCochain coboundary(const SemiSimplicialSet& X, const IntCochain& u) {
    require_on(X, u);
    IntCochain du = IntCochain::zero(X, u.dim + 1);
    for (int x = 0; x < X.count(u.dim + 1); ++x)
        for (int i = 0; i <= u.dim + 1; ++i) {
            const auto& v = u.values[std::size_t(X.face(u.dim + 1, x, i))];
            du.values[std::size_t(x)] += (i % 2 == 0) ? v : Integer(-v);
        }
    return du;
}

inline bool is_cocycle(const SemiSimplicialSet& X, const IntCochain& u) {
    auto du = coboundary(X, u);
    return std::all_of(du.values.begin(), du.values.end(), [](const Integer& v) { return v == 0; });
}

struct CohomologyTest {
    bool cohomologous = false;
    IntCochain witness; // d(witness) = u1 - u2 when cohomologous
};

/// Decides u1 ~ u2 by solving d a = u1 - u2 over the integers.
inline CohomologyTest cohomologous(const SemiSimplicialSet& X, const IntCochain& u1,
                                   const IntCochain& u2) {
    require(u1.dim == u2.dim, ErrorKind::Malformed, "cohomologous: dimension mismatch");
    require(is_cocycle(X, u1) && is_cocycle(X, u2), ErrorKind::NotCocycle,
            "cohomologous: inputs must be cocycles");
    const int q = u1.dim;
    CohomologyTest out;
    std::vector<Integer> b(u1.values.size());
    for (std::size_t i = 0; i < b.size(); ++i)
        b[i] = u1.values[i] - u2.values[i];
    if (q == 0) {
        out.cohomologous = std::all_of(b.begin(), b.end(), [](const Integer& v) { return v == 0; });
        return out;
    }
    out.witness = IntCochain::zero(X, q - 1);
    if (X.count(q) == 0) {
        out.cohomologous = true;
        return out;
    }
    IntMatrix D = boundary_matrix(X, q).transpose(); // coboundary C^{q-1} -> C^q
    if (D.rows() == 0 || D.cols() == 0) {
        out.cohomologous = std::all_of(b.begin(), b.end(), [](const Integer& v) { return v == 0; });
        return out;
    }
    auto snf = smith_normal_form(D, true);
    const IntMatrix& U = *snf.U;
    const IntMatrix& V = *snf.V;
    // S y = U b with a = V y
    std::vector<Integer> c(std::size_t(D.rows()));
    for (int r = 0; r < D.rows(); ++r)
        for (int k = 0; k < D.rows(); ++k)
            if (U(r, k) != 0)
                c[std::size_t(r)] += U(r, k) * b[std::size_t(k)];
    std::vector<Integer> y(std::size_t(D.cols()));
    for (int r = 0; r < D.rows(); ++r) {
        if (r < snf.rank()) {
            const Integer& d = snf.diagonal[std::size_t(r)];
            if (c[std::size_t(r)] % d != 0)
                return out;
            y[std::size_t(r)] = c[std::size_t(r)] / d;
        } else if (c[std::size_t(r)] != 0) {
            return out;
        }
    }
    for (int r = 0; r < D.cols(); ++r)
        for (int k = 0; k < D.cols(); ++k)
            if (V(r, k) != 0)
                out.witness.values[std::size_t(r)] += V(r, k) * y[std::size_t(k)];
    auto da = coboundary(X, out.witness);
    require(da.values == b, ErrorKind::Internal, "cohomologous: witness check failed");
    out.cohomologous = true;
    return out;
}

// ---------------------------------------------------------------------------
// Closed oriented surfaces

struct FundamentalClass {
    std::vector<int> coefficients; // ±1 per triangle; +1 means o(x) = 0
    int seed = 0;

    int sign(int triangle) const { return coefficients[std::size_t(triangle)]; }
    int positive() const { return int(std::count(coefficients.begin(), coefficients.end(), 1)); }
    int negative() const { return int(std::count(coefficients.begin(), coefficients.end(), -1)); }
};

/// Propagates orientation across shared edges starting from `seed`.
inline FundamentalClass fundamental_class(const SemiSimplicialSet& X, int seed = 0, int sign = 1) {
    require(X.top_dim() == 2, ErrorKind::NotClosedSurface, "surface complex must have top dimension 2");
    const int nt = X.count(2);
    require(seed >= 0 && seed < nt, ErrorKind::OutOfRange, "seed triangle out of range");
    require(sign == 1 || sign == -1, ErrorKind::OutOfRange, "seed sign must be +1 or -1");
    std::vector<std::vector<std::pair<int, int>>> slots(std::size_t(X.count(1)));
    for (int t = 0; t < nt; ++t)
        for (int i = 0; i <= 2; ++i)
            slots[std::size_t(X.face(2, t, i))].push_back({t, i});
    for (int e = 0; e < X.count(1); ++e)
        require(slots[std::size_t(e)].size() == 2, ErrorKind::NotClosedSurface,
                "edge " + std::to_string(e) + " lies in " + std::to_string(slots[std::size_t(e)].size()) +
                    " triangle slots, expected 2");

    std::vector<int> coef(std::size_t(nt), 0);
    coef[std::size_t(seed)] = sign;
    std::queue<int> todo;
    todo.push(seed);
    while (!todo.empty()) {
        int t = todo.front();
        todo.pop();
        for (int i = 0; i <= 2; ++i) {
            const auto& s = slots[std::size_t(X.face(2, t, i))];
            auto [u, j] = (s[0] == std::pair{t, i}) ? s[1] : s[0];
            // the two incidences must cancel: coef_t (-1)^i + coef_u (-1)^j = 0
            int want = -coef[std::size_t(t)] * (((i + j) % 2 == 0) ? 1 : -1);
            if (coef[std::size_t(u)] == 0) {
                coef[std::size_t(u)] = want;
                todo.push(u);
            } else if (coef[std::size_t(u)] != want) {
                fail(ErrorKind::NonOrientable, "orientation propagation contradicts at triangle " +
                                                   std::to_string(u));
            }
        }
    }
    require(std::find(coef.begin(), coef.end(), 0) == coef.end(), ErrorKind::NotClosedSurface,
            "surface complex is not connected");
    FundamentalClass fm{coef, seed};
    IntMatrix d2 = boundary_matrix(X, 2);
    for (int e = 0; e < d2.rows(); ++e) {
        Integer s = 0;
        for (int t = 0; t < nt; ++t)
            s += d2(e, t) * coef[std::size_t(t)];
        require(s == 0, ErrorKind::Internal, "fundamental class has nonzero boundary");
    }
    return fm;
}

/// ⟨u, [M]⟩ = Σ (-1)^{o(x)} u(x).
inline Integer pairing(const IntCochain& u, const FundamentalClass& fm) {
    require(u.dim == 2 && u.values.size() == fm.coefficients.size(), ErrorKind::Malformed,
            "pairing: cochain and fundamental class live on different complexes");
    Integer s = 0;
    for (std::size_t t = 0; t < u.values.size(); ++t)
        s += fm.coefficients[t] * u.values[t];
    return s;
}

} // namespace cbundle
