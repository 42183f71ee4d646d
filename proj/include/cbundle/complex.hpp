#pragma once

// Finite semi-simplicial sets: simplices addressed by (dimension, dense id),
// with face operators d_0..d_q stored as lookup tables.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <map>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace cbundle {

struct SimplexRef {
    int dim = 0;
    int id = 0;

    auto operator<=>(const SimplexRef&) const = default;
};

inline std::string to_string(SimplexRef x) {
    return std::to_string(x.dim) + "/" + std::to_string(x.id);
}

class SemiSimplicialSet {
public:
    SemiSimplicialSet() = default;

    /// Raw constructor. `faces[q]` holds, for every q-simplex, its q+1 face
    /// ids in dimension q-1; `faces[0]` is ignored. Only shape is checked here;
    /// use validate_complex() for the simplicial identities.
    SemiSimplicialSet(std::vector<int> counts,
                      std::vector<std::vector<std::vector<int>>> faces,
                      std::vector<std::vector<std::string>> labels = {})
        : counts_(std::move(counts)), labels_(std::move(labels)) {
        while (!counts_.empty() && counts_.back() == 0)
            counts_.pop_back();
        faces_.resize(counts_.size());
        for (std::size_t q = 1; q < counts_.size(); ++q) {
            require(q < faces.size() && faces[q].size() == std::size_t(counts_[q]),
                    ErrorKind::Malformed,
                    "face table for dimension " + std::to_string(q) + " has wrong length");
            faces_[q].reserve(std::size_t(counts_[q]) * (q + 1));
            for (int id = 0; id < counts_[q]; ++id) {
                const auto& row = faces[q][id];
                require(row.size() == q + 1, ErrorKind::Malformed,
                        "simplex " + std::to_string(q) + "/" + std::to_string(id) +
                            " must list " + std::to_string(q + 1) + " faces");
                faces_[q].insert(faces_[q].end(), row.begin(), row.end());
            }
        }
        for (int c : counts_)
            require(c >= 0, ErrorKind::Malformed, "negative simplex count");
        if (!labels_.empty())
            labels_.resize(counts_.size());
    }

    /// Highest dimension with a simplex, or -1 for the empty set.
    int top_dim() const { return int(counts_.size()) - 1; }

    int count(int q) const {
        return (q >= 0 && q < int(counts_.size())) ? counts_[q] : 0;
    }

    std::vector<int> counts() const { return counts_; }

    bool contains(SimplexRef x) const { return x.id >= 0 && x.id < count(x.dim); }

    int face(int q, int id, int i) const { return faces_[q][std::size_t(id) * (q + 1) + i]; }

    SimplexRef face(SimplexRef x, int i) const { return {x.dim - 1, face(x.dim, x.id, i)}; }

    std::span<const int> faces(int q, int id) const {
        return {faces_[q].data() + std::size_t(id) * (q + 1), std::size_t(q + 1)};
    }

    /// Face of x spanned by the vertex positions in `keep` (strictly increasing).
    SimplexRef face_along(SimplexRef x, std::span<const int> keep) const {
        std::vector<bool> kept(std::size_t(x.dim + 1), false);
        for (int p : keep)
            kept[std::size_t(p)] = true;
        // deleting from the top keeps lower positions stable
        for (int m = x.dim; m >= 0; --m)
            if (!kept[std::size_t(m)])
                x = face(x, m);
        return x;
    }

    int vertex(SimplexRef x, int p) const {
        const int keep[1] = {p};
        return face_along(x, keep).id;
    }

    std::vector<int> vertices(SimplexRef x) const {
        std::vector<int> out(std::size_t(x.dim + 1));
        for (int p = 0; p <= x.dim; ++p)
            out[std::size_t(p)] = vertex(x, p);
        return out;
    }

    std::string label(SimplexRef x) const {
        if (x.dim < int(labels_.size()) && x.id < int(labels_[x.dim].size()))
            return labels_[x.dim][x.id];
        return {};
    }

    const std::vector<std::vector<std::string>>& labels() const { return labels_; }

    std::vector<std::vector<int>> face_rows(int q) const {
        std::vector<std::vector<int>> rows;
        if (q <= 0)
            return rows;
        for (int id = 0; id < count(q); ++id) {
            auto f = faces(q, id);
            rows.emplace_back(f.begin(), f.end());
        }
        return rows;
    }

    bool operator==(const SemiSimplicialSet& other) const {
        return counts_ == other.counts_ && faces_ == other.faces_;
    }

private:
    std::vector<int> counts_;
    std::vector<std::vector<int>> faces_;
    std::vector<std::vector<std::string>> labels_;
};

// ---------------------------------------------------------------------------
// Validation

struct FaceViolation {
    SimplexRef simplex;
    int i = 0;
    int j = 0;
};

struct ValidationReport {
    std::vector<std::string> entries;
    std::vector<FaceViolation> face_violations;

    bool ok() const { return entries.empty(); }
};

inline ValidationReport validate_complex(const SemiSimplicialSet& X) {
    ValidationReport report;
    for (int q = 1; q <= X.top_dim(); ++q)
        for (int id = 0; id < X.count(q); ++id)
            for (int i = 0; i <= q; ++i) {
                int f = X.face(q, id, i);
                if (f < 0 || f >= X.count(q - 1))
                    report.entries.push_back("simplex " + to_string({q, id}) + " face " +
                                             std::to_string(i) + " -> " + std::to_string(f) +
                                             " does not exist in dimension " +
                                             std::to_string(q - 1));
            }
    if (!report.ok())
        return report; // identity checks would index out of range
    for (int q = 2; q <= X.top_dim(); ++q)
        for (int id = 0; id < X.count(q); ++id)
            for (int j = 1; j <= q; ++j)
                for (int i = 0; i < j; ++i) {
                    SimplexRef x{q, id};
                    if (X.face(X.face(x, j), i) != X.face(X.face(x, i), j - 1)) {
                        report.face_violations.push_back({x, i, j});
                        report.entries.push_back("face identity d" + std::to_string(i) + " d" +
                                                 std::to_string(j) + " = d" +
                                                 std::to_string(j - 1) + " d" +
                                                 std::to_string(i) + " fails at simplex " +
                                                 to_string(x));
                    }
                }
    return report;
}

/// Throws FaceIdentity (or Malformed for dangling references) on the first problem.
inline void require_valid(const SemiSimplicialSet& X) {
    auto report = validate_complex(X);
    if (report.ok())
        return;
    if (!report.face_violations.empty()) {
        const auto& v = report.face_violations.front();
        fail(ErrorKind::FaceIdentity, report.entries.front() + " (x=" + to_string(v.simplex) +
                                          ", i=" + std::to_string(v.i) +
                                          ", j=" + std::to_string(v.j) + ")");
    }
    fail(ErrorKind::Malformed, report.entries.front());
}

inline long euler_characteristic(const SemiSimplicialSet& X) {
    long chi = 0;
    for (int q = 0; q <= X.top_dim(); ++q)
        chi += (q % 2 == 0 ? 1 : -1) * long(X.count(q));
    return chi;
}

// ---------------------------------------------------------------------------
// Constructors

/// Closure of a list of facets given as vertex lists, indexed lexicographically
/// by sorted vertex tuple in every dimension. Face i deletes the i-th vertex.
inline SemiSimplicialSet complex_from_facets(const std::vector<std::vector<int>>& facets) {
    std::vector<std::set<std::vector<int>>> cells;
    for (auto f : facets) {
        std::sort(f.begin(), f.end());
        require(std::adjacent_find(f.begin(), f.end()) == f.end() && !f.empty(),
                ErrorKind::Malformed, "facet vertices must be distinct");
        // all nonempty subsets
        const int n = int(f.size());
        for (unsigned mask = 1; mask < (1u << n); ++mask) {
            std::vector<int> s;
            for (int b = 0; b < n; ++b)
                if (mask & (1u << b))
                    s.push_back(f[std::size_t(b)]);
            if (cells.size() < s.size())
                cells.resize(s.size());
            cells[s.size() - 1].insert(s);
        }
    }
    std::vector<std::map<std::vector<int>, int>> index(cells.size());
    std::vector<int> counts;
    std::vector<std::vector<std::vector<int>>> faces(cells.size());
    std::vector<std::vector<std::string>> labels(cells.size());
    for (std::size_t q = 0; q < cells.size(); ++q) {
        counts.push_back(int(cells[q].size()));
        int id = 0;
        for (const auto& s : cells[q]) {
            index[q][s] = id++;
            if (q == 0)
                labels[0].push_back(std::to_string(s[0]));
            if (q > 0) {
                std::vector<int> row;
                for (std::size_t i = 0; i <= q; ++i) {
                    auto t = s;
                    t.erase(t.begin() + std::ptrdiff_t(i));
                    row.push_back(index[q - 1].at(t));
                }
                faces[q].push_back(std::move(row));
            }
        }
    }
    return SemiSimplicialSet(std::move(counts), std::move(faces), std::move(labels));
}

inline SemiSimplicialSet standard_simplex(int k) {
    require(k >= 0, ErrorKind::OutOfRange, "standard_simplex: k must be >= 0");
    std::vector<int> all(std::size_t(k + 1));
    std::iota(all.begin(), all.end(), 0);
    return complex_from_facets({all});
}

/// ∂⟨k⟩: the standard simplex with its top cell removed. Ids agree with
/// standard_simplex(k), so face i of the missing top cell has id k-i.
inline SemiSimplicialSet boundary_sphere(int k) {
    require(k >= 1, ErrorKind::OutOfRange, "boundary_sphere: k must be >= 1");
    auto full = standard_simplex(k);
    std::vector<int> counts = full.counts();
    counts.pop_back();
    std::vector<std::vector<std::vector<int>>> faces(counts.size());
    for (int q = 1; q < int(counts.size()); ++q)
        faces[q] = full.face_rows(q);
    auto labels = full.labels();
    labels.resize(counts.size());
    return SemiSimplicialSet(std::move(counts), std::move(faces), std::move(labels));
}

/// Id of face i of the top simplex of ⟨k⟩ under the lexicographic indexing.
inline int top_face_id(int k, int i) { return k - i; }

/// One vertex, edges a=0, b=1, c=2; T1 = (b, c, a), T2 = (a, c, b).
inline SemiSimplicialSet delta_torus() {
    return SemiSimplicialSet({1, 3, 2},
                             {{}, {{0, 0}, {0, 0}, {0, 0}}, {{1, 2, 0}, {0, 2, 1}}},
                             {{"v"}, {"a", "b", "c"}, {"T1", "T2"}});
}

/// Octahedron with vertices 0=+x 1=-x 2=+y 3=-y 4=+z 5=-z.
inline SemiSimplicialSet octahedron_sphere() {
    std::vector<std::vector<int>> facets;
    for (int x : {0, 1})
        for (int y : {2, 3})
            for (int z : {4, 5})
                facets.push_back({x, y, z});
    return complex_from_facets(facets);
}

/// Closed oriented surface of genus g >= 1 with one vertex: the 4g-gon
/// a1 b1 a1' b1' ... ag bg ag' bg' fanned from its first corner. Edges 0..2g-1
/// are the letters, the rest are diagonals.
inline SemiSimplicialSet polygon_surface(int genus) {
    require(genus >= 1, ErrorKind::OutOfRange, "polygon_surface: genus must be >= 1");
    const int n = 4 * genus;
    struct Edge {
        int id, from, to; // corners of the polygon
    };
    auto side = [&](int s) {
        const int letter = 2 * (s / 4) + (s % 2);
        const bool forward = s % 4 < 2;
        const int a = s, b = (s + 1) % n;
        return forward ? Edge{letter, a, b} : Edge{letter, b, a};
    };
    auto diagonal = [&](int m) { return Edge{2 * genus + m - 2, 0, m}; };
    std::vector<std::vector<int>> edges(std::size_t(6 * genus - 3), {0, 0});
    std::vector<std::vector<int>> triangles;
    for (int m = 1; m <= n - 2; ++m) {
        Edge e[3] = {m == 1 ? side(0) : diagonal(m), m + 1 == n - 1 ? side(n - 1) : diagonal(m + 1), side(m)};
        // order the corners by in-degree; P0 is always a source
        std::map<int, int> indeg{{0, 0}, {m, 0}, {m + 1, 0}};
        for (const auto& x : e)
            ++indeg[x.to];
        std::vector<int> order = {0, m, m + 1};
        std::sort(order.begin(), order.end(), [&](int a, int b) { return indeg[a] < indeg[b]; });
        auto between = [&](int a, int b) {
            for (const auto& x : e)
                if ((x.from == a && x.to == b) || (x.from == b && x.to == a))
                    return x.id;
            fail(ErrorKind::Internal, "polygon_surface: missing edge");
        };
        triangles.push_back({between(order[1], order[2]), between(order[0], order[2]), between(order[0], order[1])});
    }
    return SemiSimplicialSet({1, 6 * genus - 3, n - 2}, {{}, edges, triangles});
}

/// Stellar subdivision of one triangle: a new vertex w (placed last in every
/// new simplex) coned over the triangle's three edges.
inline SemiSimplicialSet subdivide_triangle(const SemiSimplicialSet& T, int triangle) {
    require(T.top_dim() == 2 && triangle >= 0 && triangle < T.count(2), ErrorKind::OutOfRange,
            "subdivide_triangle: no such triangle");
    auto counts = T.counts();
    std::vector<std::vector<std::vector<int>>> faces = {{}, T.face_rows(1), T.face_rows(2)};
    const int w = counts[0]++;
    auto verts = T.vertices({2, triangle});
    int spoke[3];
    for (int p = 0; p < 3; ++p) {
        spoke[p] = counts[1]++;
        faces[1].push_back({w, verts[std::size_t(p)]}); // edge (v_p, w)
    }
    auto e = T.faces(2, triangle);
    std::vector<std::vector<int>> fresh = {
        {spoke[2], spoke[1], e[0]}, // (v1, v2, w)
        {spoke[2], spoke[0], e[1]}, // (v0, v2, w)
        {spoke[1], spoke[0], e[2]}, // (v0, v1, w)
    };
    faces[2][std::size_t(triangle)] = fresh[0];
    faces[2].push_back(fresh[1]);
    faces[2].push_back(fresh[2]);
    counts[2] += 2;
    return SemiSimplicialSet(std::move(counts), std::move(faces));
}

/// Built-in bases by name: tetra, octahedron, delta-torus, simplex:k, sphere:k
/// (the boundary of simplex:k) and surface:g.
inline bool is_named_complex(const std::string& name) {
    return name == "tetra" || name == "octahedron" || name == "delta-torus" ||
           name.rfind("simplex:", 0) == 0 || name.rfind("sphere:", 0) == 0 || name.rfind("surface:", 0) == 0;
}

inline SemiSimplicialSet named_complex(const std::string& name) {
    auto parse_k = [&](std::size_t prefix) {
        try {
            std::size_t used = 0;
            int k = std::stoi(name.substr(prefix), &used);
            if (used == name.size() - prefix)
                return k;
        } catch (const std::exception&) {
        }
        fail(ErrorKind::Malformed, "bad dimension in complex name '" + name + "'");
    };
    if (name == "tetra")
        return boundary_sphere(3);
    if (name == "octahedron")
        return octahedron_sphere();
    if (name == "delta-torus")
        return delta_torus();
    if (name.rfind("simplex:", 0) == 0)
        return standard_simplex(parse_k(8));
    if (name.rfind("sphere:", 0) == 0)
        return boundary_sphere(parse_k(7));
    if (name.rfind("surface:", 0) == 0)
        return polygon_surface(parse_k(8));
    fail(ErrorKind::Malformed, "unknown complex name '" + name + "'");
}

// ---------------------------------------------------------------------------
// Stars

/// Closed star of a simplex: everything having the center as an iterated
/// face, plus the faces needed for closure, re-indexed as a complex of its own.
struct StarSubcomplexMap {
    SemiSimplicialSet complex;
    std::vector<std::vector<int>> to_ambient; // [q][star id] -> ambient id
    std::vector<std::vector<int>> cofaces;    // [q] ambient ids with center as face
    SimplexRef center;                        // ambient center
    SimplexRef center_in_star;

    int star_id(SimplexRef ambient) const {
        const auto& row = to_ambient[std::size_t(ambient.dim)];
        auto it = std::lower_bound(row.begin(), row.end(), ambient.id);
        return (it != row.end() && *it == ambient.id) ? int(it - row.begin()) : -1;
    }
};

inline StarSubcomplexMap star(const SemiSimplicialSet& X, SimplexRef center) {
    require(X.contains(center), ErrorKind::OutOfRange,
            "star: dangling reference " + to_string(center));
    const int top = X.top_dim();
    std::vector<std::set<int>> open(std::size_t(top + 1));
    open[std::size_t(center.dim)].insert(center.id);
    for (int q = center.dim + 1; q <= top; ++q)
        for (int id = 0; id < X.count(q); ++id)
            for (int f : X.faces(q, id))
                if (open[std::size_t(q - 1)].count(f)) {
                    open[std::size_t(q)].insert(id);
                    break;
                }
    std::vector<std::set<int>> closed = open;
    for (int q = top; q >= 1; --q)
        for (int id : closed[std::size_t(q)])
            for (int f : X.faces(q, id))
                closed[std::size_t(q - 1)].insert(f);

    StarSubcomplexMap st;
    st.center = center;
    st.to_ambient.resize(std::size_t(top + 1));
    st.cofaces.resize(std::size_t(top + 1));
    for (int q = 0; q <= top; ++q) {
        st.to_ambient[std::size_t(q)].assign(closed[std::size_t(q)].begin(), closed[std::size_t(q)].end());
        st.cofaces[std::size_t(q)].assign(open[std::size_t(q)].begin(), open[std::size_t(q)].end());
    }
    std::vector<int> counts;
    std::vector<std::vector<std::vector<int>>> faces(std::size_t(top + 1));
    for (int q = 0; q <= top; ++q) {
        counts.push_back(int(st.to_ambient[std::size_t(q)].size()));
        if (q == 0)
            continue;
        for (int id : st.to_ambient[std::size_t(q)]) {
            std::vector<int> row;
            for (int f : X.faces(q, id)) {
                const auto& lower = st.to_ambient[std::size_t(q - 1)];
                row.push_back(int(std::lower_bound(lower.begin(), lower.end(), f) - lower.begin()));
            }
            faces[std::size_t(q)].push_back(std::move(row));
        }
    }
    st.complex = SemiSimplicialSet(std::move(counts), std::move(faces));
    st.center_in_star = {center.dim, st.star_id(center)};
    return st;
}

} // namespace cbundle
