#pragma once

// Simplicial circle bundles as local systems of necklaces, and their total
// spaces.
//
// Over a base q-simplex x with stalk θ_x the total space has
//   Horizontal(x, a)  dimension q,   one per arc a of θ_x (arc p follows bead p)
//   Vertical(x, b)    dimension q+1, one per bead b of θ_x
// A vertical simplex over a bead of color j collapses its edge (j, j+1) onto
// vertex j of x: face j is the arc after b, face j+1 the arc before b.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "cyclic.hpp"
#include "error.hpp"
#include "homology.hpp"

namespace cbundle {

/// Restriction of θ_x to its face i: the order-preserving bijection between
/// the beads of θ_{d_i x} and the beads of θ_x not colored i.
struct Restriction {
    std::map<BeadId, BeadId> up;   // face bead -> x bead
    std::map<BeadId, BeadId> down; // x bead -> face bead

    static Restriction from_up(std::map<BeadId, BeadId> up) {
        Restriction r;
        for (auto [f, b] : up)
            r.down[b] = f;
        r.up = std::move(up);
        return r;
    }
    bool operator==(const Restriction& o) const { return up == o.up; }
};

class IncoherentLocalSystem : public Error {
public:
    IncoherentLocalSystem(SimplexRef x, int i, const std::string& what)
        : Error(ErrorKind::IncoherentLocalSystem, what), simplex_(x), face_(i) {}
    SimplexRef simplex() const { return simplex_; }
    int face_index() const { return face_; }

private:
    SimplexRef simplex_;
    int face_;
};

class NecklaceLocalSystem {
public:
    NecklaceLocalSystem() = default;

    /// `restrictions[q][id][i]` is the restriction of stalk (q, id) to face i.
    /// Fresh bead ids start at `next_id` or past the largest id in use.
    NecklaceLocalSystem(SemiSimplicialSet base, std::vector<std::vector<Necklace>> stalks,
                        std::vector<std::vector<std::vector<Restriction>>> restrictions, BeadId next_id = 0)
        : base_(std::move(base)), stalks_(std::move(stalks)), restrictions_(std::move(restrictions)),
          next_id_(next_id) {
        require(int(stalks_.size()) == base_.top_dim() + 1, ErrorKind::Malformed,
                "local system: one stalk list per base dimension expected");
        for (int q = 0; q <= base_.top_dim(); ++q)
            require(int(stalks_[std::size_t(q)].size()) == base_.count(q), ErrorKind::Malformed,
                    "local system: missing stalks in dimension " + std::to_string(q));
        restrictions_.resize(stalks_.size());
        for (int q = 0; q <= base_.top_dim(); ++q)
            restrictions_[std::size_t(q)].resize(stalks_[std::size_t(q)].size());
        for (const auto& row : stalks_)
            for (const auto& n : row)
                for (const auto& b : n.beads())
                    next_id_ = std::max(next_id_, b.id + 1);
    }

    const SemiSimplicialSet& base() const { return base_; }

    const Necklace& stalk(SimplexRef x) const {
        require(base_.contains(x), ErrorKind::OutOfRange, "stalk: dangling reference " + to_string(x));
        return stalks_[std::size_t(x.dim)][std::size_t(x.id)];
    }

    const Restriction& restriction(SimplexRef x, int i) const {
        return restrictions_[std::size_t(x.dim)][std::size_t(x.id)][std::size_t(i)];
    }

    const std::vector<std::vector<Necklace>>& stalks() const { return stalks_; }
    const std::vector<std::vector<std::vector<Restriction>>>& restrictions() const { return restrictions_; }

    BeadId next_bead_id() const { return next_id_; }

    bool is_minimal() const {
        for (const auto& row : stalks_)
            for (const auto& n : row)
                if (!n.is_circular_permutation())
                    return false;
        return true;
    }

    /// Follows a bead of θ_x down to the vertex circle its color names.
    std::pair<int, BeadId> trace_to_vertex(SimplexRef x, BeadId bead) const {
        int color = stalk(x).beads()[std::size_t(stalk(x).position_of(bead))].color;
        while (x.dim > 0) {
            int i = (color == x.dim) ? 0 : x.dim;
            bead = restriction(x, i).down.at(bead);
            if (i < color)
                --color;
            x = base_.face(x, i);
        }
        return {x.id, bead};
    }

    bool operator==(const NecklaceLocalSystem& o) const {
        return base_ == o.base_ && stalks_ == o.stalks_ && restrictions_ == o.restrictions_;
    }

private:
    SemiSimplicialSet base_;
    std::vector<std::vector<Necklace>> stalks_;
    std::vector<std::vector<std::vector<Restriction>>> restrictions_;
    BeadId next_id_ = 0;
};

// ---------------------------------------------------------------------------
// Restriction builders

/// Restrictions where face stalks reuse the ids of their coface beads.
inline std::vector<std::vector<std::vector<Restriction>>>
restrictions_by_id(const SemiSimplicialSet& base, const std::vector<std::vector<Necklace>>& stalks) {
    std::vector<std::vector<std::vector<Restriction>>> R(stalks.size());
    for (int q = 0; q <= base.top_dim(); ++q) {
        R[std::size_t(q)].resize(std::size_t(base.count(q)));
        if (q == 0)
            continue;
        for (int id = 0; id < base.count(q); ++id)
            for (int i = 0; i <= q; ++i) {
                std::map<BeadId, BeadId> up;
                for (const auto& b : stalks[std::size_t(q - 1)][std::size_t(base.face(q, id, i))].beads())
                    up[b.id] = b.id;
                R[std::size_t(q)][std::size_t(id)].push_back(Restriction::from_up(std::move(up)));
            }
    }
    return R;
}

/// Restrictions found by matching each face stalk against delete_color of its
/// coface. Fails when the match is not unique (symmetric necklaces), in which
/// case explicit maps are needed.
inline std::vector<std::vector<std::vector<Restriction>>>
canonical_restrictions(const SemiSimplicialSet& base, const std::vector<std::vector<Necklace>>& stalks) {
    std::vector<std::vector<std::vector<Restriction>>> R(stalks.size());
    for (int q = 0; q <= base.top_dim(); ++q) {
        R[std::size_t(q)].resize(std::size_t(base.count(q)));
        if (q == 0)
            continue;
        for (int id = 0; id < base.count(q); ++id)
            for (int i = 0; i <= q; ++i) {
                const Necklace& theta = stalks[std::size_t(q)][std::size_t(id)];
                const Necklace& face = stalks[std::size_t(q - 1)][std::size_t(base.face(q, id, i))];
                auto del = delete_color(theta, i);
                const int n = face.size();
                std::vector<int> matches;
                if (n == del.necklace.size())
                    for (int r = 0; r < n; ++r) {
                        bool ok = true;
                        for (int t = 0; t < n && ok; ++t)
                            ok = face.at(t).color == del.necklace.at(t + r).color;
                        if (ok)
                            matches.push_back(r);
                    }
                require(!matches.empty(), ErrorKind::IncoherentLocalSystem,
                        "stalk over face " + std::to_string(i) + " of " + to_string({q, id}) +
                            " is not delete_color of its stalk");
                require(matches.size() == 1, ErrorKind::Malformed,
                        "stalk over face " + std::to_string(i) + " of " + to_string({q, id}) +
                            " is symmetric; explicit bead maps are required");
                std::map<BeadId, BeadId> up;
                for (int t = 0; t < n; ++t)
                    up[face.at(t).id] = del.necklace.at(t + matches[0]).id;
                R[std::size_t(q)][std::size_t(id)].push_back(Restriction::from_up(std::move(up)));
            }
    }
    return R;
}

// ---------------------------------------------------------------------------
// Validation

inline std::vector<std::string> local_system_problems(const NecklaceLocalSystem& L,
                                                      std::optional<std::pair<SimplexRef, int>>* first = nullptr) {
    std::vector<std::string> problems;
    auto note = [&](SimplexRef x, int i, std::string msg) {
        if (first && !*first)
            *first = std::pair{x, i};
        problems.push_back(std::move(msg));
    };
    const auto& B = L.base();
    for (int q = 0; q <= B.top_dim(); ++q)
        for (int id = 0; id < B.count(q); ++id) {
            SimplexRef x{q, id};
            const Necklace& theta = L.stalk(x);
            if (theta.alphabet() != q + 1) {
                note(x, -1, "stalk over " + to_string(x) + " has alphabet " +
                                std::to_string(theta.alphabet()) + ", expected " + std::to_string(q + 1));
                continue;
            }
            if (q == 0)
                continue;
            if (int(L.restrictions()[std::size_t(q)][std::size_t(id)].size()) != q + 1) {
                note(x, -1, "stalk over " + to_string(x) + " lacks restriction maps");
                continue;
            }
            for (int i = 0; i <= q; ++i) {
                const Necklace& face = L.stalk(B.face(x, i));
                const Restriction& r = L.restriction(x, i);
                std::string where = "restriction " + to_string(x) + " face " + std::to_string(i);
                if (int(r.up.size()) != face.size() || r.down.size() != r.up.size()) {
                    note(x, i, where + ": bead map is not a bijection onto the face stalk");
                    continue;
                }
                // walk θ_x skipping color i; the images must be the face beads in circular order
                std::vector<BeadId> seq;
                bool ok = true;
                for (const auto& b : theta.beads()) {
                    if (b.color == i)
                        continue;
                    auto it = r.down.find(b.id);
                    if (it == r.down.end()) {
                        ok = false;
                        break;
                    }
                    int fp = face.position_of(it->second);
                    if (fp < 0 || face.at(fp).color != (b.color > i ? b.color - 1 : b.color)) {
                        ok = false;
                        break;
                    }
                    seq.push_back(it->second);
                }
                if (!ok || int(seq.size()) != face.size()) {
                    note(x, i, where + ": bead map does not match delete_color (colors or coverage)");
                    continue;
                }
                int start = face.position_of(seq.front());
                for (int t = 0; t < face.size() && ok; ++t)
                    ok = face.at(start + t).id == seq[std::size_t(t)];
                if (!ok)
                    note(x, i, where + ": bead map does not preserve circular order");
            }
        }
    if (!problems.empty())
        return problems;
    // descent coherence: d_i d_j = d_{j-1} d_i on bead maps
    for (int q = 2; q <= B.top_dim(); ++q)
        for (int id = 0; id < B.count(q); ++id)
            for (int j = 1; j <= q; ++j)
                for (int i = 0; i < j; ++i) {
                    SimplexRef x{q, id};
                    SimplexRef xj = B.face(x, j), xi = B.face(x, i);
                    SimplexRef y = B.face(xj, i);
                    for (const auto& b : L.stalk(y).beads()) {
                        BeadId via_j = L.restriction(x, j).up.at(L.restriction(xj, i).up.at(b.id));
                        BeadId via_i = L.restriction(x, i).up.at(L.restriction(xi, j - 1).up.at(b.id));
                        if (via_j != via_i) {
                            note(x, i, "descent maps of " + to_string(x) + " disagree along faces (" +
                                           std::to_string(i) + ", " + std::to_string(j) + ")");
                            break;
                        }
                    }
                }
    return problems;
}

inline void require_coherent(const NecklaceLocalSystem& L) {
    std::optional<std::pair<SimplexRef, int>> where;
    auto problems = local_system_problems(L, &where);
    if (!problems.empty())
        throw IncoherentLocalSystem(where->first, where->second, problems.front());
}

// ---------------------------------------------------------------------------
// Total spaces

enum class CellKind { Horizontal, Vertical };

struct TotalCell {
    CellKind kind = CellKind::Horizontal;
    SimplexRef base;
    BeadId bead = 0; // Vertical: its bead; Horizontal: the bead the arc follows
};

struct TotalSpaceIndex {
    std::vector<std::vector<TotalCell>> cells; // [dim][id]
};

struct Projection {
    SimplexRef target;
    std::vector<int> surjection; // monotone [p] -> [q] as its value list

    bool operator==(const Projection&) const = default;
};

struct SingularProjection {
    std::vector<std::vector<Projection>> cells; // [dim][id], aligned with the total space

    const Projection& operator()(SimplexRef e) const { return cells[std::size_t(e.dim)][std::size_t(e.id)]; }
};

struct AssembledBundle {
    SemiSimplicialSet total;
    SingularProjection projection;
    TotalSpaceIndex index;
};

inline AssembledBundle assemble(const NecklaceLocalSystem& L) {
    require_coherent(L);
    const auto& B = L.base();
    const int top = B.top_dim();
    // offsets of each stalk's cells inside its total dimension
    std::vector<std::vector<int>> h_off(std::size_t(top + 1)), v_off(std::size_t(top + 1));
    std::vector<int> counts(std::size_t(top + 2), 0);
    std::vector<std::vector<std::unordered_map<BeadId, int>>> pos(std::size_t(top + 1));
    for (int q = 0; q <= top; ++q)
        for (int id = 0; id < B.count(q); ++id) {
            const Necklace& n = L.stalk({q, id});
            h_off[std::size_t(q)].push_back(counts[std::size_t(q)]);
            counts[std::size_t(q)] += n.size();
            std::unordered_map<BeadId, int> p;
            for (int t = 0; t < n.size(); ++t)
                p[n.at(t).id] = t;
            pos[std::size_t(q)].push_back(std::move(p));
        }
    for (int q = 0; q <= top; ++q)
        for (int id = 0; id < B.count(q); ++id) {
            v_off[std::size_t(q)].push_back(counts[std::size_t(q + 1)]);
            counts[std::size_t(q + 1)] += L.stalk({q, id}).size();
        }
    auto bead_pos = [&](SimplexRef x, BeadId b) { return pos[std::size_t(x.dim)][std::size_t(x.id)].at(b); };
    auto horizontal = [&](SimplexRef x, int arc) { return h_off[std::size_t(x.dim)][std::size_t(x.id)] + arc; };
    auto vertical = [&](SimplexRef x, int p) { return v_off[std::size_t(x.dim)][std::size_t(x.id)] + p; };
    // arc p of θ_x seen in θ_{d_m x}
    auto merged_arc = [&](SimplexRef x, int arc, int m) {
        const Necklace& n = L.stalk(x);
        int s = arc;
        while (n.at(s).color == m)
            --s;
        SimplexRef f = B.face(x, m);
        return bead_pos(f, L.restriction(x, m).down.at(n.at(s).id));
    };

    AssembledBundle out;
    const int tdim = top + 1;
    out.index.cells.resize(std::size_t(tdim + 1));
    out.projection.cells.resize(std::size_t(tdim + 1));
    std::vector<std::vector<std::vector<int>>> faces(std::size_t(tdim + 1));
    for (int d = 0; d <= tdim; ++d) {
        out.index.cells[std::size_t(d)].resize(std::size_t(counts[std::size_t(d)]));
        out.projection.cells[std::size_t(d)].resize(std::size_t(counts[std::size_t(d)]));
        faces[std::size_t(d)].resize(std::size_t(counts[std::size_t(d)]));
    }
    for (int q = 0; q <= top; ++q)
        for (int id = 0; id < B.count(q); ++id) {
            SimplexRef x{q, id};
            const Necklace& n = L.stalk(x);
            std::vector<int> ident(std::size_t(q + 1));
            std::iota(ident.begin(), ident.end(), 0);
            for (int p = 0; p < n.size(); ++p) {
                int h = horizontal(x, p);
                out.index.cells[std::size_t(q)][std::size_t(h)] = {CellKind::Horizontal, x, n.at(p).id};
                out.projection.cells[std::size_t(q)][std::size_t(h)] = {x, ident};
                if (q > 0) {
                    auto& row = faces[std::size_t(q)][std::size_t(h)];
                    for (int m = 0; m <= q; ++m)
                        row.push_back(horizontal(B.face(x, m), merged_arc(x, p, m)));
                }

                const int j = n.at(p).color;
                int v = vertical(x, p);
                out.index.cells[std::size_t(q + 1)][std::size_t(v)] = {CellKind::Vertical, x, n.at(p).id};
                std::vector<int> sigma;
                for (int t = 0; t <= q + 1; ++t)
                    sigma.push_back(t <= j ? t : t - 1);
                out.projection.cells[std::size_t(q + 1)][std::size_t(v)] = {x, sigma};
                auto& row = faces[std::size_t(q + 1)][std::size_t(v)];
                for (int m = 0; m <= q + 1; ++m) {
                    if (m == j) {
                        row.push_back(horizontal(x, p));
                    } else if (m == j + 1) {
                        row.push_back(horizontal(x, (p - 1 + n.size()) % n.size()));
                    } else {
                        int bm = m < j ? m : m - 1;
                        SimplexRef f = B.face(x, bm);
                        row.push_back(vertical(f, bead_pos(f, L.restriction(x, bm).down.at(n.at(p).id))));
                    }
                }
            }
        }
    out.total = SemiSimplicialSet(counts, std::move(faces));
    return out;
}

/// Checks that projecting then taking a face agrees with taking the face then
/// projecting, via the epi-mono factorization of σ ∘ δ_m.
inline std::vector<std::string> naturality_problems(const SemiSimplicialSet& total, const SemiSimplicialSet& base,
                                                    const SingularProjection& proj) {
    std::vector<std::string> problems;
    for (int p = 0; p <= total.top_dim(); ++p)
        for (int id = 0; id < total.count(p); ++id) {
            const Projection& pr = proj({p, id});
            const int q = pr.target.dim;
            bool monotone_onto = int(pr.surjection.size()) == p + 1 && !pr.surjection.empty() &&
                                 pr.surjection.front() == 0 && pr.surjection.back() == q;
            for (int t = 1; t <= p && monotone_onto; ++t)
                monotone_onto = pr.surjection[std::size_t(t)] - pr.surjection[std::size_t(t - 1)] <= 1 &&
                                pr.surjection[std::size_t(t)] >= pr.surjection[std::size_t(t - 1)];
            if (!monotone_onto || !base.contains(pr.target)) {
                problems.push_back("projection of " + to_string({p, id}) + " is not a degeneracy onto a base simplex");
                continue;
            }
            if (p == 0)
                continue;
            for (int m = 0; m <= p; ++m) {
                std::vector<int> comp;
                for (int t = 0; t < p; ++t)
                    comp.push_back(pr.surjection[std::size_t(t < m ? t : t + 1)]);
                std::vector<int> image = comp;
                image.erase(std::unique(image.begin(), image.end()), image.end());
                std::vector<int> reduced;
                for (int c : comp)
                    reduced.push_back(int(std::lower_bound(image.begin(), image.end(), c) - image.begin()));
                Projection expect{base.face_along(pr.target, image), reduced};
                if (proj(total.face({p, id}, m)) != expect)
                    problems.push_back("projection is not natural at " + to_string({p, id}) + " face " +
                                       std::to_string(m));
            }
        }
    return problems;
}

/// Reads θ_x back off a total space: the vertical simplices over x, colored by
/// their collapsed vertex and chained through shared horizontal faces.
inline std::vector<int> necklace_from_total_space(const SemiSimplicialSet& total, const SingularProjection& proj,
                                                  SimplexRef x) {
    std::vector<int> verts, color;
    for (int id = 0; id < total.count(x.dim + 1); ++id) {
        const auto& pr = proj({x.dim + 1, id});
        if (pr.target != x)
            continue;
        int j = 0;
        while (pr.surjection[std::size_t(j)] != pr.surjection[std::size_t(j + 1)])
            ++j;
        verts.push_back(id);
        color.push_back(j);
    }
    require(!verts.empty(), ErrorKind::Malformed, "no vertical simplices over " + to_string(x));
    std::map<int, std::size_t> by_before; // horizontal face before -> vertical
    for (std::size_t t = 0; t < verts.size(); ++t)
        by_before[total.face(x.dim + 1, verts[t], color[t] + 1)] = t;
    std::vector<int> word;
    std::size_t cur = 0;
    for (std::size_t step = 0; step < verts.size(); ++step) {
        word.push_back(color[cur]);
        int after = total.face(x.dim + 1, verts[cur], color[cur]);
        auto it = by_before.find(after);
        require(it != by_before.end(), ErrorKind::Malformed, "fiber over " + to_string(x) + " does not close up");
        cur = it->second;
    }
    require(cur == 0, ErrorKind::Malformed, "fiber over " + to_string(x) + " is not a single circle");
    return word;
}

// ---------------------------------------------------------------------------
// Elementary and minimal bundles

/// Stalks over every face of ⟨k⟩ obtained from θ by deleting colors.
inline NecklaceLocalSystem elementary_local_system(const Necklace& theta) {
    const int k = theta.top_color();
    auto base = standard_simplex(k);
    std::vector<std::vector<Necklace>> stalks(std::size_t(k + 1));
    for (int q = 0; q <= k; ++q)
        for (int id = 0; id < base.count(q); ++id) {
            auto verts = base.vertices({q, id}); // vertex v of ⟨k⟩ has id v
            Necklace n = theta;
            for (int c = k; c >= 0; --c)
                if (std::find(verts.begin(), verts.end(), c) == verts.end())
                    n = delete_color(n, c).necklace;
            stalks[std::size_t(q)].push_back(std::move(n));
        }
    auto R = restrictions_by_id(base, stalks);
    return NecklaceLocalSystem(std::move(base), std::move(stalks), std::move(R));
}

inline AssembledBundle elementary_bundle(const Necklace& theta) { return assemble(elementary_local_system(theta)); }

/// A local system of circular permutations, i.e. a simplicial map B -> SC.
class MinimalBundle {
public:
    MinimalBundle() = default;

    explicit MinimalBundle(NecklaceLocalSystem L) : L_(std::move(L)) {
        require(L_.is_minimal(), ErrorKind::Malformed, "bundle has a stalk that is not a circular permutation");
        require_coherent(L_);
    }

    /// table[q][id] is the circular permutation over (q, id); restriction maps
    /// are the unique ones.
    static MinimalBundle from_map(const SemiSimplicialSet& base,
                                  const std::vector<std::vector<CircularPermutation>>& table) {
        std::vector<std::vector<Necklace>> stalks(table.size());
        BeadId next = 0;
        for (std::size_t q = 0; q < table.size(); ++q)
            for (const auto& t : table[q]) {
                stalks[q].push_back(t.to_necklace(next));
                next += t.k() + 1;
            }
        auto R = canonical_restrictions(base, stalks);
        return MinimalBundle(NecklaceLocalSystem(base, std::move(stalks), std::move(R)));
    }

    const NecklaceLocalSystem& local_system() const { return L_; }
    const SemiSimplicialSet& base() const { return L_.base(); }
    CircularPermutation circular(SimplexRef x) const { return CircularPermutation(L_.stalk(x).colors()); }

    bool operator==(const MinimalBundle& o) const {
        if (!(base() == o.base()))
            return false;
        for (int q = 0; q <= base().top_dim(); ++q)
            for (int id = 0; id < base().count(q); ++id)
                if (circular({q, id}) != o.circular({q, id}))
                    return false;
        return true;
    }

private:
    NecklaceLocalSystem L_;
};

inline AssembledBundle assemble(const MinimalBundle& M) { return assemble(M.local_system()); }

/// Circular permutation over a q-simplex (q >= 2) whose triples are read off u
/// on its 2-faces.
inline CircularPermutation extend_from_cocycle(const SemiSimplicialSet& B, const IntCochain& u, SimplexRef x) {
    TripleOrderFamily T(x.dim);
    for (int i = 0; i <= x.dim; ++i)
        for (int j = i + 1; j <= x.dim; ++j)
            for (int l = j + 1; l <= x.dim; ++l) {
                const int keep[3] = {i, j, l};
                T.set(i, j, l, int(u.values[std::size_t(B.face_along(x, keep).id)]));
            }
    return insertion_extend(T);
}

inline MinimalBundle minimal_from_cocycle(const SemiSimplicialSet& B, const IntCochain& u) {
    require(u.dim == 2, ErrorKind::Malformed, "minimal_from_cocycle expects a 2-cochain");
    require_on(B, u);
    require(u.is_binary(), ErrorKind::NotBinary, "cochain takes values outside {0,1}");
    require(is_cocycle(B, u), ErrorKind::NotCocycle, "cochain is not a cocycle");
    std::vector<std::vector<CircularPermutation>> table(std::size_t(B.top_dim() + 1));
    for (int q = 0; q <= B.top_dim(); ++q)
        for (int id = 0; id < B.count(q); ++id) {
            std::vector<int> w(std::size_t(q + 1));
            std::iota(w.begin(), w.end(), 0);
            if (q == 2 && u.values[std::size_t(id)] == 1)
                w = {0, 2, 1};
            if (q < 3) {
                table[std::size_t(q)].emplace_back(w);
                continue;
            }
            try {
                table[std::size_t(q)].push_back(extend_from_cocycle(B, u, {q, id}));
            } catch (const InconsistentTriples& e) {
                fail(ErrorKind::Internal, std::string("cocycle failed to extend: ") + e.what());
            }
        }
    try {
        return MinimalBundle::from_map(B, table);
    } catch (const Error& e) {
        fail(ErrorKind::Internal, std::string("extension is not a local system: ") + e.what());
    }
}

inline IntCochain chern_cocycle(const MinimalBundle& M) {
    IntCochain u = IntCochain::zero(M.base(), 2);
    for (int id = 0; id < M.base().count(2); ++id)
        u.values[std::size_t(id)] = c01(M.circular({2, id}));
    return u;
}

inline Integer chern_number(const IntCochain& u, const FundamentalClass& fm) { return pairing(u, fm); }

// ---------------------------------------------------------------------------
// Classical total spaces

/// No loops and no two edges on the same pair of vertices.
inline ClassicalCheck has_classical_one_skeleton(const SemiSimplicialSet& E) {
    std::map<std::pair<int, int>, int> seen;
    for (int e = 0; e < E.count(1); ++e) {
        int a = E.face(1, e, 1), b = E.face(1, e, 0);
        if (a == b)
            return {false, "edge " + std::to_string(e) + " is a loop at vertex " + std::to_string(a)};
        auto key = std::minmax(a, b);
        auto [it, fresh] = seen.emplace(key, e);
        if (!fresh)
            return {false, "edges " + std::to_string(it->second) + " and " + std::to_string(e) +
                               " join the same vertices"};
    }
    return {true, {}};
}

inline ClassicalCheck is_classical_bundle(const NecklaceLocalSystem& L) {
    return has_classical_one_skeleton(assemble(L).total);
}

} // namespace cbundle
