#pragma once

// Spindle contraction on local systems of necklaces, its inverse, and the
// reduction of a bundle to a minimal one by a choice of one bead per vertex
// circle.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "bundle.hpp"
#include "complex.hpp"
#include "error.hpp"

namespace cbundle {

/// One kept bead (arc of the fiber circle) per base vertex.
struct ArcSelection {
    std::vector<BeadId> kept; // indexed by vertex id

    static ArcSelection first_beads(const NecklaceLocalSystem& L) {
        ArcSelection s;
        for (int v = 0; v < L.base().count(0); ++v)
            s.kept.push_back(L.stalk({0, v}).at(0).id);
        return s;
    }
};

namespace detail {

inline void require_vertex_bead(const NecklaceLocalSystem& L, int v, BeadId b) {
    require(v >= 0 && v < L.base().count(0), ErrorKind::OutOfRange, "no base vertex " + std::to_string(v));
    require(L.stalk({0, v}).position_of(b) >= 0, ErrorKind::BeadNotFound,
            "bead " + std::to_string(b) + " is not on the circle over vertex " + std::to_string(v));
}

} // namespace detail

/// Removes, over every simplex of the star of v, the bead that traces down to b.
inline NecklaceLocalSystem contract(const NecklaceLocalSystem& L, int v, BeadId b) {
    detail::require_vertex_bead(L, v, b);
    require(L.stalk({0, v}).size() >= 2, ErrorKind::LastArc,
            "bead " + std::to_string(b) + " is the last one over vertex " + std::to_string(v));
    const auto& B = L.base();
    auto st = star(B, {0, v});
    auto stalks = L.stalks();
    auto R = L.restrictions();
    for (int q = 0; q <= B.top_dim(); ++q)
        for (int id : st.cofaces[std::size_t(q)]) {
            const Necklace& n = L.stalk({q, id});
            std::set<BeadId> gone;
            std::vector<Bead> kept;
            for (const auto& bead : n.beads()) {
                if (L.trace_to_vertex({q, id}, bead.id) == std::pair{v, b})
                    gone.insert(bead.id);
                else
                    kept.push_back(bead);
            }
            stalks[std::size_t(q)][std::size_t(id)] = Necklace(n.alphabet(), std::move(kept));
            if (q == 0)
                continue;
            for (auto& r : R[std::size_t(q)][std::size_t(id)]) {
                std::map<BeadId, BeadId> up;
                for (auto [f, x] : r.up)
                    if (!gone.count(x))
                        up[f] = x;
                r = Restriction::from_up(std::move(up));
            }
        }
    NecklaceLocalSystem out(B, std::move(stalks), std::move(R), L.next_bead_id());
    require_coherent(out);
    return out;
}

struct Subdivision {
    NecklaceLocalSystem bundle;
    BeadId new_vertex_bead = 0; // the twin of b on the circle over v
};

/// Doubles, over every simplex of the star of v, the bead that traces down to
/// b: a fresh bead of the same color is inserted right after it.
inline Subdivision subdivide(const NecklaceLocalSystem& L, int v, BeadId b) {
    detail::require_vertex_bead(L, v, b);
    const auto& B = L.base();
    auto st = star(B, {0, v});
    auto stalks = L.stalks();
    auto R = L.restrictions();
    BeadId next = L.next_bead_id();
    std::vector<std::vector<std::map<BeadId, BeadId>>> twin(std::size_t(B.top_dim() + 1));
    for (int q = 0; q <= B.top_dim(); ++q)
        twin[std::size_t(q)].resize(std::size_t(B.count(q)));
    for (int q = 0; q <= B.top_dim(); ++q)
        for (int id : st.cofaces[std::size_t(q)]) {
            const Necklace& n = L.stalk({q, id});
            std::vector<Bead> beads;
            for (const auto& bead : n.beads()) {
                beads.push_back(bead);
                if (L.trace_to_vertex({q, id}, bead.id) == std::pair{v, b}) {
                    twin[std::size_t(q)][std::size_t(id)][bead.id] = next;
                    beads.push_back({next++, bead.color});
                }
            }
            stalks[std::size_t(q)][std::size_t(id)] = Necklace(n.alphabet(), std::move(beads));
        }
    for (int q = 1; q <= B.top_dim(); ++q)
        for (int id : st.cofaces[std::size_t(q)])
            for (int i = 0; i <= q; ++i) {
                auto& r = R[std::size_t(q)][std::size_t(id)][std::size_t(i)];
                const auto& up_twins = twin[std::size_t(q)][std::size_t(id)];
                const auto& face_twins = twin[std::size_t(q - 1)][std::size_t(B.face(q, id, i))];
                auto up = r.up;
                for (auto [f, x] : r.up) {
                    auto a = face_twins.find(f);
                    if (a != face_twins.end())
                        up[a->second] = up_twins.at(x);
                }
                r = Restriction::from_up(std::move(up));
            }
    Subdivision out{NecklaceLocalSystem(B, std::move(stalks), std::move(R), next),
                    twin[0][std::size_t(v)].at(b)};
    require_coherent(out.bundle);
    return out;
}

/// Contracts every non-selected bead. `order`, when given, lists the
/// (vertex, bead) contractions to perform and must cover exactly those beads.
inline MinimalBundle minimize(const NecklaceLocalSystem& L, const ArcSelection& sel,
                              std::optional<std::vector<std::pair<int, BeadId>>> order = std::nullopt) {
    require(int(sel.kept.size()) == L.base().count(0), ErrorKind::Malformed,
            "selection must name one bead per base vertex");
    std::vector<std::pair<int, BeadId>> todo;
    for (int v = 0; v < L.base().count(0); ++v) {
        detail::require_vertex_bead(L, v, sel.kept[std::size_t(v)]);
        for (const auto& bead : L.stalk({0, v}).beads())
            if (bead.id != sel.kept[std::size_t(v)])
                todo.push_back({v, bead.id});
    }
    if (order) {
        auto a = *order, c = todo;
        std::sort(a.begin(), a.end());
        std::sort(c.begin(), c.end());
        require(a == c, ErrorKind::Malformed, "contraction order must cover exactly the non-selected beads");
        todo = *order;
    }
    NecklaceLocalSystem cur = L;
    for (auto [v, b] : todo)
        cur = contract(cur, v, b);
    return MinimalBundle(std::move(cur));
}

inline IntCochain chern_cocycle_general(const NecklaceLocalSystem& L, const ArcSelection& sel) {
    return chern_cocycle(minimize(L, sel));
}

// ---------------------------------------------------------------------------
// Equality up to bead renaming

/// A renaming is fixed by a rotation of every vertex circle; every other bead
/// is named by its color and the vertex bead it traces to. Searches the
/// rotations with pruning.
inline bool equivalent(const NecklaceLocalSystem& A, const NecklaceLocalSystem& C) {
    const auto& B = A.base();
    if (!(B == C.base()))
        return false;
    for (int q = 0; q <= B.top_dim(); ++q)
        for (int id = 0; id < B.count(q); ++id)
            if (!A.stalk({q, id}).same_word(C.stalk({q, id})))
                return false;
    const int nv = B.count(0);
    // per simplex: vertex-bead key of each bead, and for C the inverse
    struct Keyed {
        std::vector<std::pair<int, BeadId>> key; // per position: (vertex slot, vertex bead)
    };
    auto keyed = [&](const NecklaceLocalSystem& L, SimplexRef x) {
        Keyed k;
        for (const auto& bead : L.stalk(x).beads())
            k.key.push_back({bead.color, L.trace_to_vertex(x, bead.id).second});
        return k;
    };
    std::vector<std::vector<SimplexRef>> ready(static_cast<std::size_t>(nv)); // checked once vertex v is fixed
    for (int q = 1; q <= B.top_dim(); ++q)
        for (int id = 0; id < B.count(q); ++id) {
            auto verts = B.vertices({q, id});
            ready[std::size_t(*std::max_element(verts.begin(), verts.end()))].push_back({q, id});
        }
    std::vector<int> rot(std::size_t(nv), -1);
    auto image = [&](int v, BeadId b) {
        const Necklace& a = A.stalk({0, v});
        const Necklace& c = C.stalk({0, v});
        return c.at(a.position_of(b) + rot[std::size_t(v)]).id;
    };
    auto stalk_ok = [&](SimplexRef x) {
        auto ka = keyed(A, x), kc = keyed(C, x);
        auto verts = B.vertices(x);
        std::vector<std::pair<int, BeadId>> mapped;
        for (auto [slot, b] : ka.key)
            mapped.push_back({slot, image(verts[std::size_t(slot)], b)});
        const int n = int(mapped.size());
        for (int r = 0; r < n; ++r) {
            bool ok = true;
            for (int t = 0; t < n && ok; ++t)
                ok = mapped[std::size_t(t)] == kc.key[std::size_t((t + r) % n)];
            if (ok)
                return true;
        }
        return false;
    };
    auto search = [&](auto&& self, int v) -> bool {
        if (v == nv)
            return true;
        for (int r = 0; r < A.stalk({0, v}).size(); ++r) {
            rot[std::size_t(v)] = r;
            bool ok = true;
            for (auto x : ready[std::size_t(v)])
                if (!(ok = stalk_ok(x)))
                    break;
            if (ok && self(self, v + 1))
                return true;
        }
        rot[std::size_t(v)] = -1;
        return false;
    };
    return search(search, 0);
}

} // namespace cbundle
