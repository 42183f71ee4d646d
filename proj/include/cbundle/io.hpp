#pragma once

// JSON file formats.
//
//   complex:   {"dims": [n0, n1, ...], "faces": {"q": [[f0, ..., fq], ...]}, "labels": {"q": [...]}}
//   cochain:   {"dim": q, "values": [...]}
//   bundle:    {"base": <complex>, "stalks": {"q/id": "(c0 c1 ...)"}, "bead_maps": {"q/id/i": [...]}}
//   total:     <complex> plus "projection": {"p": [[q, id, [s0, ..., sp]], ...]}
//   selection: {"vertex id": bead index}
//
// Bead ids in files are positions inside the stalk string. bead_maps["q/id/i"][t]
// is the position in stalk q/id of the bead that bead t of its i-th face
// lifts to; minimal bundles omit bead_maps.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bundle.hpp"
#include "complex.hpp"
#include "error.hpp"
#include "homology.hpp"
#include "spindle.hpp"

namespace cbundle {

using json = nlohmann::ordered_json;

inline json parse_json_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::Malformed, std::string("invalid JSON: ") + e.what());
    }
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    require(bool(in), ErrorKind::Malformed, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    require(bool(out), ErrorKind::Malformed, "cannot write '" + path + "'");
    out << text;
}

namespace detail {

template <class F>
auto guarded(const char* what, F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        fail(ErrorKind::Malformed, std::string(what) + ": " + e.what());
    }
}

inline json integer_to_json(const Integer& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return static_cast<long long>(v);
    return v.str();
}

inline Integer integer_from_json(const json& j) {
    if (j.is_number_integer())
        return Integer(j.get<long long>());
    if (j.is_string()) {
        try {
            return Integer(j.get<std::string>());
        } catch (const std::exception&) {
        }
    }
    fail(ErrorKind::Malformed, "expected an integer, got " + j.dump());
}

inline SimplexRef parse_ref(const std::string& key) {
    auto slash = key.find('/');
    require(slash != std::string::npos, ErrorKind::Malformed, "bad simplex key '" + key + "'");
    try {
        return {std::stoi(key.substr(0, slash)), std::stoi(key.substr(slash + 1))};
    } catch (const std::exception&) {
        fail(ErrorKind::Malformed, "bad simplex key '" + key + "'");
    }
}

} // namespace detail

// ---------------------------------------------------------------------------
// Complexes

inline json complex_to_json(const SemiSimplicialSet& X) {
    json j;
    j["dims"] = X.counts();
    json faces = json::object();
    for (int q = 1; q <= X.top_dim(); ++q)
        faces[std::to_string(q)] = X.face_rows(q);
    j["faces"] = faces;
    bool any_label = false;
    for (const auto& row : X.labels())
        any_label |= !row.empty();
    if (any_label) {
        json labels = json::object();
        for (std::size_t q = 0; q < X.labels().size(); ++q)
            if (!X.labels()[q].empty())
                labels[std::to_string(q)] = X.labels()[q];
        j["labels"] = labels;
    }
    return j;
}

/// Parses and, unless told otherwise, validates; face identity violations
/// raise FaceIdentity.
inline SemiSimplicialSet complex_from_json(const json& j, bool validate = true) {
    return detail::guarded("complex file", [&] {
        require(j.is_object() && j.contains("dims"), ErrorKind::Malformed, "complex file needs \"dims\"");
        auto counts = j.at("dims").get<std::vector<int>>();
        std::vector<std::vector<std::vector<int>>> faces(counts.size());
        for (std::size_t q = 1; q < counts.size(); ++q) {
            auto key = std::to_string(q);
            if (counts[q] == 0)
                continue;
            require(j.contains("faces") && j.at("faces").contains(key), ErrorKind::Malformed,
                    "complex file lacks faces for dimension " + key);
            faces[q] = j.at("faces").at(key).get<std::vector<std::vector<int>>>();
        }
        std::vector<std::vector<std::string>> labels;
        if (j.contains("labels"))
            for (auto& [key, row] : j.at("labels").items()) {
                std::size_t q = std::stoul(key);
                if (labels.size() <= q)
                    labels.resize(q + 1);
                labels[q] = row.get<std::vector<std::string>>();
            }
        SemiSimplicialSet X(counts, faces, labels);
        if (validate)
            require_valid(X);
        return X;
    });
}

/// A built-in name (tetra, octahedron, delta-torus, simplex:k, sphere:k), a
/// JSON document, or a path to one.
inline SemiSimplicialSet build_complex(const std::string& descriptor, bool validate = true) {
    if (is_named_complex(descriptor))
        return named_complex(descriptor);
    auto first = descriptor.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && descriptor[first] == '{')
        return complex_from_json(parse_json_text(descriptor), validate);
    return complex_from_json(parse_json_text(read_file(descriptor)), validate);
}

// ---------------------------------------------------------------------------
// Cochains

inline json cochain_to_json(const IntCochain& u) {
    json values = json::array();
    for (const auto& v : u.values)
        values.push_back(detail::integer_to_json(v));
    return json{{"dim", u.dim}, {"values", values}};
}

inline IntCochain cochain_from_json(const json& j) {
    return detail::guarded("cochain file", [&] {
        IntCochain u;
        u.dim = j.at("dim").get<int>();
        for (const auto& v : j.at("values"))
            u.values.push_back(detail::integer_from_json(v));
        return u;
    });
}

// ---------------------------------------------------------------------------
// Bundles

inline json bundle_to_json(const NecklaceLocalSystem& L) {
    const auto& B = L.base();
    json j;
    j["base"] = complex_to_json(B);
    json stalks = json::object();
    // written rotation of every stalk, and bead id -> written position
    std::vector<std::vector<std::map<BeadId, int>>> pos(std::size_t(B.top_dim() + 1));
    for (int q = 0; q <= B.top_dim(); ++q)
        for (int id = 0; id < B.count(q); ++id) {
            const Necklace& n = L.stalk({q, id});
            int start = least_rotation(n.colors());
            std::map<BeadId, int> p;
            std::vector<int> word;
            for (int t = 0; t < n.size(); ++t) {
                p[n.at(start + t).id] = t;
                word.push_back(n.at(start + t).color);
            }
            pos[std::size_t(q)].push_back(std::move(p));
            stalks[std::to_string(q) + "/" + std::to_string(id)] = format_word(word);
        }
    j["stalks"] = stalks;
    if (!L.is_minimal()) {
        json maps = json::object();
        for (int q = 1; q <= B.top_dim(); ++q)
            for (int id = 0; id < B.count(q); ++id)
                for (int i = 0; i <= q; ++i) {
                    SimplexRef f = B.face({q, id}, i);
                    const auto& fp = pos[std::size_t(f.dim)][std::size_t(f.id)];
                    std::vector<int> row(fp.size());
                    for (auto [face_bead, x_bead] : L.restriction({q, id}, i).up)
                        row[std::size_t(fp.at(face_bead))] = pos[std::size_t(q)][std::size_t(id)].at(x_bead);
                    maps[std::to_string(q) + "/" + std::to_string(id) + "/" + std::to_string(i)] = row;
                }
        j["bead_maps"] = maps;
    }
    return j;
}

/// Bead ids are assigned consecutively in stalk order; a bead's id minus its
/// stalk's first id is its position in the stalk string.
inline NecklaceLocalSystem bundle_from_json(const json& j) {
    return detail::guarded("bundle file", [&] {
        SemiSimplicialSet B = complex_from_json(j.at("base"));
        const auto& sj = j.at("stalks");
        std::vector<std::vector<Necklace>> stalks(std::size_t(B.top_dim() + 1));
        std::vector<std::vector<BeadId>> first(std::size_t(B.top_dim() + 1));
        BeadId next = 0;
        for (int q = 0; q <= B.top_dim(); ++q)
            for (int id = 0; id < B.count(q); ++id) {
                auto key = std::to_string(q) + "/" + std::to_string(id);
                require(sj.contains(key), ErrorKind::Malformed, "bundle file lacks stalk " + key);
                auto word = parse_word(sj.at(key).get<std::string>());
                stalks[std::size_t(q)].push_back(Necklace::from_colors(q + 1, word, next));
                first[std::size_t(q)].push_back(next);
                next += BeadId(word.size());
            }
        for (auto& [key, _] : sj.items()) {
            auto x = detail::parse_ref(key);
            require(B.contains(x), ErrorKind::Malformed, "stalk " + key + " names no base simplex");
        }
        std::vector<std::vector<std::vector<Restriction>>> R;
        if (j.contains("bead_maps")) {
            const auto& mj = j.at("bead_maps");
            R.resize(stalks.size());
            for (int q = 0; q <= B.top_dim(); ++q) {
                R[std::size_t(q)].resize(std::size_t(B.count(q)));
                if (q == 0)
                    continue;
                for (int id = 0; id < B.count(q); ++id)
                    for (int i = 0; i <= q; ++i) {
                        auto key = std::to_string(q) + "/" + std::to_string(id) + "/" + std::to_string(i);
                        require(mj.contains(key), ErrorKind::Malformed, "bundle file lacks bead map " + key);
                        auto row = mj.at(key).get<std::vector<int>>();
                        SimplexRef f = B.face({q, id}, i);
                        const int fsize = stalks[std::size_t(f.dim)][std::size_t(f.id)].size();
                        const int xsize = stalks[std::size_t(q)][std::size_t(id)].size();
                        require(int(row.size()) == fsize, ErrorKind::Malformed,
                                "bead map " + key + " has wrong length");
                        std::map<BeadId, BeadId> up;
                        for (int t = 0; t < fsize; ++t) {
                            require(row[std::size_t(t)] >= 0 && row[std::size_t(t)] < xsize, ErrorKind::Malformed,
                                    "bead map " + key + " points outside its stalk");
                            up[first[std::size_t(f.dim)][std::size_t(f.id)] + t] =
                                first[std::size_t(q)][std::size_t(id)] + row[std::size_t(t)];
                        }
                        R[std::size_t(q)][std::size_t(id)].push_back(Restriction::from_up(std::move(up)));
                    }
            }
        } else {
            R = canonical_restrictions(B, stalks);
        }
        NecklaceLocalSystem L(std::move(B), std::move(stalks), std::move(R));
        require_coherent(L);
        return L;
    });
}

/// Position of each bead inside its stalk, as used by files.
inline int bead_index(const NecklaceLocalSystem& L, SimplexRef x, BeadId b) { return L.stalk(x).position_of(b); }

// ---------------------------------------------------------------------------
// Total spaces and selections

inline json total_space_to_json(const AssembledBundle& A) {
    json j = complex_to_json(A.total);
    json proj = json::object();
    for (int p = 0; p <= A.total.top_dim(); ++p) {
        json rows = json::array();
        for (const auto& pr : A.projection.cells[std::size_t(p)])
            rows.push_back(json::array({pr.target.dim, pr.target.id, pr.surjection}));
        proj[std::to_string(p)] = rows;
    }
    j["projection"] = proj;
    return j;
}

inline SingularProjection projection_from_json(const json& j, const SemiSimplicialSet& total) {
    return detail::guarded("projection table", [&] {
        SingularProjection P;
        P.cells.resize(std::size_t(total.top_dim() + 1));
        for (int p = 0; p <= total.top_dim(); ++p) {
            const auto& rows = j.at("projection").at(std::to_string(p));
            require(int(rows.size()) == total.count(p), ErrorKind::Malformed,
                    "projection table has wrong length in dimension " + std::to_string(p));
            for (const auto& r : rows)
                P.cells[std::size_t(p)].push_back(
                    {{r.at(0).get<int>(), r.at(1).get<int>()}, r.at(2).get<std::vector<int>>()});
        }
        return P;
    });
}

/// Selection values are bead positions in the vertex stalk strings; vertices
/// not named keep their first bead.
inline ArcSelection selection_from_json(const json& j, const NecklaceLocalSystem& L) {
    return detail::guarded("selection file", [&] {
        ArcSelection sel = ArcSelection::first_beads(L);
        for (auto& [key, value] : j.items()) {
            int v = -1;
            try {
                v = std::stoi(key);
            } catch (const std::exception&) {
            }
            require(v >= 0 && v < L.base().count(0), ErrorKind::OutOfRange, "selection names no vertex '" + key + "'");
            int p = value.get<int>();
            const Necklace& n = L.stalk({0, v});
            require(p >= 0 && p < n.size(), ErrorKind::BeadNotFound,
                    "vertex " + key + " has no bead " + std::to_string(p));
            sel.kept[std::size_t(v)] = n.at(p).id;
        }
        return sel;
    });
}

} // namespace cbundle
