#pragma once

// Necklaces, circular permutations and the simplicial sets S and SC.
//
// Circular words are read clockwise. Faces act on letters: d_i deletes the
// letter i and renumbers the larger letters down; s_i inserts a new letter
// i+1/2 right after the letter i and renumbers. Both are invariant under
// rotation, which is what makes the coset map S -> SC simplicial.

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "homology.hpp"

namespace cbundle {

using BeadId = long;

struct Bead {
    BeadId id = 0;
    int color = 0;

    bool operator==(const Bead&) const = default;
};

/// Least rotation of a word; ties go to the earliest start.
inline int least_rotation(const std::vector<int>& w) {
    const int n = int(w.size());
    int best = 0;
    for (int s = 1; s < n; ++s)
        for (int t = 0; t < n; ++t) {
            int a = w[std::size_t((s + t) % n)], b = w[std::size_t((best + t) % n)];
            if (a != b) {
                if (a < b)
                    best = s;
                break;
            }
        }
    return best;
}

/// Circular sequence of colored beads over the alphabet {0..k}. Every color
/// occurs; bead ids are unique and survive face operations.
class Necklace {
public:
    Necklace() = default;

    Necklace(int alphabet, std::vector<Bead> beads) : alphabet_(alphabet), beads_(std::move(beads)) {
        require(alphabet_ >= 1, ErrorKind::Malformed, "necklace alphabet must be nonempty");
        std::vector<int> seen(std::size_t(alphabet_), 0);
        std::set<BeadId> ids;
        for (const auto& b : beads_) {
            require(b.color >= 0 && b.color < alphabet_, ErrorKind::Malformed,
                    "bead color " + std::to_string(b.color) + " outside alphabet");
            require(ids.insert(b.id).second, ErrorKind::Malformed, "duplicate bead id");
            ++seen[std::size_t(b.color)];
        }
        for (int c = 0; c < alphabet_; ++c)
            require(seen[std::size_t(c)] > 0, ErrorKind::Malformed,
                    "necklace misses color " + std::to_string(c));
    }

    static Necklace from_colors(int alphabet, const std::vector<int>& colors, BeadId first_id = 0) {
        std::vector<Bead> beads;
        for (int c : colors)
            beads.push_back({first_id++, c});
        return Necklace(alphabet, std::move(beads));
    }

    /// Alphabet inferred as max color + 1.
    static Necklace from_colors(const std::vector<int>& colors, BeadId first_id = 0) {
        require(!colors.empty(), ErrorKind::Malformed, "empty necklace");
        return from_colors(*std::max_element(colors.begin(), colors.end()) + 1, colors, first_id);
    }

    int alphabet() const { return alphabet_; }
    int top_color() const { return alphabet_ - 1; }
    int size() const { return int(beads_.size()); }
    const std::vector<Bead>& beads() const { return beads_; }
    const Bead& at(int pos) const { return beads_[std::size_t(((pos % size()) + size()) % size())]; }

    std::vector<int> colors() const {
        std::vector<int> c;
        for (const auto& b : beads_)
            c.push_back(b.color);
        return c;
    }

    int position_of(BeadId id) const {
        for (int p = 0; p < size(); ++p)
            if (beads_[std::size_t(p)].id == id)
                return p;
        return -1;
    }

    int count(int color) const {
        return int(std::count_if(beads_.begin(), beads_.end(),
                                 [&](const Bead& b) { return b.color == color; }));
    }

    bool is_circular_permutation() const { return size() == alphabet_; }

    Necklace rotated(int start) const {
        std::vector<Bead> out;
        for (int t = 0; t < size(); ++t)
            out.push_back(at(start + t));
        return Necklace(alphabet_, std::move(out));
    }

    std::vector<int> canonical_colors() const {
        auto c = colors();
        std::rotate(c.begin(), c.begin() + least_rotation(c), c.end());
        return c;
    }

    Necklace canonical() const { return rotated(least_rotation(colors())); }

    /// Equal as circular colored words (ids ignored).
    bool same_word(const Necklace& other) const {
        return alphabet_ == other.alphabet_ && canonical_colors() == other.canonical_colors();
    }

    bool operator==(const Necklace&) const = default;

private:
    int alphabet_ = 0;
    std::vector<Bead> beads_;
};

inline std::string format_word(const std::vector<int>& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i)
        s += (i ? " " : "") + std::to_string(w[i]);
    return s + ")";
}

inline std::string to_string(const Necklace& n) { return format_word(n.colors()); }

/// Parses "(0 2 1 3)"; whitespace and commas separate colors.
inline std::vector<int> parse_word(const std::string& text) {
    auto open = text.find('('), close = text.rfind(')');
    require(open != std::string::npos && close != std::string::npos && open < close,
            ErrorKind::Malformed, "necklace text must be parenthesized: '" + text + "'");
    for (std::size_t p = 0; p < text.size(); ++p)
        if ((p < open || p > close) && !std::isspace(static_cast<unsigned char>(text[p])))
            fail(ErrorKind::Malformed, "stray characters around necklace '" + text + "'");
    std::string body = text.substr(open + 1, close - open - 1);
    std::replace(body.begin(), body.end(), ',', ' ');
    std::istringstream in(body);
    std::vector<int> w;
    std::string tok;
    while (in >> tok) {
        std::size_t used = 0;
        int v = -1;
        try {
            v = std::stoi(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        require(used == tok.size() && v >= 0, ErrorKind::Malformed, "bad bead color '" + tok + "'");
        w.push_back(v);
    }
    require(!w.empty(), ErrorKind::Malformed, "empty necklace");
    return w;
}

/// Reads the text form, canonicalized to its least rotation.
inline Necklace parse_necklace(const std::string& text, BeadId first_id = 0) {
    return Necklace::from_colors(parse_word(text), first_id).canonical();
}

// ---------------------------------------------------------------------------
// Deleting a color

struct DeleteColorResult {
    Necklace necklace;             // survivors keep their ids
    std::vector<int> source_of;    // result position -> source position
    std::vector<int> arc_merge;    // source arc -> result arc (arc p follows bead p)
};

inline DeleteColorResult delete_color(const Necklace& theta, int color) {
    require(color >= 0 && color < theta.alphabet(), ErrorKind::OutOfRange,
            "delete_color: color " + std::to_string(color) + " outside alphabet");
    require(theta.alphabet() >= 2, ErrorKind::OutOfRange,
            "delete_color: cannot delete the only color");
    DeleteColorResult out;
    std::vector<Bead> kept;
    std::vector<int> new_pos(std::size_t(theta.size()), -1);
    for (int p = 0; p < theta.size(); ++p) {
        const auto& b = theta.beads()[std::size_t(p)];
        if (b.color == color)
            continue;
        new_pos[std::size_t(p)] = int(kept.size());
        out.source_of.push_back(p);
        kept.push_back({b.id, b.color > color ? b.color - 1 : b.color});
    }
    out.necklace = Necklace(theta.alphabet() - 1, std::move(kept));
    out.arc_merge.resize(std::size_t(theta.size()));
    for (int p = 0; p < theta.size(); ++p) {
        int s = p;
        while (new_pos[std::size_t(((s % theta.size()) + theta.size()) % theta.size())] < 0)
            --s;
        out.arc_merge[std::size_t(p)] = new_pos[std::size_t(((s % theta.size()) + theta.size()) % theta.size())];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Permutations and circular permutations

/// ω stored as its word (ω(0), ..., ω(k)).
struct Permutation {
    std::vector<int> values;

    int k() const { return int(values.size()) - 1; }
    auto operator<=>(const Permutation&) const = default;
};

inline bool is_permutation_word(const std::vector<int>& w) {
    std::vector<int> s = w;
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] != int(i))
            return false;
    return !w.empty();
}

/// Element of SC_k, kept in the rotation that starts with 0.
class CircularPermutation {
public:
    CircularPermutation() : word_{0} {}

    explicit CircularPermutation(std::vector<int> word) : word_(std::move(word)) {
        require(is_permutation_word(word_), ErrorKind::Malformed,
                "not a circular permutation: " + format_word(word_));
        auto zero = std::find(word_.begin(), word_.end(), 0);
        std::rotate(word_.begin(), zero, word_.end());
    }

    int k() const { return int(word_.size()) - 1; }
    const std::vector<int>& word() const { return word_; }

    int position_of(int letter) const {
        return int(std::find(word_.begin(), word_.end(), letter) - word_.begin());
    }

    Necklace to_necklace(BeadId first_id = 0) const {
        return Necklace::from_colors(k() + 1, word_, first_id);
    }

    auto operator<=>(const CircularPermutation&) const = default;

private:
    std::vector<int> word_;
};

inline std::string to_string(const CircularPermutation& t) { return format_word(t.word()); }

inline CircularPermutation parse_circular_permutation(const std::string& text) {
    return CircularPermutation(parse_word(text));
}

inline std::optional<CircularPermutation> as_circular_permutation(const Necklace& n) {
    if (!n.is_circular_permutation())
        return std::nullopt;
    return CircularPermutation(n.colors());
}

namespace detail {

inline std::vector<int> delete_letter(const std::vector<int>& w, int i) {
    std::vector<int> out;
    for (int v : w)
        if (v != i)
            out.push_back(v > i ? v - 1 : v);
    return out;
}

inline std::vector<int> double_letter(const std::vector<int>& w, int i) {
    std::vector<int> out;
    for (int v : w) {
        out.push_back(v > i ? v + 1 : v);
        if (v == i)
            out.push_back(i + 1);
    }
    return out;
}

} // namespace detail

inline Permutation face_perm(const Permutation& w, int i) {
    require(w.k() >= 1 && i >= 0 && i <= w.k(), ErrorKind::OutOfRange, "face_perm: index out of range");
    return {detail::delete_letter(w.values, i)};
}

inline Permutation degeneracy_perm(const Permutation& w, int i) {
    require(i >= 0 && i <= w.k(), ErrorKind::OutOfRange, "degeneracy_perm: index out of range");
    return {detail::double_letter(w.values, i)};
}

/// S_k -> SC_k: forget the starting point.
inline CircularPermutation coset(const Permutation& w) { return CircularPermutation(w.values); }

inline CircularPermutation face_sc(const CircularPermutation& t, int i) {
    require(t.k() >= 1 && i >= 0 && i <= t.k(), ErrorKind::OutOfRange, "face_sc: index out of range");
    return CircularPermutation(detail::delete_letter(t.word(), i));
}

inline CircularPermutation degeneracy_sc(const CircularPermutation& t, int i) {
    require(i >= 0 && i <= t.k(), ErrorKind::OutOfRange, "degeneracy_sc: index out of range");
    return CircularPermutation(detail::double_letter(t.word(), i));
}

inline int sc_max_k() {
    if (const char* env = std::getenv("SC_MAX_K")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 0)
            return int(v);
    }
    return 7;
}

/// All k! elements of SC_k in lexicographic order of their 0-first words.
inline std::vector<CircularPermutation> enumerate_sc(int k, int bound = sc_max_k()) {
    require(k >= 0, ErrorKind::OutOfRange, "enumerate_sc: k must be >= 0");
    require(k <= bound, ErrorKind::BoundExceeded,
            "enumerate_sc: k=" + std::to_string(k) + " exceeds bound " + std::to_string(bound));
    std::vector<int> tail(static_cast<std::size_t>(k));
    std::iota(tail.begin(), tail.end(), 1);
    std::vector<CircularPermutation> out;
    do {
        std::vector<int> w{0};
        w.insert(w.end(), tail.begin(), tail.end());
        out.emplace_back(std::move(w));
    } while (std::next_permutation(tail.begin(), tail.end()));
    return out;
}

inline std::vector<Permutation> enumerate_s(int k) {
    std::vector<int> w(std::size_t(k + 1));
    std::iota(w.begin(), w.end(), 0);
    std::vector<Permutation> out;
    do
        out.push_back({w});
    while (std::next_permutation(w.begin(), w.end()));
    return out;
}

/// Degenerate iff it is s_i of something one dimension down.
inline bool is_degenerate_sc(const CircularPermutation& t) {
    if (t.k() == 0)
        return false;
    for (const auto& lower : enumerate_sc(t.k() - 1, t.k()))
        for (int i = 0; i <= lower.k(); ++i)
            if (degeneracy_sc(lower, i) == t)
                return true;
    return false;
}

/// Parity of a circular permutation of three letters: 0 for (0 1 2), 1 for (0 2 1).
inline int c01(const CircularPermutation& t) {
    require(t.k() == 2, ErrorKind::OutOfRange, "c01 needs a circular permutation of [2]");
    return t.word()[1] == 1 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// Cyclic orders given by parities of triples

/// Parity bit for every triple i<j<l of [k]: 0 means the cyclic order
/// (i j l), 1 means (l j i).
class TripleOrderFamily {
public:
    explicit TripleOrderFamily(int k) : k_(k), bits_(std::size_t((k + 1) * (k + 1) * (k + 1)), -1) {
        require(k >= 2, ErrorKind::OutOfRange, "triple families need k >= 2");
    }

    int k() const { return k_; }
    int bit(int i, int j, int l) const { return bits_[index(i, j, l)]; }
    void set(int i, int j, int l, int b) { bits_[index(i, j, l)] = b; }

    /// Triples induced by a circular permutation.
    static TripleOrderFamily induced_by(const CircularPermutation& t) {
        TripleOrderFamily T(t.k());
        for (int i = 0; i <= t.k(); ++i)
            for (int j = i + 1; j <= t.k(); ++j)
                for (int l = j + 1; l <= t.k(); ++l)
                    T.set(i, j, l, induced_bit(t.word(), i, j, l));
        return T;
    }

    /// Parity of the order in which the letters i < j < l occur in a circular word.
    static int induced_bit(const std::vector<int>& w, int i, int j, int l) {
        const int n = int(w.size());
        auto pos = [&](int v) { return int(std::find(w.begin(), w.end(), v) - w.begin()); };
        int pi = pos(i);
        int dj = (pos(j) - pi + n) % n, dl = (pos(l) - pi + n) % n;
        return dj < dl ? 0 : 1;
    }

private:
    std::size_t index(int i, int j, int l) const {
        require(0 <= i && i < j && j < l && l <= k_, ErrorKind::OutOfRange, "triple out of range");
        return std::size_t((i * (k_ + 1) + j) * (k_ + 1) + l);
    }

    int k_;
    std::vector<int> bits_;
};

class InconsistentTriples : public Error {
public:
    InconsistentTriples(std::vector<int> quadruple, const std::string& what)
        : Error(ErrorKind::InconsistentTriples, what), quadruple_(std::move(quadruple)) {}
    const std::vector<int>& quadruple() const { return quadruple_; }

private:
    std::vector<int> quadruple_;
};

namespace detail {

inline bool consistent_on(const TripleOrderFamily& T, const std::vector<int>& word,
                          const std::vector<int>& letters) {
    for (std::size_t a = 0; a < letters.size(); ++a)
        for (std::size_t b = a + 1; b < letters.size(); ++b)
            for (std::size_t c = b + 1; c < letters.size(); ++c) {
                int i = letters[a], j = letters[b], l = letters[c];
                if (TripleOrderFamily::induced_bit(word, i, j, l) != T.bit(i, j, l))
                    return false;
            }
    return true;
}

/// Does some circular order of the four letters induce the family's bits on them?
inline bool quadruple_consistent(const TripleOrderFamily& T, std::vector<int> q) {
    std::sort(q.begin(), q.end());
    const auto letters = q;
    do
        if (consistent_on(T, q, letters))
            return true;
    while (std::next_permutation(q.begin() + 1, q.end()));
    return false;
}

} // namespace detail

/// Builds the circular permutation inducing every triple of T by inserting
/// 3, 4, ..., k one at a time into the only gap their triples allow.
inline CircularPermutation insertion_extend(const TripleOrderFamily& T) {
    const int k = T.k();
    std::vector<int> word = T.bit(0, 1, 2) == 0 ? std::vector<int>{0, 1, 2} : std::vector<int>{0, 2, 1};
    for (int m = 3; m <= k; ++m) {
        std::optional<std::vector<int>> placed;
        for (std::size_t gap = 0; gap < word.size() && !placed; ++gap) {
            auto candidate = word;
            candidate.insert(candidate.begin() + std::ptrdiff_t(gap + 1), m);
            bool ok = true;
            for (int a = 0; a < m && ok; ++a)
                for (int b = a + 1; b < m && ok; ++b)
                    ok = TripleOrderFamily::induced_bit(candidate, a, b, m) == T.bit(a, b, m);
            if (ok)
                placed = std::move(candidate);
        }
        if (!placed) {
            for (int a = 0; a < m; ++a)
                for (int b = a + 1; b < m; ++b)
                    for (int c = b + 1; c < m; ++c)
                        if (!detail::quadruple_consistent(T, {a, b, c, m}))
                            throw InconsistentTriples(
                                {a, b, c, m}, "triples on {" + std::to_string(a) + "," + std::to_string(b) +
                                                  "," + std::to_string(c) + "," + std::to_string(m) +
                                                  "} violate transitivity");
            // a failed insertion always has a bad quadruple
            fail(ErrorKind::Internal, "insertion_extend: no gap and no violating quadruple");
        }
        word = std::move(*placed);
    }
    std::vector<int> all(std::size_t(k + 1));
    std::iota(all.begin(), all.end(), 0);
    if (!detail::consistent_on(T, word, all))
        fail(ErrorKind::Internal, "insertion_extend: final verification failed");
    return CircularPermutation(word);
}

// ---------------------------------------------------------------------------
// Lifting maps ∂⟨k⟩ -> SC over ⟨k⟩

/// family[i] is the image of the i-th facet; compatible iff
/// d_i family[j] = d_{j-1} family[i] for all i < j.
inline bool is_compatible_family(const std::vector<CircularPermutation>& family) {
    const int k = int(family.size()) - 1;
    for (const auto& t : family)
        if (t.k() != k - 1)
            return false;
    if (k < 2)
        return true;
    for (int j = 1; j <= k; ++j)
        for (int i = 0; i < j; ++i)
            if (face_sc(family[std::size_t(j)], i) != face_sc(family[std::size_t(i)], j - 1))
                return false;
    return true;
}

inline std::vector<CircularPermutation> boundary_family(const CircularPermutation& t) {
    std::vector<CircularPermutation> out;
    for (int i = 0; i <= t.k(); ++i)
        out.push_back(face_sc(t, i));
    return out;
}

inline std::vector<CircularPermutation> kan_lifts(const std::vector<CircularPermutation>& family) {
    require(!family.empty(), ErrorKind::IncompatibleFamily, "kan_lifts: empty family");
    require(is_compatible_family(family), ErrorKind::IncompatibleFamily,
            "kan_lifts: facets disagree on shared faces");
    const int k = int(family.size()) - 1;
    std::vector<CircularPermutation> lifts;
    for (const auto& t : enumerate_sc(k, std::max(k, sc_max_k())))
        if (boundary_family(t) == family)
            lifts.push_back(t);
    return lifts;
}

/// Every compatible facet family for ⟨k⟩, found by backtracking over facets.
inline std::vector<std::vector<CircularPermutation>> compatible_families(int k) {
    require(k >= 1, ErrorKind::OutOfRange, "compatible_families: k must be >= 1");
    const auto facets = enumerate_sc(k - 1, std::max(k - 1, sc_max_k()));
    std::vector<std::vector<CircularPermutation>> out;
    std::vector<CircularPermutation> partial;
    auto extend = [&](auto&& self) -> void {
        const int j = int(partial.size());
        if (j == k + 1) {
            out.push_back(partial);
            return;
        }
        for (const auto& t : facets) {
            bool ok = true;
            for (int i = 0; i < j && ok && k >= 2; ++i)
                ok = face_sc(t, i) == face_sc(partial[std::size_t(i)], j - 1);
            if (!ok)
                continue;
            partial.push_back(t);
            self(self);
            partial.pop_back();
        }
    };
    extend(extend);
    return out;
}

// ---------------------------------------------------------------------------
// Classical (non-semi-simplicial) necklaces

struct ClassicalCheck {
    bool classical = false;
    std::string reason;
};

/// Every color at least three times and every pair of colors interleaved.
inline ClassicalCheck is_classical_necklace(const Necklace& n) {
    for (int c = 0; c < n.alphabet(); ++c)
        if (n.count(c) < 3)
            return {false, "color " + std::to_string(c) + " has " + std::to_string(n.count(c)) +
                               " beads, fewer than 3"};
    for (int i = 0; i < n.alphabet(); ++i)
        for (int j = i + 1; j < n.alphabet(); ++j) {
            std::vector<int> r;
            for (const auto& b : n.beads())
                if (b.color == i || b.color == j)
                    r.push_back(b.color);
            int changes = 0;
            for (std::size_t p = 0; p < r.size(); ++p)
                changes += r[p] != r[(p + 1) % r.size()];
            if (changes <= 2)
                return {false, "colors " + std::to_string(i) + " and " + std::to_string(j) +
                                   " are not mixed"};
        }
    return {true, {}};
}

// ---------------------------------------------------------------------------
// Normalized chains of SC

struct ScNormalizedChains {
    std::vector<std::vector<CircularPermutation>> basis; // non-degenerate elements per dimension
    std::vector<IntMatrix> boundary;                      // boundary[q]: N_q -> N_{q-1}, q >= 1

    std::vector<int> ranks() const {
        std::vector<int> r;
        for (const auto& b : basis)
            r.push_back(int(b.size()));
        return r;
    }
};

inline ScNormalizedChains sc_normalized_chains(int max_dim) {
    ScNormalizedChains N;
    for (int q = 0; q <= max_dim; ++q) {
        std::vector<CircularPermutation> nd;
        for (const auto& t : enumerate_sc(q, std::max(q, sc_max_k())))
            if (!is_degenerate_sc(t))
                nd.push_back(t);
        N.basis.push_back(std::move(nd));
    }
    N.boundary.resize(std::size_t(max_dim + 1));
    for (int q = 1; q <= max_dim; ++q) {
        const auto& lower = N.basis[std::size_t(q - 1)];
        IntMatrix M(int(lower.size()), int(N.basis[std::size_t(q)].size()));
        for (std::size_t c = 0; c < N.basis[std::size_t(q)].size(); ++c)
            for (int i = 0; i <= q; ++i) {
                auto f = face_sc(N.basis[std::size_t(q)][c], i);
                auto it = std::find(lower.begin(), lower.end(), f);
                if (it != lower.end()) // degenerate faces vanish
                    M(int(it - lower.begin()), int(c)) += (i % 2 == 0) ? 1 : -1;
            }
        N.boundary[std::size_t(q)] = std::move(M);
    }
    return N;
}

/// Normalized homology of SC in dimensions 0..max_dim-1.
inline HomologyGroups sc_normalized_homology(int max_dim) {
    auto N = sc_normalized_chains(max_dim);
    std::vector<int> rank(std::size_t(max_dim + 1), 0);
    std::vector<std::vector<Integer>> diag(std::size_t(max_dim + 1));
    for (int q = 1; q <= max_dim; ++q) {
        auto snf = smith_normal_form(N.boundary[std::size_t(q)]);
        rank[std::size_t(q)] = snf.rank();
        diag[std::size_t(q)] = snf.diagonal;
    }
    HomologyGroups H;
    for (int q = 0; q < max_dim; ++q) {
        HomologyGroup g;
        g.betti = int(N.basis[std::size_t(q)].size()) - rank[std::size_t(q)] - rank[std::size_t(q + 1)];
        for (const auto& d : diag[std::size_t(q + 1)])
            if (d > 1)
                g.torsion.push_back(d);
        H.groups.push_back(g);
    }
    return H;
}

} // namespace cbundle
