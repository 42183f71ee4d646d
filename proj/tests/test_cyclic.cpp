#include <gtest/gtest.h>

#include <set>

#include <cbundle/bundle.hpp>
#include <cbundle/cyclic.hpp>

#include "generators.hpp"
#include "oracles.hpp"

using namespace cbundle;

namespace {

CircularPermutation cp(std::vector<int> w) { return CircularPermutation(std::move(w)); }

ErrorKind kind_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

/// All words of the given length over `colors` letters that use every letter.
std::vector<std::vector<int>> surjective_words(int colors, int length) {
    std::vector<std::vector<int>> out;
    std::vector<int> w(std::size_t(length), 0);
    while (true) {
        std::set<int> used(w.begin(), w.end());
        if (int(used.size()) == colors)
            out.push_back(w);
        int p = length - 1;
        while (p >= 0 && w[std::size_t(p)] == colors - 1)
            w[std::size_t(p--)] = 0;
        if (p < 0)
            break;
        ++w[std::size_t(p)];
    }
    return out;
}

} // namespace

// ---------------------------------------------------------------------------
// Necklaces

TEST(Necklace, ConstructionChecks) {
    EXPECT_EQ(kind_of([] { Necklace::from_colors(3, {0, 1, 1}); }), ErrorKind::Malformed);
    EXPECT_EQ(kind_of([] { Necklace::from_colors(2, {0, 2}); }), ErrorKind::Malformed);
    EXPECT_EQ(kind_of([] { Necklace(2, {{0, 0}, {0, 1}}); }), ErrorKind::Malformed);
    auto n = Necklace::from_colors({1, 0, 2, 0}, 10);
    EXPECT_EQ(n.alphabet(), 3);
    EXPECT_EQ(n.size(), 4);
    EXPECT_EQ(n.at(0).id, 10);
    EXPECT_EQ(n.at(-1).color, 0);
    EXPECT_EQ(n.position_of(12), 2);
    EXPECT_EQ(n.position_of(99), -1);
    EXPECT_EQ(n.count(0), 2);
}

TEST(Necklace, TextFormat) {
    auto n = parse_necklace("(2 0 1)");
    EXPECT_EQ(n.colors(), (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(to_string(n), "(0 1 2)");
    EXPECT_EQ(parse_word(" ( 0 2 1 3 ) "), (std::vector<int>{0, 2, 1, 3}));
    EXPECT_EQ(parse_word("(0,1)"), (std::vector<int>{0, 1}));
    EXPECT_EQ(kind_of([] { parse_word("0 1"); }), ErrorKind::Malformed);
    EXPECT_EQ(kind_of([] { parse_word("(0 x)"); }), ErrorKind::Malformed);
    EXPECT_EQ(format_word({0, 3, 1}), "(0 3 1)");
}

TEST(Necklace, LeastRotation) {
    EXPECT_EQ(least_rotation({1, 0, 0}), 1);
    EXPECT_EQ(least_rotation({0, 1, 0, 1}), 0);
    EXPECT_EQ(least_rotation({1, 0, 1, 0, 0}), 3);
    gen::Rng rng(1);
    for (int t = 0; t < 500; ++t) {
        auto n = gen::random_necklace(rng, gen::uniform(rng, 1, 4), gen::uniform(rng, 4, 9));
        auto w = n.colors();
        auto best = w;
        for (std::size_t r = 0; r < w.size(); ++r) {
            std::vector<int> rot(w.begin() + std::ptrdiff_t(r), w.end());
            rot.insert(rot.end(), w.begin(), w.begin() + std::ptrdiff_t(r));
            best = std::min(best, rot);
        }
        EXPECT_EQ(n.canonical_colors(), best);
        EXPECT_TRUE(n.same_word(n.rotated(gen::uniform(rng, 0, n.size() - 1))));
    }
}

TEST(DeleteColor, Examples) {
    auto r = delete_color(Necklace::from_colors(4, {0, 2, 1, 3}), 0);
    EXPECT_EQ(r.necklace.colors(), (std::vector<int>{1, 0, 2}));
    EXPECT_EQ(r.necklace.canonical_colors(), (std::vector<int>{0, 2, 1}));
    EXPECT_EQ(delete_color(Necklace::from_colors(4, {0, 1, 2, 3}), 3).necklace.colors(), (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(kind_of([] { delete_color(Necklace::from_colors(1, {0, 0, 0}), 0); }), ErrorKind::OutOfRange);
    EXPECT_EQ(kind_of([] { delete_color(Necklace::from_colors(2, {0, 1}), 2); }), ErrorKind::OutOfRange);
}

TEST(DeleteColor, BeadAndArcMaps) {
    auto theta = Necklace::from_colors(3, {0, 1, 1, 2, 0, 1}, 100);
    auto r = delete_color(theta, 1);
    EXPECT_EQ(r.necklace.colors(), (std::vector<int>{0, 1, 0}));
    EXPECT_EQ(r.source_of, (std::vector<int>{0, 3, 4}));
    for (std::size_t p = 0; p < r.source_of.size(); ++p)
        EXPECT_EQ(r.necklace.beads()[p].id, theta.beads()[std::size_t(r.source_of[p])].id);
    // arc p follows bead p; arcs after deleted beads merge into the preceding survivor's arc
    EXPECT_EQ(r.arc_merge, (std::vector<int>{0, 0, 0, 1, 2, 2}));
}

// ---------------------------------------------------------------------------
// Circular permutations and the simplicial structures

TEST(CircularPermutation, Canonical) {
    EXPECT_EQ(cp({2, 0, 1}).word(), (std::vector<int>{0, 1, 2}));
    EXPECT_EQ(cp({1, 2, 0}), cp({0, 1, 2}));
    EXPECT_EQ(kind_of([] { cp({0, 0, 1}); }), ErrorKind::Malformed);
    EXPECT_EQ(parse_circular_permutation("(2 1 0)"), cp({0, 2, 1}));
    EXPECT_FALSE(as_circular_permutation(Necklace::from_colors({0, 1, 0})));
    EXPECT_EQ(*as_circular_permutation(Necklace::from_colors({1, 0})), cp({0, 1}));
}

TEST(CircularPermutation, Enumerate) {
    EXPECT_EQ(enumerate_sc(0), (std::vector<CircularPermutation>{cp({0})}));
    EXPECT_EQ(enumerate_sc(1), (std::vector<CircularPermutation>{cp({0, 1})}));
    EXPECT_EQ(enumerate_sc(2), (std::vector<CircularPermutation>{cp({0, 1, 2}), cp({0, 2, 1})}));
    EXPECT_EQ(enumerate_sc(3).size(), 6u);
    long fact = 1;
    for (int k = 1; k <= 7; ++k) {
        fact *= k;
        auto all = enumerate_sc(k);
        ASSERT_EQ(long(all.size()), fact);
        EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
        EXPECT_EQ(std::set<CircularPermutation>(all.begin(), all.end()).size(), all.size());
    }
    EXPECT_EQ(kind_of([] { enumerate_sc(8); }), ErrorKind::BoundExceeded);
    EXPECT_EQ(enumerate_sc(8, 8).size(), 40320u);
}

TEST(CircularPermutation, OperatorExamples) {
    EXPECT_EQ(degeneracy_sc(cp({0}), 0), cp({0, 1}));
    EXPECT_EQ(degeneracy_sc(cp({0, 2, 1}), 1), cp({0, 3, 1, 2}));
    EXPECT_EQ(face_sc(cp({0, 2, 1, 3}), 1), cp({0, 1, 2}));
    EXPECT_EQ(face_sc(cp({0, 2, 1, 3}), 0), cp({0, 2, 1}));
    EXPECT_EQ(kind_of([] { face_sc(cp({0, 1, 2}), 3); }), ErrorKind::OutOfRange);
    EXPECT_EQ(kind_of([] { degeneracy_sc(cp({0, 1, 2}), -1); }), ErrorKind::OutOfRange);
}

TEST(CircularPermutation, FacesMatchOracle) {
    for (int k = 1; k <= 6; ++k)
        for (const auto& w : oracle::all_circular_permutations(k))
            for (int i = 0; i <= k; ++i) {
                EXPECT_EQ(face_sc(cp(w), i).word(), oracle::sc_face(w, i));
                // and agree with deleting the color from the necklace
                EXPECT_EQ(delete_color(cp(w).to_necklace(), i).necklace.canonical_colors(), oracle::sc_face(w, i));
            }
}

TEST(SimplicialIdentities, SymmetricGroups) {
    for (int k = 1; k <= 5; ++k)
        for (const auto& w : enumerate_s(k)) {
            for (int j = 1; j <= k && k >= 2; ++j)
                for (int i = 0; i < j; ++i)
                    ASSERT_EQ(face_perm(face_perm(w, j), i), face_perm(face_perm(w, i), j - 1));
            for (int j = 0; j <= k; ++j)
                for (int i = 0; i <= j; ++i)
                    ASSERT_EQ(degeneracy_perm(degeneracy_perm(w, j), i),
                              degeneracy_perm(degeneracy_perm(w, i), j + 1));
            for (int j = 0; j <= k; ++j)
                for (int i = 0; i <= k + 1; ++i) {
                    auto lhs = face_perm(degeneracy_perm(w, j), i);
                    if (i < j)
                        ASSERT_EQ(lhs, degeneracy_perm(face_perm(w, i), j - 1));
                    else if (i == j || i == j + 1)
                        ASSERT_EQ(lhs, w);
                    else
                        ASSERT_EQ(lhs, degeneracy_perm(face_perm(w, i - 1), j));
                }
        }
}

TEST(SimplicialIdentities, CircularPermutations) {
    for (int k = 1; k <= 5; ++k)
        for (const auto& t : enumerate_sc(k)) {
            for (int j = 1; j <= k && k >= 2; ++j)
                for (int i = 0; i < j; ++i)
                    ASSERT_EQ(face_sc(face_sc(t, j), i), face_sc(face_sc(t, i), j - 1));
            for (int j = 0; j <= k; ++j)
                for (int i = 0; i <= j; ++i)
                    ASSERT_EQ(degeneracy_sc(degeneracy_sc(t, j), i), degeneracy_sc(degeneracy_sc(t, i), j + 1));
            for (int j = 0; j <= k; ++j)
                for (int i = 0; i <= k + 1; ++i) {
                    auto lhs = face_sc(degeneracy_sc(t, j), i);
                    if (i < j)
                        ASSERT_EQ(lhs, degeneracy_sc(face_sc(t, i), j - 1));
                    else if (i == j || i == j + 1)
                        ASSERT_EQ(lhs, t);
                    else
                        ASSERT_EQ(lhs, degeneracy_sc(face_sc(t, i - 1), j));
                }
        }
}

TEST(SimplicialIdentities, CosetIsSimplicial) {
    for (int k = 1; k <= 5; ++k)
        for (const auto& w : enumerate_s(k))
            for (int i = 0; i <= k; ++i) {
                ASSERT_EQ(coset(face_perm(w, i)), face_sc(coset(w), i));
                ASSERT_EQ(coset(degeneracy_perm(w, i)), degeneracy_sc(coset(w), i));
            }
}

TEST(SimplicialIdentities, CosetFibersHaveSizeKPlusOne) {
    for (int k = 0; k <= 5; ++k) {
        std::map<CircularPermutation, int> fiber;
        for (const auto& w : enumerate_s(k))
            ++fiber[coset(w)];
        EXPECT_EQ(fiber.size(), enumerate_sc(k).size());
        for (auto [t, n] : fiber)
            EXPECT_EQ(n, k + 1);
    }
}

TEST(Degeneracy, Examples) {
    EXPECT_TRUE(is_degenerate_sc(cp({0, 1, 2})));
    EXPECT_FALSE(is_degenerate_sc(cp({0, 2, 1})));
    EXPECT_FALSE(is_degenerate_sc(cp({0, 2, 1, 3})));
    EXPECT_TRUE(is_degenerate_sc(cp({0, 1})));
    EXPECT_FALSE(is_degenerate_sc(cp({0})));
    std::vector<CircularPermutation> nondeg;
    for (const auto& t : enumerate_sc(3))
        if (!is_degenerate_sc(t))
            nondeg.push_back(t);
    EXPECT_EQ(nondeg, (std::vector<CircularPermutation>{cp({0, 2, 1, 3}), cp({0, 3, 2, 1})}));
}

TEST(Degeneracy, MatchesAdjacencyRule) {
    for (int k = 0; k <= 6; ++k)
        for (const auto& w : oracle::all_circular_permutations(k))
            ASSERT_EQ(is_degenerate_sc(cp(w)), oracle::sc_degenerate(w)) << format_word(w);
}

TEST(C01, Values) {
    EXPECT_EQ(c01(cp({0, 1, 2})), 0);
    EXPECT_EQ(c01(cp({2, 1, 0})), 1);
    EXPECT_EQ(c01(cp({1, 2, 0})), 0);
    EXPECT_EQ(kind_of([] { c01(cp({0, 1})); }), ErrorKind::OutOfRange);
    for (const auto& t : enumerate_sc(2)) {
        auto w = t.word();
        std::reverse(w.begin(), w.end());
        EXPECT_NE(c01(t), c01(cp(w)));
        for (int r = 0; r < 3; ++r) {
            auto s = t.word();
            std::rotate(s.begin(), s.begin() + r, s.end());
            EXPECT_EQ(c01(cp(s)), c01(t));
        }
        EXPECT_EQ(c01(t), oracle::cyclically_ordered(t.word(), 0, 1, 2) ? 0 : 1);
    }
}

// ---------------------------------------------------------------------------
// Triple orders

TEST(TripleOrders, InducedBitsMatchOracle) {
    for (int k = 2; k <= 6; ++k)
        for (const auto& w : oracle::all_circular_permutations(k)) {
            auto T = TripleOrderFamily::induced_by(cp(w));
            for (int i = 0; i <= k; ++i)
                for (int j = i + 1; j <= k; ++j)
                    for (int l = j + 1; l <= k; ++l)
                        ASSERT_EQ(T.bit(i, j, l), oracle::cyclically_ordered(w, i, j, l) ? 0 : 1);
        }
}

TEST(TripleOrders, InsertionExtendRoundTrip) {
    for (int k = 2; k <= 6; ++k)
        for (const auto& t : enumerate_sc(k))
            ASSERT_EQ(insertion_extend(TripleOrderFamily::induced_by(t)), t);
}

TEST(TripleOrders, Examples) {
    TripleOrderFamily T2(2);
    T2.set(0, 1, 2, 0);
    EXPECT_EQ(insertion_extend(T2), cp({0, 1, 2}));
    T2.set(0, 1, 2, 1);
    EXPECT_EQ(insertion_extend(T2), cp({0, 2, 1}));

    // f_m is the bit of the triple missing m
    auto family = [](int f0, int f1, int f2, int f3) {
        TripleOrderFamily T(3);
        T.set(1, 2, 3, f0);
        T.set(0, 2, 3, f1);
        T.set(0, 1, 3, f2);
        T.set(0, 1, 2, f3);
        return T;
    };
    EXPECT_EQ(insertion_extend(family(1, 0, 0, 1)), cp({0, 2, 1, 3}));
    try {
        insertion_extend(family(0, 0, 0, 1));
        FAIL();
    } catch (const InconsistentTriples& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InconsistentTriples);
        EXPECT_EQ(e.quadruple(), (std::vector<int>{0, 1, 2, 3}));
    }
}

TEST(TripleOrders, ConsistentExactlyForCocycles) {
    // on the 3-simplex the families that extend are the cocycles f0 - f1 + f2 - f3 = 0
    int extendable = 0;
    for (int n = 0; n < 16; ++n) {
        int f[4] = {(n >> 3) & 1, (n >> 2) & 1, (n >> 1) & 1, n & 1};
        TripleOrderFamily T(3);
        T.set(1, 2, 3, f[0]);
        T.set(0, 2, 3, f[1]);
        T.set(0, 1, 3, f[2]);
        T.set(0, 1, 2, f[3]);
        bool cocycle = f[0] - f[1] + f[2] - f[3] == 0;
        try {
            auto t = insertion_extend(T);
            EXPECT_TRUE(cocycle);
            EXPECT_EQ(TripleOrderFamily::induced_by(t).bit(0, 1, 2), f[3]);
            ++extendable;
        } catch (const InconsistentTriples&) {
            EXPECT_FALSE(cocycle);
        }
    }
    EXPECT_EQ(extendable, 6);
}

TEST(TripleOrders, RandomInconsistentFamiliesReportAViolation) {
    gen::Rng rng(23);
    for (int t = 0; t < 300; ++t) {
        const int k = gen::uniform(rng, 3, 6);
        TripleOrderFamily T(k);
        for (int i = 0; i <= k; ++i)
            for (int j = i + 1; j <= k; ++j)
                for (int l = j + 1; l <= k; ++l)
                    T.set(i, j, l, gen::uniform(rng, 0, 1));
        try {
            auto c = insertion_extend(T);
            auto back = TripleOrderFamily::induced_by(c);
            for (int i = 0; i <= k; ++i)
                for (int j = i + 1; j <= k; ++j)
                    for (int l = j + 1; l <= k; ++l)
                        ASSERT_EQ(back.bit(i, j, l), T.bit(i, j, l));
        } catch (const InconsistentTriples& e) {
            // the four bits on the quadruple fail the cocycle condition
            auto q = e.quadruple();
            ASSERT_EQ(q.size(), 4u);
            int alt = T.bit(q[1], q[2], q[3]) - T.bit(q[0], q[2], q[3]) + T.bit(q[0], q[1], q[3]) -
                      T.bit(q[0], q[1], q[2]);
            EXPECT_NE(alt, 0);
        }
    }
}

// ---------------------------------------------------------------------------
// Kan lifting

TEST(Kan, DimensionTwoHasTwoLifts) {
    auto families = compatible_families(2);
    ASSERT_EQ(families.size(), 1u);
    EXPECT_EQ(kan_lifts(families[0]), (std::vector<CircularPermutation>{cp({0, 1, 2}), cp({0, 2, 1})}));
}

TEST(Kan, DimensionThree) {
    auto families = compatible_families(3);
    EXPECT_EQ(families.size(), 16u);
    int lifting = 0;
    for (const auto& f : families) {
        auto lifts = kan_lifts(f);
        EXPECT_LE(lifts.size(), 1u);
        lifting += int(lifts.size());
    }
    EXPECT_EQ(lifting, 6);
    EXPECT_EQ(kan_lifts(boundary_family(cp({0, 2, 1, 3}))), (std::vector<CircularPermutation>{cp({0, 2, 1, 3})}));
}

TEST(Kan, DimensionFourLiteralEnumeration) {
    const auto facets = enumerate_sc(3);
    ASSERT_EQ(facets.size(), 6u);
    std::set<std::vector<CircularPermutation>> compatible;
    std::vector<std::size_t> idx(5, 0);
    for (int n = 0; n < 6 * 6 * 6 * 6 * 6; ++n) {
        int m = n;
        std::vector<std::vector<int>> words;
        std::vector<CircularPermutation> fam;
        for (int i = 0; i < 5; ++i, m /= 6) {
            fam.push_back(facets[std::size_t(m % 6)]);
            words.push_back(fam.back().word());
        }
        bool ok = true;
        for (int j = 1; j <= 4 && ok; ++j)
            for (int i = 0; i < j && ok; ++i)
                ok = oracle::sc_face(words[std::size_t(j)], i) == oracle::sc_face(words[std::size_t(i)], j - 1);
        EXPECT_EQ(ok, is_compatible_family(fam));
        if (ok)
            compatible.insert(fam);
    }
    EXPECT_EQ(compatible.size(), 24u);
    auto found = compatible_families(4);
    EXPECT_EQ(std::set<std::vector<CircularPermutation>>(found.begin(), found.end()), compatible);
    for (const auto& fam : compatible) {
        auto lifts = kan_lifts(fam);
        ASSERT_EQ(lifts.size(), 1u);
        EXPECT_EQ(boundary_family(lifts[0]), fam);
    }
    for (const auto& t : enumerate_sc(4))
        EXPECT_TRUE(compatible.count(boundary_family(t)));
}

TEST(Kan, HigherDimensionsLiftUniquely) {
    for (int k = 5; k <= 6; ++k) {
        auto families = compatible_families(k);
        EXPECT_EQ(families.size(), enumerate_sc(k).size());
        for (const auto& f : families)
            ASSERT_EQ(kan_lifts(f).size(), 1u);
    }
}

TEST(Kan, Errors) {
    EXPECT_EQ(kind_of([] { kan_lifts({}); }), ErrorKind::IncompatibleFamily);
    const auto t = cp({0, 2, 1, 3, 4});
    for (const auto& other : enumerate_sc(3)) {
        auto fam = boundary_family(t);
        if (other == fam[0])
            continue;
        fam[0] = other;
        EXPECT_FALSE(is_compatible_family(fam));
        EXPECT_EQ(kind_of([&] { kan_lifts(fam); }), ErrorKind::IncompatibleFamily);
    }
    EXPECT_EQ(kind_of([] { kan_lifts({cp({0, 1}), cp({0, 1, 2})}); }), ErrorKind::IncompatibleFamily);
}

// ---------------------------------------------------------------------------
// Classical necklaces

TEST(Classical, Examples) {
    for (int k = 1; k <= 4; ++k)
        for (const auto& t : enumerate_sc(k))
            EXPECT_FALSE(is_classical_necklace(t.to_necklace()).classical);
    EXPECT_TRUE(is_classical_necklace(Necklace::from_colors({0, 1, 0, 1, 0, 1})).classical);
    auto blocks = is_classical_necklace(Necklace::from_colors({0, 0, 0, 1, 1, 1}));
    EXPECT_FALSE(blocks.classical);
    EXPECT_NE(blocks.reason.find("mixed"), std::string::npos);
}

TEST(Classical, CriterionMatchesAssembledTotalSpace) {
    int checked = 0, classical = 0;
    for (int colors = 1; colors <= 4; ++colors)
        for (int length = colors; length <= 8; ++length)
            for (const auto& w : surjective_words(colors, length)) {
                auto rot = least_rotation(w);
                if (rot != 0)
                    continue; // one representative per circular word
                auto n = Necklace::from_colors(colors, w);
                auto E = elementary_bundle(n).total;
                const bool want = oracle::is_simplicial_complex(E);
                ASSERT_EQ(is_classical_necklace(n).classical, want) << format_word(w);
                ASSERT_EQ(has_classical_one_skeleton(E).classical, want) << format_word(w);
                classical += want;
                ++checked;
            }
    EXPECT_GT(checked, 1000);
    EXPECT_GT(classical, 0);
}

// ---------------------------------------------------------------------------
// Normalized chains of SC

TEST(ScHomology, CountsAndGroups) {
    auto N = sc_normalized_chains(3);
    EXPECT_EQ(N.ranks(), (std::vector<int>{1, 0, 1, 2}));
    EXPECT_TRUE(N.boundary[3].is_zero());
    auto H = sc_normalized_homology(3);
    ASSERT_EQ(H.groups.size(), 3u);
    EXPECT_EQ(to_string(H[0]), "Z");
    EXPECT_EQ(to_string(H[1]), "0");
    EXPECT_EQ(to_string(H[2]), "Z");
    auto H4 = sc_normalized_homology(5);
    EXPECT_EQ(to_string(H4[3]), "0");
    EXPECT_EQ(to_string(H4[4]), "Z");
}

TEST(ScHomology, NonDegenerateCountsMatchOracle) {
    auto N = sc_normalized_chains(6);
    for (int k = 0; k <= 6; ++k) {
        int n = 0;
        for (const auto& w : oracle::all_circular_permutations(k))
            n += !oracle::sc_degenerate(w);
        EXPECT_EQ(N.ranks()[std::size_t(k)], n);
    }
}
