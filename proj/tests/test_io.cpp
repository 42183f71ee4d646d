#include <gtest/gtest.h>

#include <filesystem>

#include <cbundle/io.hpp>

#include "generators.hpp"

using namespace cbundle;

namespace {

template <class F>
ErrorKind kind_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return ErrorKind::Internal;
}

json edge_bundle(const std::string& top) {
    auto j = parse_json_text(R"j({"base": {"dims": [2, 1], "faces": {"1": [[1, 0]]}},
                                   "stalks": {"0/0": "(0)", "0/1": "(0)"}})j");
    j["stalks"]["1/0"] = top;
    return j;
}

} // namespace

TEST(Io, CochainRoundTrip) {
    IntCochain u{2, {0, 1, -3, Integer("123456789012345678901234567890")}};
    auto j = cochain_to_json(u);
    EXPECT_TRUE(j["values"][3].is_string());
    EXPECT_EQ(cochain_from_json(j), u);
    EXPECT_EQ(cochain_from_json(parse_json_text(j.dump())), u);
    EXPECT_EQ(kind_of([] { cochain_from_json(parse_json_text(R"({"dim": 2, "values": [0.5]})")); }),
              ErrorKind::Malformed);
    EXPECT_EQ(kind_of([] { cochain_from_json(parse_json_text(R"({"values": [1]})")); }), ErrorKind::Malformed);
}

TEST(Io, MinimalBundleOmitsBeadMaps) {
    auto M = minimal_from_cocycle(boundary_sphere(3), IntCochain::from_bits(2, {0, 1, 1, 0}));
    auto j = bundle_to_json(M.local_system());
    EXPECT_FALSE(j.contains("bead_maps"));
    EXPECT_EQ(j["stalks"]["0/0"], "(0)");
    EXPECT_EQ(j["stalks"]["2/1"], "(0 2 1)");
    auto back = bundle_from_json(parse_json_text(j.dump()));
    EXPECT_EQ(MinimalBundle(back), M);
}

TEST(Io, BundleRoundTrip) {
    gen::Rng rng(211);
    for (int trial = 0; trial < 80; ++trial) {
        auto L = gen::random_bundle(rng);
        auto j = bundle_to_json(L);
        EXPECT_EQ(j.contains("bead_maps"), !L.is_minimal());
        auto back = bundle_from_json(parse_json_text(j.dump()));
        EXPECT_TRUE(equivalent(L, back));
        EXPECT_EQ(bundle_to_json(back).dump(), j.dump());
    }
}

TEST(Io, SymmetricStalksNeedBeadMaps) {
    auto j = edge_bundle("(0 1 0 1)");
    j["stalks"]["0/0"] = "(0 0)";
    j["stalks"]["0/1"] = "(0 0)";
    EXPECT_EQ(kind_of([&] { bundle_from_json(j); }), ErrorKind::Malformed);
    j["bead_maps"] = {{"1/0/0", {1, 3}}, {"1/0/1", {0, 2}}};
    auto L = bundle_from_json(j);
    EXPECT_EQ(L.stalk({1, 0}).colors(), (std::vector<int>{0, 1, 0, 1}));
    j["bead_maps"]["1/0/1"] = {1, 3};
    EXPECT_EQ(kind_of([&] { bundle_from_json(j); }), ErrorKind::IncoherentLocalSystem);
}

TEST(Io, MalformedBundles) {
    EXPECT_NO_THROW(bundle_from_json(edge_bundle("(0 1)")));
    // stalk is not delete_color of its coface
    auto doubled = edge_bundle("(0 0 1)");
    EXPECT_EQ(kind_of([&] { bundle_from_json(doubled); }), ErrorKind::IncoherentLocalSystem);
    auto missing = edge_bundle("(0 1)");
    missing["stalks"].erase("0/1");
    EXPECT_EQ(kind_of([&] { bundle_from_json(missing); }), ErrorKind::Malformed);
    auto extra = edge_bundle("(0 1)");
    extra["stalks"]["2/0"] = "(0 1 2)";
    EXPECT_EQ(kind_of([&] { bundle_from_json(extra); }), ErrorKind::Malformed);
    auto colors = edge_bundle("(0 2)");
    EXPECT_EQ(kind_of([&] { bundle_from_json(colors); }), ErrorKind::Malformed);
    auto maps = edge_bundle("(0 1)");
    maps["bead_maps"] = {{"1/0/0", {0, 1}}, {"1/0/1", {0}}};
    EXPECT_EQ(kind_of([&] { bundle_from_json(maps); }), ErrorKind::Malformed);
    maps["bead_maps"] = {{"1/0/0", {5}}, {"1/0/1", {0}}};
    EXPECT_EQ(kind_of([&] { bundle_from_json(maps); }), ErrorKind::Malformed);
    EXPECT_EQ(kind_of([] { bundle_from_json(parse_json_text("[]")); }), ErrorKind::Malformed);
}

TEST(Io, TotalSpaceRoundTrip) {
    gen::Rng rng(223);
    for (int trial = 0; trial < 20; ++trial) {
        auto L = gen::random_bundle(rng);
        auto A = assemble(L);
        auto j = parse_json_text(total_space_to_json(A).dump());
        auto total = complex_from_json(j);
        EXPECT_EQ(total, A.total);
        auto P = projection_from_json(j, total);
        ASSERT_EQ(P.cells.size(), A.projection.cells.size());
        for (std::size_t p = 0; p < P.cells.size(); ++p)
            EXPECT_EQ(P.cells[p], A.projection.cells[p]);
        EXPECT_TRUE(naturality_problems(total, L.base(), P).empty());
    }
    auto A = assemble(elementary_local_system(Necklace::from_colors(2, {0, 1})));
    auto j = total_space_to_json(A);
    j["projection"]["1"].erase(0);
    EXPECT_EQ(kind_of([&] { projection_from_json(j, A.total); }), ErrorKind::Malformed);
}

TEST(Io, Selections) {
    auto L = elementary_local_system(Necklace::from_colors(2, {0, 0, 1, 1, 1}));
    // bead positions follow the written (least-rotation) stalk strings
    auto back = bundle_from_json(bundle_to_json(L));
    auto sel = selection_from_json(parse_json_text(R"({"1": 2})"), back);
    EXPECT_EQ(sel.kept[0], back.stalk({0, 0}).at(0).id);
    EXPECT_EQ(sel.kept[1], back.stalk({0, 1}).at(2).id);
    EXPECT_EQ(kind_of([&] { selection_from_json(parse_json_text(R"({"2": 0})"), back); }), ErrorKind::OutOfRange);
    EXPECT_EQ(kind_of([&] { selection_from_json(parse_json_text(R"({"x": 0})"), back); }), ErrorKind::OutOfRange);
    EXPECT_EQ(kind_of([&] { selection_from_json(parse_json_text(R"({"0": 2})"), back); }), ErrorKind::BeadNotFound);
    EXPECT_EQ(kind_of([&] { selection_from_json(parse_json_text(R"({"0": "a"})"), back); }), ErrorKind::Malformed);
}

TEST(Io, BuildComplexDescriptors) {
    EXPECT_EQ(build_complex("tetra"), boundary_sphere(3));
    EXPECT_EQ(build_complex(complex_to_json(delta_torus()).dump()), delta_torus());
    auto path = (std::filesystem::temp_directory_path() / "cbundle_io_test_complex.json").string();
    write_file(path, complex_to_json(octahedron_sphere()).dump(2));
    EXPECT_EQ(build_complex(path), octahedron_sphere());
    std::filesystem::remove(path);
    EXPECT_EQ(kind_of([&] { build_complex(path); }), ErrorKind::Malformed);
    EXPECT_EQ(kind_of([] { build_complex(R"({"dims": [1, 1], "faces": {"1": [[0, 3]]}})"); }), ErrorKind::Malformed);
    EXPECT_NO_THROW(build_complex(R"({"dims": [3, 3, 1], "faces": {"1": [[1,0],[2,0],[2,1]], "2": [[2,0,0]]}})", false));
}
