#pragma once

// Command-line driver. run() parses an argument vector, executes one
// subcommand and returns the process exit status:
//   0 ok, 1 a checked assertion failed, 2 usage error, 3.. domain errors (ErrorKind).

#include <algorithm>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bundle.hpp"
#include "complex.hpp"
#include "cyclic.hpp"
#include "error.hpp"
#include "homology.hpp"
#include "io.hpp"
#include "spindle.hpp"
#include "surfacegen.hpp"

namespace cbundle::cli {

/// Exit status for a failed check.
constexpr int kAssertionFailed = 1;
constexpr int kUsage = 2;

struct Report {
    json data = json::object();
    std::ostringstream text;
    bool ok = true;

    void check(const std::string& name, bool passed, const std::string& detail = {}) {
        data["checks"].push_back({{"name", name}, {"passed", passed}, {"detail", detail}});
        text << (passed ? "[pass] " : "[FAIL] ") << name;
        if (!detail.empty())
            text << ": " << detail;
        text << "\n";
        ok &= passed;
    }
};

inline std::string error_kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::Malformed: return "Malformed";
    case ErrorKind::FaceIdentity: return "FaceIdentity";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NotBinary: return "NotBinary";
    case ErrorKind::NotCocycle: return "NotCocycle";
    case ErrorKind::InconsistentTriples: return "InconsistentTriples";
    case ErrorKind::IncompatibleFamily: return "IncompatibleFamily";
    case ErrorKind::IncoherentLocalSystem: return "IncoherentLocalSystem";
    case ErrorKind::LastArc: return "LastArc";
    case ErrorKind::BeadNotFound: return "BeadNotFound";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::NotClosedSurface: return "NotClosedSurface";
    case ErrorKind::NonOrientable: return "NonOrientable";
    case ErrorKind::NotCohomologous: return "NotCohomologous";
    case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

// ---------------------------------------------------------------------------
// Report fragments

inline std::string counts_string(const std::vector<int>& counts) {
    std::string s = "(";
    for (std::size_t q = 0; q < counts.size(); ++q)
        s += (q ? ", " : "") + std::to_string(counts[q]);
    return s + ")";
}

inline json homology_json(const HomologyGroups& H) {
    json rows = json::array();
    for (std::size_t q = 0; q < H.groups.size(); ++q) {
        json torsion = json::array();
        for (const auto& t : H.groups[q].torsion)
            torsion.push_back(detail::integer_to_json(t));
        rows.push_back({{"dim", q}, {"betti", H.groups[q].betti}, {"torsion", torsion},
                        {"group", to_string(H.groups[q])}});
    }
    return rows;
}

inline std::string homology_string(const HomologyGroups& H) {
    std::string s;
    for (std::size_t q = 0; q < H.groups.size(); ++q)
        s += (q ? ", " : "") + std::string("H") + std::to_string(q) + " = " + to_string(H.groups[q]);
    return s;
}

inline std::string bits_string(const IntCochain& u) {
    std::string s;
    for (const auto& v : u.values)
        s += v.str();
    return s;
}

inline void describe_complex(Report& r, const std::string& key, const SemiSimplicialSet& X) {
    r.data[key] = {{"counts", X.counts()}, {"euler_characteristic", euler_characteristic(X)}};
    r.text << key << ": counts " << counts_string(X.counts()) << ", chi = " << euler_characteristic(X) << "\n";
}

inline void describe_orientation(Report& r, const FundamentalClass& fm) {
    r.data["orientation"] = {{"seed_triangle", fm.seed},
                             {"seed_sign", fm.sign(fm.seed)},
                             {"positive", fm.positive()},
                             {"negative", fm.negative()},
                             {"coefficients", fm.coefficients}};
    r.text << "orientation: fundamental class with sign " << (fm.sign(fm.seed) > 0 ? "+1" : "-1")
           << " on triangle " << fm.seed << " (" << fm.positive() << " positive, " << fm.negative()
           << " negative triangles)\n";
}

/// Fundamental class when B is a closed oriented surface.
inline std::optional<FundamentalClass> try_fundamental_class(const SemiSimplicialSet& B, int seed, int sign) {
    if (B.top_dim() != 2)
        return std::nullopt;
    try {
        return fundamental_class(B, seed, sign);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NotClosedSurface || e.kind() == ErrorKind::NonOrientable)
            return std::nullopt;
        throw;
    }
}

inline NecklaceLocalSystem load_bundle(const std::string& path) {
    return bundle_from_json(parse_json_text(read_file(path)));
}

inline HomologyGroups point_homology() {
    HomologyGroups H;
    H.groups.push_back({1, {}});
    return H;
}

/// Drops trailing zero groups so tables of different lengths compare.
inline HomologyGroups trimmed(HomologyGroups H) {
    while (H.groups.size() > 1 && H.groups.back() == HomologyGroup{})
        H.groups.pop_back();
    return H;
}

// ---------------------------------------------------------------------------
// Subcommands

inline void cmd_validate(Report& r, const std::string& input) {
    SemiSimplicialSet X = build_complex(input, false);
    describe_complex(r, "complex", X);
    auto report = validate_complex(X);
    r.data["problems"] = report.entries;
    json viol = json::array();
    for (const auto& v : report.face_violations)
        viol.push_back({{"simplex", to_string(v.simplex)}, {"i", v.i}, {"j", v.j}});
    r.data["face_violations"] = viol;
    for (const auto& e : report.entries)
        r.text << "  " << e << "\n";
    r.check("face identities", report.ok(),
            report.ok() ? "" : std::to_string(report.entries.size()) + " problem(s)");
}

inline void cmd_homology(Report& r, const std::string& input, const std::string& expect) {
    SemiSimplicialSet X = build_complex(input);
    describe_complex(r, "complex", X);
    auto H = homology_groups(X);
    r.data["homology"] = homology_json(H);
    r.text << homology_string(H) << "\n";
    if (!expect.empty()) {
        std::vector<std::string> want;
        std::stringstream ss(expect);
        for (std::string item; std::getline(ss, item, ',');) {
            item.erase(0, item.find_first_not_of(' '));
            item.erase(item.find_last_not_of(' ') + 1);
            want.push_back(item);
        }
        std::vector<std::string> got;
        for (const auto& g : H.groups)
            got.push_back(to_string(g));
        while (got.size() < want.size())
            got.push_back("0");
        bool match = true;
        for (std::size_t q = 0; q < got.size(); ++q)
            match &= got[q] == (q < want.size() ? want[q] : std::string("0"));
        r.check("homology matches " + expect, match);
    }
}

inline void cmd_hexagram(Report& r) {
    // simplices of SC through dimension 3
    json sc = json::array();
    r.text << "SC through dimension 3 (* = degenerate):\n";
    std::vector<int> nondeg;
    for (int k = 0; k <= 3; ++k) {
        int n = 0;
        r.text << "  dim " << k << ":";
        for (const auto& t : enumerate_sc(k)) {
            bool deg = is_degenerate_sc(t);
            n += deg ? 0 : 1;
            json faces = json::array();
            for (int i = 0; k > 0 && i <= k; ++i)
                faces.push_back(to_string(face_sc(t, i)));
            json row{{"dim", k}, {"word", to_string(t)}, {"degenerate", deg}, {"faces", faces}};
            if (k == 2)
                row["c01"] = c01(t);
            sc.push_back(row);
            r.text << " " << to_string(t) << (deg ? "*" : "");
        }
        nondeg.push_back(n);
        r.text << "\n";
    }
    r.data["sc"] = sc;
    r.data["nondegenerate_counts"] = nondeg;
    r.text << "non-degenerate counts: " << counts_string(nondeg) << "\n";

    // binary 2-cochains on the boundary of the 3-simplex
    const auto S = boundary_sphere(3);
    const auto D = standard_simplex(3);
    const auto fm = fundamental_class(S, top_face_id(3, 0), 1);
    describe_orientation(r, fm);
    r.text << " f0 f1 f2 f3 |  c | extension\n";
    json rows = json::array();
    int cocycles = 0;
    for (int n = 0; n < 16; ++n) {
        std::vector<int> f(4);
        IntCochain u = IntCochain::zero(S, 2);
        for (int i = 0; i < 4; ++i) {
            f[std::size_t(i)] = (n >> (3 - i)) & 1;
            u.values[std::size_t(top_face_id(3, i))] = f[std::size_t(i)];
        }
        const Integer c = chern_number(u, fm);
        json row{{"f", f}, {"chern", detail::integer_to_json(c)}};
        r.text << "  " << f[0] << "  " << f[1] << "  " << f[2] << "  " << f[3] << " | " << (c >= 0 ? " " : "")
               << c.str() << " |";
        IntCochain ud = IntCochain::zero(D, 2);
        ud.values = u.values;
        if (is_cocycle(D, ud)) {
            ++cocycles;
            auto M = minimal_from_cocycle(D, ud);
            auto t = M.circular({3, 0});
            json faces = json::array();
            r.text << " " << to_string(t) << " faces";
            for (int i = 0; i < 4; ++i) {
                // face i in the vertex labels of the 3-simplex
                std::vector<int> w;
                for (int letter : t.word())
                    if (letter != i)
                        w.push_back(letter);
                std::rotate(w.begin(), std::min_element(w.begin(), w.end()), w.end());
                faces.push_back(format_word(w));
                r.text << " " << format_word(w);
            }
            row["extension"] = to_string(t);
            row["extension_faces"] = faces;
        } else {
            row["extension"] = nullptr;
            r.text << " -";
        }
        r.text << "\n";
        rows.push_back(row);
    }
    r.data["cochains"] = rows;
    r.data["cocycles"] = cocycles;
    r.text << cocycles << " of 16 cochains are cocycles and extend over the 3-simplex\n";
}

inline IntCochain load_cochain(const SemiSimplicialSet& B, const std::string& file, const std::string& bits) {
    IntCochain u;
    if (!bits.empty()) {
        std::vector<int> b;
        for (char ch : bits) {
            require(ch == '0' || ch == '1', ErrorKind::NotBinary, "bits must be 0 or 1");
            b.push_back(ch - '0');
        }
        u = IntCochain::from_bits(2, b);
    } else {
        u = cochain_from_json(parse_json_text(read_file(file)));
    }
    require_on(B, u);
    return u;
}

inline void write_bundle(Report& r, const NecklaceLocalSystem& L, const std::string& out) {
    if (out.empty())
        return;
    write_file(out, bundle_to_json(L).dump(2) + "\n");
    r.data["written"] = out;
    r.text << "wrote " << out << "\n";
}

inline void describe_stalks(Report& r, const NecklaceLocalSystem& L) {
    json stalks = json::object();
    const auto& B = L.base();
    for (int q = 0; q <= B.top_dim(); ++q)
        for (int id = 0; id < B.count(q); ++id)
            stalks[to_string(SimplexRef{q, id})] = to_string(L.stalk({q, id}).canonical());
    r.data["stalks"] = stalks;
    for (int id = 0; B.top_dim() >= 2 && id < B.count(2); ++id)
        r.text << "  stalk 2/" << id << " = " << to_string(L.stalk({2, id}).canonical()) << "\n";
}

inline void cmd_extend(Report& r, const std::string& base, const std::string& cocycle, const std::string& bits,
                       const std::string& out) {
    auto B = build_complex(base);
    describe_complex(r, "base", B);
    auto u = load_cochain(B, cocycle, bits);
    r.data["cocycle"] = cochain_to_json(u);
    r.text << "cocycle: " << bits_string(u) << "\n";
    auto M = minimal_from_cocycle(B, u);
    describe_stalks(r, M.local_system());
    r.check("chern cocycle of the result is the input", chern_cocycle(M) == u);
    write_bundle(r, M.local_system(), out);
}

inline ArcSelection load_selection(const NecklaceLocalSystem& L, const std::string& path) {
    if (path.empty())
        return ArcSelection::first_beads(L);
    return selection_from_json(parse_json_text(read_file(path)), L);
}

inline void cmd_chern(Report& r, const std::string& bundle, const std::string& select, std::optional<int> seed,
                      std::optional<int> sign, const std::string& out) {
    auto L = load_bundle(bundle);
    describe_complex(r, "base", L.base());
    auto M = L.is_minimal() ? MinimalBundle(L) : minimize(L, load_selection(L, select));
    auto u = chern_cocycle(M);
    r.data["minimal_input"] = L.is_minimal();
    r.data["cocycle"] = cochain_to_json(u);
    r.text << "chern cocycle: " << bits_string(u) << (L.is_minimal() ? "" : " (after minimizing)") << "\n";
    std::optional<FundamentalClass> fm;
    if (seed || sign)
        fm = fundamental_class(L.base(), seed.value_or(0), sign.value_or(1));
    else
        fm = try_fundamental_class(L.base(), 0, 1);
    if (fm) {
        describe_orientation(r, *fm);
        auto c = chern_number(u, *fm);
        r.data["chern_number"] = detail::integer_to_json(c);
        r.text << "chern number: " << c.str() << "\n";
    }
    if (!out.empty()) {
        write_file(out, cochain_to_json(u).dump(2) + "\n");
        r.data["written"] = out;
        r.text << "wrote " << out << "\n";
    }
}

inline void cmd_minimize(Report& r, const std::string& bundle, const std::string& select, const std::string& out) {
    auto L = load_bundle(bundle);
    describe_complex(r, "base", L.base());
    auto sel = load_selection(L, select);
    json kept = json::object();
    for (int v = 0; v < L.base().count(0); ++v)
        kept[std::to_string(v)] = bead_index(L, {0, v}, sel.kept[std::size_t(v)]);
    r.data["selection"] = kept;
    auto M = minimize(L, sel);
    describe_stalks(r, M.local_system());
    r.data["cocycle"] = cochain_to_json(chern_cocycle(M));
    r.text << "chern cocycle: " << bits_string(chern_cocycle(M)) << "\n";
    write_bundle(r, M.local_system(), out);
}

inline void cmd_gen_surface(Report& r, const std::string& base, long c, int seed, int sign,
                            std::optional<std::uint64_t> shuffle, bool verify, const std::string& out) {
    auto T = build_complex(base);
    describe_complex(r, "base", T);
    auto fm = fundamental_class(T, seed, sign);
    describe_orientation(r, fm);
    auto data = parity_check(T, fm);
    r.data["bound"] = data.chern_bound();
    r.text << "bound: |c| <= " << data.chern_bound() << "\n";
    auto u = cocycle_for_chern(T, fm, c, shuffle);
    r.data["cocycle"] = cochain_to_json(u);
    r.text << "cocycle: " << bits_string(u) << "\n";
    auto M = minimal_from_cocycle(T, u);
    r.check("chern number " + std::to_string(c), chern_number(chern_cocycle(M), fm) == c);
    if (verify) {
        auto A = assemble(M);
        describe_complex(r, "total", A.total);
        auto H = homology_groups(A.total);
        r.data["homology"] = homology_json(H);
        r.text << homology_string(H) << "\n";
        r.check("circle bundle homology", H == expected_circle_bundle_homology(surface_genus(T), c),
                homology_string(expected_circle_bundle_homology(surface_genus(T), c)));
    }
    write_bundle(r, M.local_system(), out);
}

inline void cmd_assemble(Report& r, const std::string& bundle, const std::string& out) {
    auto L = load_bundle(bundle);
    describe_complex(r, "base", L.base());
    auto A = assemble(L);
    describe_complex(r, "total", A.total);
    if (!out.empty()) {
        write_file(out, total_space_to_json(A).dump() + "\n");
        r.data["written"] = out;
        r.text << "wrote " << out << "\n";
    }
}

inline void cmd_kan_check(Report& r, int k) {
    require(k >= 1, ErrorKind::OutOfRange, "kan-check: k must be >= 1");
    require(k <= sc_max_k(), ErrorKind::BoundExceeded,
            "kan-check: k=" + std::to_string(k) + " exceeds SC_MAX_K=" + std::to_string(sc_max_k()));
    const auto facets = enumerate_sc(k - 1);
    Integer tuples = 1;
    for (int i = 0; i <= k; ++i)
        tuples *= int(facets.size());
    auto families = compatible_families(k);
    std::map<std::size_t, int> histogram; // lift count -> families
    for (const auto& f : families)
        ++histogram[kan_lifts(f).size()];
    const bool unique = histogram.size() == 1 && histogram.begin()->first == 1;
    json hist = json::object();
    for (auto [lifts, n] : histogram)
        hist[std::to_string(lifts)] = n;
    r.data["k"] = k;
    r.data["facet_tuples"] = detail::integer_to_json(tuples);
    r.data["compatible_families"] = families.size();
    r.data["lift_histogram"] = hist;
    r.data["all_uniquely_liftable"] = unique;
    r.text << "facet tuples: " << tuples.str() << "\n";
    r.text << "compatible families: " << families.size() << "; all uniquely liftable: " << (unique ? "yes" : "no")
           << "\n";
    for (auto [lifts, n] : histogram)
        r.text << "  " << n << " famil" << (n == 1 ? "y" : "ies") << " with " << lifts << " lift"
               << (lifts == 1 ? "" : "s") << "\n";
}

inline void cmd_verify(Report& r, const std::string& bundle, const std::string& select) {
    auto L = load_bundle(bundle);
    const auto& B = L.base();
    describe_complex(r, "base", B);
    r.check("local system coherent", local_system_problems(L).empty());
    auto A = assemble(L);
    describe_complex(r, "total", A.total);
    r.check("total space face identities", validate_complex(A.total).ok());
    r.check("euler characteristic 0", euler_characteristic(A.total) == 0,
            "chi = " + std::to_string(euler_characteristic(A.total)));
    auto nat = naturality_problems(A.total, B, A.projection);
    r.check("projection natural", nat.empty(), nat.empty() ? "" : nat.front());
    bool stalks_ok = true;
    for (int q = 0; q <= B.top_dim() && stalks_ok; ++q)
        for (int id = 0; id < B.count(q) && stalks_ok; ++id) {
            auto w = necklace_from_total_space(A.total, A.projection, {q, id});
            stalks_ok = Necklace::from_colors(q + 1, w).same_word(L.stalk({q, id}));
        }
    r.check("fibers recover the stalks", stalks_ok);
    auto M = L.is_minimal() ? MinimalBundle(L) : minimize(L, load_selection(L, select));
    auto u = chern_cocycle(M);
    r.data["cocycle"] = cochain_to_json(u);
    r.check("chern cochain is a cocycle", is_cocycle(B, u), bits_string(u));
    auto cls = is_classical_bundle(L);
    r.data["classical"] = cls.classical;
    r.text << "classical 1-skeleton: " << (cls.classical ? "yes" : "no") << (cls.reason.empty() ? "" : " (")
           << cls.reason << (cls.reason.empty() ? "" : ")") << "\n";
    auto H = homology_groups(A.total);
    r.data["homology"] = homology_json(H);
    r.text << homology_string(H) << "\n";
    if (auto fm = try_fundamental_class(B, 0, 1)) {
        describe_orientation(r, *fm);
        const long c = static_cast<long>(chern_number(u, *fm));
        r.data["chern_number"] = c;
        auto want = expected_circle_bundle_homology(surface_genus(B), c);
        r.check("circle bundle homology for c = " + std::to_string(c), H == want, homology_string(want));
    } else if (trimmed(homology_groups(B)) == point_homology()) {
        HomologyGroups circle = point_homology();
        circle.groups.push_back({1, {}});
        r.check("acyclic base gives circle homology", trimmed(H) == circle, homology_string(circle));
    }
}

// ---------------------------------------------------------------------------

/// Runs one command line (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Triangulated circle bundles over semi-simplicial bases"};
    app.name("cbundle");
    app.require_subcommand(1);
    bool as_json = false;
    app.add_flag("--json", as_json, "Print the report as JSON");

    std::string input, expect, base, cocycle, bits, out_path, select;
    std::optional<int> seed_triangle, seed_sign;
    std::optional<std::uint64_t> shuffle;
    long chern = 0;
    int k = 0;
    bool verify = false;

    auto* validate = app.add_subcommand("validate", "Check the face identities of a complex");
    validate->add_option("complex", input, "Complex file or built-in name")->required();
    auto* homology = app.add_subcommand("homology", "Integer homology of a complex");
    homology->add_option("complex", input, "Complex file or built-in name")->required();
    homology->add_option("--expect", expect, "Comma separated groups to assert, e.g. \"Z,Z/3,0,Z\"");
    auto* hexagram = app.add_subcommand("hexagram", "SC through dimension 3 and the binary cochains on the tetrahedron");
    auto* extend = app.add_subcommand("extend", "Minimal bundle from a binary 2-cocycle");
    extend->add_option("--base", base, "Base complex file or built-in name")->required();
    auto* cocycle_opt = extend->add_option("--cocycle", cocycle, "Cochain file");
    auto* bits_opt = extend->add_option("--bits", bits, "Cochain values by triangle id, e.g. 0110");
    cocycle_opt->excludes(bits_opt);
    extend->add_option("--out", out_path, "Bundle file to write");
    auto* chern_cmd = app.add_subcommand("chern", "Chern cocycle and number of a bundle");
    chern_cmd->add_option("bundle", input, "Bundle file")->required();
    chern_cmd->add_option("--select", select, "Selection file for non-minimal bundles");
    chern_cmd->add_option("--seed-triangle", seed_triangle, "Triangle fixing the orientation");
    chern_cmd->add_option("--seed-sign", seed_sign, "Its sign, +1 or -1");
    chern_cmd->add_option("--out", out_path, "Cochain file to write");
    auto* minimize_cmd = app.add_subcommand("minimize", "Reduce a bundle to a minimal one");
    minimize_cmd->add_option("bundle", input, "Bundle file")->required();
    minimize_cmd->add_option("--select", select, "Selection file");
    minimize_cmd->add_option("--out", out_path, "Bundle file to write");
    auto* gen = app.add_subcommand("gen-surface", "Minimal bundle with given Chern number over a surface");
    gen->add_option("--base", base, "Surface file or built-in name")->required();
    gen->add_option("--chern", chern, "Chern number")->required();
    gen->add_option("--seed-triangle", seed_triangle, "Triangle fixing the orientation");
    gen->add_option("--seed-sign", seed_sign, "Its sign, +1 or -1");
    gen->add_option("--shuffle", shuffle, "Seed for a random placement of the ones");
    gen->add_flag("--verify", verify, "Assemble and check the total space homology");
    gen->add_option("--out", out_path, "Bundle file to write");
    auto* assemble_cmd = app.add_subcommand("assemble", "Total space with its projection table");
    assemble_cmd->add_option("bundle", input, "Bundle file")->required();
    assemble_cmd->add_option("--out", out_path, "Total space file to write");
    auto* kan = app.add_subcommand("kan-check", "Count lifts of facet families of the k-simplex into SC");
    kan->add_option("k", k, "Dimension")->required();
    auto* verify_cmd = app.add_subcommand("verify", "Run the invariant suite on a bundle");
    verify_cmd->add_option("bundle", input, "Bundle file")->required();
    verify_cmd->add_option("--select", select, "Selection file for non-minimal bundles");

    for (auto* sub : app.get_subcommands({}))
        sub->add_flag("--json", as_json, "Print the report as JSON");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "cbundle: " << e.what() << "\n";
        return kUsage;
    }

    Report r;
    std::string command = app.get_subcommands().front()->get_name();
    r.data["command"] = command;
    r.data["args"] = args;
    try {
        if (validate->parsed())
            cmd_validate(r, input);
        else if (homology->parsed())
            cmd_homology(r, input, expect);
        else if (hexagram->parsed())
            cmd_hexagram(r);
        else if (extend->parsed()) {
            if (cocycle.empty() && bits.empty()) {
                err << "cbundle extend: one of --cocycle or --bits is required\n";
                return kUsage;
            }
            cmd_extend(r, base, cocycle, bits, out_path);
        } else if (chern_cmd->parsed())
            cmd_chern(r, input, select, seed_triangle, seed_sign, out_path);
        else if (minimize_cmd->parsed())
            cmd_minimize(r, input, select, out_path);
        else if (gen->parsed())
            cmd_gen_surface(r, base, chern, seed_triangle.value_or(0), seed_sign.value_or(1), shuffle, verify,
                            out_path);
        else if (assemble_cmd->parsed())
            cmd_assemble(r, input, out_path);
        else if (kan->parsed())
            cmd_kan_check(r, k);
        else if (verify_cmd->parsed())
            cmd_verify(r, input, select);
    } catch (const Error& e) {
        if (as_json)
            out << json{{"command", command},
                        {"error", error_kind_name(e.kind())},
                        {"message", e.what()},
                        {"exit_code", e.exit_code()}}
                       .dump(2)
                << "\n";
        err << "cbundle " << command << ": " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
        return e.exit_code();
    }
    r.data["ok"] = r.ok;
    if (as_json)
        out << r.data.dump(2) << "\n";
    else
        out << r.text.str();
    return r.ok ? 0 : kAssertionFailed;
}

} // namespace cbundle::cli
