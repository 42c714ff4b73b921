// End to end acceptance suite.  Prints one PASS/FAIL line per criterion and
// exits nonzero if any fail.  Everything is exact; there are no tolerances.

#include <lefrank/lefrank.hpp>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace lefrank;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void criterion(int n, const std::string& what, const std::function<bool()>& body) {
    bool ok = false;
    std::string note;
    try {
        ok = body();
    } catch (const std::exception& e) {
        note = e.what();
    }
    if (!ok) ++g_failures;
    std::cout << "criterion " << n << ": " << (ok ? "PASS" : "FAIL") << " - " << what;
    if (!ok && !note.empty()) std::cout << " (" << note << ")";
    std::cout << "\n";
}

bool expect(bool cond, const char* msg) {
    if (!cond) throw internal_error(msg);
    return true;
}

// ---- shared fixtures ----------------------------------------------------

SymplecticData ring_fixture(const std::string& name, const std::string& expr) {
    SymplecticData s;
    if (name == "cp1" || name == "cp2" || name == "cp3")
        s.ring = projective_space(name[2] - '0');
    else if (name == "t2")
        s.ring = torus(2);
    else if (name == "t4")
        s.ring = torus(4);
    else
        s.ring = chevalley_eilenberg(*catalog_builtin_algebra(name));
    s.omega = resolve_class(s.ring, expr).second;
    return s;
}

std::vector<BModule> module_fixtures() {
    std::vector<BModule> out;
    out.push_back(BModule{});
    for (int d = 0; d <= 4; ++d) out.push_back(irreducible_g(d).b);
    out.push_back(trivial_bmodule(-2, 3));
    out.push_back(tensor(irreducible_g(1).b, irreducible_g(1).b));
    out.push_back(lefschetz_bmodule(ring_fixture("t2", "e12")));
    out.push_back(lefschetz_bmodule(ring_fixture("t4", "e12+e34")));
    out.push_back(lefschetz_bmodule(ring_fixture("kodaira-thurston", "e14+e23")));
    out.push_back(lefschetz_bmodule(ring_fixture("filiform6", "e16+c2_2")));
    out.push_back(lefschetz_bmodule(ring_fixture("biheisenberg6", "e13+e25+e46")));
    for (int n = 1; n <= 4; ++n) {
        CohomologyRing r = projective_space(n);
        out.push_back(lefschetz_bmodule(r, resolve_class(r, "h").second));
    }
    out.push_back(blowup_bmodule(ring_fixture("kodaira-thurston", "e14+e23"), 5, 3));
    out.push_back(blowup_bmodule(ring_fixture("t2", "e12"), 3, 2));
    return out;
}

bool filtration_is_sound(const BModule& v) {
    CanonicalFiltration f = canonical_filtration(v);
    expect(check_axioms(v, f).ok, "axioms fail");
    MultiplicityTable t = filtration_dims(v);
    for (int m = f.scan_lo - 1; m <= f.scan_hi + 1; ++m) {
        expect(t.level_total(m) == f.total_dim_at(m), "level totals disagree");
        for (const auto& [k, n] : v.space.dims)
            expect(t.level_dim_at(m, k) == static_cast<int>(f.dim_at(m, k)),
                   "weight dims disagree");
    }
    return true;
}

// ---- subspace embeddings for the compatibility laws ---------------------

VectorQ embed_left(const VectorQ& x, size_t right) {
    VectorQ v = x;
    v.resize(x.size() + right);
    return v;
}

VectorQ embed_right(const VectorQ& y, size_t left) {
    VectorQ v(left + y.size());
    for (size_t j = 0; j < y.size(); ++j) v[left + j] = y[j];
    return v;
}

Subspace embed_sum(const Subspace& a, const Subspace& b) {
    std::vector<VectorQ> rows;
    for (size_t i = 0; i < a.dim(); ++i)
        rows.push_back(embed_left(a.basis().row(i), b.ambient_dim()));
    for (size_t i = 0; i < b.dim(); ++i)
        rows.push_back(embed_right(b.basis().row(i), a.ambient_dim()));
    return Subspace::span(a.ambient_dim() + b.ambient_dim(), MatrixQ::from_rows(rows));
}

// ---- cli helpers --------------------------------------------------------

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(LEFRANK_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    RunResult res;
    if (!pipe) return res;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        res.out.append(buf.data(), n);
    int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

fs::path work_dir() {
    fs::path d = fs::temp_directory_path() / "lefrank-acceptance";
    fs::create_directories(d);
    return d;
}

std::string prepared_ring(const std::string& catalog_name, const std::string& define) {
    fs::path lie = work_dir() / (catalog_name + ".json");
    fs::path ring = work_dir() / (catalog_name + "_ring.json");
    std::ofstream(lie) << run_cli("catalog get " + catalog_name).out;
    std::ofstream(ring) << run_cli("ce " + lie.string() + " --define " + define).out;
    return ring.string();
}

}  // namespace

// ---- criteria -----------------------------------------------------------

static bool c1_filtration_axioms() {
    for (const BModule& v : module_fixtures()) filtration_is_sound(v);
    int built = 0;
    const std::array<std::pair<int, int>, 4> shapes{{{4, 2}, {6, 1}, {2, 3}, {8, 1}}};
    for (unsigned seed = 0; seed < 50; ++seed)
        for (const auto& [span, maxdim] : shapes) {
            BModule v = random_bmodule(seed * 7 + span, span, maxdim);
            expect(v.space.total_dim() <= 10, "random module too large");
            expect(v.space.is_zero() ||
                       v.max_weight() - v.min_weight() <= 8,
                   "random weight span too large");
            filtration_is_sound(v);
            ++built;
        }
    return expect(built >= 200, "not enough random modules");
}

static bool c2_compatibility_laws() {
    int pairs = 0;
    for (unsigned seed = 0; seed < 100; ++seed) {
        BModule v = random_bmodule(seed, 3, 1);
        BModule w = random_bmodule(seed + 1000, 3, 1);
        CanonicalFiltration fv = canonical_filtration(v);
        CanonicalFiltration fw = canonical_filtration(w);

        // dual: level m annihilates everything below level -m
        BModule dv = dual(v);
        CanonicalFiltration fd = canonical_filtration(dv);
        if (!v.space.is_zero()) {
            expect(fd.lo == -fv.hi && fd.hi == -fv.lo, "dual saturation window");
            for (int m = fd.scan_lo; m <= fd.scan_hi; ++m)
                for (const auto& [k, s] : fd.at(m))
                    expect(s == annihilator(fv.at(-m - 1).at(-k)), "dual level");
        }

        // direct sum: levels add blockwise
        BModule sm = direct_sum(v, w);
        CanonicalFiltration fs = canonical_filtration(sm);
        for (int m = fs.scan_lo; m <= fs.scan_hi; ++m)
            for (const auto& [k, s] : fs.at(m)) {
                Subspace va = v.dim_at(k) > 0 ? fv.at(m).at(k) : Subspace(0);
                Subspace wa = w.dim_at(k) > 0 ? fw.at(m).at(k) : Subspace(0);
                expect(s == embed_sum(va, wa), "direct sum level");
            }

        // tensor: levels convolve over the block layout
        BModule tn = tensor(v, w);
        CanonicalFiltration ft = canonical_filtration(tn);
        std::map<int, std::vector<TensorBlock>> blocks = tensor_blocks(v, w);
        for (int m = ft.scan_lo; m <= ft.scan_hi; ++m)
            for (const auto& [k, s] : ft.at(m)) {
                std::vector<VectorQ> rows;
                for (const auto& blk : blocks.at(k)) {
                    int db = w.dim_at(blk.b);
                    for (int p = fv.scan_lo; p <= fv.scan_hi; ++p) {
                        const Subspace& va = fv.at(p).at(blk.a);
                        const Subspace& wb = fw.at(m - p).at(blk.b);
                        for (size_t i = 0; i < va.dim(); ++i)
                            for (size_t j = 0; j < wb.dim(); ++j) {
                                VectorQ row(tn.dim_at(k));
                                for (int x = 0; x < v.dim_at(blk.a); ++x)
                                    for (int y = 0; y < db; ++y)
                                        row[blk.offset + x * db + y] =
                                            va.basis().at(i, x) * wb.basis().at(j, y);
                                rows.push_back(row);
                            }
                    }
                }
                Subspace expected =
                    rows.empty() ? Subspace(static_cast<size_t>(tn.dim_at(k)))
                                 : Subspace::span(tn.dim_at(k), MatrixQ::from_rows(rows));
                expect(s == expected, "tensor level");
            }

        // shift: levels translate with the weights
        for (int sft : {-1, 2}) {
            BModule sh = shift(v, sft);
            CanonicalFiltration fsh = canonical_filtration(sh);
            if (!v.space.is_zero())
                expect(fsh.lo == fv.lo + sft && fsh.hi == fv.hi + sft, "shift window");
            for (int m = fv.scan_lo; m <= fv.scan_hi; ++m)
                for (const auto& [k, s] : fv.at(m))
                    expect(fsh.at(m + sft).at(k + sft) == s, "shift level");
        }
        ++pairs;
    }
    return expect(pairs >= 100, "not enough pairs");
}

static bool c3_hom_preservation() {
    int homs = 0;
    for (unsigned seed = 0; seed < 60; ++seed) {
        BModule v = random_bmodule(seed + 5000, 4, 1);
        BModule w = random_bmodule(seed + 6000, 4, 1);
        CanonicalFiltration fv = canonical_filtration(v);
        CanonicalFiltration fw = canonical_filtration(w);
        for (int s : {0, -1, -2, 1, 2}) {
            std::vector<GradedHom> basis = equivariant_hom_basis(v, w, s);
            size_t used = 0;
            for (const auto& phi : basis) {
                if (++used > 4) break;
                if (s == 0)
                    expect(is_bhom(phi).ok, "hom basis element fails to commute");
                else
                    expect(is_shifted_equivariant(phi, -s).ok,
                           "shifted basis element fails to commute");
                for (int m = fv.scan_lo; m <= fv.scan_hi; ++m)
                    for (const auto& [k, sub] : fv.at(m)) {
                        if (w.dim_at(k + s) == 0) continue;
                        Subspace img = image_of(phi.map_at(k), sub);
                        expect(contains(fw.at(m + s).at(k + s), img),
                               "hom does not preserve the filtration");
                    }
                ++homs;
            }
        }
    }
    return expect(homs >= 100, "not enough homs");
}

static bool c4_saturation_equivalence() {
    for (const BModule& v : module_fixtures()) {
        CanonicalFiltration f = canonical_filtration(v);
        for (int m = f.scan_lo - 1; m <= f.scan_hi + 1; ++m)
            expect(rank_saturated_at(v, m) ==
                       (f.total_dim_at(m) == v.space.total_dim()),
                   "saturation tests disagree");
    }
    return true;
}

static bool c5_nilmanifold_fixture() {
    SymplecticData s = ring_fixture("kodaira-thurston", "e14+e23");
    std::vector<int> betti;
    for (int d = 0; d <= 4; ++d) betti.push_back(s.ring.betti_at(d));
    expect(betti == std::vector<int>{1, 3, 4, 3, 1}, "betti numbers");
    expect(!hard_lefschetz(s), "hard verdict");
    expect(weak_lefschetz(s), "weak verdict");
    BModule m = lefschetz_bmodule(s);
    expect(rank(m.e_at(1)) == 2, "rank of the degree one raising map");
    CanonicalFiltration f = canonical_filtration(m);
    expect(f.lo == 1 && f.hi == 3, "saturation window");
    expect(f.total_dim_at(0) == 0 && f.total_dim_at(1) == 1 &&
               f.total_dim_at(2) == 11 && f.total_dim_at(3) == 12,
           "level totals");
    MultiplicityTable t = filtration_dims(m);
    expect(t.count(1, 0) == 1 && t.count(2, 0) == 3 && t.count(2, 1) == 2 &&
               t.count(2, 2) == 1 && t.count(3, 0) == 1,
           "multiplicities");
    return true;
}

static bool c6_projective_fixture() {
    for (int n = 1; n <= 6; ++n) {
        CohomologyRing r = projective_space(n);
        VectorQ h = resolve_class(r, "h").second;
        SymplecticData s{r, h};
        expect(hard_lefschetz(s) && weak_lefschetz(s), "verdicts");
        BModule m = lefschetz_bmodule(r, h);
        auto [lo, hi] = saturation_level(m);
        expect(lo == n && hi == n, "saturation window");
        GradedPairingReport p = poincare_graded_pairing(r, h, n);
        expect(p.square && p.nondegenerate, "graded pairing");
        expect(p.left_dim == n + 1, "graded pairing size");
    }
    return true;
}

static bool c7_pairing_factorization() {
    const std::vector<std::pair<std::string, std::string>> fixtures = {
        {"kodaira-thurston", "e14+e23"}, {"t2", "e12"},         {"t4", "e12+e34"},
        {"filiform6", "e16+c2_2"},       {"biheisenberg6", "e13+e25+e46"},
        {"cp1", "h"},                    {"cp2", "h"},          {"cp3", "h"},
    };
    for (const auto& [name, expr] : fixtures) {
        SymplecticData s = ring_fixture(name, expr);
        BModule m = lefschetz_bmodule(s);
        CanonicalFiltration f = canonical_filtration(m);
        expect(f.lo + f.hi == s.ring.dim, "window is not centered on the dimension");
        for (int mm = f.lo; mm <= f.hi; ++mm) {
            expect(pairing_descends(s.ring, f, mm), "orientation does not descend");
            GradedPairingReport p = poincare_graded_pairing(s.ring, s.omega, mm);
            expect(p.square, "pairing matrix is not square");
            expect(p.nondegenerate, "pairing matrix is degenerate");
        }
    }
    return true;
}

static bool c8_blowup_suite() {
    SymplecticData kt = ring_fixture("kodaira-thurston", "e14+e23");
    BModule inner = lefschetz_bmodule(kt);
    BModule blown = blowup_bmodule(kt, 5, 3);
    expect(blown.space.total_dim() == 30, "total dimension");
    filtration_is_sound(blown);

    // the construction is a direct sum, so its levels split blockwise
    CohomologyRing cp5 = projective_space(5);
    BModule ambient = lefschetz_bmodule(cp5, resolve_class(cp5, "h").second);
    CohomologyRing cp1 = projective_space(1);
    BModule band =
        tensor(inner, shift(lefschetz_bmodule(cp1, resolve_class(cp1, "h").second), 2));
    CanonicalFiltration fb = canonical_filtration(blown);
    CanonicalFiltration fa = canonical_filtration(ambient);
    CanonicalFiltration fc = canonical_filtration(band);
    for (int m = fb.scan_lo; m <= fb.scan_hi; ++m)
        for (const auto& [k, s] : fb.at(m)) {
            Subspace va = ambient.dim_at(k) > 0 ? fa.at(m).at(k) : Subspace(0);
            Subspace wa = band.dim_at(k) > 0 ? fc.at(m).at(k) : Subspace(0);
            expect(s == embed_sum(va, wa), "blowup levels do not split");
        }
    expect(fb.lo == 4 && fb.hi == 6, "saturation window");

    // transfer in both directions, on both verdicts
    expect(module_hard_lefschetz(inner, 2) == module_hard_lefschetz(blown, 5),
           "hard transfer");
    expect(module_weak_lefschetz(inner, 2) == module_weak_lefschetz(blown, 5),
           "weak transfer");
    expect(!module_hard_lefschetz(blown, 5), "blowup is unexpectedly hard");
    expect(module_weak_lefschetz(blown, 5), "blowup lost the weak property");

    SymplecticData t2 = ring_fixture("t2", "e12");
    BModule blown2 = blowup_bmodule(t2, 3, 2);
    expect(module_hard_lefschetz(lefschetz_bmodule(t2), 1) ==
               module_hard_lefschetz(blown2, 3),
           "hard transfer on the surface");
    expect(module_hard_lefschetz(blown2, 3), "surface blowup must stay hard");
    return true;
}

static bool c9_certification_suite() {
    FibrationSpec cp2;
    cp2.fiber = ring_fixture("cp2", "h");
    cp2.base_betti = {1, 0, 1};
    DegenerationCertificate a = certify_csplitting(cp2);
    expect(a.certified && a.r0 == 2 && a.route == "hard-lefschetz", "invertible route");
    expect(a.total_betti == std::vector<int>{1, 0, 2, 0, 2, 0, 1}, "betti convolution");

    FibrationSpec kt;
    kt.fiber = ring_fixture("kodaira-thurston", "e14+e23");
    kt.base_betti = {1, 0, 1};
    DegenerationCertificate b = certify_csplitting(kt);
    expect(b.certified && b.r0 == 4 && b.route == "weak-lefschetz", "surjective route");
    expect(b.axioms == std::vector<std::string>{"lalonde-mcduff-pages-2-3"},
           "axiom recording");
    expect(b.total_betti == std::vector<int>{1, 3, 5, 6, 5, 3, 1}, "betti convolution");

    BModule blown = blowup_bmodule(kt.fiber, 5, 3);
    expect(gap_certificate(blown, 4).certified, "blowup gap certificate");

    FibrationSpec fil;
    fil.fiber = ring_fixture("filiform6", "e16+c2_2");
    fil.base_betti = {1, 0, 1};
    expect(!certify_csplitting(fil).certified, "negative control certifies");

    std::string ring = prepared_ring("filiform6", "omega=e16+c2_2");
    RunResult r = run_cli("certify " + ring + " --class omega --base-betti 1,0,1");
    expect(r.exit_code == 1, "negative control exit code");
    return true;
}

static bool c10_cli_determinism() {
    std::string kt = prepared_ring("kodaira-thurston", "omega=e14+e23");
    std::string fil = prepared_ring("filiform6", "omega=e16+c2_2");
    fs::path l1 = work_dir() / "l1.json";
    std::ofstream(l1) <<
        R"({"dims": {"-1": 1, "1": 1}, "e": {"-1": [["1"]]}, "f": {"1": [["1"]]}})";
    const std::vector<std::string> corpus = {
        "catalog list",
        "catalog get kodaira-thurston",
        "catalog get abelian3",
        "validate " + kt,
        "--json validate " + kt,
        "filtration " + kt + " --class omega",
        "--json filtration " + kt + " --class omega",
        "lefschetz " + kt + " --class omega",
        "--json lefschetz " + kt + " --class omega",
        "certify " + kt + " --class omega --base-betti 1,0,1",
        "--json certify " + kt + " --class omega --base-betti 1,0,1",
        "certify " + fil + " --class omega --base-betti 1,0,1",
        "blowup " + kt + " --class omega --ambient 5 --codim 3",
        "--json blowup " + kt + " --class omega --ambient 5 --codim 3",
        "decompose " + l1.string(),
        "--json decompose " + l1.string(),
    };
    auto sweep = [&] {
        std::ostringstream all;
        for (const auto& args : corpus) {
            RunResult r = run_cli(args);
            all << "$ " << args << "\n" << r.out << "exit " << r.exit_code << "\n";
        }
        return all.str();
    };
    std::string first = sweep();
    std::string second = sweep();
    expect(!first.empty(), "corpus produced nothing");
    return expect(first == second, "outputs differ between runs");
}

int main() {
    criterion(1, "filtration axioms and dimension formula", c1_filtration_axioms);
    criterion(2, "duality, sum, tensor and shift compatibility", c2_compatibility_laws);
    criterion(3, "equivariant maps preserve levels", c3_hom_preservation);
    criterion(4, "rank and filtration saturation agree", c4_saturation_equivalence);
    criterion(5, "four dimensional nilmanifold numbers", c5_nilmanifold_fixture);
    criterion(6, "projective space pairing and window", c6_projective_fixture);
    criterion(7, "orientation pairing factors by level", c7_pairing_factorization);
    criterion(8, "blowup module and Lefschetz transfer", c8_blowup_suite);
    criterion(9, "degeneration certificates and exit codes", c9_certification_suite);
    criterion(10, "byte identical command line runs", c10_cli_determinism);
    if (g_failures > 0) {
        std::cout << g_failures << " criteria failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
