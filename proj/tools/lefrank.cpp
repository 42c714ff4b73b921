// Command line front end.  Exit codes: 0 success (or positive verdict),
// 1 negative verdict on valid input, 2 malformed input, 3 internal
// invariant violation.

#include <lefrank/lefrank.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace lefrank;

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw invalid_input("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw invalid_input("not valid JSON (" + path + "): " + e.what());
    }
    return j;
}

void emit(const Json& j) {
    std::cout << j.dump(2) << "\n";
}

std::string yesno(bool b) { return b ? "YES" : "NO"; }

std::string weight_summary(const GradedSpace& s) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, n] : s.dims) {
        if (!first) os << " ";
        os << k << ":" << n;
        first = false;
    }
    return os.str();
}

// ---- catalog ------------------------------------------------------------

struct CatalogItem {
    CatalogEntry entry;
    bool builtin = true;
    std::string path;  // user file when !builtin
};

std::vector<CatalogItem> catalog_items() {
    std::map<std::string, CatalogItem> byname;
    for (const auto& e : catalog_builtin())
        byname[e.name] = CatalogItem{e, true, ""};
    if (const char* dir = std::getenv("LEFRANK_CATALOG_DIR")) {
        namespace fs = std::filesystem;
        std::error_code ec;
        std::vector<fs::path> files;
        for (const auto& de : fs::directory_iterator(dir, ec))
            if (de.is_regular_file() && de.path().extension() == ".json")
                files.push_back(de.path());
        std::sort(files.begin(), files.end());
        for (const auto& p : files) {
            std::string name = p.filename().string();
            name = name.substr(0, name.find('.'));
            if (name.empty()) continue;
            CatalogItem item;
            item.builtin = false;
            item.path = p.string();
            item.entry.name = name;
            item.entry.kind = "lie-algebra";
            item.entry.description = "user catalog entry";
            try {
                Json j = read_json_file(p.string());
                if (j.contains("description") && j["description"].is_string())
                    item.entry.description = j["description"].get<std::string>();
                if (j.contains("symplectic_class") && j["symplectic_class"].is_string())
                    item.entry.symplectic_class = j["symplectic_class"].get<std::string>();
            } catch (const invalid_input&) {
                continue;  // unreadable files are skipped in listings
            }
            byname[name] = item;  // user entries shadow builtins
        }
    }
    std::vector<CatalogItem> out;
    for (auto& [_, item] : byname)
        out.push_back(std::move(item));
    return out;
}

Json catalog_entry_json(const CatalogItem& item) {
    LieAlgebra g;
    if (item.builtin) {
        auto got = catalog_builtin_algebra(item.entry.name);
        if (!got)
            throw invalid_input("catalog entry '" + item.entry.name +
                                "' is a pattern; use a concrete name like abelian4");
        g = *got;
    } else {
        g = json_to_lie(read_json_file(item.path));
    }
    Json j = Json::object();
    j["name"] = item.entry.name;
    j["kind"] = item.entry.kind;
    j["description"] = item.entry.description;
    if (!item.entry.symplectic_class.empty())
        j["symplectic_class"] = item.entry.symplectic_class;
    Json body = lie_to_json(g);
    for (auto& [k, v] : body.items())
        j[k] = v;
    return j;
}

// ---- input dispatch -----------------------------------------------------

struct LoadedRing {
    CohomologyRing ring;
};

CohomologyRing load_ring(const std::string& path) {
    Json j = read_json_file(path);
    if (detect_kind(j) != "ring")
        throw invalid_input("expected a ring description: " + path);
    CohomologyRing r = json_to_ring(j);
    Verdict v = validate_ring(r);
    if (!v.ok)
        throw invalid_input("invalid ring (" + path + "): " + v.message);
    return r;
}

SymplecticData load_symplectic(const std::string& path, const std::string& cls) {
    SymplecticData s;
    s.ring = load_ring(path);
    auto [deg, vec] = resolve_class(s.ring, cls);
    if (deg != 2)
        throw invalid_input("class '" + cls + "' has degree " + std::to_string(deg) + ", need 2");
    s.omega = vec;
    Verdict v = validate_symplectic(s);
    if (!v.ok)
        throw invalid_input(v.message);
    return s;
}

std::vector<int> parse_betti_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty())
            throw invalid_input("empty entry in betti list");
        size_t pos = 0;
        int val = 0;
        try {
            val = std::stoi(tok, &pos);
        } catch (const std::exception&) {
            throw invalid_input("bad betti entry: " + tok);
        }
        if (pos != tok.size() || val < 0)
            throw invalid_input("bad betti entry: " + tok);
        out.push_back(val);
    }
    if (out.empty())
        throw invalid_input("empty betti list");
    return out;
}

// ---- verb implementations ----------------------------------------------

int run_validate(const std::string& path, bool json_out) {
    Json j = read_json_file(path);
    std::string kind = detect_kind(j);
    Json summary = Json::object();
    summary["kind"] = kind;
    summary["ok"] = true;
    if (kind == "ring") {
        CohomologyRing r = json_to_ring(j);
        Verdict v = validate_ring(r);
        if (!v.ok)
            throw invalid_input("invalid ring: " + v.message);
        int total = 0;
        for (int d = 0; d <= r.dim; ++d) total += r.betti_at(d);
        summary["dim"] = r.dim;
        summary["total"] = total;
    } else if (kind == "lie-algebra") {
        LieAlgebra g = json_to_lie(j);
        Verdict v = validate_lie(g);
        if (!v.ok)
            throw invalid_input("invalid lie algebra: " + v.message);
        summary["dim"] = g.dim;
        summary["nilpotent"] = is_nilpotent(g);
    } else if (kind == "gmodule") {
        GModule m = json_to_gmodule(j);
        summary["total"] = static_cast<int>(m.b.space.total_dim());
    } else {
        BModule m = json_to_bmodule(j);
        summary["total"] = static_cast<int>(m.space.total_dim());
    }
    if (json_out) {
        emit(summary);
    } else {
        std::cout << "ok: " << kind;
        if (summary.contains("dim"))
            std::cout << " (dim " << summary["dim"].get<int>() << ")";
        else
            std::cout << " (total " << summary["total"].get<int>() << ")";
        std::cout << "\n";
    }
    return 0;
}

BModule module_for_filtration(const std::string& path, const std::string& cls) {
    Json j = read_json_file(path);
    std::string kind = detect_kind(j);
    if (kind == "ring") {
        if (cls.empty())
            throw invalid_input("ring input needs --class");
        return lefschetz_bmodule(load_symplectic(path, cls));
    }
    if (!cls.empty())
        throw invalid_input("--class only applies to ring input");
    if (kind == "gmodule")
        return json_to_gmodule(j).b;
    if (kind == "bmodule")
        return json_to_bmodule(j);
    throw invalid_input("no module in input: " + path);
}

int run_filtration(const std::string& path, const std::string& cls, bool json_out) {
    BModule v = module_for_filtration(path, cls);
    CanonicalFiltration f = canonical_filtration(v);
    Verdict ax = check_axioms(v, f);
    internal_check(ax.ok, "computed filtration fails axioms: " + ax.message);
    MultiplicityTable table = filtration_dims(v);
    for (int m = f.lo - 1; m <= f.hi; ++m)
        internal_check(table.level_total(m) == f.total_dim_at(m),
                       "multiplicity table disagrees with filtration dims");
    if (json_out) {
        emit(filtration_report_json(f, table));
        return 0;
    }
    if (v.space.is_zero()) {
        std::cout << "lo=hi=0, trivial\n";
        return 0;
    }
    std::cout << "lo=" << f.lo << " hi=" << f.hi << "\n";
    for (int m = f.lo - 1; m <= f.hi; ++m) {
        std::cout << "m=" << m << ": total=" << f.total_dim_at(m);
        GradedSpace dims;
        for (const auto& [k, n] : v.space.dims) {
            size_t d = f.dim_at(m, k);
            if (d > 0) dims.dims[k] = static_cast<int>(d);
        }
        if (!dims.dims.empty())
            std::cout << " weights: " << weight_summary(dims);
        std::cout << "\n";
    }
    std::cout << "multiplicities:\n";
    for (const auto& [m, byd] : table.mult) {
        std::cout << "m=" << m << ":";
        for (const auto& [d, c] : byd)
            std::cout << " " << d << ":" << c;
        std::cout << "\n";
    }
    return 0;
}

int run_lefschetz(const std::string& path, const std::string& cls, bool json_out) {
    SymplecticData s = load_symplectic(path, cls);
    LefschetzReport rep = lefschetz_report(s.ring, s.omega);
    if (json_out) {
        emit(lefschetz_report_json(rep));
    } else {
        std::cout << "hard: " << yesno(rep.hard) << "\n";
        std::cout << "weak: " << yesno(rep.weak) << "\n";
        std::cout << "lo=" << rep.lo << " hi=" << rep.hi << "\n";
        for (const auto& lv : rep.levels) {
            std::cout << "m=" << lv.m << ": onto=" << yesno(lv.onto)
                      << " filtration-full=" << yesno(lv.filtration_full)
                      << " complement-vanishes=" << yesno(lv.complement_vanishes)
                      << "\n";
        }
    }
    return rep.hard ? 0 : 1;
}

int run_ce(const std::string& path,
           const std::vector<std::string>& defines,
           bool /*json_out*/) {
    Json j = read_json_file(path);
    if (detect_kind(j) != "lie-algebra")
        throw invalid_input("expected a lie algebra description: " + path);
    LieAlgebra g = json_to_lie(j);
    CohomologyRing r = chevalley_eilenberg(g);
    for (const auto& def : defines) {
        size_t eq = def.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 == def.size())
            throw invalid_input("bad --define, want NAME=EXPR: " + def);
        std::string name = def.substr(0, eq);
        std::string expr = def.substr(eq + 1);
        auto [deg, vec] = resolve_class(r, expr);
        if (r.classes.count(name))
            throw invalid_input("duplicate class name: " + name);
        if (r.find_label(name))
            throw invalid_input("class name collides with basis label: " + name);
        r.classes[name] = {deg, vec};
    }
    emit(ring_to_json(r));
    return 0;
}

int run_decompose(const std::string& path, bool json_out) {
    Json j = read_json_file(path);
    if (detect_kind(j) != "gmodule")
        throw invalid_input("expected a module with both raising and lowering maps: " + path);
    GModule m = json_to_gmodule(j);
    std::map<int, int> mult = decompose_g(m);
    if (json_out) {
        emit(decompose_report_json(m, mult));
        return 0;
    }
    std::cout << "total=" << m.b.space.total_dim() << "\n";
    for (const auto& [d, c] : mult)
        std::cout << "L(" << d << ") x " << c << "\n";
    return 0;
}

int run_blowup(const std::string& path, const std::string& cls,
               int ambient, int codim, bool json_out) {
    SymplecticData s = load_symplectic(path, cls);
    BModule inner = lefschetz_bmodule(s);
    BModule blown = blowup_bmodule(s, ambient, codim);
    CanonicalFiltration f = canonical_filtration(blown);
    int n_inner = s.ring.dim / 2;
    bool inner_hard = module_hard_lefschetz(inner, n_inner);
    bool inner_weak = module_weak_lefschetz(inner, n_inner);
    bool blown_hard = module_hard_lefschetz(blown, ambient);
    bool blown_weak = module_weak_lefschetz(blown, ambient);
    internal_check(inner_hard == blown_hard, "hard transfer failed across blowup");
    internal_check(inner_weak == blown_weak, "weak transfer failed across blowup");
    if (json_out) {
        Json j = Json::object();
        j["module"] = bmodule_to_json(blown);
        j["lo"] = f.lo;
        j["hi"] = f.hi;
        j["embedded"] = Json{{"hard", inner_hard}, {"weak", inner_weak}};
        j["blowup"] = Json{{"hard", blown_hard}, {"weak", blown_weak}};
        emit(j);
        return 0;
    }
    std::cout << "module: total=" << blown.space.total_dim()
              << " weights: " << weight_summary(blown.space) << "\n";
    std::cout << "lo=" << f.lo << " hi=" << f.hi << "\n";
    std::cout << "embedded: hard=" << yesno(inner_hard) << " weak=" << yesno(inner_weak) << "\n";
    std::cout << "blowup: hard=" << yesno(blown_hard) << " weak=" << yesno(blown_weak) << "\n";
    return 0;
}

int run_certify(const std::string& path, const std::string& cls,
                const std::string& betti_list, bool truncated,
                std::optional<int> start_page, bool json_out) {
    FibrationSpec spec;
    spec.fiber = load_symplectic(path, cls);
    spec.base_betti = parse_betti_list(betti_list);
    spec.base_truncated = truncated;
    spec.forced_start_page = start_page;
    Verdict v = validate_fibration(spec);
    if (!v.ok)
        throw invalid_input(v.message);
    DegenerationCertificate cert = certify_csplitting(spec);
    if (json_out) {
        emit(certificate_json(cert));
    } else {
        std::cout << "certified: " << yesno(cert.certified) << "\n";
        std::cout << "route: " << cert.route << "\n";
        std::cout << "r0=" << cert.r0 << "\n";
        std::cout << "lo=" << cert.lo << " hi=" << cert.hi << "\n";
        if (!cert.axioms.empty()) {
            std::cout << "axioms:";
            for (const auto& a : cert.axioms)
                std::cout << " " << a;
            std::cout << "\n";
        }
        if (!cert.total_betti.empty()) {
            std::cout << "total betti:";
            for (size_t i = 0; i < cert.total_betti.size(); ++i)
                std::cout << (i ? "," : " ") << cert.total_betti[i];
            std::cout << "\n";
        }
        if (cert.truncated)
            std::cout << "truncated: only low degrees reported\n";
        std::cout << "reason:\n";
        for (const auto& line : cert.reason)
            std::cout << "- " << line << "\n";
    }
    return cert.certified ? 0 : 1;
}

int run_catalog_list(bool json_out) {
    std::vector<CatalogItem> items = catalog_items();
    if (json_out) {
        Json arr = Json::array();
        for (const auto& it : items) {
            Json j = Json::object();
            j["name"] = it.entry.name;
            j["kind"] = it.entry.kind;
            j["description"] = it.entry.description;
            if (!it.entry.symplectic_class.empty())
                j["symplectic_class"] = it.entry.symplectic_class;
            j["builtin"] = it.builtin;
            arr.push_back(j);
        }
        emit(arr);
        return 0;
    }
    for (const auto& it : items) {
        std::cout << it.entry.name << "  " << it.entry.kind << "  "
                  << it.entry.description;
        if (!it.builtin)
            std::cout << "  [user]";
        std::cout << "\n";
    }
    return 0;
}

int run_catalog_get(const std::string& name, bool /*json_out*/) {
    for (const auto& it : catalog_items()) {
        if (it.entry.name == name) {
            emit(catalog_entry_json(it));
            return 0;
        }
    }
    if (auto g = catalog_builtin_algebra(name)) {
        CatalogItem item;
        item.builtin = true;
        item.entry.name = name;
        item.entry.kind = "lie-algebra";
        item.entry.description =
            "abelian algebra of dimension " + std::to_string(g->dim) +
            "; nilmanifold is the " + std::to_string(g->dim) + "-torus";
        emit(catalog_entry_json(item));
        return 0;
    }
    throw invalid_input("no catalog entry named '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact filtration and degeneration checks for graded modules"};
    app.require_subcommand(1);
    bool json_out = false;
    app.add_flag("--json", json_out, "emit JSON instead of text");

    std::string in_path, cls, betti_list, catalog_name;
    std::vector<std::string> defines;
    int ambient = 0, codim = 0, start_page = 0;
    bool truncated = false;

    auto* validate = app.add_subcommand("validate", "check an input file");
    validate->add_option("file", in_path)->required();

    auto* filtration = app.add_subcommand("filtration", "canonical filtration of a module");
    filtration->add_option("file", in_path)->required();
    filtration->add_option("--class", cls, "degree 2 class (ring input only)");

    auto* lefschetz = app.add_subcommand("lefschetz", "hard/weak Lefschetz verdicts");
    lefschetz->add_option("file", in_path)->required();
    lefschetz->add_option("--class", cls)->required();

    auto* ce = app.add_subcommand("ce", "cohomology ring of a nilpotent Lie algebra");
    ce->add_option("file", in_path)->required();
    ce->add_option("--define", defines, "NAME=EXPR named class to attach");

    auto* decompose = app.add_subcommand("decompose", "irreducible decomposition");
    decompose->add_option("file", in_path)->required();

    auto* blowup = app.add_subcommand("blowup", "blowup module along an embedding");
    blowup->add_option("file", in_path)->required();
    blowup->add_option("--class", cls)->required();
    blowup->add_option("--ambient", ambient, "half dimension of the ambient space")->required();
    blowup->add_option("--codim", codim, "complex codimension of the embedding")->required();

    auto* certify = app.add_subcommand("certify", "degeneration certificate for a fibration");
    certify->add_option("file", in_path, "fiber ring")->required();
    certify->add_option("--class", cls)->required();
    certify->add_option("--base-betti", betti_list, "comma separated base betti numbers")->required();
    certify->add_flag("--base-truncated", truncated, "base betti numbers are a prefix");
    certify->add_option("--start-page", start_page, "caller asserted start page");

    auto* catalog = app.add_subcommand("catalog", "built in examples");
    auto* cat_list = catalog->add_subcommand("list", "list entries");
    auto* cat_get = catalog->add_subcommand("get", "print one entry");
    cat_get->add_option("name", catalog_name)->required();
    catalog->require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (validate->parsed()) return run_validate(in_path, json_out);
        if (filtration->parsed()) return run_filtration(in_path, cls, json_out);
        if (lefschetz->parsed()) return run_lefschetz(in_path, cls, json_out);
        if (ce->parsed()) return run_ce(in_path, defines, json_out);
        if (decompose->parsed()) return run_decompose(in_path, json_out);
        if (blowup->parsed()) return run_blowup(in_path, cls, ambient, codim, json_out);
        if (certify->parsed()) {
            std::optional<int> forced;
            if (certify->count("--start-page")) forced = start_page;
            return run_certify(in_path, cls, betti_list, truncated, forced, json_out);
        }
        if (catalog->parsed()) {
            if (cat_list->parsed()) return run_catalog_list(json_out);
            if (cat_get->parsed()) return run_catalog_get(catalog_name, json_out);
        }
    } catch (const invalid_input& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const internal_error& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
