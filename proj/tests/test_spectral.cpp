#include <lefrank/spectral.hpp>

#include <catch_amalgamated.hpp>

using namespace lefrank;

namespace {

FibrationSpec fixture(const CohomologyRing& r, const std::string& expr,
                      std::vector<int> base) {
    FibrationSpec spec;
    spec.fiber.ring = r;
    spec.fiber.omega = resolve_class(r, expr).second;
    spec.base_betti = std::move(base);
    return spec;
}

FibrationSpec kt_over_sphere() {
    return fixture(chevalley_eilenberg(*catalog_builtin_algebra("kodaira-thurston")),
                   "e14+e23", {1, 0, 1});
}

}  // namespace

TEST_CASE("fibration inputs are validated") {
    FibrationSpec spec = kt_over_sphere();
    CHECK(validate_fibration(spec).ok);
    spec.base_betti = {};
    CHECK_FALSE(validate_fibration(spec).ok);
    spec.base_betti = {0, 1};
    CHECK_FALSE(validate_fibration(spec).ok);
    spec.base_betti = {1, -1};
    CHECK_FALSE(validate_fibration(spec).ok);
    spec = kt_over_sphere();
    spec.forced_start_page = 1;
    CHECK_FALSE(validate_fibration(spec).ok);
}

TEST_CASE("second page is the fiber module fattened by the base rank") {
    FibrationSpec spec = kt_over_sphere();
    BModule page = e2_page(spec);
    BModule fiber = lefschetz_bmodule(spec.fiber);
    for (const auto& [k, n] : fiber.space.dims)
        CHECK(page.dim_at(k) == 2 * n);
    auto [plo, phi] = saturation_level(page);
    auto [flo, fhi] = saturation_level(fiber);
    CHECK(plo == flo);
    CHECK(phi == fhi);
}

TEST_CASE("gap certificates depend only on the jump window") {
    BModule fiber = lefschetz_bmodule(kt_over_sphere().fiber);
    DegenerationCertificate at4 = gap_certificate(fiber, 4);
    CHECK(at4.certified);              // gap 2 < 3
    DegenerationCertificate at3 = gap_certificate(fiber, 3);
    CHECK_FALSE(at3.certified);        // gap 2 is not below 2
    CHECK(gap_certificate(fiber, 5).certified);
}

TEST_CASE("certificate routes") {
    // a fiber with an invertible raising operator starts at the second page
    FibrationSpec cp2 = fixture(projective_space(2), "h", {1, 0, 1});
    DegenerationCertificate blanchard = certify_csplitting(cp2);
    CHECK(blanchard.certified);
    CHECK(blanchard.route == "hard-lefschetz");
    CHECK(blanchard.r0 == 2);
    CHECK(blanchard.total_betti == std::vector<int>{1, 0, 2, 0, 2, 0, 1});

    // a merely surjective one leans on the vanishing of two low pages
    DegenerationCertificate weak = certify_csplitting(kt_over_sphere());
    CHECK(weak.certified);
    CHECK(weak.route == "weak-lefschetz");
    CHECK(weak.r0 == 4);
    REQUIRE(weak.axioms.size() == 1);
    CHECK(weak.axioms[0] == "lalonde-mcduff-pages-2-3");
    CHECK(weak.total_betti == std::vector<int>{1, 3, 5, 6, 5, 3, 1});
    CHECK(weak.lo == 1);
    CHECK(weak.hi == 3);

    // no Lefschetz property, no route
    FibrationSpec bad =
        fixture(chevalley_eilenberg(*catalog_builtin_algebra("filiform6")),
                "e16+c2_2", {1, 0, 1});
    DegenerationCertificate none = certify_csplitting(bad);
    CHECK_FALSE(none.certified);
    CHECK(none.route == "none");
    CHECK(none.total_betti.empty());
}

TEST_CASE("a caller asserted start page overrides the route") {
    FibrationSpec bad =
        fixture(chevalley_eilenberg(*catalog_builtin_algebra("filiform6")),
                "e16+c2_2", {1, 0, 1});
    bad.forced_start_page = 6;  // gap 4 < 5
    DegenerationCertificate cert = certify_csplitting(bad);
    CHECK(cert.certified);
    REQUIRE(!cert.axioms.empty());
    CHECK(cert.axioms.back() == "caller-asserted-start-page-6");
    bad.forced_start_page = 4;  // gap 4, not < 3
    CHECK_FALSE(certify_csplitting(bad).certified);
}

TEST_CASE("truncated bases truncate the reported betti numbers") {
    FibrationSpec spec = kt_over_sphere();
    spec.base_betti = {1, 0};
    spec.base_truncated = true;
    DegenerationCertificate cert = certify_csplitting(spec);
    CHECK(cert.certified);
    CHECK(cert.truncated);
    CHECK(cert.total_betti == std::vector<int>{1, 3});
}

TEST_CASE("page maps respect levels in the advisory report") {
    BModule fiber = lefschetz_bmodule(kt_over_sphere().fiber);
    std::vector<PageSchurLine> lines = schur_report(fiber, 4);
    REQUIRE(lines.size() == 3);  // levels 1 through 3
    for (const auto& line : lines) {
        // page 4 differentials drop three levels, past the whole window
        CHECK(line.target.empty());
        CHECK(line.forced_zero);
    }
    // page 2 differentials drop one level and can meet matching content
    std::vector<PageSchurLine> p2 = schur_report(fiber, 2);
    REQUIRE(p2.size() == 3);
    CHECK(p2[0].m == 1);
}
