#include <lefrank/graded.hpp>

#include <catch_amalgamated.hpp>

using namespace lefrank;

TEST_CASE("irreducible modules validate and decompose as themselves") {
    for (int d = 0; d <= 5; ++d) {
        GModule l = irreducible_g(d);
        CHECK(validate_b(l.b).ok);
        CHECK(validate_g(l).ok);
        CHECK(l.b.space.total_dim() == static_cast<size_t>(d + 1));
        std::map<int, int> mult = decompose_g(l);
        REQUIRE(mult.size() == 1);
        CHECK(mult.at(d) == 1);
    }
}

TEST_CASE("commutator defect detects a broken lowering map") {
    GModule l = irreducible_g(2);
    MatrixQ f = l.f_at(2);
    f.at(0, 0) += 1;
    l.set_f(2, f);
    CHECK_FALSE(validate_g(l).ok);
}

TEST_CASE("weight raising map with wrong shape is rejected") {
    BModule v;
    v.space.dims[0] = 1;
    v.space.dims[2] = 1;
    v.set_e(0, MatrixQ::from_rows({{rat(1)}, {rat(0)}}));
    CHECK_FALSE(validate_b(v).ok);
}

TEST_CASE("dual is an involution that mirrors weights") {
    for (unsigned seed = 0; seed < 20; ++seed) {
        BModule v = random_bmodule(seed, 5, 2);
        BModule d = dual(v);
        CHECK(validate_b(d).ok);
        for (const auto& [k, n] : v.space.dims)
            CHECK(d.dim_at(-k) == n);
        BModule dd = dual(d);
        CHECK(dd.space.dims == v.space.dims);
        for (const auto& [k, n] : v.space.dims)
            CHECK(dd.e_at(k) == v.e_at(k));
    }
}

TEST_CASE("dual of a full module stays a full module") {
    for (unsigned seed = 0; seed < 10; ++seed) {
        GModule g = random_gmodule(seed, 3, 2);
        GModule d = dual(g);
        CHECK(validate_g(d).ok);
        std::map<int, int> m1 = decompose_g(g), m2 = decompose_g(d);
        CHECK(m1 == m2);
    }
}

TEST_CASE("direct sum splits dimensions and raising maps") {
    BModule a = random_bmodule(3, 4, 2);
    BModule b = random_bmodule(4, 4, 2);
    BModule s = direct_sum(a, b);
    CHECK(validate_b(s).ok);
    CHECK(s.space.total_dim() == a.space.total_dim() + b.space.total_dim());
    for (const auto& [k, n] : s.space.dims)
        CHECK(n == a.dim_at(k) + b.dim_at(k));
}

TEST_CASE("tensor dimensions are the convolution of the factors") {
    GModule l1 = irreducible_g(1);
    BModule t = tensor(l1.b, l1.b);
    CHECK(validate_b(t).ok);
    REQUIRE(t.space.dims.size() == 3);
    CHECK(t.dim_at(-2) == 1);
    CHECK(t.dim_at(0) == 2);
    CHECK(t.dim_at(2) == 1);
    auto f = solve_f(t);
    REQUIRE(f.has_value());
    GModule g;
    g.b = t;
    g.f_maps = *f;
    CHECK(validate_g(g).ok);
    std::map<int, int> mult = decompose_g(g);
    REQUIRE(mult.size() == 2);
    CHECK(mult.at(0) == 1);
    CHECK(mult.at(2) == 1);
}

TEST_CASE("tensor block layout indexes the second factor fastest") {
    BModule a = random_bmodule(7, 3, 2);
    BModule b = random_bmodule(8, 3, 2);
    BModule t = tensor(a, b);
    CHECK(validate_b(t).ok);
    std::map<int, std::vector<TensorBlock>> blocks = tensor_blocks(a, b);
    for (const auto& [k, n] : t.space.dims) {
        int expect = 0;
        for (const auto& [ka, na] : a.space.dims)
            expect += na * b.dim_at(k - ka);
        CHECK(n == expect);
        int covered = 0;
        for (const auto& blk : blocks.at(k)) {
            CHECK(blk.offset == covered);
            covered += a.dim_at(blk.a) * b.dim_at(blk.b);
        }
        CHECK(covered == n);
    }
}

TEST_CASE("shift relabels weights without touching matrices") {
    BModule v = random_bmodule(9, 4, 2);
    BModule s = shift(v, 3);
    CHECK(validate_b(s).ok);
    for (const auto& [k, n] : v.space.dims) {
        CHECK(s.dim_at(k + 3) == n);
        CHECK(s.e_at(k + 3) == v.e_at(k));
    }
}

TEST_CASE("iterated raising matches matrix powers") {
    GModule l = irreducible_g(3);
    MatrixQ e2 = e_power(l.b, -3, 2);
    CHECK(e2 == l.b.e_at(-1) * l.b.e_at(-3));
    CHECK(rank(e_power(l.b, -3, 3)) == 1);
    CHECK(e_power(l.b, -3, 0) == MatrixQ::identity(1));
}

TEST_CASE("identity is a module map and a perturbation is not") {
    GModule l = irreducible_g(2);
    GradedHom phi;
    phi.source = l.b;
    phi.target = l.b;
    for (const auto& [k, n] : l.b.space.dims)
        phi.set_map(k, MatrixQ::identity(n));
    CHECK(is_bhom(phi).ok);
    phi.set_map(0, MatrixQ::from_rows({{rat(2)}}));
    CHECK_FALSE(is_bhom(phi).ok);
}

TEST_CASE("hom spaces between small irreducibles") {
    BModule l0 = irreducible_g(0).b;
    BModule l2 = irreducible_g(2).b;
    // scalar multiples of the identity
    CHECK(equivariant_hom_basis(l2, l2, 0).size() == 1);
    CHECK(equivariant_hom_basis(l0, l0, 0).size() == 1);
    // distinct chain lengths are rigid in either direction
    CHECK(equivariant_hom_basis(l0, l2, 0).empty());
    CHECK(equivariant_hom_basis(l2, l0, 0).empty());
    // raising by two sends the bottom of the long chain onto the short one
    CHECK(equivariant_hom_basis(l2, l0, 2).size() == 1);
    CHECK(equivariant_hom_basis(l2, l0, -2).empty());
}

TEST_CASE("hom basis elements commute with raising at any shift") {
    int found = 0;
    for (unsigned seed = 0; seed < 12; ++seed) {
        BModule v = random_bmodule(seed, 4, 2);
        BModule w = random_bmodule(seed + 100, 4, 2);
        for (int s : {-2, -1, 0, 1, 2}) {
            for (const auto& phi : equivariant_hom_basis(v, w, s)) {
                CHECK(phi.weight_shift == s);
                if (s == 0)
                    CHECK(is_bhom(phi).ok);
                else
                    CHECK(is_shifted_equivariant(phi, -s).ok);
                ++found;
            }
        }
    }
    CHECK(found > 20);
}

TEST_CASE("multiplicity extraction is consistent on random full modules") {
    for (unsigned seed = 0; seed < 30; ++seed) {
        GModule g = random_gmodule(seed, 4, 2);
        CHECK(validate_g(g).ok);
        std::map<int, int> mult = decompose_g(g);
        size_t total = 0;
        int top = 0;
        for (const auto& [d, c] : mult) {
            CHECK(c > 0);
            total += static_cast<size_t>(c) * (d + 1);
            top = std::max(top, d);
        }
        CHECK(total == g.b.space.total_dim());
        CHECK(g.b.space.max_weight() == top);
        CHECK(g.b.space.min_weight() == -top);
    }
}

TEST_CASE("lowering maps are unique when they exist") {
    GModule l = irreducible_g(4);
    auto f = solve_f(l.b);
    REQUIRE(f.has_value());
    for (const auto& [k, m] : *f)
        CHECK(m == l.f_at(k));
    // a module with a strict level jump admits no lowering maps
    BModule bad;
    bad.space.dims[0] = 1;
    bad.space.dims[2] = 1;
    // e = 0 between two nonzero weights cannot come from a full module
    CHECK_FALSE(solve_f(bad).has_value());
}
