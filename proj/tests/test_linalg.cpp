#include "perverse/homology.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace perverse::linalg;

namespace {

IntMatrix M(std::vector<std::vector<int>> rows, std::size_t cols = 0)
{
    std::vector<std::vector<Integer>> r;
    for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
    return IntMatrix::from_dense(r, cols);
}

bool is_diagonal_chain(const IntMatrix& s)
{
    Integer prev = 1;
    bool zero_seen = false;
    for (std::size_t c = 0; c < s.cols(); ++c)
        for (const auto& [r, v] : s.col(c)) {
            if (r != c || v < 0) return false;
        }
    for (std::size_t i = 0; i < std::min(s.rows(), s.cols()); ++i) {
        Integer d = s.get(i, i);
        if (d == 0) {
            zero_seen = true;
            continue;
        }
        if (zero_seen) return false;
        if (d % prev != 0) return false;
        prev = d;
    }
    return true;
}

// circle: vertices 0,1,2, edges 01,12,02
ChainComplexPresentation circle(Ring ring)
{
    IntMatrix d1 = M({{-1, 0, -1}, {1, -1, 0}, {0, 1, 1}});
    return make_complex(ring, false, {IntMatrix(0, 3), d1}, {3, 3});
}

} // namespace

TEST_CASE("smith normal form examples", "[linalg]")
{
    auto s = smith_normal_form(M({{2, 4}, {6, 8}}));
    CHECK(s.S == M({{2, 0}, {0, 4}}));
    CHECK(s.U * M({{2, 4}, {6, 8}}) * s.V == s.S);
    CHECK(smith_normal_form(IntMatrix::identity(3)).S == IntMatrix::identity(3));
    CHECK(smith_normal_form(IntMatrix(2, 3)).S.is_zero());
    CHECK(smith_invariants(M({{2, 4}, {6, 8}})) == std::vector<Integer>{2, 4});
}

TEST_CASE("smith normal form on 200 random matrices", "[linalg][random]")
{
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> dim(1, 30);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t r = static_cast<std::size_t>(dim(rng)), c = static_cast<std::size_t>(dim(rng));
        double density = trial % 3 == 0 ? 0.2 : 1.0;
        IntMatrix a = oracle::random_matrix(rng, r, c, -9, 9, density);
        auto s = smith_normal_form(a);
        REQUIRE(s.U.rows() == r);
        REQUIRE(s.V.rows() == c);
        CHECK(s.U * a * s.V == s.S);
        CHECK(abs(determinant(s.U)) == 1);
        CHECK(abs(determinant(s.V)) == 1);
        CHECK(is_diagonal_chain(s.S));
        CHECK(rank(a) == oracle::rank(a));
    }
}

TEST_CASE("invariant factors match determinantal divisors", "[linalg][random]")
{
    std::mt19937 rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t r = 1 + trial % 4, c = 1 + (trial / 4) % 4;
        IntMatrix a = oracle::random_matrix(rng, r, c, -6, 6);
        std::vector<std::vector<mpz_class>> d(r, std::vector<mpz_class>(c));
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < c; ++j) d[i][j] = a.get(i, j);
        auto divisors = oracle::determinantal_divisors(d);
        auto inv = smith_invariants(a);
        mpz_class prod = 1;
        for (std::size_t k = 0; k < divisors.size(); ++k) {
            if (k < inv.size()) {
                prod *= inv[k];
                CHECK(prod == divisors[k]);
            } else {
                CHECK(divisors[k] == 0);
            }
        }
    }
}

TEST_CASE("kernel basis", "[linalg]")
{
    IntMatrix k1 = kernel_basis(M({{1, -1}}));
    REQUIRE(k1.cols() == 1);
    CHECK(abs(k1.get(0, 0)) == 1);
    CHECK(k1.get(0, 0) == k1.get(1, 0));
    CHECK(kernel_basis(M({{2, 0}, {0, 3}})).cols() == 0);
    IntMatrix k3 = kernel_basis(M({{2, -4}}));
    REQUIRE(k3.cols() == 1);
    CHECK(((k3.get(0, 0) == 2 && k3.get(1, 0) == 1) || (k3.get(0, 0) == -2 && k3.get(1, 0) == -1)));

    std::mt19937 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + trial % 12, c = 1 + (trial * 7) % 15;
        IntMatrix a = oracle::random_matrix(rng, r, c, -3, 3, 0.5);
        IntMatrix k = kernel_basis(a);
        CHECK((a * k).is_zero());
        CHECK(k.cols() == c - oracle::rank(a));
        CHECK(oracle::rank(k) == k.cols());
        // saturation: the kernel lattice has all invariant factors 1
        for (const auto& f : smith_invariants(k)) CHECK(f == 1);
        CHECK(kernel_basis(a) == k);  // deterministic
        RatMatrix kq = kernel_basis(to_rational(a));
        CHECK(kq.cols() == k.cols());
    }
}

TEST_CASE("solve in lattice", "[linalg]")
{
    IntMatrix y = M({{3, 1}, {-2, 5}});
    CHECK(solve_in_lattice(IntMatrix::identity(2), y) == y);
    CHECK(solve_in_lattice(M({{2}, {1}}), M({{4}, {2}})) == M({{2}}));
    CHECK_THROWS_AS(solve_in_lattice(M({{2}, {0}}), M({{1}, {0}})), LinalgError);
    CHECK_THROWS_AS(solve_in_lattice(M({{1}, {0}}), M({{0}, {1}})), LinalgError);

    std::mt19937 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        IntMatrix a = oracle::random_matrix(rng, 6, 9, -4, 4, 0.6);
        IntMatrix k = kernel_basis(a);
        IntMatrix coeffs = oracle::random_matrix(rng, k.cols(), 3, -5, 5);
        IntMatrix x = solve_in_lattice(k, k * coeffs);
        CHECK(k * x == k * coeffs);
    }
}

TEST_CASE("homology examples", "[linalg]")
{
    auto hc = homology(circle(Ring::Z));
    CHECK(hc.betti == std::vector<std::size_t>{1, 1});
    CHECK(hc.torsion[0].empty());
    CHECK(hc.torsion[1].empty());

    // one vertex, one loop, one disc attached twice: Z/2 in degree 1
    auto rp2 = make_complex(Ring::Z, false, {IntMatrix(0, 1), M({{0}}), M({{2}})}, {1, 1, 1});
    auto h = homology(rp2);
    CHECK(h.betti == std::vector<std::size_t>{1, 0, 0});
    CHECK(h.torsion[1] == std::vector<Integer>{2});
    auto hq = homology(make_complex(Ring::Q, false, {IntMatrix(0, 1), M({{0}}), M({{2}})}, {1, 1, 1}));
    CHECK(hq.betti == std::vector<std::size_t>{1, 0, 0});
    CHECK(hq.torsion[1].empty());

    auto zero = make_complex(Ring::Z, false, {IntMatrix(0, 2), IntMatrix(2, 3), IntMatrix(3, 4)}, {2, 3, 4});
    CHECK(homology(zero).betti == std::vector<std::size_t>{2, 3, 4});

    // dual: cohomology of RP2 has Z/2 in degree 2
    auto hd = homology(rp2.dual());
    CHECK(hd.betti == std::vector<std::size_t>{1, 0, 0});
    CHECK(hd.torsion[2] == std::vector<Integer>{2});
}

TEST_CASE("homology matches rank-nullity on random complexes", "[linalg][random]")
{
    std::mt19937 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        // d1 * d2 = 0 by construction: d2 columns are kernel vectors of d1
        IntMatrix d1 = oracle::random_matrix(rng, 5, 8, -2, 2, 0.5);
        IntMatrix k = kernel_basis(d1);
        IntMatrix mix = oracle::random_matrix(rng, k.cols(), 4, -3, 3);
        IntMatrix d2 = k * mix;
        auto c = make_complex(Ring::Q, false, {IntMatrix(0, 5), d1, d2}, {5, 8, 4});
        c.check();
        auto h = homology(c);
        auto expect = oracle::betti({5, 8, 4}, {IntMatrix(0, 5), d1, d2}, {d1, d2, IntMatrix(0, 4)});
        CHECK(h.betti == expect);
        auto hz = homology(ChainComplexPresentation{Ring::Z, false, c.ambient_rank, c.basis, c.diff});
        CHECK(hz.betti == expect);
    }
}

TEST_CASE("invalid complex is reported", "[linalg]")
{
    CHECK_THROWS_AS(make_complex(Ring::Z, false, {IntMatrix(0, 1), M({{1}}), M({{1}})}, {1, 1, 1}), LinalgError);
    ChainComplexPresentation bad{Ring::Z, false, {1, 1, 1}, {IntMatrix::identity(1), IntMatrix::identity(1), IntMatrix::identity(1)},
                                 {IntMatrix(0, 1), M({{1}}), M({{1}})}};
    CHECK_THROWS_AS(bad.check(), LinalgError);
    CHECK_THROWS_AS(homology(bad), LinalgError);
}

TEST_CASE("induced maps", "[linalg]")
{
    auto c = circle(Ring::Z);
    std::vector<IntMatrix> id{IntMatrix::identity(3), IntMatrix::identity(3)};
    auto m = induced_map_on_homology(c, c, id);
    CHECK(m.isomorphism);
    CHECK(is_quasi_isomorphism(c, c, id));
    std::vector<IntMatrix> zero{IntMatrix(3, 3), IntMatrix(3, 3)};
    CHECK_FALSE(induced_map_on_homology(c, c, zero).isomorphism);
    CHECK_FALSE(is_quasi_isomorphism(c, c, zero));
    std::vector<IntMatrix> broken{IntMatrix::identity(3), IntMatrix(3, 3)};
    CHECK(chain_map_defect(c, c, broken).has_value());
    CHECK_THROWS_AS(induced_map_on_homology(c, c, broken), LinalgError);

    // multiplication by 2 on Z is not an iso over Z but is over Q
    auto z = make_complex(Ring::Z, false, {IntMatrix(0, 1)}, {1});
    auto q = make_complex(Ring::Q, false, {IntMatrix(0, 1)}, {1});
    std::vector<IntMatrix> two{M({{2}})};
    CHECK_FALSE(is_quasi_isomorphism(z, z, two));
    CHECK(is_quasi_isomorphism(q, q, two));
    CHECK_FALSE(induced_map_on_homology(z, z, two).isomorphism);
    CHECK(induced_map_on_homology(q, q, two).isomorphism);
}
