#include "perverse/perversity.hpp"

#include <catch_amalgamated.hpp>

#include <functional>
#include <optional>
#include <random>

using namespace perverse;

namespace {

Perversity P(std::vector<int> full)
{
    // full includes the value at 0
    return Perversity::from_values(std::vector<int>(full.begin() + 1, full.end()));
}

// every GM perversity of dimension n, built from the definition
std::vector<std::vector<int>> gm_oracle(int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> cur{0};
    std::function<void()> grow = [&] {
        int i = static_cast<int>(cur.size());
        if (i > n) {
            out.push_back(cur);
            return;
        }
        for (int step = 0; step <= 1; ++step) {
            if ((i == 1 || i == 2) && step == 1) continue;
            cur.push_back(cur.back() + step);
            grow();
            cur.pop_back();
        }
    };
    grow();
    return out;
}

// min{ r GM : r >= p+q }, nullopt for the infinite perversity
std::optional<std::vector<int>> oplus_oracle(const std::vector<int>& p, const std::vector<int>& q)
{
    int n = static_cast<int>(p.size()) - 1;
    std::vector<std::vector<int>> above;
    for (const auto& r : gm_oracle(n)) {
        bool ok = true;
        for (int i = 0; i <= n; ++i) ok = ok && r[i] >= p[i] + q[i];
        if (ok) above.push_back(r);
    }
    if (above.empty()) return std::nullopt;
    std::vector<int> m = above[0];
    for (const auto& r : above)
        for (int i = 0; i <= n; ++i) m[i] = std::min(m[i], r[i]);
    REQUIRE(std::find(above.begin(), above.end(), m) != above.end());
    return m;
}

} // namespace

TEST_CASE("classify", "[perversity]")
{
    CHECK(classify(Perversity::top(4)) == PerversityClass::GM);
    CHECK(Perversity::top(4).values() == std::vector<int>{0, 0, 0, 1, 2});
    CHECK(classify(Perversity::zero(5)) == PerversityClass::GM);
    CHECK(classify(P({0, -1, -3, -5})) == PerversityClass::Loose);
    CHECK(classify(Perversity::infinite(3)) == PerversityClass::Infinite);
    CHECK(classify(P({0, 1, 2})) == PerversityClass::Perversity);
    // t' steps down at index 1
    for (int n = 1; n <= 6; ++n) CHECK(classify(Perversity::top_prime(n)) == PerversityClass::Loose);
    CHECK(Perversity::top_prime(1).values() == std::vector<int>{0, -1});
    CHECK(Perversity::constant(1, 2).values() == std::vector<int>{0, 2});
}

TEST_CASE("classification predicates nest", "[perversity]")
{
    for (int n = 1; n <= 5; ++n)
        for (const auto& v : gm_oracle(n)) {
            Perversity p = P(v);
            CHECK(is_gm(p));
            CHECK(is_perversity(p));
        }
    CHECK_FALSE(is_gm(P({0, 1, 1})));
    CHECK(is_perversity(P({0, 1, 1})));
}

TEST_CASE("complement", "[perversity]")
{
    CHECK(complement(Perversity::zero(4)).values() == std::vector<int>{0, -1, 0, 1, 2});
    CHECK(complement(Perversity::zero(4)) == Perversity::top_prime(4));
    CHECK(complement(Perversity::constant(1, 2)).values() == std::vector<int>{0, -3});
    CHECK(complement(Perversity::top_prime(3)) == Perversity::zero(3));
    CHECK_THROWS_AS(complement(Perversity::infinite(2)), PerversityError);

    std::mt19937 rng(7);
    std::uniform_int_distribution<int> val(-4, 4);
    for (int trial = 0; trial < 200; ++trial) {
        int n = 1 + trial % 5;
        std::vector<int> a(n), b(n);
        for (int i = 0; i < n; ++i) {
            a[i] = val(rng);
            b[i] = a[i] + (val(rng) > 0 ? 1 : 0);
        }
        Perversity q = Perversity::from_values(a), q2 = Perversity::from_values(b);
        CHECK(complement(complement(q)) == q);
        REQUIRE(q.le(q2));
        CHECK(complement(q2).le(complement(q)));
    }
}

TEST_CASE("oplus examples", "[perversity]")
{
    CHECK(oplus(P({0, 0, 0, 0, 1}), P({0, 0, 0, 1, 1})) == Perversity::top(4));
    CHECK(oplus(P({0, 0, 0, 1, 1}), P({0, 0, 0, 1, 1})).is_infinite());
    for (const auto& v : gm_oracle(4)) CHECK(oplus(P(v), Perversity::zero(4)) == P(v));
}

TEST_CASE("oplus agrees with the lattice minimum for n <= 6", "[perversity][exhaustive]")
{
    for (int n = 1; n <= 6; ++n) {
        auto all = gm_oracle(n);
        for (const auto& a : all)
            for (const auto& b : all) {
                Perversity r = oplus(P(a), P(b));
                auto expect = oplus_oracle(a, b);
                if (!expect) CHECK(r.is_infinite());
                else CHECK(r == P(*expect));
                CHECK(r == oplus(P(b), P(a)));
            }
    }
}

TEST_CASE("oplus is associative", "[perversity]")
{
    auto all = gm_oracle(5);
    for (std::size_t i = 0; i < all.size(); i += 3)
        for (std::size_t j = 0; j < all.size(); j += 2)
            for (std::size_t k = 0; k < all.size(); k += 5) {
                Perversity a = P(all[i]), b = P(all[j]), c = P(all[k]);
                CHECK(oplus(oplus(a, b), c) == oplus(a, oplus(b, c)));
            }
}

TEST_CASE("peaks and predecessors", "[perversity]")
{
    CHECK(peaks(Perversity::top(4)) == std::vector<int>{4});
    CHECK(peaks(P({0, 0, 1, 1, 1})) == std::vector<int>{2});
    CHECK(peaks(Perversity::zero(4)).empty());

    auto pt = predecessors(Perversity::top(4));
    REQUIRE(pt.size() == 1);
    CHECK(pt[0] == P({0, 0, 0, 1, 1}));
    auto p2 = predecessors(P({0, 0, 1, 1, 1}));
    REQUIRE(p2.size() == 1);
    CHECK(p2[0] == P({0, 0, 0, 1, 1}));
    CHECK(predecessors(Perversity::zero(4)).empty());

    for (int n = 2; n <= 6; ++n)
        for (const auto& v : gm_oracle(n)) {
            Perversity p = P(v);
            auto preds = predecessors(p);
            CHECK(preds.size() == peaks(p).size());
            for (const auto& x : preds) {
                CHECK(is_gm(x));
                CHECK(x.le(p));
                int diff = 0;
                for (int i = 0; i <= n; ++i) diff += x.at(i) != p.at(i);
                CHECK(diff == 1);
            }
        }
}

TEST_CASE("enumerate_gm", "[perversity]")
{
    for (int n = 1; n <= 7; ++n) {
        auto got = enumerate_gm(n);
        auto expect = gm_oracle(n);
        REQUIRE(got.size() == expect.size());
        for (const auto& v : expect) CHECK(std::find(got.begin(), got.end(), P(v)) != got.end());
    }
}

TEST_CASE("parse_perversity", "[perversity]")
{
    CHECK(parse_perversity("zero", 3) == Perversity::zero(3));
    CHECK(parse_perversity("top", 4) == Perversity::top(4));
    CHECK(parse_perversity("top-prime", 2) == Perversity::top_prime(2));
    CHECK(parse_perversity("infinite", 2).is_infinite());
    CHECK(parse_perversity("const:-3", 1) == Perversity::constant(1, -3));
    CHECK(parse_perversity("complement:zero", 4) == Perversity::top_prime(4));
    CHECK(parse_perversity("0,-1,2", 3) == P({0, 0, -1, 2}));
    CHECK(parse_perversity("2", 1).str() == "2");
    CHECK(Perversity::infinite(3).str() == "inf");
    CHECK_THROWS_AS(parse_perversity("0,1", 3), PerversityError);
    CHECK_THROWS_AS(parse_perversity("0,x", 2), PerversityError);
    CHECK_THROWS_AS(parse_perversity("bogus", 2), PerversityError);
}
