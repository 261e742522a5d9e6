#include "perverse/blowup.hpp"
#include "perverse/builtins.hpp"
#include "perverse/gm_chains.hpp"

#include "oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace perverse;
using blowup::Section;
using linalg::Rational;
using linalg::Ring;

namespace {

std::vector<std::size_t> B(std::vector<std::size_t> v) { return v; }

bool heavy(const std::string& name) { return name.find("cp2") != std::string::npos; }

// global sections per degree: unknowns are all local cells over K+, one
// equation per cell of every face in K+ saying both sides agree
std::vector<std::size_t> section_ranks_oracle(const ffs::FilteredFaceSet& k)
{
    std::map<ffs::SimplexIndex, std::size_t> base;
    std::vector<blowup::LocalComplex> local(k.size());
    std::size_t total = 0;
    int top = 0;
    for (ffs::SimplexIndex s = 0; s < k.size(); ++s) {
        if (!k.positive(s)) continue;
        local[s] = blowup::local_complex(k[s].profile);
        base[s] = total;
        total += local[s].cells.size();
        top = std::max(top, static_cast<int>(local[s].by_degree.size()) - 1);
    }
    std::vector<oracle::Dense> rows(static_cast<std::size_t>(top) + 1);
    std::vector<std::size_t> unknowns(static_cast<std::size_t>(top) + 1, 0);
    std::vector<int> deg_of(total);
    std::vector<std::size_t> col_of(total);
    for (const auto& [s, off] : base)
        for (std::size_t c = 0; c < local[s].cells.size(); ++c) {
            int d = blowup::cell_degree(local[s].cells[c]);
            deg_of[off + c] = d;
            col_of[off + c] = unknowns[static_cast<std::size_t>(d)]++;
        }
    for (const auto& [s, off] : base) {
        const auto& faces = k[s].faces;
        for (std::size_t i = 0; i < faces.size(); ++i) {
            ffs::SimplexIndex t = faces[i];
            if (!k.positive(t)) continue;
            for (std::size_t c = 0; c < local[t].cells.size(); ++c) {
                blowup::Cell img = blowup::include_cell(k[s].profile, static_cast<int>(i), local[t].cells[c]);
                std::size_t a = base[t] + c, b = off + blowup::cell_index(k[s].profile, img);
                auto d = static_cast<std::size_t>(deg_of[a]);
                REQUIRE(deg_of[b] == deg_of[a]);
                std::vector<mpq_class> row(unknowns[d], 0);
                row[col_of[a]] += 1;
                row[col_of[b]] -= 1;
                rows[d].push_back(row);
            }
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t d = 0; d <= static_cast<std::size_t>(top); ++d) out.push_back(unknowns[d] - oracle::rank(rows[d]));
    return out;
}

Section random_section(const blowup::GlobalSections& g, int degree, std::mt19937& rng, double density)
{
    Section s = blowup::zero_section(g, degree);
    std::uniform_int_distribution<int> val(-3, 3);
    std::uniform_real_distribution<double> keep(0.0, 1.0);
    for (auto& c : s.coeff)
        if (keep(rng) < density) c = val(rng);
    return s;
}

Section add(Section a, const Section& b, int sign = 1)
{
    REQUIRE(a.degree == b.degree);
    for (std::size_t i = 0; i < a.coeff.size(); ++i) a.coeff[i] += sign * b.coeff[i];
    return a;
}

bool is_zero(const Section& a)
{
    return std::all_of(a.coeff.begin(), a.coeff.end(), [](const Rational& x) { return x == 0; });
}

} // namespace

TEST_CASE("local complexes", "[blowup]")
{
    for (int j = 0; j <= 4; ++j) {
        auto lc = blowup::local_complex(ffs::JoinProfile({-1, -1, j}));
        CHECK(lc.cells.size() == (std::size_t{1} << (j + 1)) - 1);
    }
    auto lc = blowup::local_complex(ffs::JoinProfile({0, 0}));
    REQUIRE(lc.by_degree.size() == 2);
    CHECK(lc.by_degree[0].size() == 2);
    CHECK(lc.by_degree[1].size() == 1);

    for (auto prof : std::vector<std::vector<int>>{{0, 4}, {2, 1}, {-1, 1, 2}, {1, -1, 0}}) {
        auto l = blowup::local_complex(ffs::JoinProfile(prof));
        for (std::size_t d = 0; d + 1 < l.d.size(); ++d) CHECK((l.d[d + 1] * l.d[d]).is_zero());
        for (std::size_t i = 0; i < l.cells.size(); ++i) CHECK(blowup::cell_index(l.profile, l.cells[i]) == i);
    }
    CHECK_THROWS_AS(blowup::local_complex(ffs::JoinProfile({1, -1})), blowup::BlowupError);
}

TEST_CASE("cell perverse degrees", "[blowup]")
{
    ffs::JoinProfile p({1, 2});
    // apex of the cone factor is bit 2
    CHECK(blowup::cell_perverse_degree(p, {0b001, 0b011}, 1) == ExtInt(1));
    CHECK(blowup::cell_perverse_degree(p, {0b101, 0b011}, 1).is_neg_inf());
    CHECK(blowup::cell_perverse_degree(ffs::JoinProfile({-1, 2}), {0b1, 0b011}, 1).is_neg_inf());
    CHECK(blowup::cell_degree({0b101, 0b011}) == 2);
}

TEST_CASE("include and restrict cells", "[blowup]")
{
    for (auto prof : std::vector<std::vector<int>>{{0, 1}, {1, 1}, {0, 0, 2}, {-1, 1, 1}}) {
        ffs::JoinProfile p(prof);
        for (int i = 0; i <= p.dim(); ++i) {
            ffs::JoinProfile f = p.face(i);
            if (!f.positive()) continue;
            for (std::size_t c = 0; c < blowup::cell_count(f); ++c) {
                blowup::Cell g = blowup::cell_at(f, c);
                auto back = blowup::restrict_cell(p, i, blowup::include_cell(p, i, g));
                REQUIRE(back);
                CHECK(*back == g);
            }
        }
    }
}

TEST_CASE("global sections against the stacked constraints", "[blowup][oracle]")
{
    for (const auto& name : builtins::catalog()) {
        if (heavy(name)) continue;
        INFO(name);
        ffs::FilteredFaceSet k = builtins::build(name);
        auto g = blowup::global_sections(k);
        std::vector<std::size_t> got;
        for (const auto& v : g.by_degree) got.push_back(v.size());
        CHECK(got == section_ranks_oracle(k));
        CHECK(blowup::check_gluing(g).ok);
    }
}

TEST_CASE("global section examples", "[blowup]")
{
    ffs::FfsPresentation p;
    p.n = 1;
    p.simplices = {{"c", {0, -1}, {}}, {"v", {-1, 0}, {}}, {"e", {0, 0}, {"v", "c"}}};
    auto g = blowup::global_sections(ffs::FilteredFaceSet::from_presentation(p));
    CHECK(g.by_degree[0].size() == 2);

    // two segments: the apex lies outside K+ and glues nothing
    auto cs0 = blowup::global_sections(builtins::build("cone-s0"));
    CHECK(cs0.by_degree[0].size() == 4);
    CHECK(cs0.by_degree[1].size() == 2);

    // depth 0: ordinary cochains
    ffs::FilteredFaceSet torus = builtins::build("torus");
    auto gt = blowup::global_sections(torus);
    for (int d = 0; d <= 2; ++d) CHECK(gt.by_degree[static_cast<std::size_t>(d)].size() == torus.of_dim(d).size());

    ffs::FfsPresentation e;
    e.n = 1;
    e.simplices = {{"c", {0, -1}, {}}};
    CHECK_THROWS_AS(blowup::global_sections(ffs::FilteredFaceSet::from_presentation(e, false)), blowup::BlowupError);
}

TEST_CASE("local structure on all builtins", "[blowup]")
{
    for (const auto& name : builtins::catalog()) {
        INFO(name);
        auto rep = blowup::check_local_structure(builtins::build(name));
        INFO(rep.str());
        CHECK(rep.ok);
    }
}

TEST_CASE("perverse truncation", "[blowup]")
{
    ffs::FilteredFaceSet cs0 = builtins::build("cone-s0");
    auto g = blowup::global_sections(cs0);
    auto full = blowup::perverse_truncation(g, Perversity::infinite(1), Ring::Z);
    for (int d = 0; d <= full.top_degree(); ++d) CHECK(full.rank(d) == g.by_degree[static_cast<std::size_t>(d)].size());
    CHECK(blowup::blowup_cohomology(cs0, Perversity::zero(1), Ring::Z).betti == B({2, 0}));

    ffs::FilteredFaceSet circle = builtins::build("circle");
    for (int q : {0, 1, 3}) {
        auto c = blowup::perverse_truncation(circle, Perversity::constant(1, q), Ring::Z);
        CHECK(c.rank(0) == 3);
        CHECK(c.rank(1) == 3);
    }

    // monotone in q
    for (const char* name : {"cone-torus", "pinched-ribbon", "cone-cone-circle", "suspension-circle"}) {
        ffs::FilteredFaceSet k = builtins::build(name);
        auto gk = blowup::global_sections(k);
        std::vector<Perversity> qs{Perversity::constant(k.n(), -1), Perversity::zero(k.n()), Perversity::constant(k.n(), 1),
                                   Perversity::constant(k.n(), 2), Perversity::infinite(k.n())};
        for (std::size_t i = 0; i + 1 < qs.size(); ++i) {
            auto lo = blowup::perverse_truncation(gk, qs[i], Ring::Z);
            auto hi = blowup::perverse_truncation(gk, qs[i + 1], Ring::Z);
            CHECK_NOTHROW(lo.check());
            for (int d = 0; d <= lo.top_degree(); ++d) {
                auto u = static_cast<std::size_t>(d);
                if (lo.basis[u].cols() == 0) continue;
                CHECK_NOTHROW(linalg::solve_in_lattice(hi.basis[u], lo.basis[u]));
            }
        }
    }
}

TEST_CASE("blow-up cohomology examples", "[blowup][slow]")
{
    ffs::FilteredFaceSet ccp2 = builtins::build("cone-cp2");
    CHECK(blowup::blowup_cohomology(ccp2, Perversity::constant(1, 0), Ring::Q).betti == B({1, 0, 0, 0, 0, 0}));
    CHECK(blowup::blowup_cohomology(ccp2, Perversity::constant(1, 2), Ring::Q).betti == B({1, 0, 1, 0, 0, 0}));
    CHECK(blowup::blowup_cohomology(ccp2, Perversity::constant(1, 4), Ring::Q).betti == B({1, 0, 1, 0, 1, 0}));
    ffs::FilteredFaceSet scp2 = builtins::build("suspension-cp2");
    CHECK(blowup::blowup_cohomology(scp2, Perversity::constant(1, 0), Ring::Q).betti == B({1, 0, 0, 1, 0, 1}));
    ffs::FilteredFaceSet r = builtins::build("pinched-ribbon");
    CHECK(blowup::blowup_cohomology(r, Perversity::zero(1), Ring::Z).betti == B({1, 0, 0}));
}

TEST_CASE("cup product", "[blowup][random]")
{
    std::mt19937 rng(17);
    for (const char* name : {"cone-s0", "cone-circle", "pinched-ribbon", "suspension-circle", "cone-cone-circle", "join1-circle"}) {
        INFO(name);
        auto g = blowup::global_sections(builtins::build(name));
        int top = g.top_degree();
        Section one = blowup::unit(g);
        for (int trial = 0; trial < 25; ++trial) {
            std::uniform_int_distribution<int> deg(0, top);
            int da = deg(rng), db = deg(rng), dc = deg(rng);
            Section a = random_section(g, da, rng, 0.6), b = random_section(g, db, rng, 0.6), c = random_section(g, dc, rng, 0.6);
            CHECK(blowup::cup(g, one, a).coeff == a.coeff);
            CHECK(blowup::cup(g, a, one).coeff == a.coeff);
            if (da + db + dc <= top)
                CHECK(blowup::cup(g, blowup::cup(g, a, b), c).coeff == blowup::cup(g, a, blowup::cup(g, b, c)).coeff);
            if (da + db + 1 <= top) {
                Section lhs = blowup::differential(g, blowup::cup(g, a, b));
                Section rhs = add(blowup::cup(g, blowup::differential(g, a), b),
                                  blowup::cup(g, a, blowup::differential(g, b)), da % 2 ? -1 : 1);
                CHECK(is_zero(add(lhs, rhs, -1)));
            }
            if (da + db <= top) {
                Section ab = blowup::cup(g, a, b);
                for (int ell = 1; ell <= g.k.n(); ++ell)
                    CHECK(blowup::section_perverse_degree(g, ab, ell) <=
                          blowup::section_perverse_degree(g, a, ell) + blowup::section_perverse_degree(g, b, ell));
            }
        }
    }
}

TEST_CASE("cup inequality on basis sections of the cone over CP2", "[blowup][slow]")
{
    auto g = blowup::global_sections(builtins::build("cone-cp2"));
    std::mt19937 rng(23);
    int checked = 0;
    for (int trial = 0; trial < 400; ++trial) {
        std::uniform_int_distribution<int> deg(0, 2);
        int da = deg(rng), db = deg(rng);
        Section a = blowup::zero_section(g, da), b = blowup::zero_section(g, db);
        std::uniform_int_distribution<std::size_t> ia(0, a.coeff.size() - 1), ib(0, b.coeff.size() - 1);
        a.coeff[ia(rng)] = 1;
        b.coeff[ib(rng)] = 1;
        Section ab = blowup::cup(g, a, b);
        CHECK(blowup::section_perverse_degree(g, ab, 1) <=
              blowup::section_perverse_degree(g, a, 1) + blowup::section_perverse_degree(g, b, 1));
        ++checked;
    }
    CHECK(checked == 400);
}

TEST_CASE("comparison map", "[blowup]")
{
    auto c = blowup::compare(builtins::build("cone-s0"), Perversity::zero(1), Ring::Z);
    CHECK_FALSE(c.defect);
    CHECK(c.quasi_isomorphism);
    CHECK(c.h_blowup.betti == B({2, 0}));

    auto r = blowup::compare(builtins::build("pinched-ribbon"), Perversity::zero(1), Ring::Z);
    CHECK_FALSE(r.defect);
    CHECK(r.quasi_isomorphism);
    CHECK(r.h_blowup.same_groups(r.h_gm));

    auto t = blowup::compare(builtins::build("cone-torus"), Perversity::constant(1, 1), Ring::Q);
    CHECK(t.quasi_isomorphism);
    CHECK(t.h_blowup.betti == B({1, 2, 0, 0}));

    CHECK_THROWS_AS(blowup::compare(builtins::build("cone-s0"), Perversity::constant(1, -1), Ring::Z), PerversityError);
    CHECK_THROWS_AS(blowup::compare(builtins::build("cone-s0"), Perversity::infinite(1), Ring::Z), PerversityError);
}

TEST_CASE("blow-up cone formula", "[blowup][cone]")
{
    std::vector<ffs::FilteredFaceSet> bases{builtins::base("s0", 1), builtins::base("circle", 1), builtins::base("torus", 1),
                                           ffs::regular_part(builtins::build("pinched-ribbon"))};
    for (const auto& k : bases)
        for (int kd = 0; kd <= 2; ++kd)
            for (int q : {0, 1, 2}) {
                Perversity qq = Perversity::constant(1, q);
                auto rep = blowup::check_blowup_cone_formula(k, kd, qq);
                INFO(rep.str());
                CHECK(rep.ok);
                auto hj = blowup::blowup_cohomology(ffs::join_simplex(kd, k), qq, Ring::Q).betti;
                auto hk = gm::ordinary_cohomology(k, Ring::Q).betti;
                for (std::size_t i = 0; i < hj.size(); ++i) CHECK(hj[i] == (static_cast<int>(i) <= q && i < hk.size() ? hk[i] : 0));
            }
    auto cp2 = blowup::check_blowup_cone_formula(builtins::base("cp2", 1), 0, Perversity::constant(1, 4));
    CHECK(cp2.ok);
}

TEST_CASE("infinite and zero perversity", "[blowup]")
{
    for (const auto& name : builtins::catalog()) {
        INFO(name);
        ffs::FilteredFaceSet k = builtins::build(name);
        auto inf = blowup::check_infinite_perversity(k);
        INFO(inf.str());
        CHECK(inf.ok);
        if (ffs::is_normal(k)) {
            auto zero = blowup::check_zero_perversity_normal(k);
            INFO(zero.str());
            CHECK(zero.ok);
        }
    }
    CHECK_THROWS_AS(blowup::check_zero_perversity_normal(builtins::build("pinched-ribbon")), ffs::FfsError);
    auto nr = ffs::normalize(builtins::build("pinched-ribbon")).normal;
    CHECK(blowup::blowup_cohomology(nr, Perversity::zero(1), Ring::Q).betti == B({1, 0, 0}));
}

TEST_CASE("normalization leaves blow-up cohomology unchanged", "[blowup]")
{
    for (const auto& name : builtins::catalog()) {
        if (heavy(name)) continue;
        ffs::FilteredFaceSet k = builtins::build(name);
        ffs::FilteredFaceSet nk = ffs::normalize(k).normal;
        for (const auto& q : {Perversity::zero(k.n()), Perversity::constant(k.n(), 1), Perversity::constant(k.n(), 2),
                              Perversity::top(k.n()), Perversity::infinite(k.n())}) {
            INFO(name << " q=" << q.str());
            CHECK(blowup::blowup_cohomology(k, q, Ring::Z).same_groups(blowup::blowup_cohomology(nk, q, Ring::Z)));
        }
    }
}
