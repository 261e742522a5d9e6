#include "perverse/gm_chains.hpp"

#include "perverse/parallel.hpp"

#include <sstream>

namespace perverse::gm {

using linalg::IntMatrix;
using linalg::Integer;

bool AdmissibilityProfile::admissible() const
{
    for (const auto& e : entries)
        if (e.degree > e.bound) return false;
    return true;
}

AdmissibilityProfile admissibility_profile(const ffs::Simplex& s, const Perversity& p)
{
    if (p.n() != s.profile.n())
        throw PerversityError("perversity has n=" + std::to_string(p.n()) + " but the simplex has n=" +
                              std::to_string(s.profile.n()));
    AdmissibilityProfile out;
    out.simplex = s.id;
    for (int ell = 0; ell <= p.n(); ++ell) {
        AdmissibilityEntry e;
        e.ell = ell;
        e.degree = s.profile.perverse_degree(ell);
        ExtInt pv = ell == 0 ? ExtInt(0) : p(ell);
        e.bound = pv.is_pos_inf() ? ExtInt::pos_inf() : ExtInt(s.dim() - ell + pv.value());
        out.entries.push_back(e);
    }
    return out;
}

bool admissible(const ffs::Simplex& s, const Perversity& p)
{
    if (p.is_infinite()) return true;
    for (int ell = 1; ell <= p.n(); ++ell) {
        ExtInt d = s.profile.perverse_degree(ell);
        if (d.finite() && d.value() > s.dim() - ell + p.at(ell)) return false;
    }
    return true;
}

namespace {

struct DimIndex {
    std::vector<std::vector<ffs::SimplexIndex>> by_dim;
    std::vector<std::size_t> pos;  // position within its dimension
};

DimIndex dim_index(const ffs::FilteredFaceSet& k)
{
    DimIndex d;
    d.by_dim.assign(k.empty() ? 0 : static_cast<std::size_t>(k.dim()) + 1, {});
    d.pos.assign(k.size(), 0);
    for (ffs::SimplexIndex s = 0; s < k.size(); ++s) {
        auto& v = d.by_dim[static_cast<std::size_t>(k[s].dim())];
        d.pos[s] = v.size();
        v.push_back(s);
    }
    return d;
}

} // namespace

std::vector<IntMatrix> boundary_matrices(const ffs::FilteredFaceSet& k)
{
    DimIndex d = dim_index(k);
    std::vector<IntMatrix> out;
    for (std::size_t q = 0; q < d.by_dim.size(); ++q) {
        std::size_t rows = q == 0 ? 0 : d.by_dim[q - 1].size();
        IntMatrix m(rows, d.by_dim[q].size());
        if (q > 0)
            for (std::size_t c = 0; c < d.by_dim[q].size(); ++c) {
                const auto& faces = k[d.by_dim[q][c]].faces;
                for (std::size_t i = 0; i < faces.size(); ++i) m.add(d.pos[faces[i]], c, i % 2 ? -1 : 1);
            }
        out.push_back(std::move(m));
    }
    return out;
}

linalg::ChainComplexPresentation gm_complex(const ffs::FilteredFaceSet& k, const Perversity& p, linalg::Ring ring)
{
    if (p.n() != k.n())
        throw PerversityError("perversity has n=" + std::to_string(p.n()) + " but the complex has n=" +
                              std::to_string(k.n()));
    DimIndex d = dim_index(k);
    std::vector<IntMatrix> bd = boundary_matrices(k);
    std::size_t top = d.by_dim.size();
    std::vector<std::vector<bool>> adm(top);
    for (std::size_t q = 0; q < top; ++q)
        for (auto s : d.by_dim[q]) adm[q].push_back(admissible(k[s], p));

    linalg::ChainComplexPresentation c;
    c.ring = ring;
    c.cohomological = false;
    c.ambient_rank.resize(top);
    c.basis.resize(top);
    c.diff.resize(top);
    parallel_for(top, [&](std::size_t q) {
        std::vector<std::size_t> cols, bad_rows;
        for (std::size_t i = 0; i < adm[q].size(); ++i)
            if (adm[q][i]) cols.push_back(i);
        if (q > 0)
            for (std::size_t i = 0; i < adm[q - 1].size(); ++i)
                if (!adm[q - 1][i]) bad_rows.push_back(i);
        IntMatrix constraint = bd[q].select_columns(cols).select_rows(bad_rows);
        IntMatrix ker = linalg::kernel_basis(constraint);
        IntMatrix basis(adm[q].size(), ker.cols());
        for (std::size_t j = 0; j < ker.cols(); ++j)
            for (const auto& [r, v] : ker.col(j)) basis.set(cols[r], j, v);
        c.ambient_rank[q] = adm[q].size();
        c.basis[q] = std::move(basis);
    });
    parallel_for(top, [&](std::size_t q) {
        if (q == 0) {
            c.diff[0] = IntMatrix(0, c.basis[0].cols());
            return;
        }
        c.diff[q] = linalg::solve_in_lattice(c.basis[q - 1], bd[q] * c.basis[q]);
    });
    return c;
}

linalg::HomologyResult gm_homology(const ffs::FilteredFaceSet& k, const Perversity& p, linalg::Ring ring)
{
    return linalg::homology(gm_complex(k, p, ring));
}

linalg::HomologyResult gm_cohomology(const ffs::FilteredFaceSet& k, const Perversity& p, linalg::Ring ring)
{
    return linalg::homology(gm_complex(k, p, ring).dual());
}

linalg::HomologyResult ordinary_homology(const ffs::FilteredFaceSet& k, linalg::Ring ring)
{
    return gm_homology(k, Perversity::infinite(k.n()), ring);
}

linalg::HomologyResult ordinary_cohomology(const ffs::FilteredFaceSet& k, linalg::Ring ring)
{
    return gm_cohomology(k, Perversity::infinite(k.n()), ring);
}

namespace {

std::string group_str(const linalg::HomologyResult& h, std::size_t i)
{
    std::ostringstream os;
    os << (i < h.betti.size() ? h.betti[i] : 0);
    if (i < h.torsion.size())
        for (const auto& t : h.torsion[i]) os << "+Z/" << t;
    return os.str();
}

bool group_equal(const linalg::HomologyResult& a, std::size_t i, const linalg::HomologyResult& b, std::size_t j)
{
    auto betti = [](const linalg::HomologyResult& h, std::size_t x) { return x < h.betti.size() ? h.betti[x] : 0; };
    auto tors = [](const linalg::HomologyResult& h, std::size_t x) {
        return x < h.torsion.size() ? h.torsion[x] : std::vector<Integer>{};
    };
    return betti(a, i) == betti(b, j) && tors(a, i) == tors(b, j);
}

bool group_zero(const linalg::HomologyResult& a, std::size_t i)
{
    return (i >= a.betti.size() || a.betti[i] == 0) && (i >= a.torsion.size() || a.torsion[i].empty());
}

} // namespace

ffs::CheckReport check_gm_cone_formula(const ffs::FilteredFaceSet& k, int kdim, const Perversity& p, linalg::Ring ring)
{
    int ell = k.depth() + 1;
    if (ell > k.n()) throw ffs::FfsError("cone formula: depth(K)+1 exceeds n");
    if (p.is_infinite()) throw PerversityError("cone formula needs a finite perversity");
    if (p.at(ell) > ell - 2) throw PerversityError("cone formula needs p(ell) <= ell-2");
    for (int lp = 1; lp < ell; ++lp)
        if (p.at(ell) - p.at(lp) > ell - lp)
            throw PerversityError("cone formula needs p(ell)-p(l') <= ell-l' for l' < ell");

    ffs::FilteredFaceSet joined = ffs::join_simplex(kdim, k, ell);
    linalg::HomologyResult lhs = gm_cohomology(joined, p, ring);
    linalg::HomologyResult rhs = gm_cohomology(k, p, ring);
    int cutoff = ell - 2 - p.at(ell);
    ffs::CheckReport rep;
    std::size_t top = std::max(lhs.betti.size(), rhs.betti.size());
    for (std::size_t i = 0; i < top; ++i) {
        bool ok = static_cast<int>(i) <= cutoff ? group_equal(lhs, i, rhs, i) : group_zero(lhs, i);
        std::string line = "H^" + std::to_string(i) + ": join " + group_str(lhs, i) + ", K " + group_str(rhs, i);
        if (ok) rep.note(line);
        else rep.fail(line + (static_cast<int>(i) <= cutoff ? " (should agree)" : " (should vanish)"));
    }
    return rep;
}

ffs::CheckReport check_prism_invariance(const ffs::FilteredFaceSet& k, const Perversity& p, linalg::Ring ring)
{
    ffs::FilteredFaceSet prism = ffs::product_with_face_set(k, ffs::standard_simplex(1));
    linalg::HomologyResult lhs = gm_homology(prism, p, ring);
    linalg::HomologyResult rhs = gm_homology(k, p, ring);
    ffs::CheckReport rep;
    std::size_t top = std::max(lhs.betti.size(), rhs.betti.size());
    for (std::size_t i = 0; i < top; ++i) {
        std::string line = "H_" + std::to_string(i) + ": prism " + group_str(lhs, i) + ", K " + group_str(rhs, i);
        if (group_equal(lhs, i, rhs, i)) rep.note(line);
        else rep.fail(line);
    }
    return rep;
}

} // namespace perverse::gm
