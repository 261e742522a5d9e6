#include "perverse/blowup.hpp"

#include "perverse/gm_chains.hpp"
#include "perverse/parallel.hpp"

#include <bit>
#include <numeric>
#include <sstream>

namespace perverse::blowup {

using ffs::JoinProfile;
using ffs::SimplexIndex;
using linalg::IntMatrix;
using linalg::Integer;
using linalg::Rational;

int factor_size(const JoinProfile& p, int a)
{
    return a < p.n() ? p.j[a] + 2 : p.j[a] + 1;
}

int cell_degree(const Cell& f)
{
    int d = 0;
    for (auto m : f) d += std::popcount(m) - 1;
    return d;
}

ExtInt cell_perverse_degree(const JoinProfile& p, const Cell& f, int ell)
{
    int n = p.n();
    int a = n - ell;
    if (ell < 1 || ell > n) return ExtInt::neg_inf();
    if (p.j[a] == -1) return ExtInt::neg_inf();
    if (f[a] >> (p.j[a] + 1) & 1u) return ExtInt::neg_inf();
    int tail = 0;
    for (int m = a + 1; m <= n; ++m) tail += std::popcount(f[m]) - 1;
    return ExtInt(tail);
}

std::size_t cell_count(const JoinProfile& p)
{
    std::size_t c = 1;
    for (int a = 0; a <= p.n(); ++a) c *= (std::size_t{1} << factor_size(p, a)) - 1;
    return c;
}

std::size_t cell_index(const JoinProfile& p, const Cell& f)
{
    std::size_t idx = 0, stride = 1;
    for (int a = 0; a <= p.n(); ++a) {
        idx += (f[a] - 1) * stride;
        stride *= (std::size_t{1} << factor_size(p, a)) - 1;
    }
    return idx;
}

Cell cell_at(const JoinProfile& p, std::size_t index)
{
    Cell f(p.n() + 1);
    for (int a = 0; a <= p.n(); ++a) {
        std::size_t radix = (std::size_t{1} << factor_size(p, a)) - 1;
        f[a] = static_cast<std::uint32_t>(index % radix + 1);
        index /= radix;
    }
    return f;
}

int coboundary_sign(const Cell& f, int a, int v)
{
    int e = 0;
    for (int m = 0; m < a; ++m) e += std::popcount(f[m]) - 1;
    e += std::popcount(f[a] & ((1u << v) - 1));
    return e % 2 ? -1 : 1;
}

Cell include_cell(const JoinProfile& sigma, int i, const Cell& face_cell)
{
    int a = sigma.factor_of_vertex(i);
    int r = sigma.local_index(i);
    Cell f = face_cell;
    std::uint32_t m = f[a];
    std::uint32_t low = m & ((1u << r) - 1);
    f[a] = low | ((m >> r) << (r + 1));
    return f;
}

std::optional<Cell> restrict_cell(const JoinProfile& sigma, int i, const Cell& f)
{
    int a = sigma.factor_of_vertex(i);
    int r = sigma.local_index(i);
    if (f[a] >> r & 1u) return std::nullopt;
    Cell g = f;
    std::uint32_t m = f[a];
    g[a] = (m & ((1u << r) - 1)) | ((m >> (r + 1)) << r);
    return g;
}

namespace {

void require_positive(const JoinProfile& p)
{
    if (!p.positive()) throw BlowupError("blow-up needs a profile with j_n >= 0, got " + p.str());
}

// facets G - v of a cell, with the sign of e_G in d(e_{G-v})
template <class F>
void for_each_facet(const Cell& g, F&& fn)
{
    for (std::size_t a = 0; a < g.size(); ++a) {
        if (std::popcount(g[a]) < 2) continue;
        for (int v = 0; v < 32; ++v) {
            if (!(g[a] >> v & 1u)) continue;
            Cell f = g;
            f[a] &= ~(1u << v);
            fn(f, coboundary_sign(f, static_cast<int>(a), v));
        }
    }
}

} // namespace

LocalComplex local_complex(const JoinProfile& p)
{
    require_positive(p);
    LocalComplex lc;
    lc.profile = p;
    std::size_t count = cell_count(p);
    lc.cells.reserve(count);
    lc.pos.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        Cell f = cell_at(p, i);
        auto deg = static_cast<std::size_t>(cell_degree(f));
        if (lc.by_degree.size() <= deg) lc.by_degree.resize(deg + 1);
        lc.pos[i] = lc.by_degree[deg].size();
        lc.by_degree[deg].push_back(i);
        lc.cells.push_back(std::move(f));
    }
    for (std::size_t k = 0; k < lc.by_degree.size(); ++k) {
        std::size_t rows = k + 1 < lc.by_degree.size() ? lc.by_degree[k + 1].size() : 0;
        IntMatrix m(rows, lc.by_degree[k].size());
        if (k + 1 < lc.by_degree.size())
            for (std::size_t r = 0; r < rows; ++r)
                for_each_facet(lc.cells[lc.by_degree[k + 1][r]],
                               [&](const Cell& f, int sign) { m.add(r, lc.pos[cell_index(p, f)], sign); });
        lc.d.push_back(std::move(m));
    }
    return lc;
}

std::size_t GlobalSections::class_of_cell(SimplexIndex s, const Cell& f) const
{
    return class_of[offset[s] + cell_index(k[s].profile, f)];
}

GlobalSections global_sections(const ffs::FilteredFaceSet& k)
{
    GlobalSections g;
    g.k = k;
    g.offset.assign(k.size(), 0);
    std::size_t total = 0;
    for (SimplexIndex s = 0; s < k.size(); ++s) {
        g.offset[s] = total;
        if (k.positive(s)) total += cell_count(k[s].profile);
    }
    if (k.positive_count() == 0) throw BlowupError("blow-up needs a non-empty regular part");

    std::vector<std::size_t> parent(total);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (SimplexIndex s = 0; s < k.size(); ++s) {
        if (!k.positive(s)) continue;
        const auto& sp = k[s].profile;
        for (int i = 0; i < static_cast<int>(k[s].faces.size()); ++i) {
            SimplexIndex f = k[s].faces[i];
            if (!k.positive(f)) continue;
            const auto& fp = k[f].profile;
            std::size_t fc = cell_count(fp);
            for (std::size_t c = 0; c < fc; ++c) {
                std::size_t x = find(g.offset[f] + c);
                std::size_t y = find(g.offset[s] + cell_index(sp, include_cell(sp, i, cell_at(fp, c))));
                if (x != y) parent[std::max(x, y)] = std::min(x, y);
            }
        }
    }

    int n = k.n();
    g.class_of.assign(total, 0);
    std::vector<std::size_t> label(total, SIZE_MAX);
    for (SimplexIndex s = 0; s < k.size(); ++s) {
        if (!k.positive(s)) continue;
        const auto& sp = k[s].profile;
        std::size_t cc = cell_count(sp);
        for (std::size_t c = 0; c < cc; ++c) {
            std::size_t root = find(g.offset[s] + c);
            Cell f = cell_at(sp, c);
            if (label[root] == SIZE_MAX) {
                label[root] = g.rep.size();
                g.rep.emplace_back(s, c);
                g.degree.push_back(cell_degree(f));
                g.perverse_degree.emplace_back(n + 1, ExtInt::neg_inf());
            }
            std::size_t cls = label[root];
            g.class_of[g.offset[s] + c] = cls;
            for (int ell = 1; ell <= n; ++ell)
                g.perverse_degree[cls][ell] = std::max(g.perverse_degree[cls][ell], cell_perverse_degree(sp, f, ell));
        }
    }

    int top = *std::max_element(g.degree.begin(), g.degree.end());
    g.by_degree.assign(static_cast<std::size_t>(top) + 1, {});
    g.pos.assign(g.class_count(), 0);
    for (std::size_t c = 0; c < g.class_count(); ++c) {
        auto& v = g.by_degree[static_cast<std::size_t>(g.degree[c])];
        g.pos[c] = v.size();
        v.push_back(c);
    }
    g.d.resize(g.by_degree.size());
    parallel_for(g.by_degree.size(), [&](std::size_t q) {
        std::size_t rows = q + 1 < g.by_degree.size() ? g.by_degree[q + 1].size() : 0;
        IntMatrix m(rows, g.by_degree[q].size());
        for (std::size_t r = 0; r < rows; ++r) {
            auto [s, c] = g.rep[g.by_degree[q + 1][r]];
            for_each_facet(cell_at(g.k[s].profile, c),
                           [&](const Cell& f, int sign) { m.add(r, g.pos[g.class_of_cell(s, f)], sign); });
        }
        g.d[q] = std::move(m);
    });
    return g;
}

bool admissible_class(const GlobalSections& g, std::size_t cls, const Perversity& q)
{
    if (q.is_infinite()) return true;
    for (int ell = 1; ell <= q.n(); ++ell) {
        const ExtInt& d = g.perverse_degree[cls][ell];
        if (d.finite() && d.value() > q.at(ell)) return false;
    }
    return true;
}

linalg::ChainComplexPresentation global_complex(const GlobalSections& g, linalg::Ring ring)
{
    return perverse_truncation(g, Perversity::infinite(g.k.n()), ring);
}

linalg::ChainComplexPresentation perverse_truncation(const GlobalSections& g, const Perversity& q, linalg::Ring ring)
{
    if (q.n() != g.k.n())
        throw PerversityError("perversity has n=" + std::to_string(q.n()) + " but the complex has n=" +
                              std::to_string(g.k.n()));
    std::size_t top = g.by_degree.size();
    std::vector<std::vector<bool>> adm(top);
    for (std::size_t k = 0; k < top; ++k)
        for (auto c : g.by_degree[k]) adm[k].push_back(admissible_class(g, c, q));

    linalg::ChainComplexPresentation out;
    out.ring = ring;
    out.cohomological = true;
    out.ambient_rank.resize(top);
    out.basis.resize(top);
    out.diff.resize(top);
    parallel_for(top, [&](std::size_t k) {
        std::vector<std::size_t> cols, bad_rows;
        for (std::size_t i = 0; i < adm[k].size(); ++i)
            if (adm[k][i]) cols.push_back(i);
        if (k + 1 < top)
            for (std::size_t i = 0; i < adm[k + 1].size(); ++i)
                if (!adm[k + 1][i]) bad_rows.push_back(i);
        IntMatrix ker = linalg::kernel_basis(g.d[k].select_columns(cols).select_rows(bad_rows));
        IntMatrix basis(adm[k].size(), ker.cols());
        for (std::size_t j = 0; j < ker.cols(); ++j)
            for (const auto& [r, v] : ker.col(j)) basis.set(cols[r], j, v);
        out.ambient_rank[k] = adm[k].size();
        out.basis[k] = std::move(basis);
    });
    parallel_for(top, [&](std::size_t k) {
        if (k + 1 == top) {
            out.diff[k] = IntMatrix(0, out.basis[k].cols());
            return;
        }
        out.diff[k] = linalg::solve_in_lattice(out.basis[k + 1], g.d[k] * out.basis[k]);
    });
    return out;
}

linalg::ChainComplexPresentation perverse_truncation(const ffs::FilteredFaceSet& k, const Perversity& q,
                                                     linalg::Ring ring)
{
    return perverse_truncation(global_sections(k), q, ring);
}

linalg::HomologyResult blowup_cohomology(const ffs::FilteredFaceSet& k, const Perversity& q, linalg::Ring ring)
{
    return linalg::homology(perverse_truncation(k, q, ring));
}

Section zero_section(const GlobalSections& g, int degree)
{
    Section s;
    s.degree = degree;
    std::size_t size = degree >= 0 && degree <= g.top_degree() ? g.by_degree[static_cast<std::size_t>(degree)].size() : 0;
    s.coeff.assign(size, Rational(0));
    return s;
}

Section unit(const GlobalSections& g)
{
    Section s = zero_section(g, 0);
    for (auto& c : s.coeff) c = 1;
    return s;
}

Section differential(const GlobalSections& g, const Section& a)
{
    Section out = zero_section(g, a.degree + 1);
    if (a.degree < 0 || a.degree >= g.top_degree()) return out;
    const IntMatrix& d = g.d[static_cast<std::size_t>(a.degree)];
    for (std::size_t c = 0; c < d.cols(); ++c) {
        if (a.coeff[c] == 0) continue;
        for (const auto& [r, v] : d.col(c)) out.coeff[r] += Rational(v) * a.coeff[c];
    }
    return out;
}

Section cup(const GlobalSections& g, const Section& a, const Section& b)
{
    Section out = zero_section(g, a.degree + b.degree);
    if (out.coeff.empty()) return out;
    const auto& targets = g.by_degree[static_cast<std::size_t>(out.degree)];
    for (std::size_t t = 0; t < targets.size(); ++t) {
        auto [s, c] = g.rep[targets[t]];
        Cell cell = cell_at(g.k[s].profile, c);
        std::size_t nf = cell.size();
        std::vector<std::vector<int>> verts(nf);
        for (std::size_t m = 0; m < nf; ++m)
            for (int v = 0; v < 32; ++v)
                if (cell[m] >> v & 1u) verts[m].push_back(v);
        // split point per factor: front = first split+1 vertices, back = the rest from split on
        std::vector<int> split(nf, 0);
        Rational sum = 0;
        auto visit = [&](auto&& self, std::size_t m, int remaining) -> void {
            if (m == nf) {
                if (remaining != 0) return;
                Cell front(nf), back(nf);
                int sign_exp = 0;
                for (std::size_t i = 0; i < nf; ++i) {
                    int len = static_cast<int>(verts[i].size());
                    for (int x = 0; x <= split[i]; ++x) front[i] |= 1u << verts[i][x];
                    for (int x = split[i]; x < len; ++x) back[i] |= 1u << verts[i][x];
                    for (std::size_t j = 0; j < i; ++j) sign_exp += split[i] * (static_cast<int>(verts[j].size()) - 1 - split[j]);
                }
                const Rational& x = a.coeff[g.pos[g.class_of_cell(s, front)]];
                if (x == 0) return;
                const Rational& y = b.coeff[g.pos[g.class_of_cell(s, back)]];
                if (y == 0) return;
                Rational term = x * y;
                if (sign_exp % 2) sum -= term;
                else sum += term;
                return;
            }
            int len = static_cast<int>(verts[m].size());
            for (int sp = 0; sp < len && sp <= remaining; ++sp) {
                split[m] = sp;
                self(self, m + 1, remaining - sp);
            }
        };
        visit(visit, 0, a.degree);
        out.coeff[t] = sum;
    }
    return out;
}

ExtInt section_perverse_degree(const GlobalSections& g, const Section& a, int ell)
{
    ExtInt d = ExtInt::neg_inf();
    if (a.degree < 0 || a.degree > g.top_degree()) return d;
    const auto& classes = g.by_degree[static_cast<std::size_t>(a.degree)];
    for (std::size_t i = 0; i < a.coeff.size(); ++i)
        if (a.coeff[i] != 0) d = std::max(d, g.perverse_degree[classes[i]][ell]);
    return d;
}

Comparison compare(const ffs::FilteredFaceSet& k, const Perversity& q, linalg::Ring ring)
{
    if (q.is_infinite()) throw PerversityError("compare needs a finite perversity q >= 0");
    for (int i = 1; i <= q.n(); ++i)
        if (q.at(i) < 0) throw PerversityError("compare needs q >= 0, but q(" + std::to_string(i) + ") < 0");
    Comparison cmp;
    cmp.q = q;
    cmp.p = complement(q);
    GlobalSections g = global_sections(k);
    cmp.blowup = perverse_truncation(g, q, ring);
    linalg::ChainComplexPresentation gm_chains = gm::gm_complex(k, cmp.p, ring);
    cmp.gm = gm_chains.dual();

    // simplices of each dimension in (dimension, id) order, as in the GM complex
    std::vector<std::vector<SimplexIndex>> by_dim(gm_chains.basis.size());
    for (SimplexIndex s = 0; s < k.size(); ++s) by_dim[static_cast<std::size_t>(k[s].dim())].push_back(s);

    std::size_t top = std::max(cmp.blowup.basis.size(), cmp.gm.basis.size());
    cmp.chi.resize(top);
    for (std::size_t d = 0; d < top; ++d) {
        std::size_t brank = d < cmp.blowup.basis.size() ? cmp.blowup.basis[d].cols() : 0;
        std::size_t grank = d < cmp.gm.basis.size() ? cmp.gm.basis[d].cols() : 0;
        if (brank == 0 || grank == 0) {
            cmp.chi[d] = IntMatrix(grank, brank);
            continue;
        }
        // E: k-simplices x degree-k classes, 1 at the class of the full cell
        IntMatrix e(by_dim[d].size(), g.by_degree[d].size());
        for (std::size_t r = 0; r < by_dim[d].size(); ++r) {
            SimplexIndex s = by_dim[d][r];
            if (!k.positive(s)) continue;
            const auto& sp = k[s].profile;
            Cell full(sp.n() + 1);
            for (int a = 0; a <= sp.n(); ++a) full[a] = (1u << factor_size(sp, a)) - 1;
            e.set(r, g.pos[g.class_of_cell(s, full)], 1);
        }
        cmp.chi[d] = gm_chains.basis[d].transpose() * e * cmp.blowup.basis[d];
    }
    cmp.defect = linalg::chain_map_defect(cmp.blowup, cmp.gm, cmp.chi);
    cmp.h_blowup = linalg::homology(cmp.blowup);
    cmp.h_gm = linalg::homology(cmp.gm);
    if (!cmp.defect) cmp.quasi_isomorphism = linalg::is_quasi_isomorphism(cmp.blowup, cmp.gm, cmp.chi);
    return cmp;
}

ffs::CheckReport check_local_structure(const ffs::FilteredFaceSet& k)
{
    ffs::CheckReport rep;
    std::map<JoinProfile, LocalComplex> cache;
    auto local = [&](const JoinProfile& p) -> const LocalComplex& {
        auto it = cache.find(p);
        if (it == cache.end()) it = cache.emplace(p, local_complex(p)).first;
        return it->second;
    };
    for (SimplexIndex s = 0; s < k.size(); ++s) {
        if (!k.positive(s)) continue;
        const auto& sp = k[s].profile;
        const LocalComplex& lc = local(sp);
        for (std::size_t q = 0; q + 1 < lc.d.size(); ++q)
            if (!(lc.d[q + 1] * lc.d[q]).is_zero()) rep.fail("d*d != 0 on the prism of " + sp.str());
        for (int i = 0; i < static_cast<int>(k[s].faces.size()); ++i) {
            SimplexIndex f = k[s].faces[i];
            if (!k.positive(f)) continue;
            const auto& fp = k[f].profile;
            for (std::size_t c = 0; c < lc.cells.size(); ++c) {
                const Cell& cell = lc.cells[c];
                auto r = restrict_cell(sp, i, cell);
                if (!r) continue;
                if (include_cell(sp, i, *r) != cell) rep.fail("restriction and inclusion disagree on " + sp.str());
                for (int ell = 1; ell <= k.n(); ++ell)
                    if (cell_perverse_degree(fp, *r, ell) > cell_perverse_degree(sp, cell, ell))
                        rep.fail("restriction along d" + std::to_string(i) + " raises the " + std::to_string(ell) +
                                 "-degree on " + sp.str());
            }
            // restriction commutes with d: compare d(res e_F) with res(d e_F) for every cell F of sigma
            for (std::size_t c = 0; c < lc.cells.size(); ++c) {
                const Cell& cell = lc.cells[c];
                std::map<std::size_t, int> lhs, rhs;
                if (auto r = restrict_cell(sp, i, cell))
                    for (std::size_t a = 0; a < r->size(); ++a)
                        for (int v = 0; v < factor_size(fp, static_cast<int>(a)); ++v) {
                            if ((*r)[a] >> v & 1u) continue;
                            Cell up = *r;
                            up[a] |= 1u << v;
                            lhs[cell_index(fp, up)] += coboundary_sign(*r, static_cast<int>(a), v);
                        }
                for (std::size_t a = 0; a < cell.size(); ++a)
                    for (int v = 0; v < factor_size(sp, static_cast<int>(a)); ++v) {
                        if (cell[a] >> v & 1u) continue;
                        Cell up = cell;
                        up[a] |= 1u << v;
                        if (auto r = restrict_cell(sp, i, up))
                            rhs[cell_index(fp, *r)] += coboundary_sign(cell, static_cast<int>(a), v);
                    }
                std::erase_if(lhs, [](const auto& e) { return e.second == 0; });
                std::erase_if(rhs, [](const auto& e) { return e.second == 0; });
                if (lhs != rhs) {
                    rep.fail("restriction along d" + std::to_string(i) + " does not commute with d on " + sp.str());
                    break;
                }
            }
        }
    }
    rep.note(std::to_string(cache.size()) + " prism types checked");
    return rep;
}

ffs::CheckReport check_gluing(const GlobalSections& g)
{
    ffs::CheckReport rep;
    const auto& k = g.k;
    for (SimplexIndex s = 0; s < k.size(); ++s) {
        if (!k.positive(s)) continue;
        const auto& sp = k[s].profile;
        std::size_t cc = cell_count(sp);
        for (std::size_t c = 0; c < cc; ++c) {
            Cell cell = cell_at(sp, c);
            int deg = cell_degree(cell);
            if (deg == 0) continue;
            std::size_t cls = g.class_of[g.offset[s] + c];
            std::map<std::size_t, int> here;
            for_each_facet(cell, [&](const Cell& f, int sign) { here[g.pos[g.class_of_cell(s, f)]] += sign; });
            std::erase_if(here, [](const auto& e) { return e.second == 0; });
            std::map<std::size_t, int> global;
            const IntMatrix& d = g.d[static_cast<std::size_t>(deg - 1)];
            for (std::size_t col = 0; col < d.cols(); ++col) {
                Integer v = d.get(g.pos[cls], col);
                if (v != 0) global[col] = static_cast<int>(v.get_si());
            }
            if (here != global) {
                rep.fail("d at class of ('" + k[s].id + "', " + std::to_string(c) + ") depends on the representative");
                return rep;
            }
        }
    }
    rep.note(std::to_string(g.class_count()) + " classes consistent");
    return rep;
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

void compare_all(ffs::CheckReport& rep, const std::string& what, const linalg::HomologyResult& a,
                 const std::string& an, const linalg::HomologyResult& b, const std::string& bn)
{
    std::size_t top = std::max(a.betti.size(), b.betti.size());
    for (std::size_t i = 0; i < top; ++i) {
        std::string line = what + " H^" + std::to_string(i) + ": " + an + " " + group_str(a, i) + ", " + bn + " " +
                           group_str(b, i);
        if (group_equal(a, i, b, i)) rep.note(line);
        else rep.fail(line);
    }
}

} // namespace

ffs::CheckReport check_blowup_cone_formula(const ffs::FilteredFaceSet& k, int kdim, const Perversity& q,
                                           linalg::Ring ring)
{
    int ell = k.depth() + 1;
    if (ell > k.n()) throw ffs::FfsError("cone formula: needs depth(K) + 1 <= n");
    ffs::FilteredFaceSet joined = ffs::join_simplex(kdim, k, ell);
    linalg::HomologyResult lhs = blowup_cohomology(joined, q, ring);
    linalg::HomologyResult rhs = blowup_cohomology(k, q, ring);
    ExtInt cutoff = q(ell);
    ffs::CheckReport rep;
    std::size_t top = std::max(lhs.betti.size(), rhs.betti.size());
    for (std::size_t i = 0; i < top; ++i) {
        bool below = ExtInt(static_cast<int>(i)) <= cutoff;
        bool ok = below ? group_equal(lhs, i, rhs, i) : group_zero(lhs, i);
        std::string line = "H^" + std::to_string(i) + ": join " + group_str(lhs, i) + ", K " + group_str(rhs, i);
        if (ok) rep.note(line);
        else rep.fail(line + (below ? " (should agree)" : " (should vanish)"));
    }
    return rep;
}

ffs::CheckReport check_infinite_perversity(const ffs::FilteredFaceSet& k, linalg::Ring ring)
{
    ffs::FilteredFaceSet reg = ffs::regular_part(k);
    linalg::HomologyResult full = blowup_cohomology(k, Perversity::infinite(k.n()), ring);
    linalg::HomologyResult blow_reg = blowup_cohomology(reg, Perversity::infinite(k.n()), ring);
    linalg::HomologyResult ord_reg = gm::ordinary_cohomology(reg, ring);
    ffs::CheckReport rep;
    compare_all(rep, "inf", full, "K", blow_reg, "K^[0]");
    compare_all(rep, "K^[0]", blow_reg, "blow-up", ord_reg, "simplicial");
    return rep;
}

ffs::CheckReport check_zero_perversity_normal(const ffs::FilteredFaceSet& k, linalg::Ring ring)
{
    if (!ffs::is_normal(k)) throw ffs::FfsError("check_zero_perversity_normal needs a normal filtered face set");
    int n = k.n();
    linalg::HomologyResult ord = gm::ordinary_cohomology(k, ring);
    linalg::HomologyResult zero = blowup_cohomology(k, Perversity::zero(n), ring);
    linalg::HomologyResult gm_tp = gm::gm_cohomology(k, Perversity::top_prime(n), ring);
    ffs::CheckReport rep;
    compare_all(rep, "0", zero, "blow-up", ord, "ordinary");
    compare_all(rep, "t'", gm_tp, "GM", ord, "ordinary");
    compare_all(rep, "pair", zero, "blow-up 0", gm_tp, "GM t'");
    return rep;
}

} // namespace perverse::blowup
