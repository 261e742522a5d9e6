#include "perverse/ffs.hpp"

#include <algorithm>

namespace perverse::ffs {

std::vector<bool> skeleton_mask(const FilteredFaceSet& k, int r, int kk)
{
    std::vector<bool> mask(k.size(), false);
    for (SimplexIndex s = 0; s < k.size(); ++s) {
        const auto& p = k[s].profile;
        int v = p.depth();
        if (v < r) mask[s] = true;
        else if (v == r && r <= k.n() && p.j[k.n() - r] <= kk) mask[s] = true;
    }
    return mask;
}

FilteredFaceSet filtered_skeleton(const FilteredFaceSet& k, int r, int kk)
{
    if (r < 0 || kk < -1) throw FfsError("filtered skeleton needs r >= 0 and k >= -1");
    return k.subset(skeleton_mask(k, r, kk));
}

FilteredFaceSet filtered_skeleton(const FilteredFaceSet& k, int r)
{
    if (r < 0) throw FfsError("filtered skeleton needs r >= 0");
    std::vector<bool> mask(k.size());
    for (SimplexIndex s = 0; s < k.size(); ++s) mask[s] = k[s].profile.depth() <= r;
    return k.subset(mask);
}

FilteredFaceSet regular_part(const FilteredFaceSet& k) { return filtered_skeleton(k, 0); }

namespace {

// vertices of s outside (keep_factor) or inside factors <= a (drop_prefix)
std::optional<SimplexIndex> drop_vertices(const FilteredFaceSet& k, SimplexIndex s, int a, bool keep_only_a)
{
    const auto& p = k[s].profile;
    std::vector<int> gone;
    int kept = 0;
    for (int i = 0; i <= p.dim(); ++i) {
        int f = p.factor_of_vertex(i);
        bool keep = keep_only_a ? f == a : f > a;
        if (keep) ++kept;
        else gone.push_back(i);
    }
    if (kept == 0) return std::nullopt;
    return k.iterated_face(s, gone);
}

int single_factor(const JoinProfile& p)
{
    int a = -1;
    for (int m = 0; m <= p.n(); ++m)
        if (p.j[m] != -1) {
            if (a != -1) return -1;
            a = m;
        }
    return a;
}

} // namespace

std::optional<SimplexIndex> restrict_first(const FilteredFaceSet& k, SimplexIndex s, int r)
{
    return drop_vertices(k, s, k.n() - r, true);
}

std::optional<SimplexIndex> restrict_tail(const FilteredFaceSet& k, SimplexIndex s, int r)
{
    return drop_vertices(k, s, k.n() - r, false);
}

StarData star_data(const FilteredFaceSet& k, SimplexIndex tau)
{
    const auto& tp = k[tau].profile;
    int a = single_factor(tp);
    if (a < 0) throw FfsError("'" + k[tau].id + "' is not of the form R1(sigma): more than one non-empty factor");
    StarData d;
    d.tau = tau;
    d.r = k.n() - a;
    d.k = tp.j[a];
    for (SimplexIndex s = 0; s < k.size(); ++s) {
        if (k[s].profile.depth() != d.r) continue;
        auto r1 = restrict_first(k, s, d.r);
        if (r1 && *r1 == tau) d.tops.push_back(s);
    }
    d.star = k.closure_mask(d.tops);

    std::vector<SimplexIndex> tails;
    for (SimplexIndex s = 0; s < k.size(); ++s) {
        if (!d.star[s]) continue;
        if (auto r2 = restrict_tail(k, s, d.r)) tails.push_back(*r2);
    }
    d.link = k.closure_mask(tails);

    if (d.k == 0) {
        d.boundary_star = d.link;
    } else {
        std::vector<SimplexIndex> faces;
        for (auto g : d.tops)
            for (int i = 0; i <= d.k; ++i) faces.push_back(k.face(g, i));
        d.boundary_star = k.closure_mask(faces);
    }
    return d;
}

FilteredFaceSet star(const FilteredFaceSet& k, SimplexIndex tau) { return k.subset(star_data(k, tau).star); }

FilteredFaceSet boundary_star(const FilteredFaceSet& k, SimplexIndex tau)
{
    return k.subset(star_data(k, tau).boundary_star);
}

FilteredFaceSet link(const FilteredFaceSet& k, SimplexIndex tau)
{
    StarData d = star_data(k, tau);
    if (d.r < 1) throw FfsError("link needs a singular simplex (r >= 1)");
    return k.subset(d.link);
}

FilteredFaceSet expanded_link(const FilteredFaceSet& k, SimplexIndex tau)
{
    StarData d = star_data(k, tau);
    if (d.r < 1) throw FfsError("expanded link needs a singular simplex (r >= 1)");
    int a = k.n() - d.r;
    FfsPresentation p;
    p.n = k.n();
    for (auto s : d.tops) {
        if (s == tau) continue;
        SimplexSpec spec;
        spec.id = k[s].id;
        spec.profile = k[s].profile.j;
        spec.profile[a] = -1;
        int tail_dim = JoinProfile(spec.profile).dim();
        if (tail_dim > 0)
            for (int i = 0; i <= tail_dim; ++i) spec.faces.push_back(k[k.face(s, i + 1 + d.k)].id);
        p.simplices.push_back(std::move(spec));
    }
    return FilteredFaceSet::from_presentation(p, false);
}

namespace {

bool mask_equal(const std::vector<bool>& x, const std::vector<bool>& y) { return x == y; }

std::vector<bool> mask_and(const std::vector<bool>& x, const std::vector<bool>& y)
{
    std::vector<bool> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] && y[i];
    return out;
}

void check_cone_map(const FilteredFaceSet& k, const StarData& d, CheckReport& rep)
{
    FilteredFaceSet lexp = expanded_link(k, d.tau);
    std::vector<JoinPart> prov;
    FilteredFaceSet cone = join_simplex(d.k, lexp, d.r, &prov);
    std::uint32_t full = (1u << (d.k + 1)) - 1;

    FfsPairMap f{&cone, &k, std::vector<SimplexIndex>(cone.size())};
    for (SimplexIndex x = 0; x < cone.size(); ++x) {
        const JoinPart& part = prov[x];
        std::vector<int> removed;
        for (int v = 0; v <= d.k; ++v)
            if (!(part.outer >> v & 1u)) removed.push_back(v);
        SimplexIndex base = part.inner ? k.index(lexp[*part.inner].id) : d.tau;
        f.image[x] = k.iterated_face(base, removed);
    }
    CheckReport fm = check_face_map(f);
    for (auto& l : fm.lines) rep.fail("cone map at '" + k[d.tau].id + "': " + l);

    std::vector<int> hits(k.size(), 0);
    for (SimplexIndex x = 0; x < cone.size(); ++x) {
        SimplexIndex y = f.image[x];
        bool interior = prov[x].outer == full;
        if (!d.star[y]) rep.fail("cone map leaves the star of '" + k[d.tau].id + "' at '" + cone[x].id + "'");
        if (interior) {
            ++hits[y];
            if (d.boundary_star[y])
                rep.fail("interior simplex '" + cone[x].id + "' lands in the boundary of the star");
        } else if (!d.boundary_star[y]) {
            rep.fail("boundary simplex '" + cone[x].id + "' lands outside the boundary of the star");
        }
    }
    for (SimplexIndex y = 0; y < k.size(); ++y) {
        if (d.star[y] && !d.boundary_star[y] && hits[y] != 1)
            rep.fail("star simplex '" + k[y].id + "' is hit " + std::to_string(hits[y]) + " times by the interior");
    }
}

} // namespace

CheckReport check_skeleton_decomposition(const FilteredFaceSet& k, int r, int kk)
{
    CheckReport rep;
    if (r < 1 || r > k.n()) {
        rep.fail("check_skeleton_decomposition needs 1 <= r <= n");
        return rep;
    }
    if (kk < 0) {
        rep.fail("check_skeleton_decomposition needs k >= 0");
        return rep;
    }
    int a = k.n() - r;
    std::vector<bool> upper = skeleton_mask(k, r, kk);
    std::vector<bool> lower = skeleton_mask(k, r, kk - 1);
    std::vector<bool> star_union(k.size(), false), bdry_union(k.size(), false);
    std::size_t count = 0;
    for (SimplexIndex t = 0; t < k.size(); ++t) {
        const auto& p = k[t].profile;
        if (single_factor(p) != a || p.j[a] != kk) continue;
        ++count;
        StarData d = star_data(k, t);
        if (!mask_equal(mask_and(lower, d.star), d.boundary_star))
            rep.fail("K^[" + std::to_string(r) + "]," + std::to_string(kk - 1) + " meets K(" + k[t].id +
                     ") in something other than " + (kk == 0 ? "the link" : "K(tau, d tau)"));
        for (SimplexIndex s = 0; s < k.size(); ++s) {
            if (d.star[s]) star_union[s] = true;
            if (d.boundary_star[s]) bdry_union[s] = true;
        }
        check_cone_map(k, d, rep);
    }
    for (SimplexIndex s = 0; s < k.size(); ++s) {
        if (star_union[s] && !upper[s]) rep.fail("'" + k[s].id + "' is in a star but not in the skeleton");
        if (bdry_union[s] && !lower[s]) rep.fail("'" + k[s].id + "' is in a star boundary but not in the lower skeleton");
        bool lhs = star_union[s] && !bdry_union[s];
        bool rhs = upper[s] && !lower[s];
        if (lhs != rhs) rep.fail("relative isomorphism fails at '" + k[s].id + "'");
    }
    rep.note("r=" + std::to_string(r) + " k=" + std::to_string(kk) + ": " + std::to_string(count) + " simplices in J");
    return rep;
}

CheckReport check_all_skeleton_decompositions(const FilteredFaceSet& k)
{
    CheckReport all;
    int maxj = 0;
    for (const auto& s : k.simplices())
        for (int x : s.profile.j) maxj = std::max(maxj, x);
    for (int r = 1; r <= k.n(); ++r)
        for (int kk = 0; kk <= maxj; ++kk) {
            CheckReport one = check_skeleton_decomposition(k, r, kk);
            if (!one.ok) all.ok = false;
            for (auto& l : one.lines) all.lines.push_back(std::move(l));
        }
    return all;
}

} // namespace perverse::ffs
