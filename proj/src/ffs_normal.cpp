#include "perverse/ffs.hpp"

#include <algorithm>
#include <numeric>

namespace perverse::ffs {

namespace {

/** Zig-zag classes of regular simplices above each singular simplex. */
struct Classes {
    std::vector<std::vector<SimplexIndex>> above;      // phi in K+ with sigma a face of phi, sorted
    std::vector<std::vector<std::size_t>> class_of;    // parallel to above
    std::vector<std::size_t> count;                    // classes per sigma
};

Classes zigzag_classes(const FilteredFaceSet& k)
{
    Classes c;
    c.above.assign(k.size(), {});
    for (SimplexIndex phi = 0; phi < k.size(); ++phi) {
        if (!k.positive(phi)) continue;
        for (auto s : k.closure(phi))
            if (!k.positive(s)) c.above[s].push_back(phi);
    }
    c.class_of.assign(k.size(), {});
    c.count.assign(k.size(), 0);
    for (SimplexIndex s = 0; s < k.size(); ++s) {
        if (k.positive(s)) continue;
        auto& phis = c.above[s];
        std::sort(phis.begin(), phis.end());
        std::vector<std::size_t> parent(phis.size());
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](std::size_t x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        auto pos = [&](SimplexIndex phi) -> std::ptrdiff_t {
            auto it = std::lower_bound(phis.begin(), phis.end(), phi);
            if (it == phis.end() || *it != phi) return -1;
            return it - phis.begin();
        };
        for (std::size_t i = 0; i < phis.size(); ++i)
            for (auto f : k[phis[i]].faces) {
                if (!k.positive(f)) continue;
                std::ptrdiff_t j = pos(f);
                if (j >= 0) parent[find(i)] = find(static_cast<std::size_t>(j));
            }
        std::vector<std::size_t> label(phis.size(), SIZE_MAX);
        std::size_t next = 0;
        c.class_of[s].resize(phis.size());
        for (std::size_t i = 0; i < phis.size(); ++i) {
            std::size_t r = find(i);
            if (label[r] == SIZE_MAX) label[r] = next++;
            c.class_of[s][i] = label[r];
        }
        c.count[s] = next;
    }
    return c;
}

} // namespace

bool is_normal(const FilteredFaceSet& k)
{
    Classes c = zigzag_classes(k);
    for (SimplexIndex s = 0; s < k.size(); ++s)
        if (!k.positive(s) && c.count[s] != 1) return false;
    return true;
}

Normalization normalize(const FilteredFaceSet& k)
{
    if (is_normal(k)) {
        Normalization same{k, std::vector<SimplexIndex>(k.size())};
        std::iota(same.to_original.begin(), same.to_original.end(), SimplexIndex{0});
        return same;
    }
    Classes c = zigzag_classes(k);
    // representative of each class: the largest phi in (dim, id) order
    std::vector<std::vector<SimplexIndex>> rep(k.size());
    for (SimplexIndex s = 0; s < k.size(); ++s) {
        if (k.positive(s)) continue;
        rep[s].assign(c.count[s], 0);
        for (std::size_t i = 0; i < c.above[s].size(); ++i) {
            std::size_t cl = c.class_of[s][i];
            rep[s][cl] = c.above[s][i];  // above is sorted ascending, so the last one wins
        }
    }
    auto class_index = [&](SimplexIndex s, SimplexIndex phi) {
        auto it = std::lower_bound(c.above[s].begin(), c.above[s].end(), phi);
        if (it == c.above[s].end() || *it != phi)
            throw FfsError("normalize: '" + k[s].id + "' is not a face of '" + k[phi].id + "'");
        return c.class_of[s][static_cast<std::size_t>(it - c.above[s].begin())];
    };
    auto class_id = [&](SimplexIndex s, SimplexIndex phi) {
        return k[s].id + "|" + k[rep[s][class_index(s, phi)]].id;
    };

    FfsPresentation p;
    p.n = k.n();
    std::vector<SimplexIndex> origin;
    for (SimplexIndex a = 0; a < k.size(); ++a) {
        if (!k.positive(a)) continue;
        SimplexSpec spec{k[a].id, k[a].profile.j, {}};
        for (auto f : k[a].faces) spec.faces.push_back(k.positive(f) ? k[f].id : class_id(f, a));
        p.simplices.push_back(std::move(spec));
        origin.push_back(a);
    }
    for (SimplexIndex s = 0; s < k.size(); ++s) {
        if (k.positive(s)) continue;
        for (std::size_t cl = 0; cl < c.count[s]; ++cl) {
            SimplexIndex phi = rep[s][cl];
            SimplexSpec spec{k[s].id + "|" + k[phi].id, k[s].profile.j, {}};
            for (auto f : k[s].faces) spec.faces.push_back(class_id(f, phi));
            p.simplices.push_back(std::move(spec));
            origin.push_back(s);
        }
    }
    Normalization out;
    out.normal = FilteredFaceSet::from_presentation(p, false);
    out.to_original.assign(out.normal.size(), 0);
    for (std::size_t i = 0; i < p.simplices.size(); ++i) out.to_original[out.normal.index(p.simplices[i].id)] = origin[i];
    return out;
}

} // namespace perverse::ffs
