#include "perverse/ffs.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>

namespace perverse::ffs {

namespace {

std::vector<int> mask_vertices(std::uint32_t m)
{
    std::vector<int> v;
    for (int i = 0; i < 32; ++i)
        if (m >> i & 1u) v.push_back(i);
    return v;
}

std::string outer_id(int ell, std::uint32_t m)
{
    std::ostringstream os;
    os << 'c' << ell << '[';
    auto v = mask_vertices(m);
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ']';
    return os.str();
}

} // namespace

FilteredFaceSet join_subcomplex(const std::vector<std::uint32_t>& l, int kdim, const FilteredFaceSet& k, int ell,
                                std::vector<JoinPart>* provenance)
{
    int n = k.n();
    if (ell < 1 || ell > n)
        throw FfsError("join: depth overflow, level " + std::to_string(ell) + " needs 1 <= ell <= n=" + std::to_string(n));
    if (kdim < 0 || kdim > 30) throw FfsError("join: simplex dimension out of range");
    int a = n - ell;
    for (const auto& s : k.simplices())
        if (s.profile.depth() >= ell)
            throw FfsError("join: depth overflow, '" + s.id + "' has depth " + std::to_string(s.profile.depth()) +
                           " >= " + std::to_string(ell));
    std::set<std::uint32_t> lset(l.begin(), l.end());
    for (auto m : lset) {
        if (m == 0 || m >> (kdim + 1)) throw FfsError("join: vertex set outside Delta^k");
        for (int v : mask_vertices(m))
            if (m != (1u << v) && !lset.count(m & ~(1u << v)))
                throw FfsError("join: the simplex family is not closed under faces");
    }

    FfsPresentation p;
    p.n = n;
    std::vector<JoinPart> parts;
    auto outer_profile = [&](std::uint32_t m) {
        std::vector<int> j(n + 1, -1);
        j[a] = std::popcount(m) - 1;
        return j;
    };
    for (auto m : lset) {
        SimplexSpec spec{outer_id(ell, m), outer_profile(m), {}};
        if (std::popcount(m) > 1)
            for (int v : mask_vertices(m)) spec.faces.push_back(outer_id(ell, m & ~(1u << v)));
        p.simplices.push_back(std::move(spec));
        parts.push_back({m, std::nullopt});
    }
    FfsPresentation inner = k.presentation();
    for (std::size_t s = 0; s < inner.simplices.size(); ++s) {
        p.simplices.push_back(inner.simplices[s]);
        parts.push_back({0, k.index(inner.simplices[s].id)});
    }
    auto pair_id = [&](std::uint32_t m, const std::string& sid) { return outer_id(ell, m) + "*" + sid; };
    for (auto m : lset) {
        auto verts = mask_vertices(m);
        int sz = static_cast<int>(verts.size());
        for (const auto& s : inner.simplices) {
            SimplexSpec spec;
            spec.id = pair_id(m, s.id);
            spec.profile = s.profile;
            spec.profile[a] = sz - 1;
            for (int i = 0; i < sz; ++i) {
                std::uint32_t rest = m & ~(1u << verts[i]);
                spec.faces.push_back(rest == 0 ? s.id : pair_id(rest, s.id));
            }
            if (s.faces.empty()) spec.faces.push_back(outer_id(ell, m));
            else
                for (const auto& f : s.faces) spec.faces.push_back(pair_id(m, f));
            p.simplices.push_back(std::move(spec));
            parts.push_back({m, k.index(s.id)});
        }
    }
    FilteredFaceSet out = FilteredFaceSet::from_presentation(p, false);
    if (provenance) {
        provenance->assign(out.size(), {});
        for (std::size_t i = 0; i < p.simplices.size(); ++i) (*provenance)[out.index(p.simplices[i].id)] = parts[i];
    }
    return out;
}

FilteredFaceSet join_simplex(int kdim, const FilteredFaceSet& k, std::optional<int> ell, std::vector<JoinPart>* provenance)
{
    std::vector<std::uint32_t> faces;
    for (std::uint32_t m = 1; m < (1u << (kdim + 1)); ++m) faces.push_back(m);
    int level = ell ? *ell : (k.empty() ? 1 : k.depth() + 1);
    return join_subcomplex(faces, kdim, k, level, provenance);
}

FilteredFaceSet cone(const FilteredFaceSet& k) { return join_simplex(0, k); }

FilteredFaceSet suspension(const FilteredFaceSet& k)
{
    int level = k.empty() ? 1 : k.depth() + 1;
    return join_subcomplex({1u, 2u}, 1, k, level);
}

ExtInt join_case_degree(int kdim, int ell, const JoinPart& part, const FilteredFaceSet& k, int ell_prime)
{
    (void)kdim;
    int outer = std::popcount(part.outer) - 1;  // k - |I|
    if (!part.inner) return ell_prime <= ell ? ExtInt(outer) : ExtInt::neg_inf();
    ExtInt inner = k[*part.inner].profile.perverse_degree(ell_prime);
    if (part.outer == 0) return inner;
    if (ell_prime > ell) return inner;
    if (ell_prime == ell) return ExtInt(outer);
    if (inner.is_neg_inf()) return ExtInt(outer);
    return ExtInt(outer + inner.value() + 1);
}

FilteredFaceSet from_filtered_complex(int n, const std::map<std::string, int>& vertex_levels,
                                      const std::vector<std::vector<std::string>>& facets)
{
    if (n < 0) throw FfsError("negative filtration dimension");
    for (const auto& [v, lvl] : vertex_levels)
        if (lvl < 0 || lvl > n) throw FfsError("vertex '" + v + "' has level " + std::to_string(lvl) + " outside 0..n");
    auto key = [&](const std::string& v) { return std::make_pair(vertex_levels.at(v), v); };
    std::set<std::vector<std::string>> seen;
    std::set<std::vector<std::string>> simplices;
    for (const auto& f : facets) {
        if (f.empty()) throw FfsError("empty facet");
        for (const auto& v : f)
            if (!vertex_levels.count(v)) throw FfsError("unknown vertex '" + v + "'");
        std::vector<std::string> sorted = f;
        std::sort(sorted.begin(), sorted.end(), [&](const auto& x, const auto& y) { return key(x) < key(y); });
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw FfsError("facet with a repeated vertex");
        if (!seen.insert(sorted).second) throw FfsError("duplicate facet");
        std::size_t m = sorted.size();
        if (m > 25) throw FfsError("facet too large");
        for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
            std::vector<std::string> sub;
            for (std::size_t i = 0; i < m; ++i)
                if (mask >> i & 1u) sub.push_back(sorted[i]);
            simplices.insert(std::move(sub));
        }
    }
    auto id_of = [](const std::vector<std::string>& vs) {
        std::string s;
        for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + vs[i];
        return s;
    };
    FfsPresentation p;
    p.n = n;
    for (const auto& vs : simplices) {
        SimplexSpec spec;
        spec.id = id_of(vs);
        spec.profile.assign(n + 1, -1);
        for (const auto& v : vs) spec.profile[vertex_levels.at(v)] += 1;
        if (vs.size() > 1)
            for (std::size_t i = 0; i < vs.size(); ++i) {
                std::vector<std::string> rest = vs;
                rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
                spec.faces.push_back(id_of(rest));
            }
        p.simplices.push_back(std::move(spec));
    }
    return FilteredFaceSet::from_presentation(p, false);
}

FilteredFaceSet standard_simplex(int k)
{
    std::map<std::string, int> levels;
    std::vector<std::string> facet;
    for (int i = 0; i <= k; ++i) {
        levels[std::to_string(i)] = 0;
        facet.push_back(std::to_string(i));
    }
    return from_filtered_complex(0, levels, {facet});
}

namespace {

// lattice path in [p]x[q] from (0,0) to (p,q) with unit steps
using Chain = std::vector<std::pair<int, int>>;

void enumerate_chains(int p, int q, Chain& cur, std::vector<Chain>& out)
{
    auto [x, y] = cur.back();
    if (x == p && y == q) {
        out.push_back(cur);
        return;
    }
    const int steps[3][2] = {{1, 0}, {0, 1}, {1, 1}};
    for (const auto& s : steps) {
        int nx = x + s[0], ny = y + s[1];
        if (nx > p || ny > q) continue;
        cur.emplace_back(nx, ny);
        enumerate_chains(p, q, cur, out);
        cur.pop_back();
    }
}

std::string chain_code(const Chain& c)
{
    std::string s;
    for (std::size_t i = 1; i < c.size(); ++i) {
        int dx = c[i].first - c[i - 1].first, dy = c[i].second - c[i - 1].second;
        s += dx && dy ? 'b' : (dx ? 'x' : 'y');
    }
    return s;
}

std::string product_id(const std::string& s, const std::string& t, const Chain& c)
{
    return s + "#" + t + "#" + chain_code(c);
}

} // namespace

FilteredFaceSet product_with_face_set(const FilteredFaceSet& k, const FilteredFaceSet& t)
{
    if (t.n() != 0) throw FfsError("product: second factor must be a face set (n = 0)");
    FfsPresentation p;
    p.n = k.n();
    for (SimplexIndex s = 0; s < k.size(); ++s) {
        const auto& sp = k[s].profile;
        int pd = sp.dim();
        for (SimplexIndex u = 0; u < t.size(); ++u) {
            int qd = t[u].dim();
            std::vector<Chain> chains;
            Chain start{{0, 0}};
            enumerate_chains(pd, qd, start, chains);
            for (const auto& c : chains) {
                SimplexSpec spec;
                spec.id = product_id(k[s].id, t[u].id, c);
                spec.profile.assign(p.n + 1, -1);
                for (const auto& [x, y] : c) spec.profile[sp.factor_of_vertex(x)] += 1;
                if (c.size() > 1)
                    for (std::size_t i = 0; i < c.size(); ++i) {
                        auto [xi, yi] = c[i];
                        Chain rest = c;
                        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
                        bool x_gone = std::none_of(rest.begin(), rest.end(), [&](auto& e) { return e.first == xi; });
                        bool y_gone = std::none_of(rest.begin(), rest.end(), [&](auto& e) { return e.second == yi; });
                        SimplexIndex s2 = x_gone ? k.face(s, xi) : s;
                        SimplexIndex u2 = y_gone ? t.face(u, yi) : u;
                        for (auto& e : rest) {
                            if (x_gone && e.first > xi) --e.first;
                            if (y_gone && e.second > yi) --e.second;
                        }
                        spec.faces.push_back(product_id(k[s2].id, t[u2].id, rest));
                    }
                p.simplices.push_back(std::move(spec));
            }
        }
    }
    return FilteredFaceSet::from_presentation(p, false);
}

} // namespace perverse::ffs
