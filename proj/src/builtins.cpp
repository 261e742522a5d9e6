#include "perverse/builtins.hpp"

#include <algorithm>
#include <map>

namespace perverse::builtins {

using ffs::FfsError;
using ffs::FilteredFaceSet;

namespace {

FilteredFaceSet from_facets(int n, int vertices, const std::vector<std::vector<int>>& facets)
{
    std::map<std::string, int> levels;
    for (int v = 0; v < vertices; ++v) levels[std::to_string(v)] = n;
    std::vector<std::vector<std::string>> fs;
    for (const auto& f : facets) {
        std::vector<std::string> names;
        for (int v : f) names.push_back(std::to_string(v));
        fs.push_back(std::move(names));
    }
    return ffs::from_filtered_complex(n, levels, fs);
}

// a singular vertex c with two triangles c,a,d sharing the edge ad and the vertex c
FilteredFaceSet pinched_ribbon(int n)
{
    auto prof = [n](int first, int last) {
        std::vector<int> j(n + 1, -1);
        j[n - 1] = first;
        j[n] = last;
        return j;
    };
    ffs::FfsPresentation p;
    p.n = n;
    p.simplices = {
        {"c", prof(0, -1), {}},
        {"a", prof(-1, 0), {}},
        {"d", prof(-1, 0), {}},
        {"ca1", prof(0, 0), {"a", "c"}},
        {"cd1", prof(0, 0), {"d", "c"}},
        {"ca2", prof(0, 0), {"a", "c"}},
        {"cd2", prof(0, 0), {"d", "c"}},
        {"ad", prof(-1, 1), {"d", "a"}},
        {"T1", prof(0, 1), {"ad", "cd1", "ca1"}},
        {"T2", prof(0, 1), {"ad", "cd2", "ca2"}},
    };
    return FilteredFaceSet::from_presentation(p);
}

FilteredFaceSet apply(const FilteredFaceSet& k, const Modifier& m)
{
    switch (m.kind) {
    case Modifier::Kind::Cone: return ffs::cone(k);
    case Modifier::Kind::Suspension: return ffs::suspension(k);
    case Modifier::Kind::Join: return ffs::join_simplex(m.k, k);
    case Modifier::Kind::Prism: return ffs::product_with_face_set(k, ffs::standard_simplex(1));
    }
    throw FfsError("unknown modifier");
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

} // namespace

std::string Modifier::str() const
{
    switch (kind) {
    case Kind::Cone: return "cone";
    case Kind::Suspension: return "suspension";
    case Kind::Join: return "join:" + std::to_string(k);
    case Kind::Prism: return "prism";
    }
    return "?";
}

Modifier parse_modifier(std::string_view text)
{
    if (text == "cone") return {Modifier::Kind::Cone, 0};
    if (text == "suspension") return {Modifier::Kind::Suspension, 0};
    if (text == "prism") return {Modifier::Kind::Prism, 0};
    if (starts_with(text, "join")) {
        std::string_view rest = text.substr(4);
        if (!rest.empty() && rest[0] == ':') rest.remove_prefix(1);
        if (!rest.empty() && rest.size() <= 2 && std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; }))
            return {Modifier::Kind::Join, std::stoi(std::string(rest))};
    }
    throw FfsError("unknown modifier '" + std::string(text) + "' (cone, suspension, prism, join:K)");
}

const std::vector<std::string>& base_names()
{
    static const std::vector<std::string> names{"point", "s0", "circle", "torus", "cp2", "pinched-ribbon"};
    return names;
}

int base_depth(std::string_view name)
{
    if (name == "pinched-ribbon") return 1;
    if (std::find(base_names().begin(), base_names().end(), name) == base_names().end())
        throw FfsError("unknown example '" + std::string(name) + "'");
    return 0;
}

const std::vector<std::vector<int>>& cp2_facets()
{
    static const std::vector<std::vector<int>> f{
        {0, 1, 2, 3, 4}, {0, 1, 2, 3, 5}, {0, 1, 2, 4, 5}, {0, 1, 3, 4, 6}, {0, 1, 3, 5, 7}, {0, 1, 3, 6, 7},
        {0, 1, 4, 5, 6}, {0, 1, 5, 6, 8}, {0, 1, 5, 7, 8}, {0, 1, 6, 7, 8}, {0, 2, 3, 4, 8}, {0, 2, 3, 5, 8},
        {0, 2, 4, 5, 6}, {0, 2, 4, 6, 7}, {0, 2, 4, 7, 8}, {0, 2, 5, 6, 8}, {0, 2, 6, 7, 8}, {0, 3, 4, 6, 7},
        {0, 3, 4, 7, 8}, {0, 3, 5, 7, 8}, {1, 2, 3, 4, 8}, {1, 2, 3, 5, 7}, {1, 2, 3, 6, 7}, {1, 2, 3, 6, 8},
        {1, 2, 4, 5, 7}, {1, 2, 4, 7, 8}, {1, 2, 6, 7, 8}, {1, 3, 4, 6, 8}, {1, 4, 5, 6, 8}, {1, 4, 5, 7, 8},
        {2, 3, 5, 6, 7}, {2, 3, 5, 6, 8}, {2, 4, 5, 6, 7}, {3, 4, 5, 6, 7}, {3, 4, 5, 6, 8}, {3, 4, 5, 7, 8},
    };
    return f;
}

std::vector<std::vector<int>> torus_facets()
{
    std::vector<std::vector<int>> f;
    for (int i = 0; i < 7; ++i) {
        f.push_back({i, (i + 1) % 7, (i + 3) % 7});
        f.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return f;
}

FilteredFaceSet base(std::string_view name, int n)
{
    if (n < base_depth(name)) throw FfsError("example '" + std::string(name) + "' needs n >= " + std::to_string(base_depth(name)));
    if (name == "point") return from_facets(n, 1, {{0}});
    if (name == "s0") return from_facets(n, 2, {{0}, {1}});
    if (name == "circle") return from_facets(n, 3, {{0, 1}, {1, 2}, {0, 2}});
    if (name == "torus") return from_facets(n, 7, torus_facets());
    if (name == "cp2") return from_facets(n, 9, cp2_facets());
    return pinched_ribbon(n);
}

FilteredFaceSet build(std::string_view spec, const std::vector<Modifier>& extra, std::optional<int> n)
{
    std::vector<Modifier> mods;
    std::string_view rest = spec;
    for (;;) {
        auto dash = rest.find('-');
        if (dash == std::string_view::npos) break;
        std::string_view head = rest.substr(0, dash);
        Modifier m;
        try {
            m = parse_modifier(head);
        } catch (const FfsError&) {
            break;
        }
        mods.push_back(m);
        rest.remove_prefix(dash + 1);
    }
    std::reverse(mods.begin(), mods.end());
    mods.insert(mods.end(), extra.begin(), extra.end());

    int needed = base_depth(rest);
    for (const auto& m : mods)
        if (m.deepens()) ++needed;
    int dim = n ? *n : std::max(1, needed);
    if (dim < needed)
        throw FfsError("depth overflow: '" + std::string(spec) + "' needs n >= " + std::to_string(needed) + ", got " +
                       std::to_string(dim));
    FilteredFaceSet k = base(rest, dim);
    for (const auto& m : mods) k = apply(k, m);
    return k;
}

const std::vector<std::string>& catalog()
{
    static const std::vector<std::string> names{
        "point", "s0", "circle", "torus", "cp2", "pinched-ribbon",
        "cone-s0", "cone-circle", "cone-torus", "cone-cp2", "suspension-circle", "suspension-torus",
        "suspension-cp2", "join1-circle", "cone-pinched-ribbon", "cone-cone-circle",
    };
    return names;
}

} // namespace perverse::builtins
