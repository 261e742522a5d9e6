#include "perverse/ffs.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace perverse::ffs {

int JoinProfile::dim() const
{
    int s = 0;
    for (int x : j) s += x + 1;
    return s - 1;
}

bool JoinProfile::empty() const
{
    return std::all_of(j.begin(), j.end(), [](int x) { return x == -1; });
}

int JoinProfile::factor_of_vertex(int i) const
{
    int seen = 0;
    for (int a = 0; a <= n(); ++a) {
        seen += j[a] + 1;
        if (i < seen) return a;
    }
    throw FfsError("vertex " + std::to_string(i) + " out of range for profile " + str());
}

int JoinProfile::local_index(int i) const { return i - factor_offset(factor_of_vertex(i)); }

int JoinProfile::factor_offset(int a) const
{
    int off = 0;
    for (int m = 0; m < a; ++m) off += j[m] + 1;
    return off;
}

JoinProfile JoinProfile::face(int i) const
{
    JoinProfile f = *this;
    f.j[factor_of_vertex(i)] -= 1;
    return f;
}

ExtInt JoinProfile::perverse_degree(int ell) const
{
    if (ell < 0 || ell > n()) throw FfsError("perverse degree index out of range");
    int a = n() - ell;
    int s = 0;
    for (int m = 0; m <= a; ++m) s += j[m] + 1;
    if (s == 0) return ExtInt::neg_inf();
    return ExtInt(s - 1);
}

int JoinProfile::depth() const
{
    for (int a = 0; a <= n(); ++a)
        if (j[a] != -1) return n() - a;
    throw FfsError("depth of the empty join");
}

std::string JoinProfile::str() const
{
    std::ostringstream os;
    os << '(';
    for (std::size_t a = 0; a < j.size(); ++a) os << (a ? "," : "") << j[a];
    os << ')';
    return os.str();
}

ExtInt perverse_degree(const Simplex& s, int ell) { return s.profile.perverse_degree(ell); }
int depth(const Simplex& s) { return s.profile.depth(); }

std::string ValidationReport::str() const
{
    std::ostringstream os;
    for (const auto& i : issues) os << "simplex " << i.simplex << ": " << i.kind << ": " << i.message << '\n';
    return os.str();
}

InvalidFfs::InvalidFfs(ValidationReport r)
    : FfsError("invalid filtered face set:\n" + r.str()), report_(std::move(r))
{
}

std::string CheckReport::str() const
{
    std::ostringstream os;
    for (const auto& l : lines) os << l << '\n';
    return os.str();
}

ValidationReport validate(const FfsPresentation& p, bool require_regular)
{
    ValidationReport rep;
    auto issue = [&](const std::string& id, const std::string& kind, const std::string& msg) {
        rep.issues.push_back({id, kind, msg});
    };
    if (p.n < 0) {
        issue("-", "n", "negative filtration dimension");
        return rep;
    }
    std::unordered_map<std::string, std::size_t> by_id;
    std::vector<bool> profile_ok(p.simplices.size(), false);
    for (std::size_t i = 0; i < p.simplices.size(); ++i) {
        const auto& s = p.simplices[i];
        if (!by_id.emplace(s.id, i).second) issue(s.id, "duplicate-id", "id appears more than once");
        if (static_cast<int>(s.profile.size()) != p.n + 1) {
            issue(s.id, "profile", "profile length " + std::to_string(s.profile.size()) + " != n+1");
            continue;
        }
        JoinProfile jp(s.profile);
        if (std::any_of(s.profile.begin(), s.profile.end(), [](int x) { return x < -1; })) {
            issue(s.id, "profile", "entry below -1");
            continue;
        }
        if (jp.empty()) {
            issue(s.id, "profile", "empty join");
            continue;
        }
        if (static_cast<int>(s.faces.size()) != jp.dim() + 1 && jp.dim() > 0) {
            issue(s.id, "face-count", "expected " + std::to_string(jp.dim() + 1) + " faces, got " +
                                          std::to_string(s.faces.size()));
            continue;
        }
        if (jp.dim() == 0 && !s.faces.empty()) {
            issue(s.id, "face-count", "a vertex has no faces");
            continue;
        }
        profile_ok[i] = true;
    }

    auto lookup = [&](const std::string& id) -> const SimplexSpec* {
        auto it = by_id.find(id);
        return it == by_id.end() ? nullptr : &p.simplices[it->second];
    };

    std::vector<bool> faces_ok(p.simplices.size(), false);
    for (std::size_t i = 0; i < p.simplices.size(); ++i) {
        if (!profile_ok[i]) continue;
        const auto& s = p.simplices[i];
        JoinProfile jp(s.profile);
        bool good = true;
        for (std::size_t f = 0; f < s.faces.size(); ++f) {
            const SimplexSpec* t = lookup(s.faces[f]);
            if (!t) {
                issue(s.id, "face-closure", "face d" + std::to_string(f) + " '" + s.faces[f] + "' is not in the set");
                good = false;
                continue;
            }
            JoinProfile expect = jp.face(static_cast<int>(f));
            if (t->profile != expect.j) {
                issue(s.id, "face-profile",
                      "face d" + std::to_string(f) + " '" + t->id + "' has profile " + JoinProfile(t->profile).str() +
                          ", expected " + expect.str());
                good = false;
            }
        }
        faces_ok[i] = good;
    }

    for (std::size_t i = 0; i < p.simplices.size(); ++i) {
        if (!faces_ok[i]) continue;
        const auto& s = p.simplices[i];
        int dim = JoinProfile(s.profile).dim();
        if (dim < 2) continue;
        bool reported = false;
        for (int b = 1; b <= dim && !reported; ++b)
            for (int a = 0; a < b && !reported; ++a) {
                const SimplexSpec* fb = lookup(s.faces[b]);
                const SimplexSpec* fa = lookup(s.faces[a]);
                if (!faces_ok[by_id[fb->id]] || !faces_ok[by_id[fa->id]]) continue;
                const std::string& lhs = fb->faces[a];      // d_a d_b
                const std::string& rhs = fa->faces[b - 1];  // d_{b-1} d_a
                if (lhs != rhs) {
                    issue(s.id, "simplicial-identity",
                          "d" + std::to_string(a) + "d" + std::to_string(b) + " = '" + lhs + "' but d" +
                              std::to_string(b - 1) + "d" + std::to_string(a) + " = '" + rhs + "'");
                    reported = true;
                }
            }
    }

    if (require_regular) {
        bool any = false;
        for (std::size_t i = 0; i < p.simplices.size() && !any; ++i)
            any = profile_ok[i] && JoinProfile(p.simplices[i].profile).positive();
        if (!any) issue("-", "regular-part", "regular part must be non-empty");
    }
    return rep;
}

FilteredFaceSet FilteredFaceSet::from_presentation(const FfsPresentation& p, bool require_regular)
{
    ValidationReport rep = validate(p, require_regular);
    if (!rep.ok()) throw InvalidFfs(std::move(rep));
    return from_presentation_unchecked(p);
}

FilteredFaceSet FilteredFaceSet::from_presentation_unchecked(const FfsPresentation& p)
{
    FilteredFaceSet k;
    k.n_ = p.n;
    std::vector<std::size_t> order(p.simplices.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<int> dims(p.simplices.size());
    for (std::size_t i = 0; i < dims.size(); ++i) dims[i] = JoinProfile(p.simplices[i].profile).dim();
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (dims[a] != dims[b]) return dims[a] < dims[b];
        return p.simplices[a].id < p.simplices[b].id;
    });
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const auto& s = p.simplices[order[pos]];
        k.simplices_.push_back({s.id, JoinProfile(s.profile), {}});
    }
    k.build_index();
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const auto& s = p.simplices[order[pos]];
        for (const auto& f : s.faces) {
            auto it = k.by_id_.find(f);
            if (it == k.by_id_.end()) throw FfsError("face '" + f + "' of '" + s.id + "' is not in the set");
            k.simplices_[pos].faces.push_back(it->second);
        }
    }
    return k;
}

void FilteredFaceSet::build_index()
{
    by_id_.clear();
    for (std::size_t i = 0; i < simplices_.size(); ++i) by_id_.emplace(simplices_[i].id, i);
}

FfsPresentation FilteredFaceSet::presentation() const
{
    FfsPresentation p;
    p.n = n_;
    for (const auto& s : simplices_) {
        SimplexSpec spec{s.id, s.profile.j, {}};
        for (auto f : s.faces) spec.faces.push_back(simplices_[f].id);
        p.simplices.push_back(std::move(spec));
    }
    return p;
}

std::optional<SimplexIndex> FilteredFaceSet::find(std::string_view id) const
{
    auto it = by_id_.find(std::string(id));
    if (it == by_id_.end()) return std::nullopt;
    return it->second;
}

SimplexIndex FilteredFaceSet::index(std::string_view id) const
{
    auto f = find(id);
    if (!f) throw FfsError("no simplex with id '" + std::string(id) + "'");
    return *f;
}

int FilteredFaceSet::dim() const { return simplices_.empty() ? -1 : simplices_.back().dim(); }

int FilteredFaceSet::depth() const
{
    int d = 0;
    for (const auto& s : simplices_) d = std::max(d, s.profile.depth());
    return d;
}

std::vector<SimplexIndex> FilteredFaceSet::of_dim(int k) const
{
    std::vector<SimplexIndex> out;
    for (SimplexIndex i = 0; i < simplices_.size(); ++i)
        if (simplices_[i].dim() == k) out.push_back(i);
    return out;
}

std::size_t FilteredFaceSet::positive_count() const
{
    return static_cast<std::size_t>(
        std::count_if(simplices_.begin(), simplices_.end(), [](const Simplex& s) { return s.profile.positive(); }));
}

SimplexIndex FilteredFaceSet::iterated_face(SimplexIndex s, std::vector<int> vertices) const
{
    std::sort(vertices.rbegin(), vertices.rend());
    for (int v : vertices) s = face(s, v);
    return s;
}

std::vector<SimplexIndex> FilteredFaceSet::closure(SimplexIndex s) const
{
    std::vector<SimplexIndex> all{s}, cur{s};
    while (!cur.empty()) {
        std::vector<SimplexIndex> next;
        for (auto c : cur)
            for (auto f : simplices_[c].faces) next.push_back(f);
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        all.insert(all.end(), next.begin(), next.end());
        cur = std::move(next);
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

std::vector<bool> FilteredFaceSet::closure_mask(const std::vector<SimplexIndex>& gens) const
{
    std::vector<bool> mask(simplices_.size(), false);
    std::vector<SimplexIndex> stack;
    for (auto g : gens)
        if (!mask[g]) {
            mask[g] = true;
            stack.push_back(g);
        }
    while (!stack.empty()) {
        auto s = stack.back();
        stack.pop_back();
        for (auto f : simplices_[s].faces)
            if (!mask[f]) {
                mask[f] = true;
                stack.push_back(f);
            }
    }
    return mask;
}

FilteredFaceSet FilteredFaceSet::subset(const std::vector<bool>& keep) const
{
    if (keep.size() != simplices_.size()) throw FfsError("subset: mask size mismatch");
    FilteredFaceSet k;
    k.n_ = n_;
    std::vector<SimplexIndex> where(simplices_.size(), 0);
    for (SimplexIndex i = 0; i < simplices_.size(); ++i)
        if (keep[i]) {
            where[i] = k.simplices_.size();
            k.simplices_.push_back(simplices_[i]);
        }
    for (auto& s : k.simplices_)
        for (auto& f : s.faces) {
            if (!keep[f]) throw FfsError("subset: '" + s.id + "' has a face outside the subset");
            f = where[f];
        }
    k.build_index();
    return k;
}

FilteredFaceSet FilteredFaceSet::padded(int new_n) const
{
    if (new_n < n_) throw FfsError("padding cannot lower n");
    FilteredFaceSet k = *this;
    k.n_ = new_n;
    for (auto& s : k.simplices_) s.profile.j.insert(s.profile.j.begin(), new_n - n_, -1);
    return k;
}

ValidationReport validate(const FilteredFaceSet& k, bool require_regular)
{
    return validate(k.presentation(), require_regular);
}

std::size_t connected_components(const FilteredFaceSet& k)
{
    std::vector<std::size_t> parent(k.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (SimplexIndex s = 0; s < k.size(); ++s)
        for (auto f : k[s].faces) parent[find(s)] = find(f);
    std::set<std::size_t> roots;
    for (SimplexIndex s = 0; s < k.size(); ++s) roots.insert(find(s));
    return roots.size();
}

CheckReport check_face_map(const FfsPairMap& f)
{
    CheckReport rep;
    const auto& src = *f.source;
    const auto& tgt = *f.target;
    if (f.image.size() != src.size()) {
        rep.fail("map is not defined on every simplex");
        return rep;
    }
    for (SimplexIndex s = 0; s < src.size(); ++s) {
        SimplexIndex t = f.image[s];
        if (src[s].profile != tgt[t].profile) {
            rep.fail("profile of '" + src[s].id + "' " + src[s].profile.str() + " maps to '" + tgt[t].id + "' " +
                     tgt[t].profile.str());
            continue;
        }
        for (std::size_t i = 0; i < src[s].faces.size(); ++i)
            if (f.image[src[s].faces[i]] != tgt[t].faces[i])
                rep.fail("map does not commute with d" + std::to_string(i) + " at '" + src[s].id + "'");
    }
    return rep;
}

} // namespace perverse::ffs
