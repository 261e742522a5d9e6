#pragma once

#include "perverse/extint.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace perverse::ffs {

class FfsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/** Join Delta^{j0} * ... * Delta^{jn}, each j_a >= -1, not all -1. */
struct JoinProfile {
    std::vector<int> j;

    JoinProfile() = default;
    explicit JoinProfile(std::vector<int> v) : j(std::move(v)) {}

    int n() const { return static_cast<int>(j.size()) - 1; }
    int dim() const;
    bool empty() const;
    /** j_n >= 0 */
    bool positive() const { return !j.empty() && j.back() >= 0; }
    /** Factor containing global vertex i. */
    int factor_of_vertex(int i) const;
    /** Position of global vertex i inside its factor. */
    int local_index(int i) const;
    /** First global vertex of factor a. */
    int factor_offset(int a) const;
    JoinProfile face(int i) const;
    /** ||.||_ell: dim of the prefix join through factor n-ell, or -inf. */
    ExtInt perverse_degree(int ell) const;
    /** max{n-a : j_a != -1} */
    int depth() const;

    auto operator<=>(const JoinProfile&) const = default;
    std::string str() const;
};

using SimplexIndex = std::size_t;

struct Simplex {
    std::string id;
    JoinProfile profile;
    std::vector<SimplexIndex> faces;  // d_0 .. d_N

    int dim() const { return profile.dim(); }
};

/** Id-based presentation, as read from a file. */
struct SimplexSpec {
    std::string id;
    std::vector<int> profile;
    std::vector<std::string> faces;
};

struct FfsPresentation {
    int n = 0;
    std::vector<SimplexSpec> simplices;
};

struct ValidationIssue {
    std::string simplex;
    std::string kind;
    std::string message;
};

struct ValidationReport {
    std::vector<ValidationIssue> issues;
    bool ok() const { return issues.empty(); }
    std::string str() const;
};

/** Profiles, face targets, face closure, simplicial identities, non-empty regular part. */
ValidationReport validate(const FfsPresentation& p, bool require_regular = true);

class InvalidFfs : public FfsError {
public:
    explicit InvalidFfs(ValidationReport r);
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/**
 * Finite filtered face set. Simplices are stored sorted by (dimension, id);
 * faces are indices into the same array.
 */
class FilteredFaceSet {
public:
    FilteredFaceSet() = default;

    /** Throws InvalidFfs. require_regular=false admits an empty regular part
     *  (links, skeleta and other derived pieces). */
    static FilteredFaceSet from_presentation(const FfsPresentation& p, bool require_regular = true);
    /** Skips validation; used for fault injection in tests. */
    static FilteredFaceSet from_presentation_unchecked(const FfsPresentation& p);

    FfsPresentation presentation() const;

    int n() const { return n_; }
    std::size_t size() const { return simplices_.size(); }
    bool empty() const { return simplices_.empty(); }
    const Simplex& operator[](SimplexIndex i) const { return simplices_[i]; }
    const std::vector<Simplex>& simplices() const { return simplices_; }
    std::optional<SimplexIndex> find(std::string_view id) const;
    SimplexIndex index(std::string_view id) const;

    int dim() const;
    int depth() const;
    std::vector<SimplexIndex> of_dim(int k) const;
    bool positive(SimplexIndex s) const { return simplices_[s].profile.positive(); }
    std::size_t positive_count() const;

    SimplexIndex face(SimplexIndex s, int i) const { return simplices_[s].faces.at(i); }
    /** Removes the listed global vertices (any order). */
    SimplexIndex iterated_face(SimplexIndex s, std::vector<int> vertices) const;
    /** All faces of any codimension including s itself, sorted. */
    std::vector<SimplexIndex> closure(SimplexIndex s) const;
    /** Closure of a set, as a membership mask. */
    std::vector<bool> closure_mask(const std::vector<SimplexIndex>& gens) const;

    /** Sub-face-set on a face-closed mask; ids kept. */
    FilteredFaceSet subset(const std::vector<bool>& keep) const;
    /** Same simplices with the profile padded by -1 factors in front. */
    FilteredFaceSet padded(int new_n) const;

private:
    void build_index();

    int n_ = 0;
    std::vector<Simplex> simplices_;
    std::unordered_map<std::string, SimplexIndex> by_id_;
};

ValidationReport validate(const FilteredFaceSet& k, bool require_regular = true);

/** Number of connected components (simplices linked by face relations). */
std::size_t connected_components(const FilteredFaceSet& k);

// ---- filtration ----

ExtInt perverse_degree(const Simplex& s, int ell);
int depth(const Simplex& s);

/** K^{[r],k}; k = -1 gives K^{[r-1]}. */
FilteredFaceSet filtered_skeleton(const FilteredFaceSet& k, int r, int kk);
/** K^{[r]} */
FilteredFaceSet filtered_skeleton(const FilteredFaceSet& k, int r);
std::vector<bool> skeleton_mask(const FilteredFaceSet& k, int r, int kk);
FilteredFaceSet regular_part(const FilteredFaceSet& k);

// ---- star, link, expanded link ----

/** tau must have exactly one non-empty factor a = n - r. */
struct StarData {
    SimplexIndex tau = 0;
    int r = 0;
    int k = 0;
    std::vector<SimplexIndex> tops;      // sigma with R1(sigma) = tau
    std::vector<bool> star;              // K(tau)
    std::vector<bool> boundary_star;     // K(tau, d tau) (k >= 1) or the link (k = 0)
    std::vector<bool> link;              // L(K, tau)
};

StarData star_data(const FilteredFaceSet& k, SimplexIndex tau);
/** R1: restriction to factor n-r; nullopt when that factor is empty. */
std::optional<SimplexIndex> restrict_first(const FilteredFaceSet& k, SimplexIndex s, int r);
/** R2: restriction to factors n-r+1..n; nullopt when empty. */
std::optional<SimplexIndex> restrict_tail(const FilteredFaceSet& k, SimplexIndex s, int r);

FilteredFaceSet star(const FilteredFaceSet& k, SimplexIndex tau);
FilteredFaceSet boundary_star(const FilteredFaceSet& k, SimplexIndex tau);
FilteredFaceSet link(const FilteredFaceSet& k, SimplexIndex tau);
/** Simplices are (R2 sigma, sigma), carrying the id of sigma. */
FilteredFaceSet expanded_link(const FilteredFaceSet& k, SimplexIndex tau);

struct CheckReport {
    bool ok = true;
    std::vector<std::string> lines;
    void fail(std::string msg)
    {
        ok = false;
        lines.push_back(std::move(msg));
    }
    void note(std::string msg) { lines.push_back(std::move(msg)); }
    std::string str() const;
};

/** Skeleton-star identity for every tau in J(K^{[r],k}), the union relative
 *  isomorphism onto (K^{[r],k}, K^{[r],k-1}), and the cone map from
 *  Delta^k * L^exp onto each star. */
CheckReport check_skeleton_decomposition(const FilteredFaceSet& k, int r, int kk);
/** All r in 1..n and k in 0..max. */
CheckReport check_all_skeleton_decompositions(const FilteredFaceSet& k);

// ---- maps ----

struct FfsPairMap {
    const FilteredFaceSet* source = nullptr;
    const FilteredFaceSet* target = nullptr;
    std::vector<SimplexIndex> image;
};

/** Commutes with all faces and preserves profiles. Returns issues. */
CheckReport check_face_map(const FfsPairMap& f);

// ---- constructions ----

/** Provenance of a simplex of L * K: vertex set of the Delta^k part and inner simplex. */
struct JoinPart {
    std::uint32_t outer = 0;                   // bitmask over 0..k, 0 if none
    std::optional<SimplexIndex> inner;         // simplex of K
};

/**
 * L * K for L a subcomplex of Delta^k given by its vertex sets (closed
 * under non-empty subsets). The Delta^k part goes to factor n - ell;
 * K must have depth < ell.
 */
FilteredFaceSet join_subcomplex(const std::vector<std::uint32_t>& l, int kdim, const FilteredFaceSet& k, int ell,
                                std::vector<JoinPart>* provenance = nullptr);
/** Delta^k * K at ell = depth(K) + 1 unless given. */
FilteredFaceSet join_simplex(int kdim, const FilteredFaceSet& k, std::optional<int> ell = std::nullopt,
                             std::vector<JoinPart>* provenance = nullptr);
FilteredFaceSet cone(const FilteredFaceSet& k);
/** {v1, v2} * K */
FilteredFaceSet suspension(const FilteredFaceSet& k);

/** Perverse degree of a join simplex via the case table for L * K. */
ExtInt join_case_degree(int kdim, int ell, const JoinPart& part, const FilteredFaceSet& k, int ell_prime);

/** Face set (an n = 0 filtered face set) of the standard simplex Delta^k. */
FilteredFaceSet standard_simplex(int k);
/** K (x) T with T a face set (n = 0). */
FilteredFaceSet product_with_face_set(const FilteredFaceSet& k, const FilteredFaceSet& t);

/** Subsets of facets; vertices ordered by (level, id). */
FilteredFaceSet from_filtered_complex(int n, const std::map<std::string, int>& vertex_levels,
                                      const std::vector<std::vector<std::string>>& facets);

// ---- normal filtered face sets ----

bool is_normal(const FilteredFaceSet& k);

struct Normalization {
    FilteredFaceSet normal;
    std::vector<SimplexIndex> to_original;  // the map N(K) -> K
};

Normalization normalize(const FilteredFaceSet& k);

} // namespace perverse::ffs
