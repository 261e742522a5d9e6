#pragma once

#include "perverse/ffs.hpp"
#include "perverse/homology.hpp"
#include "perverse/perversity.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace perverse::blowup {

class BlowupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Cell F_0..F_n of the prism cD^{j0} x ... x cD^{j(n-1)} x D^{jn}, one
 * vertex bitmask per factor. For a < n the apex of cD^{ja} is the last
 * vertex, bit ja+1 (bit 0 when ja = -1).
 */
using Cell = std::vector<std::uint32_t>;

/** Vertices of factor a: ja+2 for a < n, jn+1 for a = n. */
int factor_size(const ffs::JoinProfile& p, int a);
int cell_degree(const Cell& f);
/** -inf if ja = -1 or the apex is in F_a (a = n-ell); else the tail degree. */
ExtInt cell_perverse_degree(const ffs::JoinProfile& p, const Cell& f, int ell);

std::size_t cell_count(const ffs::JoinProfile& p);
std::size_t cell_index(const ffs::JoinProfile& p, const Cell& f);
Cell cell_at(const ffs::JoinProfile& p, std::size_t index);

/** Sign of e_{F+v} in d(e_F) when vertex v is added to factor a. */
int coboundary_sign(const Cell& f, int a, int v);

/** Image of a cell of d_i(sigma) under the inclusion into the prism of sigma. */
Cell include_cell(const ffs::JoinProfile& sigma, int i, const Cell& face_cell);
/** Restriction of e_F along d_i: the cell of d_i(sigma), or nullopt (zero). */
std::optional<Cell> restrict_cell(const ffs::JoinProfile& sigma, int i, const Cell& f);

struct LocalComplex {
    ffs::JoinProfile profile;
    std::vector<Cell> cells;                          // index order
    std::vector<std::vector<std::size_t>> by_degree;  // cell indices per degree
    std::vector<std::size_t> pos;                     // position within its degree
    /** d[k]: degree k+1 rows, degree k columns. */
    std::vector<linalg::IntMatrix> d;
};

/** Throws BlowupError for a non-positive profile. */
LocalComplex local_complex(const ffs::JoinProfile& p);

/**
 * Global sections: local bases over K+ glued along face operators that stay
 * in K+. A section is a function on gluing classes of pairs (sigma, cell).
 */
struct GlobalSections {
    ffs::FilteredFaceSet k;
    std::vector<std::size_t> offset;                      // per simplex; first pair index
    std::vector<std::size_t> class_of;                    // per pair
    std::vector<std::pair<ffs::SimplexIndex, std::size_t>> rep;  // per class: simplex and cell index
    std::vector<int> degree;                              // per class
    std::vector<std::vector<ExtInt>> perverse_degree;     // per class, ell = 0..n
    std::vector<std::vector<std::size_t>> by_degree;      // classes per degree
    std::vector<std::size_t> pos;                         // per class: position within its degree
    std::vector<linalg::IntMatrix> d;                     // d[k]: degree k+1 x degree k

    std::size_t class_count() const { return rep.size(); }
    int top_degree() const { return static_cast<int>(by_degree.size()) - 1; }
    std::size_t class_of_cell(ffs::SimplexIndex s, const Cell& f) const;
};

/** Throws BlowupError when K+ is empty. */
GlobalSections global_sections(const ffs::FilteredFaceSet& k);

/** Every class, or only the q-admissible ones. */
bool admissible_class(const GlobalSections& g, std::size_t cls, const Perversity& q);

linalg::ChainComplexPresentation global_complex(const GlobalSections& g, linalg::Ring ring);
/** C~_q: g and dg admissible. */
linalg::ChainComplexPresentation perverse_truncation(const GlobalSections& g, const Perversity& q, linalg::Ring ring);
linalg::ChainComplexPresentation perverse_truncation(const ffs::FilteredFaceSet& k, const Perversity& q,
                                                     linalg::Ring ring);
linalg::HomologyResult blowup_cohomology(const ffs::FilteredFaceSet& k, const Perversity& q, linalg::Ring ring);

// ---- sections and products ----

struct Section {
    int degree = 0;
    std::vector<linalg::Rational> coeff;  // over g.by_degree[degree]
};

Section zero_section(const GlobalSections& g, int degree);
Section unit(const GlobalSections& g);
Section differential(const GlobalSections& g, const Section& a);
Section cup(const GlobalSections& g, const Section& a, const Section& b);
ExtInt section_perverse_degree(const GlobalSections& g, const Section& a, int ell);

// ---- comparison with GM cochains ----

struct Comparison {
    Perversity q, p;
    linalg::ChainComplexPresentation blowup;  // C~_q, cohomological
    linalg::ChainComplexPresentation gm;      // GM cochains at p = complement(q)
    std::vector<linalg::IntMatrix> chi;       // chi[k]: gm rank x blowup rank
    std::optional<int> defect;                // degree where chi fails to commute with d
    bool quasi_isomorphism = false;
    linalg::HomologyResult h_blowup, h_gm;
};

/** Throws PerversityError unless q >= 0 pointwise. */
Comparison compare(const ffs::FilteredFaceSet& k, const Perversity& q, linalg::Ring ring);

// ---- checks ----

/** Local d*d = 0, restriction commutes with d and does not raise perverse degrees. */
ffs::CheckReport check_local_structure(const ffs::FilteredFaceSet& k);
/** d does not depend on the representative chosen for each class. */
ffs::CheckReport check_gluing(const GlobalSections& g);

ffs::CheckReport check_blowup_cone_formula(const ffs::FilteredFaceSet& k, int kdim, const Perversity& q,
                                           linalg::Ring ring = linalg::Ring::Q);
ffs::CheckReport check_infinite_perversity(const ffs::FilteredFaceSet& k, linalg::Ring ring = linalg::Ring::Q);
/** Throws ffs::FfsError for non-normal input. */
ffs::CheckReport check_zero_perversity_normal(const ffs::FilteredFaceSet& k, linalg::Ring ring = linalg::Ring::Q);

} // namespace perverse::blowup
