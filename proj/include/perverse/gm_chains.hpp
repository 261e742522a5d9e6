#pragma once

#include "perverse/ffs.hpp"
#include "perverse/homology.hpp"
#include "perverse/perversity.hpp"

#include <vector>

namespace perverse::gm {

struct AdmissibilityEntry {
    int ell = 0;
    ExtInt degree;  // ||sigma||_ell
    ExtInt bound;   // dim - ell + p(ell)
};

struct AdmissibilityProfile {
    std::string simplex;
    std::vector<AdmissibilityEntry> entries;  // ell = 0..n
    bool admissible() const;
};

AdmissibilityProfile admissibility_profile(const ffs::Simplex& s, const Perversity& p);
bool admissible(const ffs::Simplex& s, const Perversity& p);

/** Ambient boundary matrices: entry k maps k-simplices to (k-1)-simplices,
 *  both in (dimension, id) order. Entry 0 has zero rows. */
std::vector<linalg::IntMatrix> boundary_matrices(const ffs::FilteredFaceSet& k);

/** Intersection chains A_k cap d^{-1}(A_{k-1}) with the induced boundary. */
linalg::ChainComplexPresentation gm_complex(const ffs::FilteredFaceSet& k, const Perversity& p, linalg::Ring ring);

linalg::HomologyResult gm_homology(const ffs::FilteredFaceSet& k, const Perversity& p, linalg::Ring ring);
linalg::HomologyResult gm_cohomology(const ffs::FilteredFaceSet& k, const Perversity& p, linalg::Ring ring);

/** Ordinary homology of the underlying face set (all simplices). */
linalg::HomologyResult ordinary_homology(const ffs::FilteredFaceSet& k, linalg::Ring ring);
linalg::HomologyResult ordinary_cohomology(const ffs::FilteredFaceSet& k, linalg::Ring ring);

/**
 * Delta^k * K at ell = depth(K)+1 against K: equal for i <= ell-2-p(ell),
 * zero above. Needs p(ell) <= ell-2 and p(ell)-p(l') <= ell-l' for l' < ell.
 * Throws PerversityError when the hypothesis fails.
 */
ffs::CheckReport check_gm_cone_formula(const ffs::FilteredFaceSet& k, int kdim, const Perversity& p,
                                       linalg::Ring ring = linalg::Ring::Q);

/** gm_homology(K (x) Delta^1, p) against gm_homology(K, p). */
ffs::CheckReport check_prism_invariance(const ffs::FilteredFaceSet& k, const Perversity& p,
                                        linalg::Ring ring = linalg::Ring::Z);

} // namespace perverse::gm
