#pragma once

#include "perverse/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace perverse::linalg {

/**
 * A chain (or cochain) complex of free modules C_0..C_D given as
 * subgroups of ambient free modules. diff[k] maps C_k to C_{k-1}
 * (homological) or to C_{k+1} (cohomological), in the chosen bases.
 */
struct ChainComplexPresentation {
    Ring ring = Ring::Z;
    bool cohomological = false;
    std::vector<std::size_t> ambient_rank;
    std::vector<IntMatrix> basis;
    std::vector<IntMatrix> diff;

    int top_degree() const { return static_cast<int>(basis.size()) - 1; }
    std::size_t rank(int k) const;
    /** Throws LinalgError on shape mismatch or D*D != 0. */
    void check() const;
    /** Transposed differentials; homological <-> cohomological. */
    ChainComplexPresentation dual() const;
};

/** Complex on the full ambient bases (identity basis matrices). */
ChainComplexPresentation make_complex(Ring ring, bool cohomological, std::vector<IntMatrix> diff,
                                      std::vector<std::size_t> ranks);

struct HomologyResult {
    Ring ring = Ring::Z;
    bool cohomological = false;
    std::vector<std::size_t> betti;
    std::vector<std::vector<Integer>> torsion;
    /** Per degree: cycle representatives in subgroup coordinates,
     *  torsion generators first, then free generators. */
    std::optional<std::vector<IntMatrix>> representatives;
    std::optional<std::vector<std::vector<Integer>>> generator_orders;  // 0 = free

    /** Same groups, representatives ignored. */
    bool same_groups(const HomologyResult& o) const;
    std::size_t degrees() const { return betti.size(); }
    std::string str() const;
};

HomologyResult homology(const ChainComplexPresentation& c, bool with_representatives = false);

struct InducedMap {
    std::vector<IntMatrix> matrices;   // rows: generators of H(target), cols: generators of H(source)
    bool isomorphism = false;
    HomologyResult source, target;
};

/** Returns the offending degree, or nullopt if f commutes with differentials. */
std::optional<int> chain_map_defect(const ChainComplexPresentation& a, const ChainComplexPresentation& b,
                                    const std::vector<IntMatrix>& f);

ChainComplexPresentation mapping_cone(const ChainComplexPresentation& a, const ChainComplexPresentation& b,
                                      const std::vector<IntMatrix>& f);

/** f is a quasi-isomorphism over the complexes' ring iff its cone is acyclic. */
bool is_quasi_isomorphism(const ChainComplexPresentation& a, const ChainComplexPresentation& b,
                          const std::vector<IntMatrix>& f);

/** Throws LinalgError naming the degree if f is not a chain map. */
InducedMap induced_map_on_homology(const ChainComplexPresentation& a, const ChainComplexPresentation& b,
                                   const std::vector<IntMatrix>& f);

} // namespace perverse::linalg
