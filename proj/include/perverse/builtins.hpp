#pragma once

#include "perverse/ffs.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace perverse::builtins {

struct Modifier {
    enum class Kind { Cone, Suspension, Join, Prism };
    Kind kind = Kind::Cone;
    int k = 0;  // Join only

    /** Raises the depth by one (everything except the prism). */
    bool deepens() const { return kind != Kind::Prism; }
    std::string str() const;
};

/** cone | suspension | prism | join:K | joinK */
Modifier parse_modifier(std::string_view text);

/** point, s0, circle, torus, cp2, pinched-ribbon */
const std::vector<std::string>& base_names();

/** Depth of the base example before modifiers. */
int base_depth(std::string_view name);

/** Base example at filtration dimension n (regular vertices at level n). */
ffs::FilteredFaceSet base(std::string_view name, int n);

/**
 * Named example, optionally with modifier prefixes ("cone-cp2",
 * "suspension-torus", "join2-circle", "prism-cone-s0"). Prefix modifiers act
 * innermost first; `extra` modifiers then act in order. Without `n` the
 * smallest workable n >= 1 is used.
 */
ffs::FilteredFaceSet build(std::string_view spec, const std::vector<Modifier>& extra = {},
                           std::optional<int> n = std::nullopt);

/** The examples used by the cross-check suites. */
const std::vector<std::string>& catalog();

/** 9-vertex CP^2 facets (vertices 0..8). */
const std::vector<std::vector<int>>& cp2_facets();
/** 7-vertex torus facets (vertices 0..6). */
std::vector<std::vector<int>> torus_facets();

} // namespace perverse::builtins
