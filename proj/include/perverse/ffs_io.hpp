#pragma once

#include "perverse/ffs.hpp"
#include "perverse/homology.hpp"

#include <stdexcept>
#include <string>
#include <string_view>

namespace perverse::io {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/** Format A ("ffs-a/1") or B ("ffs-b/1"); without a "format" field the
 *  shape decides. Format B is expanded to its presentation. */
ffs::FfsPresentation parse_presentation(std::string_view text);

/** parse_presentation followed by validation (throws ffs::InvalidFfs). */
ffs::FilteredFaceSet parse_ffs(std::string_view text);

/** Canonical format A: sorted keys, simplices in (dimension, id) order. */
std::string to_json(const ffs::FilteredFaceSet& k);
std::string to_json(const ffs::FfsPresentation& p);

std::string homology_to_json(const linalg::HomologyResult& h);
std::string homology_to_table(const linalg::HomologyResult& h);

std::string read_file(const std::string& path);

} // namespace perverse::io
