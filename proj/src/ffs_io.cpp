#include "perverse/ffs_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace perverse::io {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what)
{
    throw ParseError(where + ": " + what);
}

int get_int(const json& j, const std::string& where)
{
    if (!j.is_number_integer()) fail(where, "expected an integer");
    return j.get<int>();
}

std::string get_string(const json& j, const std::string& where)
{
    if (!j.is_string()) fail(where, "expected a string");
    return j.get<std::string>();
}

const json& member(const json& obj, const char* key, const std::string& where)
{
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, std::string("missing field \"") + key + "\"");
    return *it;
}

ffs::FfsPresentation parse_a(const json& doc)
{
    ffs::FfsPresentation p;
    p.n = get_int(member(doc, "n", "document"), "n");
    const json& simplices = member(doc, "simplices", "document");
    if (!simplices.is_array()) fail("simplices", "expected an array");
    for (std::size_t i = 0; i < simplices.size(); ++i) {
        std::string where = "simplices[" + std::to_string(i) + "]";
        const json& s = simplices[i];
        if (!s.is_object()) fail(where, "expected an object");
        ffs::SimplexSpec spec;
        spec.id = get_string(member(s, "id", where), where + ".id");
        const json& prof = member(s, "profile", where);
        if (!prof.is_array()) fail(where + ".profile", "expected an array of integers");
        for (std::size_t a = 0; a < prof.size(); ++a)
            spec.profile.push_back(get_int(prof[a], where + ".profile[" + std::to_string(a) + "]"));
        const json& faces = member(s, "faces", where);
        if (!faces.is_array()) fail(where + ".faces", "expected an array of ids");
        for (std::size_t f = 0; f < faces.size(); ++f)
            spec.faces.push_back(get_string(faces[f], where + ".faces[" + std::to_string(f) + "]"));
        p.simplices.push_back(std::move(spec));
    }
    return p;
}

ffs::FfsPresentation parse_b(const json& doc)
{
    int n = get_int(member(doc, "n", "document"), "n");
    const json& verts = member(doc, "vertices", "document");
    if (!verts.is_object()) fail("vertices", "expected an object mapping ids to levels");
    std::map<std::string, int> levels;
    for (auto it = verts.begin(); it != verts.end(); ++it)
        levels[it.key()] = get_int(it.value(), "vertices." + it.key());
    const json& facets = member(doc, "facets", "document");
    if (!facets.is_array()) fail("facets", "expected an array of vertex lists");
    std::vector<std::vector<std::string>> fs;
    for (std::size_t i = 0; i < facets.size(); ++i) {
        std::string where = "facets[" + std::to_string(i) + "]";
        if (!facets[i].is_array()) fail(where, "expected an array of vertex ids");
        std::vector<std::string> f;
        for (std::size_t v = 0; v < facets[i].size(); ++v)
            f.push_back(get_string(facets[i][v], where + "[" + std::to_string(v) + "]"));
        fs.push_back(std::move(f));
    }
    try {
        return ffs::from_filtered_complex(n, levels, fs).presentation();
    } catch (const ffs::FfsError& e) {
        fail("facets", e.what());
    }
}

} // namespace

ffs::FfsPresentation parse_presentation(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("document", "expected a JSON object");
    std::string format;
    if (auto it = doc.find("format"); it != doc.end()) format = get_string(*it, "format");
    else if (doc.contains("simplices")) format = "ffs-a/1";
    else if (doc.contains("facets")) format = "ffs-b/1";
    else fail("document", "cannot tell format A from format B");
    if (format == "ffs-a/1") return parse_a(doc);
    if (format == "ffs-b/1") return parse_b(doc);
    fail("format", "unknown format \"" + format + "\"");
}

ffs::FilteredFaceSet parse_ffs(std::string_view text)
{
    return ffs::FilteredFaceSet::from_presentation(parse_presentation(text));
}

std::string to_json(const ffs::FfsPresentation& p)
{
    json doc;
    doc["format"] = "ffs-a/1";
    doc["n"] = p.n;
    doc["simplices"] = json::array();
    for (const auto& s : p.simplices)
        doc["simplices"].push_back({{"id", s.id}, {"profile", s.profile}, {"faces", s.faces}});
    return doc.dump(1) + "\n";
}

std::string to_json(const ffs::FilteredFaceSet& k) { return to_json(k.presentation()); }

std::string homology_to_json(const linalg::HomologyResult& h)
{
    json doc;
    doc["betti"] = h.betti;
    json tor = json::array();
    for (const auto& t : h.torsion) {
        json row = json::array();
        for (const auto& x : t) row.push_back(json::parse(x.get_str()));
        tor.push_back(row);
    }
    doc["torsion"] = tor;
    doc["ring"] = linalg::to_string(h.ring);
    doc["variance"] = h.cohomological ? "cohomology" : "homology";
    return doc.dump() + "\n";
}

std::string homology_to_table(const linalg::HomologyResult& h)
{
    std::ostringstream os;
    os << "degree  rank  torsion\n";
    for (std::size_t k = 0; k < h.betti.size(); ++k) {
        os << k << "       " << h.betti[k] << "     ";
        if (h.torsion[k].empty()) os << "-";
        for (std::size_t i = 0; i < h.torsion[k].size(); ++i) os << (i ? " " : "") << "Z/" << h.torsion[k][i];
        os << '\n';
    }
    return os.str();
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace perverse::io
