#include "perverse/blowup.hpp"
#include "perverse/builtins.hpp"
#include "perverse/ffs_io.hpp"
#include "perverse/gm_chains.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using namespace perverse;

namespace {

constexpr int kVerified = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct Input {
    std::string source;
    std::optional<int> n;
};

ffs::FilteredFaceSet load(const Input& in)
{
    if (std::filesystem::is_regular_file(in.source)) {
        ffs::FilteredFaceSet k = io::parse_ffs(io::read_file(in.source));
        if (in.n && *in.n != k.n()) k = k.padded(*in.n);
        return k;
    }
    return builtins::build(in.source, {}, in.n);
}

void emit(const std::string& text, const std::string& path)
{
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io::ParseError("cannot write '" + path + "'");
    out << text;
}

linalg::Ring parse_ring(const std::string& r) { return r == "q" ? linalg::Ring::Q : linalg::Ring::Z; }

std::string join(const std::vector<int>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Intersection homology and cohomology of filtered face sets"};
    app.require_subcommand(1);
    int status = kVerified;

    // validate
    std::string validate_path;
    auto* validate = app.add_subcommand("validate", "Check a filtered face set file (format A or B)");
    validate->add_option("path", validate_path, "Input file")->required();
    validate->callback([&] {
        ffs::FfsPresentation p = io::parse_presentation(io::read_file(validate_path));
        ffs::ValidationReport rep = ffs::validate(p);
        if (rep.ok()) {
            std::cout << "valid: n=" << p.n << ", " << p.simplices.size() << " simplices\n";
        } else {
            std::cout << rep.str();
            status = kFailed;
        }
    });

    // example
    std::string example_name, example_out;
    std::vector<std::string> example_mods;
    std::optional<int> example_n;
    auto* example = app.add_subcommand("example", "Emit a built-in example as format A JSON");
    example->add_option("name", example_name, "point, s0, circle, torus, cp2, pinched-ribbon, or a prefixed name")
        ->required();
    example->add_option("--modifier", example_mods, "cone, suspension, join:K, prism (repeatable)");
    example->add_option("--n", example_n, "Filtration dimension");
    example->add_option("-o", example_out, "Output path");
    example->callback([&] {
        std::vector<builtins::Modifier> mods;
        for (const auto& m : example_mods) mods.push_back(builtins::parse_modifier(m));
        emit(io::to_json(builtins::build(example_name, mods, example_n)), example_out);
    });

    // homology
    Input hin;
    std::string theory = "gm", pspec = "infinite", ring = "z", format = "json", hout;
    bool cohomology = false;
    auto* homology = app.add_subcommand("homology", "Intersection (co)homology");
    homology->add_option("input", hin.source, "File or built-in name")->required();
    homology->add_option("--theory", theory, "gm or blowup")->check(CLI::IsMember({"gm", "blowup"}));
    homology->add_option("--perversity", pspec, "Perversity spec");
    homology->add_option("--ring", ring, "z or q")->check(CLI::IsMember({"z", "q"}));
    homology->add_flag("--cohomology", cohomology, "Cohomology (always on for blowup)");
    homology->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));
    homology->add_option("-o", hout, "Output path");
    homology->add_option("--n", hin.n, "Filtration dimension for built-ins");
    homology->callback([&] {
        ffs::FilteredFaceSet k = load(hin);
        Perversity p = parse_perversity(pspec, k.n());
        linalg::Ring r = parse_ring(ring);
        linalg::HomologyResult h;
        if (theory == "blowup") h = blowup::blowup_cohomology(k, p, r);
        else h = cohomology ? gm::gm_cohomology(k, p, r) : gm::gm_homology(k, p, r);
        emit(format == "json" ? io::homology_to_json(h) : io::homology_to_table(h), hout);
    });

    // compare
    Input cin_;
    std::string qspec, cring = "q";
    auto* compare = app.add_subcommand("compare", "Blow-up at q against GM cochains at the complement of q");
    compare->add_option("input", cin_.source, "File or built-in name")->required();
    compare->add_option("--q", qspec, "Perversity q >= 0")->required();
    compare->add_option("--ring", cring, "z or q")->check(CLI::IsMember({"z", "q"}));
    compare->add_option("--n", cin_.n, "Filtration dimension for built-ins");
    compare->callback([&] {
        ffs::FilteredFaceSet k = load(cin_);
        Perversity q = parse_perversity(qspec, k.n());
        blowup::Comparison c = blowup::compare(k, q, parse_ring(cring));
        std::cout << "blow-up q=" << c.q.str() << "\n" << io::homology_to_table(c.h_blowup);
        std::cout << "GM cochains p=" << c.p.str() << "\n" << io::homology_to_table(c.h_gm);
        if (c.defect) std::cout << "chi is not a chain map in degree " << *c.defect << "\n";
        else std::cout << "chi is a chain map\n";
        bool ok = !c.defect && c.quasi_isomorphism;
        std::cout << (ok ? "iso" : "not iso") << "\n";
        if (!ok) status = kFailed;
    });

    // normalize
    Input nin;
    std::string nout;
    auto* normalize = app.add_subcommand("normalize", "Normalization N(K)");
    normalize->add_option("input", nin.source, "File or built-in name")->required();
    normalize->add_option("-o", nout, "Output path");
    normalize->add_option("--n", nin.n, "Filtration dimension for built-ins");
    normalize->callback([&] {
        ffs::FilteredFaceSet k = load(nin);
        ffs::Normalization nk = ffs::normalize(k);
        emit(io::to_json(nk.normal), nout);
        std::ostream& log = nout.empty() ? std::cerr : std::cout;
        bool after = ffs::is_normal(nk.normal);
        log << "normal before: " << (ffs::is_normal(k) ? "yes" : "no") << "\n"
            << "normal after: " << (after ? "yes" : "no") << "\n"
            << "simplex delta: " << static_cast<long>(nk.normal.size()) - static_cast<long>(k.size()) << "\n";
        if (!after) status = kFailed;
    });

    // check
    Input kin;
    auto* check = app.add_subcommand("check", "Run the structural checks on one filtered face set");
    check->add_option("input", kin.source, "File or built-in name")->required();
    check->add_option("--n", kin.n, "Filtration dimension for built-ins");
    check->callback([&] {
        ffs::FilteredFaceSet k = load(kin);
        std::vector<std::pair<std::string, ffs::CheckReport>> reps;
        reps.emplace_back("skeleton decomposition", ffs::check_all_skeleton_decompositions(k));
        reps.emplace_back("local blow-up structure", blowup::check_local_structure(k));
        reps.emplace_back("gluing", blowup::check_gluing(blowup::global_sections(k)));
        reps.emplace_back("infinite perversity", blowup::check_infinite_perversity(k));
        if (ffs::is_normal(k)) reps.emplace_back("zero perversity", blowup::check_zero_perversity_normal(k));
        for (const auto& [name, rep] : reps) {
            std::cout << (rep.ok ? "PASS " : "FAIL ") << name << "\n";
            if (!rep.ok) {
                std::cout << rep.str();
                status = kFailed;
            }
        }
    });

    // perversity
    auto* perv = app.add_subcommand("perversity", "Perversity arithmetic");
    perv->require_subcommand(1);
    int pn = 0;
    std::string pa, pb;
    auto* oplus = perv->add_subcommand("oplus", "Smallest GM perversity above p + q");
    oplus->add_option("--n", pn)->required();
    oplus->add_option("p", pa)->required();
    oplus->add_option("q", pb)->required();
    oplus->callback([&] { std::cout << perverse::oplus(parse_perversity(pa, pn), parse_perversity(pb, pn)).str() << "\n"; });
    auto* compl_ = perv->add_subcommand("complement", "t - p");
    compl_->add_option("--n", pn)->required();
    compl_->add_option("p", pa)->required();
    compl_->callback([&] { std::cout << complement(parse_perversity(pa, pn)).str() << "\n"; });
    auto* pk = perv->add_subcommand("peaks", "Peaks of a perversity");
    pk->add_option("--n", pn)->required();
    pk->add_option("p", pa)->required();
    pk->callback([&] { std::cout << join(peaks(parse_perversity(pa, pn))) << "\n"; });
    auto* pred = perv->add_subcommand("predecessors", "Predecessors of a perversity");
    pred->add_option("--n", pn)->required();
    pred->add_option("p", pa)->required();
    pred->callback([&] {
        for (const auto& x : predecessors(parse_perversity(pa, pn))) std::cout << x.str() << "\n";
    });
    auto* cls = perv->add_subcommand("classify", "loose, perversity, gm or infinite");
    cls->add_option("--n", pn)->required();
    cls->add_option("p", pa)->required();
    cls->callback([&] { std::cout << to_string(classify(parse_perversity(pa, pn))) << "\n"; });
    auto* en = perv->add_subcommand("enumerate-gm", "All GM perversities");
    en->add_option("--n,n", pn)->required();
    en->callback([&] {
        for (const auto& x : enumerate_gm(pn)) std::cout << x.str() << "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kUsage;
    } catch (const ffs::InvalidFfs& e) {
        std::cerr << "invalid filtered face set:\n" << e.report().str();
        return kFailed;
    } catch (const io::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const PerversityError& e) {
        std::cerr << "perversity error: " << e.what() << "\n";
        return kUsage;
    } catch (const ffs::FfsError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailed;
    }
    return status;
}
