#include "perverse/homology.hpp"
#include "perverse/parallel.hpp"

#include <sstream>

namespace perverse::linalg {

std::size_t ChainComplexPresentation::rank(int k) const
{
    if (k < 0 || k > top_degree()) return 0;
    return basis[k].cols();
}

void ChainComplexPresentation::check() const
{
    int d = top_degree();
    if (ambient_rank.size() != basis.size() || diff.size() != basis.size())
        throw LinalgError("complex: inconsistent number of degrees");
    for (int k = 0; k <= d; ++k) {
        if (basis[k].rows() != ambient_rank[k]) throw LinalgError("complex: basis rows != ambient rank in degree " + std::to_string(k));
        int tgt = cohomological ? k + 1 : k - 1;
        if (diff[k].cols() != rank(k) || diff[k].rows() != rank(tgt))
            throw LinalgError("complex: differential shape mismatch in degree " + std::to_string(k));
    }
    for (int k = 0; k <= d; ++k) {
        int next = cohomological ? k + 1 : k - 1;
        if (next < 0 || next > d) continue;
        if (!(diff[next] * diff[k]).is_zero())
            throw LinalgError("complex: D*D != 0 at degree " + std::to_string(k));
    }
}

ChainComplexPresentation ChainComplexPresentation::dual() const
{
    ChainComplexPresentation out;
    out.ring = ring;
    out.cohomological = !cohomological;
    out.ambient_rank = ambient_rank;
    out.basis = basis;
    int d = top_degree();
    out.diff.resize(basis.size());
    for (int k = 0; k <= d; ++k) {
        // new diff[k] : C_k -> C_{k+-1} is the transpose of old diff[k+-1]
        int src = cohomological ? k - 1 : k + 1;
        if (src < 0 || src > d) out.diff[k] = IntMatrix(0, rank(k));
        else out.diff[k] = diff[src].transpose();
    }
    return out;
}

ChainComplexPresentation make_complex(Ring ring, bool cohomological, std::vector<IntMatrix> diff,
                                      std::vector<std::size_t> ranks)
{
    ChainComplexPresentation c;
    c.ring = ring;
    c.cohomological = cohomological;
    c.ambient_rank = ranks;
    for (auto r : ranks) c.basis.push_back(IntMatrix::identity(r));
    c.diff = std::move(diff);
    c.check();
    return c;
}

bool HomologyResult::same_groups(const HomologyResult& o) const
{
    auto trim = [](const HomologyResult& h) {
        std::size_t n = h.betti.size();
        while (n > 0 && h.betti[n - 1] == 0 && h.torsion[n - 1].empty()) --n;
        return n;
    };
    std::size_t n = trim(*this);
    if (n != trim(o)) return false;
    for (std::size_t k = 0; k < n; ++k)
        if (betti[k] != o.betti[k] || torsion[k] != o.torsion[k]) return false;
    return true;
}

std::string HomologyResult::str() const
{
    std::ostringstream os;
    for (std::size_t k = 0; k < betti.size(); ++k) {
        if (k) os << ' ';
        os << k << ':' << betti[k];
        if (!torsion[k].empty()) {
            os << '+';
            for (std::size_t i = 0; i < torsion[k].size(); ++i) os << (i ? "," : "") << 'Z' << torsion[k][i];
        }
    }
    return os.str();
}

namespace {

struct DegreeData {
    IntMatrix kernel;
    IntMatrix gens;
    IntMatrix u;
    std::vector<Integer> orders;  // per SNF diagonal position (1 = trivial, 0 = free)
};

// generators of ker(out)/im(in) for one degree
DegreeData degree_generators(std::size_t rank_k, const IntMatrix* out, const IntMatrix* in)
{
    DegreeData dd;
    dd.kernel = out ? kernel_basis(*out) : IntMatrix::identity(rank_k);
    std::size_t z = dd.kernel.cols();
    IntMatrix w = in ? solve_in_lattice(dd.kernel, *in) : IntMatrix(z, 0);
    SmithDecomposition s = smith_normal_form(w);
    dd.u = s.U;
    dd.orders.assign(z, Integer(0));
    for (std::size_t i = 0; i < std::min(z, w.cols()); ++i)
        if (s.S.get(i, i) != 0) dd.orders[i] = s.S.get(i, i);
    dd.gens = dd.kernel * unimodular_inverse(s.U);
    return dd;
}

const IntMatrix* incoming(const ChainComplexPresentation& c, int k)
{
    int src = c.cohomological ? k - 1 : k + 1;
    if (src < 0 || src > c.top_degree()) return nullptr;
    return &c.diff[src];
}

} // namespace

HomologyResult homology(const ChainComplexPresentation& c, bool with_representatives)
{
    c.check();
    int d = c.top_degree();
    std::size_t nd = static_cast<std::size_t>(d + 1);
    std::vector<std::vector<Integer>> inv(nd);
    std::vector<std::size_t> rk(nd);
    parallel_for(nd, [&](std::size_t k) {
        if (c.ring == Ring::Z) {
            inv[k] = smith_invariants(c.diff[k]);
            rk[k] = inv[k].size();
        } else {
            rk[k] = rank(c.diff[k]);
        }
    });

    HomologyResult h;
    h.ring = c.ring;
    h.cohomological = c.cohomological;
    h.betti.resize(nd);
    h.torsion.resize(nd);
    for (int k = 0; k <= d; ++k) {
        int src = c.cohomological ? k - 1 : k + 1;
        std::size_t rin = (src >= 0 && src <= d) ? rk[src] : 0;
        h.betti[k] = c.rank(k) - rk[k] - rin;
        if (c.ring == Ring::Z && src >= 0 && src <= d)
            for (const auto& x : inv[src])
                if (x > 1) h.torsion[k].push_back(x);
    }

    if (with_representatives) {
        std::vector<IntMatrix> reps(nd);
        std::vector<std::vector<Integer>> orders(nd);
        parallel_for(nd, [&](std::size_t k) {
            DegreeData dd = degree_generators(c.rank(static_cast<int>(k)), &c.diff[k], incoming(c, static_cast<int>(k)));
            std::vector<std::size_t> keep;
            for (std::size_t i = 0; i < dd.orders.size(); ++i) {
                bool torsion = dd.orders[i] > 1;
                bool free = dd.orders[i] == 0;
                if ((torsion && c.ring == Ring::Z) || free) keep.push_back(i);
            }
            // torsion generators come first in SNF order already
            reps[k] = dd.gens.select_columns(keep);
            for (auto i : keep) orders[k].push_back(dd.orders[i]);
        });
        h.representatives = std::move(reps);
        h.generator_orders = std::move(orders);
    }
    return h;
}

namespace {

std::size_t rank_at(const ChainComplexPresentation& c, int k) { return c.rank(k); }

IntMatrix diff_at(const ChainComplexPresentation& c, int k)
{
    int tgt = c.cohomological ? k + 1 : k - 1;
    if (k < 0 || k > c.top_degree()) return IntMatrix(rank_at(c, tgt), 0);
    return c.diff[k];
}

IntMatrix map_at(const std::vector<IntMatrix>& f, const ChainComplexPresentation& a,
                 const ChainComplexPresentation& b, int k)
{
    if (k < 0 || k >= static_cast<int>(f.size())) return IntMatrix(rank_at(b, k), rank_at(a, k));
    return f[k];
}

void check_map_shapes(const ChainComplexPresentation& a, const ChainComplexPresentation& b,
                      const std::vector<IntMatrix>& f)
{
    if (a.cohomological != b.cohomological) throw LinalgError("chain map between complexes of different variance");
    for (int k = 0; k < static_cast<int>(f.size()); ++k)
        if (f[k].rows() != b.rank(k) || f[k].cols() != a.rank(k))
            throw LinalgError("chain map: shape mismatch in degree " + std::to_string(k));
}

} // namespace

std::optional<int> chain_map_defect(const ChainComplexPresentation& a, const ChainComplexPresentation& b,
                                    const std::vector<IntMatrix>& f)
{
    check_map_shapes(a, b, f);
    int top = std::max(a.top_degree(), b.top_degree());
    for (int k = 0; k <= top; ++k) {
        int t = a.cohomological ? k + 1 : k - 1;
        IntMatrix lhs = map_at(f, a, b, t) * diff_at(a, k);
        IntMatrix rhs = diff_at(b, k) * map_at(f, a, b, k);
        if (!(lhs == rhs) && !(lhs - rhs).is_zero()) return k;
    }
    return std::nullopt;
}

ChainComplexPresentation mapping_cone(const ChainComplexPresentation& a, const ChainComplexPresentation& b,
                                      const std::vector<IntMatrix>& f)
{
    check_map_shapes(a, b, f);
    if (a.ring != b.ring) throw LinalgError("mapping cone: ring mismatch");
    int top = std::max(a.top_degree(), b.top_degree()) + 1;
    std::vector<std::size_t> ranks;
    std::vector<IntMatrix> diff;
    if (a.cohomological) {
        // cone^k = A^k + B^{k-1};  d(a,b) = (-dA a, f a + dB b)
        for (int k = 0; k <= top; ++k) ranks.push_back(rank_at(a, k) + rank_at(b, k - 1));
        for (int k = 0; k <= top; ++k) {
            IntMatrix upper = hstack(-diff_at(a, k), IntMatrix(rank_at(a, k + 1), rank_at(b, k - 1)));
            IntMatrix lower = hstack(map_at(f, a, b, k), diff_at(b, k - 1));
            if (k == top) diff.push_back(IntMatrix(0, ranks[k]));
            else diff.push_back(vstack(upper, lower));
        }
    } else {
        // cone_k = A_{k-1} + B_k;  d(a,b) = (-dA a, f a + dB b)
        for (int k = 0; k <= top; ++k) ranks.push_back(rank_at(a, k - 1) + rank_at(b, k));
        for (int k = 0; k <= top; ++k) {
            IntMatrix upper = hstack(-diff_at(a, k - 1), IntMatrix(rank_at(a, k - 2), rank_at(b, k)));
            IntMatrix lower = hstack(map_at(f, a, b, k - 1), diff_at(b, k));
            if (k == 0) diff.push_back(IntMatrix(0, ranks[0]));
            else diff.push_back(vstack(upper, lower));
        }
    }
    return make_complex(a.ring, a.cohomological, std::move(diff), std::move(ranks));
}

bool is_quasi_isomorphism(const ChainComplexPresentation& a, const ChainComplexPresentation& b,
                          const std::vector<IntMatrix>& f)
{
    if (auto bad = chain_map_defect(a, b, f)) throw LinalgError("not a chain map in degree " + std::to_string(*bad));
    HomologyResult h = homology(mapping_cone(a, b, f));
    for (std::size_t k = 0; k < h.betti.size(); ++k)
        if (h.betti[k] != 0 || !h.torsion[k].empty()) return false;
    return true;
}

InducedMap induced_map_on_homology(const ChainComplexPresentation& a, const ChainComplexPresentation& b,
                                   const std::vector<IntMatrix>& f)
{
    if (auto bad = chain_map_defect(a, b, f)) throw LinalgError("not a chain map in degree " + std::to_string(*bad));
    InducedMap out;
    out.source = homology(a, true);
    out.target = homology(b, true);
    int top = a.top_degree();
    for (int k = 0; k <= top; ++k) {
        const IntMatrix& reps = (*out.source.representatives)[k];
        std::size_t ngen_b = k <= b.top_degree() ? (*out.target.representatives)[k].cols() : 0;
        if (k > b.top_degree() || reps.cols() == 0) {
            out.matrices.push_back(IntMatrix(ngen_b, reps.cols()));
            continue;
        }
        DegreeData dd = degree_generators(b.rank(k), &b.diff[k], incoming(b, k));
        IntMatrix images = map_at(f, a, b, k) * reps;
        IntMatrix coords = dd.u * solve_in_lattice(dd.kernel, images);
        std::vector<std::size_t> keep;
        for (std::size_t i = 0; i < dd.orders.size(); ++i)
            if ((dd.orders[i] > 1 && b.ring == Ring::Z) || dd.orders[i] == 0) keep.push_back(i);
        IntMatrix m = coords.transpose().select_columns(keep).transpose();
        for (std::size_t r = 0; r < keep.size(); ++r) {
            const Integer& ord = dd.orders[keep[r]];
            if (ord <= 1) continue;
            for (std::size_t c = 0; c < m.cols(); ++c) {
                Integer v = m.get(r, c);
                Integer red;
                mpz_fdiv_r(red.get_mpz_t(), v.get_mpz_t(), ord.get_mpz_t());
                m.set(r, c, red);
            }
        }
        out.matrices.push_back(std::move(m));
    }
    out.isomorphism = is_quasi_isomorphism(a, b, f);
    return out;
}

} // namespace perverse::linalg
