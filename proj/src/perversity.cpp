#include "perverse/perversity.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace perverse {

int ExtInt::value() const
{
    if (!finite()) throw std::logic_error("ExtInt::value on infinite value");
    return value_;
}

ExtInt operator+(ExtInt a, ExtInt b)
{
    if ((a.is_neg_inf() && b.is_pos_inf()) || (a.is_pos_inf() && b.is_neg_inf()))
        throw std::logic_error("ExtInt: -inf + +inf");
    if (a.is_neg_inf() || b.is_neg_inf()) return ExtInt::neg_inf();
    if (a.is_pos_inf() || b.is_pos_inf()) return ExtInt::pos_inf();
    return ExtInt(a.value_ + b.value_);
}

std::string ExtInt::str() const
{
    switch (kind_) {
    case Kind::NegInf: return "-inf";
    case Kind::PosInf: return "inf";
    default: return std::to_string(value_);
    }
}

std::ostream& operator<<(std::ostream& os, const ExtInt& x) { return os << x.str(); }

std::string to_string(PerversityClass c)
{
    switch (c) {
    case PerversityClass::Loose: return "loose";
    case PerversityClass::Perversity: return "perversity";
    case PerversityClass::GM: return "gm";
    case PerversityClass::Infinite: return "infinite";
    }
    return "?";
}

Perversity Perversity::from_values(const std::vector<int>& tail)
{
    Perversity p;
    p.n_ = static_cast<int>(tail.size());
    p.values_.assign(1, 0);
    p.values_.insert(p.values_.end(), tail.begin(), tail.end());
    return p;
}

Perversity Perversity::infinite(int n)
{
    if (n < 0) throw PerversityError("negative filtration dimension");
    Perversity p;
    p.n_ = n;
    p.infinite_ = true;
    p.values_.assign(n + 1, 0);
    return p;
}

Perversity Perversity::zero(int n) { return constant(n, 0); }

Perversity Perversity::top(int n)
{
    std::vector<int> v;
    for (int i = 1; i <= n; ++i) v.push_back(std::max(i - 2, 0));
    return from_values(v);
}

Perversity Perversity::top_prime(int n)
{
    std::vector<int> v;
    for (int i = 1; i <= n; ++i) v.push_back(i - 2);
    return from_values(v);
}

Perversity Perversity::constant(int n, int c)
{
    if (n < 0) throw PerversityError("negative filtration dimension");
    return from_values(std::vector<int>(n, c));
}

ExtInt Perversity::operator()(int i) const
{
    if (i < 0 || i > n_) throw PerversityError("perversity index out of range");
    if (infinite_ && i >= 1) return ExtInt::pos_inf();
    return ExtInt(values_[i]);
}

int Perversity::at(int i) const
{
    if (infinite_ && i >= 1) throw PerversityError("finite value of the infinite perversity");
    if (i < 0 || i > n_) throw PerversityError("perversity index out of range");
    return values_[i];
}

bool Perversity::le(const Perversity& o) const
{
    if (n_ != o.n_) throw PerversityError("perversities of different n");
    for (int i = 1; i <= n_; ++i)
        if ((*this)(i) > o(i)) return false;
    return true;
}

std::string Perversity::str() const
{
    if (infinite_) return "inf";
    std::ostringstream os;
    for (int i = 1; i <= n_; ++i) {
        if (i > 1) os << ',';
        os << values_[i];
    }
    return os.str();
}

bool is_perversity(const Perversity& p)
{
    if (p.is_infinite()) return false;
    for (int i = 0; i < p.n(); ++i) {
        int a = p.at(i), b = p.at(i + 1);
        if (b < a || b > a + 1) return false;
    }
    return true;
}

bool is_gm(const Perversity& p)
{
    if (!is_perversity(p)) return false;
    if (p.n() >= 1 && p.at(1) != 0) return false;
    if (p.n() >= 2 && p.at(2) != 0) return false;
    return true;
}

PerversityClass classify(const Perversity& p)
{
    if (p.is_infinite()) return PerversityClass::Infinite;
    if (is_gm(p)) return PerversityClass::GM;
    if (is_perversity(p)) return PerversityClass::Perversity;
    return PerversityClass::Loose;
}

Perversity complement(const Perversity& q)
{
    if (q.is_infinite()) throw PerversityError("complement of the infinite perversity");
    std::vector<int> v;
    for (int i = 1; i <= q.n(); ++i) v.push_back(i - 2 - q.at(i));
    return Perversity::from_values(v);
}

namespace {

void require_gm_or_infinite(const Perversity& p)
{
    if (!p.is_infinite() && !is_gm(p))
        throw PerversityError("expected a GM perversity, got " + p.str());
}

bool below_top(const std::vector<int>& r)
{
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] > std::max(static_cast<int>(i) - 2, 0)) return false;
    return true;
}

// Least GM r >= s, by monotone repair: raise to satisfy the step bound
// from above, then the monotonicity from below, until stable.
std::optional<std::vector<int>> closure_repair(std::vector<int> s)
{
    int n = static_cast<int>(s.size()) - 1;
    std::vector<int> r = s;
    r[0] = 0;
    for (int i = 1; i <= std::min(n, 2); ++i) r[i] = std::max(r[i], 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (int i = 1; i <= n; ++i)
            if (r[i] < r[i - 1]) { r[i] = r[i - 1]; changed = true; }
        for (int i = n - 1; i >= 0; --i)
            if (r[i] < r[i + 1] - 1) { r[i] = r[i + 1] - 1; changed = true; }
        if (r[0] != 0) return std::nullopt;
    }
    if (!below_top(r)) return std::nullopt;
    return r;
}

} // namespace

Perversity oplus(const Perversity& p, const Perversity& q)
{
    if (p.n() != q.n()) throw PerversityError("perversities of different n");
    require_gm_or_infinite(p);
    require_gm_or_infinite(q);
    int n = p.n();
    if (p.is_infinite() || q.is_infinite()) return Perversity::infinite(n);

    std::vector<int> s(n + 1);
    for (int i = 0; i <= n; ++i) s[i] = p.at(i) + q.at(i);
    for (int i = 2; i <= n; ++i)
        if (s[i] > i - 2) return Perversity::infinite(n);

    std::vector<int> r(n + 1);
    r[n] = s[n];
    bool recursion_ok = true;
    for (int k = n - 1; k >= 0 && recursion_ok; --k) {
        if (s[k] < r[k + 1]) r[k] = r[k + 1] - 1;
        else if (s[k] == r[k + 1]) r[k] = r[k + 1];
        else recursion_ok = false;
    }
    if (recursion_ok) {
        Perversity out = Perversity::from_values({r.begin() + 1, r.end()});
        if (r[0] == 0 && is_gm(out)) return out;
    }
    auto fixed = closure_repair(s);
    if (!fixed) return Perversity::infinite(n);
    return Perversity::from_values({fixed->begin() + 1, fixed->end()});
}

std::vector<Perversity> enumerate_gm(int n)
{
    if (n < 0) throw PerversityError("negative filtration dimension");
    std::vector<Perversity> out;
    std::vector<int> v(n + 1, 0);
    // v(i) for i >= 3 either repeats or steps up by one.
    auto rec = [&](auto&& self, int i) -> void {
        if (i > n) {
            out.push_back(Perversity::from_values({v.begin() + 1, v.end()}));
            return;
        }
        if (i <= 2) {
            v[i] = 0;
            self(self, i + 1);
            return;
        }
        for (int step = 0; step <= 1; ++step) {
            v[i] = v[i - 1] + step;
            self(self, i + 1);
        }
    };
    rec(rec, 1);
    return out;
}

Perversity oplus_by_scan(const Perversity& p, const Perversity& q)
{
    if (p.n() != q.n()) throw PerversityError("perversities of different n");
    int n = p.n();
    if (p.is_infinite() || q.is_infinite()) return Perversity::infinite(n);
    std::optional<Perversity> best;
    for (const auto& r : enumerate_gm(n)) {
        bool above = true;
        for (int i = 1; i <= n && above; ++i) above = r.at(i) >= p.at(i) + q.at(i);
        if (!above) continue;
        if (!best || r.le(*best)) best = r;
    }
    return best ? *best : Perversity::infinite(n);
}

std::vector<int> peaks(const Perversity& p)
{
    if (p.is_infinite() || !is_perversity(p))
        throw PerversityError("peaks: expected a perversity, got " + p.str());
    int n = p.n();
    std::vector<int> out;
    if (n < 2) return out;
    for (int j = 2; j <= n - 1; ++j)
        if (p.at(j + 1) == p.at(j) && p.at(j) > p.at(j - 1)) out.push_back(j);
    if (p.at(n) > p.at(n - 1)) out.push_back(n);
    return out;
}

std::vector<Perversity> predecessors(const Perversity& p)
{
    std::vector<Perversity> out;
    for (int j : peaks(p)) {
        std::vector<int> v(p.values().begin() + 1, p.values().end());
        v[j - 1] -= 1;
        out.push_back(Perversity::from_values(v));
    }
    return out;
}

namespace {

int parse_int(std::string_view s)
{
    int v = 0;
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
        throw PerversityError("not an integer: '" + std::string(s) + "'");
    return v;
}

} // namespace

Perversity parse_perversity(std::string_view spec, int n)
{
    if (spec == "zero") return Perversity::zero(n);
    if (spec == "top") return Perversity::top(n);
    if (spec == "top-prime" || spec == "top_prime") return Perversity::top_prime(n);
    if (spec == "infinite" || spec == "inf") return Perversity::infinite(n);
    if (spec.starts_with("const:")) return Perversity::constant(n, parse_int(spec.substr(6)));
    if (spec.starts_with("complement:")) return complement(parse_perversity(spec.substr(11), n));

    std::vector<int> vals;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = spec.find(',', start);
        vals.push_back(parse_int(spec.substr(start, comma == std::string_view::npos ? spec.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (static_cast<int>(vals.size()) != n)
        throw PerversityError("perversity '" + std::string(spec) + "' has " + std::to_string(vals.size()) +
                              " values, expected n=" + std::to_string(n));
    return Perversity::from_values(vals);
}

} // namespace perverse
