#pragma once

#include "perverse/extint.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace perverse {

class PerversityError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class PerversityClass { Loose, Perversity, GM, Infinite };

std::string to_string(PerversityClass c);

/**
 * Map {0..n} -> Z with p(0) = 0, or the infinite perversity.
 * Values are stored for indices 0..n.
 */
class Perversity {
public:
    Perversity() = default;
    /** values at indices 1..n; p(0)=0 is implied. */
    static Perversity from_values(const std::vector<int>& tail);
    static Perversity infinite(int n);

    static Perversity zero(int n);
    static Perversity top(int n);
    static Perversity top_prime(int n);
    static Perversity constant(int n, int c);

    int n() const { return n_; }
    bool is_infinite() const { return infinite_; }
    /** p(i); +inf for the infinite perversity at i >= 1. */
    ExtInt operator()(int i) const;
    /** Finite value; throws on the infinite perversity. */
    int at(int i) const;
    const std::vector<int>& values() const { return values_; }

    bool operator==(const Perversity& o) const = default;
    /** Pointwise order. */
    bool le(const Perversity& o) const;

    /** "v1,...,vn" or "inf". */
    std::string str() const;

private:
    int n_ = 0;
    bool infinite_ = false;
    std::vector<int> values_{0};
};

PerversityClass classify(const Perversity& p);
bool is_perversity(const Perversity& p);
bool is_gm(const Perversity& p);

Perversity complement(const Perversity& q);
Perversity oplus(const Perversity& p, const Perversity& q);
/** Smallest GM perversity above p+q by scanning all GM perversities. */
Perversity oplus_by_scan(const Perversity& p, const Perversity& q);
std::vector<Perversity> enumerate_gm(int n);

std::vector<int> peaks(const Perversity& p);
std::vector<Perversity> predecessors(const Perversity& p);

/**
 * zero | top | top-prime | infinite | const:c | complement:SPEC
 * or a comma list of values at indices 1..n.
 */
Perversity parse_perversity(std::string_view spec, int n);

} // namespace perverse
