#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>

namespace perverse {

/** Integer extended by -inf and +inf. Perversities only use +inf,
 *  perverse degrees only use -inf. */
class ExtInt {
public:
    enum class Kind : std::uint8_t { NegInf, Finite, PosInf };

    constexpr ExtInt() = default;
    constexpr ExtInt(int v) : kind_(Kind::Finite), value_(v) {}

    static constexpr ExtInt neg_inf() { return ExtInt(Kind::NegInf); }
    static constexpr ExtInt pos_inf() { return ExtInt(Kind::PosInf); }

    constexpr bool finite() const { return kind_ == Kind::Finite; }
    constexpr bool is_neg_inf() const { return kind_ == Kind::NegInf; }
    constexpr bool is_pos_inf() const { return kind_ == Kind::PosInf; }
    constexpr Kind kind() const { return kind_; }
    int value() const;

    constexpr std::strong_ordering operator<=>(const ExtInt& o) const {
        if (kind_ != o.kind_) return kind_ <=> o.kind_;
        if (kind_ != Kind::Finite) return std::strong_ordering::equal;
        return value_ <=> o.value_;
    }
    constexpr bool operator==(const ExtInt& o) const = default;

    /** -inf absorbs; -inf + +inf is rejected. */
    friend ExtInt operator+(ExtInt a, ExtInt b);

    std::string str() const;

private:
    constexpr explicit ExtInt(Kind k) : kind_(k), value_(0) {}
    Kind kind_ = Kind::Finite;
    int value_ = 0;
};

std::ostream& operator<<(std::ostream& os, const ExtInt& x);

} // namespace perverse
