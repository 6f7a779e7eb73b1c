#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace eaifd {

using AttrId = std::uint32_t;

/// Upper bound on schema width; attribute sets are single 64-bit masks.
inline constexpr AttrId kMaxAttributes = 64;

/// A subset of the schema's attributes, stored as a bitmask.
class AttrSet {
public:
    constexpr AttrSet() = default;
    constexpr explicit AttrSet(std::uint64_t bits) : bits_(bits) {}

    static constexpr AttrSet single(AttrId a) { return AttrSet(std::uint64_t{1} << a); }
    static constexpr AttrSet full(AttrId m) {
        return AttrSet(m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1);
    }
    static AttrSet of(std::initializer_list<AttrId> attrs) {
        AttrSet s;
        for (AttrId a : attrs) s.insert(a);
        return s;
    }

    constexpr std::uint64_t bits() const { return bits_; }
    constexpr bool empty() const { return bits_ == 0; }
    constexpr int size() const { return std::popcount(bits_); }
    constexpr bool contains(AttrId a) const { return (bits_ >> a) & 1U; }
    constexpr void insert(AttrId a) { bits_ |= std::uint64_t{1} << a; }
    constexpr void erase(AttrId a) { bits_ &= ~(std::uint64_t{1} << a); }
    constexpr bool is_subset_of(AttrSet o) const { return (bits_ & ~o.bits_) == 0; }
    constexpr bool is_proper_subset_of(AttrSet o) const { return is_subset_of(o) && bits_ != o.bits_; }
    constexpr bool intersects(AttrSet o) const { return (bits_ & o.bits_) != 0; }
    /// Lowest attribute id in the set; undefined on the empty set.
    constexpr AttrId first() const { return static_cast<AttrId>(std::countr_zero(bits_)); }

    /// Attribute ids in ascending order.
    std::vector<AttrId> ids() const;

    template <typename F>
    void for_each(F&& fn) const {
        for (std::uint64_t b = bits_; b != 0; b &= b - 1) fn(static_cast<AttrId>(std::countr_zero(b)));
    }

    friend constexpr AttrSet operator|(AttrSet a, AttrSet b) { return AttrSet(a.bits_ | b.bits_); }
    friend constexpr AttrSet operator&(AttrSet a, AttrSet b) { return AttrSet(a.bits_ & b.bits_); }
    friend constexpr AttrSet operator-(AttrSet a, AttrSet b) { return AttrSet(a.bits_ & ~b.bits_); }
    constexpr AttrSet& operator|=(AttrSet o) { bits_ |= o.bits_; return *this; }
    constexpr AttrSet& operator&=(AttrSet o) { bits_ &= o.bits_; return *this; }

    friend constexpr bool operator==(AttrSet, AttrSet) = default;
    friend constexpr auto operator<=>(AttrSet a, AttrSet b) { return a.bits_ <=> b.bits_; }

private:
    std::uint64_t bits_ = 0;
};

/// Orders sets by their ascending id sequences, e.g. {0,3} < {1} < {1,2}.
bool lex_less(AttrSet a, AttrSet b);

/// Debug rendering such as "{0,2,5}".
std::string to_string(AttrSet s);

/// A candidate or discovered dependency lhs -> rhs.
struct Candidate {
    AttrSet lhs;
    AttrId rhs = 0;

    friend bool operator==(const Candidate&, const Candidate&) = default;
    friend auto operator<=>(const Candidate&, const Candidate&) = default;
};

/// Sorts and deduplicates a vector of sets in place (by mask value).
void normalize(std::vector<AttrSet>& sets);

} // namespace eaifd

template <>
struct std::hash<eaifd::AttrSet> {
    std::size_t operator()(eaifd::AttrSet s) const noexcept { return std::hash<std::uint64_t>{}(s.bits()); }
};
