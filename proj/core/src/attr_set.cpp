#include "eaifd/attr_set.hpp"

#include <algorithm>

namespace eaifd {

std::vector<AttrId> AttrSet::ids() const {
    std::vector<AttrId> out;
    out.reserve(static_cast<std::size_t>(size()));
    for_each([&](AttrId a) { out.push_back(a); });
    return out;
}

bool lex_less(AttrSet a, AttrSet b) {
    const auto x = a.ids();
    const auto y = b.ids();
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
}

std::string to_string(AttrSet s) {
    std::string out = "{";
    bool first = true;
    s.for_each([&](AttrId a) {
        if (!first) out += ',';
        out += std::to_string(a);
        first = false;
    });
    out += '}';
    return out;
}

void normalize(std::vector<AttrSet>& sets) {
    std::sort(sets.begin(), sets.end());
    sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
}

} // namespace eaifd
