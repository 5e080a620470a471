#include "mathieu/eigenclass.hpp"

#include "mathieu/errors.hpp"

#include <algorithm>
#include <cctype>

namespace mathieu {

std::string class_name(EigenClass c) {
    switch (c) {
        case EigenClass::CE_EVEN: return "CE_EVEN";
        case EigenClass::CE_ODD: return "CE_ODD";
        case EigenClass::SE_EVEN: return "SE_EVEN";
        default: return "SE_ODD";
    }
}

EigenClass parse_class(const std::string& s) {
    std::string u = s;
    std::transform(u.begin(), u.end(), u.begin(), [](unsigned char ch) { return std::toupper(ch); });
    if (u == "CE_EVEN") return EigenClass::CE_EVEN;
    if (u == "CE_ODD") return EigenClass::CE_ODD;
    if (u == "SE_EVEN") return EigenClass::SE_EVEN;
    if (u == "SE_ODD") return EigenClass::SE_ODD;
    throw DomainError("unknown eigen class: " + s);
}

EigenClass class_for(bool cosine, int order) {
    if (order < 0) throw DomainError("order must be non-negative");
    if (cosine) return order % 2 ? EigenClass::CE_ODD : EigenClass::CE_EVEN;
    if (order == 0) throw DomainError("se_0 does not exist");
    return order % 2 ? EigenClass::SE_ODD : EigenClass::SE_EVEN;
}

int first_index(EigenClass c) {
    switch (c) {
        case EigenClass::CE_EVEN: return 0;
        case EigenClass::SE_EVEN: return 2;
        default: return 1;
    }
}

bool is_cosine(EigenClass c) { return c == EigenClass::CE_EVEN || c == EigenClass::CE_ODD; }

bool is_even_class(EigenClass c) { return c == EigenClass::CE_EVEN || c == EigenClass::SE_EVEN; }

bool order_matches(EigenClass c, int order) {
    return order >= first_index(c) && (order - first_index(c)) % 2 == 0;
}

int order_position(EigenClass c, int order) {
    if (!order_matches(c, order)) throw DomainError("order " + std::to_string(order) + " does not belong to " + class_name(c));
    return (order - first_index(c)) / 2;
}

int order_at(EigenClass c, int position) { return first_index(c) + 2 * position; }

int m_type_of(EigenClass c) {
    switch (c) {
        case EigenClass::CE_EVEN: return 0;
        case EigenClass::CE_ODD: return 1;
        case EigenClass::SE_EVEN: return 2;
        default: return 3;
    }
}

EigenClass class_of_m_type(int m_type) {
    switch (m_type) {
        case 0: return EigenClass::CE_EVEN;
        case 1: return EigenClass::CE_ODD;
        case 2: return EigenClass::SE_EVEN;
        case 3: return EigenClass::SE_ODD;
        default: throw DomainError("m_type must be 0..3");
    }
}

}  // namespace mathieu
