#pragma once

#include <string>

namespace mathieu {

// CE_EVEN: a_{2k}, CE_ODD: a_{2k+1}, SE_EVEN: b_{2k+2}, SE_ODD: b_{2k+1}.
enum class EigenClass { CE_EVEN, CE_ODD, SE_EVEN, SE_ODD };

struct EigenLabel {
    EigenClass cls = EigenClass::CE_EVEN;
    int order = 0;
    std::string path = "straight";
};

std::string class_name(EigenClass c);
EigenClass parse_class(const std::string& s);

// Class selected by a function family (ce/se) and an order.
EigenClass class_for(bool cosine, int order);

// Smallest Fourier frequency of the class (0, 1, 2, 1).
int first_index(EigenClass c);
bool is_cosine(EigenClass c);
bool is_even_class(EigenClass c);  // period pi
bool order_matches(EigenClass c, int order);
// Position of order m in the class's ascending list (0 for the first).
int order_position(EigenClass c, int order);
int order_at(EigenClass c, int position);
// Frequency of the k-th basis function of the class.
inline int harmonic(EigenClass c, int k) { return first_index(c) + 2 * k; }
// Blanch's continued-fraction type (Appendix-style m column) and back.
int m_type_of(EigenClass c);
EigenClass class_of_m_type(int m_type);

}  // namespace mathieu
