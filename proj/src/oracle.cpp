#include "wmh/oracle.hpp"

#include <algorithm>

namespace wmh {

namespace {

void check_pair(const WeightedSet &a, const WeightedSet &b) {
    if (a.universe_size() != b.universe_size()) {
        throw Error(ErrorCode::UniverseMismatch, std::to_string(a.universe_size()) + " vs " +
                                                     std::to_string(b.universe_size()));
    }
    if (a.empty() && b.empty()) throw Error(ErrorCode::BothEmpty, "similarity of two empty sets");
}

// Merge walk over two sorted entry lists; f(weight_a, weight_b) sees 0 for absent elements.
template <class F>
void merge_walk(const WeightedSet &a, const WeightedSet &b, F &&f) {
    auto ea = a.entries();
    auto eb = b.entries();
    std::size_t i = 0, j = 0;
    while (i < ea.size() || j < eb.size()) {
        if (j == eb.size() || (i < ea.size() && ea[i].id < eb[j].id)) {
            f(ea[i++].weight, 0.0);
        } else if (i == ea.size() || eb[j].id < ea[i].id) {
            f(0.0, eb[j++].weight);
        } else {
            f(ea[i++].weight, eb[j++].weight);
        }
    }
}

} // namespace

double jaccard(const WeightedSet &a, const WeightedSet &b) {
    check_pair(a, b);
    std::size_t both = 0, either = 0;
    merge_walk(a, b, [&](double x, double y) {
        ++either;
        if (x > 0.0 && y > 0.0) ++both;
    });
    return static_cast<double>(both) / static_cast<double>(either);
}

double generalized_jaccard(const WeightedSet &a, const WeightedSet &b) {
    check_pair(a, b);
    double num = 0.0, den = 0.0;
    merge_walk(a, b, [&](double x, double y) {
        num += std::min(x, y);
        den += std::max(x, y);
    });
    return num / den;
}

} // namespace wmh
