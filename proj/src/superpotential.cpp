#include "swsh/superpotential.hpp"

namespace swsh {

EffectiveSuperpotential EffectiveSuperpotential::physical(const SuperpotentialSeries& series, int order) {
    const int top = order < 0 ? series.order() : order;
    if (top > series.order()) {
        throw StateError("requested order " + std::to_string(top) + " exceeds series order " +
                         std::to_string(series.order()));
    }
    EffectiveSuperpotential out{series.m(), series.w0(), {}};
    for (int n = 1; n <= top; ++n) out.orders.push_back(series.w(n));
    return out;
}

}  // namespace swsh
