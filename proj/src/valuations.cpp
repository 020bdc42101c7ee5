#include "dynamo/valuations.hpp"

#include <algorithm>

namespace dynamo {

std::strong_ordering gamma_compare(const GammaValue& a, const GammaValue& b) {
    if (a.bottom || b.bottom) {
        if (a.bottom && b.bottom) return std::strong_ordering::equal;
        return a.bottom ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    // magnitude p^-r: larger r = smaller magnitude
    if (a.r != b.r) return a.r > b.r ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.gamma != b.gamma)
        return a.gamma < b.gamma ? std::strong_ordering::less : std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

std::optional<unsigned> gauss_norm(const Polynomial& f) {
    if (f.is_zero()) return std::nullopt;
    unsigned best = f.context()->precision();
    for (const auto& t : f.terms()) best = std::min(best, val(t.coeff));
    return best;
}

Polynomial normalize_generator(const Polynomial& f) {
    auto g = gauss_norm(f);
    if (!g) throw std::invalid_argument("normalize_generator: zero polynomial");
    if (*g + 1 > f.context()->precision())
        throw std::invalid_argument("normalize_generator: no precision room to scale");
    Polynomial out = f;
    for (unsigned i = 0; i < *g; ++i) out = divide_by_prime(out);
    return out;
}

GammaValue rank2_val(const Polynomial& f) {
    if (f.dim() != 1) throw std::invalid_argument("rank2_val: univariate polynomial required");
    if (f.is_zero()) return GammaValue::zero();
    const unsigned norm = *gauss_norm(f);
    std::int64_t top_index = 0;
    for (const auto& t : f.terms()) {
        if (val(t.coeff) == norm)
            top_index = std::max(top_index, static_cast<std::int64_t>(t.exps[0]));
    }
    return GammaValue{false, static_cast<std::int64_t>(norm), top_index};
}

}  // namespace dynamo
