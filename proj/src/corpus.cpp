#include "superkoszul/corpus.hpp"

namespace superkoszul {

Rational random_rational(Rng& rng) {
    std::uniform_int_distribution<int> num(1, 3);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> sgn(0, 1);
    Rational r(num(rng), den(rng));
    return sgn(rng) ? r : -r;
}

SuperPoly random_poly_in(Rng& rng, ChartPtr chart, int max_degree,
                         const std::function<bool(const Generator&)>& pred,
                         std::optional<Parity> parity, int term_count) {
    std::vector<int> allowed;
    for (int g = 0; g < chart->size(); ++g)
        if (pred(chart->gen(g))) allowed.push_back(g);
    if (allowed.empty()) throw Error("random_poly_in: no allowed generators");

    SuperPoly out(chart);
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<size_t> pick(0, allowed.size() - 1);
    int produced = 0;
    for (int attempt = 0; attempt < term_count * 40 && produced < term_count;
         ++attempt) {
        int d = deg(rng);
        SuperPoly term = SuperPoly::constant(chart, Scalar::from_rational(
                                                        random_rational(rng)));
        for (int k = 0; k < d; ++k)
            term = term * SuperPoly::generator(chart, allowed[pick(rng)]);
        if (term.is_zero()) continue;  // odd generator squared
        if (parity && monomial_parity(*chart, term.terms().begin()->first) != *parity)
            continue;
        out = out + term;
        ++produced;
    }
    return parity ? out.parity_part(*parity) : out;
}

SuperPoly random_poly(Rng& rng, ChartPtr chart, int max_degree,
                      std::optional<Parity> parity, int term_count) {
    return random_poly_in(
        rng, chart, max_degree, [](const Generator&) { return true; }, parity,
        term_count);
}

}  // namespace superkoszul
