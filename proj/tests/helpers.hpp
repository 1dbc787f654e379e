#pragma once

#include "intlot/market.hpp"

#include <algorithm>
#include <random>

namespace testutil {

using namespace intlot;

/// Random valid one- or two-period model with rational data:
/// adapted prices are generated per information block.
inline market::MarketModel random_rational_model(std::mt19937& rng, int max_n = 5,
                                                 int max_d = 3, int max_T = 2) {
    std::uniform_int_distribution<int> nd(2, max_n), dd(1, max_d), td(1, max_T);
    const int n = nd(rng), d = dd(rng), T = td(rng);

    market::MarketModel m;
    for (int i = 1; i <= n; ++i) m.states.push_back("w" + std::to_string(i));
    for (int i = 0; i < n; ++i) m.probabilities.push_back(Scalar(BigRat(1, n)));
    m.periods = T;
    m.rate = Scalar(0);

    m.filtration = market::MarketModel::default_filtration(n, T);
    if (T == 2) {
        // Random refining middle partition from a shuffled cut.
        std::vector<int> order(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
        std::shuffle(order.begin(), order.end(), rng);
        std::uniform_int_distribution<int> kd(1, n);
        int k = kd(rng);
        std::vector<std::vector<int>> mid(static_cast<std::size_t>(k));
        for (int i = 0; i < n; ++i)
            mid[static_cast<std::size_t>(i % k)].push_back(order[static_cast<std::size_t>(i)]);
        mid.erase(std::remove_if(mid.begin(), mid.end(),
                                 [](const auto& b) { return b.empty(); }),
                  mid.end());
        m.filtration[1] = mid;
    }

    std::uniform_int_distribution<int> num(0, 8), den(1, 4);
    for (int j = 0; j < d; ++j) {
        m.asset_names.push_back("S" + std::to_string(j + 1));
        std::vector<std::vector<Scalar>> rows(static_cast<std::size_t>(T + 1),
                                              std::vector<Scalar>(static_cast<std::size_t>(n)));
        for (int t = 0; t <= T; ++t) {
            const auto& part = m.filtration[static_cast<std::size_t>(t)];
            for (const auto& block : part) {
                Scalar v{BigRat(num(rng), den(rng))};
                for (int s : block) rows[static_cast<std::size_t>(t)][static_cast<std::size_t>(s)] = v;
            }
        }
        m.prices.push_back(std::move(rows));
    }
    return m;
}

inline market::Strategy random_rational_strategy(std::mt19937& rng,
                                                 const market::MarketModel& m) {
    std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
    market::Strategy s = market::Strategy::zero(m, market::StrategyClass::rational_cls);
    for (auto& per_asset : s.positions)
        for (auto& per_t : per_asset)
            for (auto& v : per_t) v = Scalar(BigRat(num(rng), den(rng)));
    s.initial_value = Scalar(BigRat(num(rng), den(rng)));
    return s;
}

} // namespace testutil
