#pragma once

#include <cmath>
#include <random>
#include <string>

#include "chemostab/crn_parser.hpp"
#include "chemostab/linalg.hpp"
#include "chemostab/model.hpp"

namespace testing {

inline std::string model_path(const std::string& name) { return std::string(CHEMOSTAB_MODELS_DIR) + "/" + name; }

inline chemostab::ModelSpec bundled(const std::string& name) { return chemostab::load_model(model_path(name)); }

inline constexpr double kPi = 3.141592653589793;

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

// Random n x n matrix; each entry is nonzero with probability `density`.
inline chemostab::Matrix random_matrix(std::mt19937_64& rng, int n, double density, double lo, double hi) {
    std::uniform_real_distribution<double> val(lo, hi);
    std::bernoulli_distribution keep(density);
    chemostab::Matrix A = chemostab::Matrix::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (keep(rng)) A(i, j) = val(rng);
        }
    }
    return A;
}

// Mass-action g(v) straight from the definition, one reaction and species at a time.
inline chemostab::Vector brute_kinetics(const chemostab::ReactionNetwork& net, const chemostab::Vector& v) {
    chemostab::Vector g = chemostab::Vector::Zero(v.size());
    for (const auto& r : net.reactions()) {
        double rate = r.rate;
        for (const auto& [k, s] : r.reactants) rate *= std::pow(v[static_cast<Eigen::Index>(k)], s);
        for (Eigen::Index k = 0; k < v.size(); ++k) {
            auto get = [&](const chemostab::Complex& c) {
                auto it = c.find(static_cast<std::size_t>(k));
                return it == c.end() ? 0 : it->second;
            };
            g[k] += (get(r.products) - get(r.reactants)) * rate;
        }
    }
    return g;
}

// Random network with up to `max_species` species, `max_reactions` reactions
// and coefficients <= max_coeff.
inline chemostab::ReactionNetwork random_network(std::mt19937_64& rng, int max_species, int max_reactions,
                                                 int max_coeff) {
    std::uniform_int_distribution<int> ns(1, max_species), nr(1, max_reactions), coeff(0, max_coeff);
    std::uniform_real_distribution<double> rate(0.1, 3.0);
    chemostab::ReactionNetwork net;
    const int n = ns(rng);
    for (int k = 0; k < n; ++k) net.intern_species("s" + std::to_string(k));
    const int m = nr(rng);
    for (int r = 0; r < m; ++r) {
        chemostab::Reaction rx;
        for (int k = 0; k < n; ++k) {
            if (int c = coeff(rng); c > 0) rx.reactants[static_cast<std::size_t>(k)] = c;
            if (int c = coeff(rng); c > 0) rx.products[static_cast<std::size_t>(k)] = c;
        }
        if (rx.reactants.empty() && rx.products.empty()) rx.reactants[0] = 1;
        rx.rate = rate(rng);
        net.add_reaction(rx);
    }
    return net;
}

}  // namespace testing
