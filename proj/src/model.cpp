#include "chemostab/model.hpp"

#include <cmath>

#include "chemostab/error.hpp"

namespace chemostab {

namespace {

double ipow(double x, int k) {
    double r = 1.0;
    for (int i = 0; i < k; ++i) r *= x;
    return r;
}

void check_dimension(const ReactionNetwork& net, const Vector& v) {
    if (static_cast<std::size_t>(v.size()) != net.size()) {
        throw DimensionError("concentration vector has length " + std::to_string(v.size()) +
                             ", network has " + std::to_string(net.size()) + " species");
    }
}

double monomial(const Complex& reactants, const Vector& v) {
    double m = 1.0;
    for (auto [j, s] : reactants) m *= ipow(v[static_cast<Eigen::Index>(j)], s);
    return m;
}

int net_change(const Reaction& r, std::size_t k) {
    int change = 0;
    if (auto it = r.products.find(k); it != r.products.end()) change += it->second;
    if (auto it = r.reactants.find(k); it != r.reactants.end()) change -= it->second;
    return change;
}

}  // namespace

int Reaction::order() const {
    int total = 0;
    for (auto [_, s] : reactants) total += s;
    return total;
}

std::size_t ReactionNetwork::intern_species(const std::string& name) {
    if (auto idx = find_species(name)) return *idx;
    species_.push_back(Species{species_.size(), name});
    return species_.size() - 1;
}

std::optional<std::size_t> ReactionNetwork::find_species(const std::string& name) const {
    for (const auto& s : species_) {
        if (s.name == name) return s.index;
    }
    return std::nullopt;
}

void ReactionNetwork::add_reaction(Reaction reaction) { reactions_.push_back(std::move(reaction)); }

void ReactionNetwork::validate() const {
    for (std::size_t i = 0; i < species_.size(); ++i) {
        if (species_[i].index != i) throw ValidationError("species indices are not contiguous");
        for (std::size_t j = 0; j < i; ++j) {
            if (species_[j].name == species_[i].name) {
                throw ValidationError("duplicate species name '" + species_[i].name + "'");
            }
        }
    }
    for (std::size_t r = 0; r < reactions_.size(); ++r) {
        const auto& rx = reactions_[r];
        const std::string where = "reaction " + std::to_string(r + 1);
        if (!(rx.rate >= 0.0) || !std::isfinite(rx.rate)) {
            throw ValidationError(where + ": rate constant must be finite and nonnegative");
        }
        if (rx.reactants.empty() && rx.products.empty()) {
            throw ValidationError(where + ": both sides are empty");
        }
        for (const Complex* side : {&rx.reactants, &rx.products}) {
            for (auto [idx, s] : *side) {
                if (idx >= species_.size()) {
                    throw ValidationError(where + ": unknown species index " + std::to_string(idx));
                }
                if (s < 1 || s > kMaxStoichiometry) {
                    throw ValidationError(where + ": stoichiometric coefficient out of range");
                }
            }
        }
    }
}

void ModelSpec::validate() const {
    network.validate();
    const auto n = static_cast<Eigen::Index>(network.size());
    if (n == 0) throw ValidationError("network has no species");
    if (alpha.size() != n) throw ValidationError("alpha length does not match species count");
    if (D_tilde.size() != n) throw ValidationError("D_tilde length does not match species count");
    bool any_positive = false;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!std::isfinite(alpha[i]) || alpha[i] < 0.0) throw ValidationError("alpha has a negative entry");
        if (alpha[i] > 0.0) any_positive = true;
        if (!std::isfinite(D_tilde[i]) || !(D_tilde[i] > 0.0)) {
            throw ValidationError("D_tilde entries must be positive");
        }
    }
    if (!any_positive) throw ValidationError("alpha has no positive entry");
    if (!std::isfinite(chi) || !(chi > 0.0)) throw ValidationError("chi must be positive");
    if (!std::isfinite(D) || !(D > 0.0)) throw ValidationError("D must be positive");
    if (chemoattractant >= network.size()) throw ValidationError("chemoattractant index out of range");
    std::visit(
        [](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Interval>) {
                if (!(d.length > 0.0) || !std::isfinite(d.length)) {
                    throw ValidationError("domain length must be positive");
                }
            } else {
                if (!(d.lx > 0.0) || !(d.ly > 0.0) || !std::isfinite(d.lx) || !std::isfinite(d.ly)) {
                    throw ValidationError("domain side lengths must be positive");
                }
            }
        },
        domain);
}

Vector eval_kinetics(const ReactionNetwork& net, const Vector& v) {
    check_dimension(net, v);
    Vector g = Vector::Zero(v.size());
    for (const auto& r : net.reactions()) {
        const double flux = r.rate * monomial(r.reactants, v);
        for (auto [k, _] : r.reactants) g[static_cast<Eigen::Index>(k)] += net_change(r, k) * flux;
        for (auto [k, _] : r.products) {
            if (!r.reactants.count(k)) g[static_cast<Eigen::Index>(k)] += net_change(r, k) * flux;
        }
    }
    return g;
}

Matrix eval_jacobian(const ReactionNetwork& net, const Vector& v) {
    check_dimension(net, v);
    const auto n = v.size();
    Matrix J = Matrix::Zero(n, n);
    for (const auto& r : net.reactions()) {
        for (auto [l, sl] : r.reactants) {
            // d/dv_l of rate * prod_j v_j^{s_j}
            double d = r.rate * sl * ipow(v[static_cast<Eigen::Index>(l)], sl - 1);
            for (auto [j, sj] : r.reactants) {
                if (j != l) d *= ipow(v[static_cast<Eigen::Index>(j)], sj);
            }
            const auto col = static_cast<Eigen::Index>(l);
            for (auto [k, _] : r.reactants) J(static_cast<Eigen::Index>(k), col) += net_change(r, k) * d;
            for (auto [k, _] : r.products) {
                if (!r.reactants.count(k)) J(static_cast<Eigen::Index>(k), col) += net_change(r, k) * d;
            }
        }
    }
    return J;
}

}  // namespace chemostab
