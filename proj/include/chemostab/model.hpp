#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "chemostab/linalg.hpp"

namespace chemostab {

/// Largest stoichiometric coefficient accepted anywhere in a network.
inline constexpr int kMaxStoichiometry = 9;

struct Species {
    std::size_t index = 0;
    std::string name;

    bool operator==(const Species&) const = default;
};

/// Species index -> coefficient. Absent keys mean zero.
using Complex = std::map<std::size_t, int>;

/// One irreversible mass-action reaction. An empty product complex encodes
/// decay, an empty reactant complex a zeroth-order source.
struct Reaction {
    Complex reactants;
    Complex products;
    double rate = 0.0;

    int order() const;
    bool operator==(const Reaction&) const = default;
};

class ReactionNetwork {
public:
    ReactionNetwork() = default;

    /// Index of `name`, registering it if unseen.
    std::size_t intern_species(const std::string& name);
    std::optional<std::size_t> find_species(const std::string& name) const;

    void add_reaction(Reaction reaction);

    std::size_t size() const noexcept { return species_.size(); }
    const std::vector<Species>& species() const noexcept { return species_; }
    const std::vector<Reaction>& reactions() const noexcept { return reactions_; }

    /// Throws ValidationError when a reaction references an unknown species,
    /// has a negative rate, an out-of-range coefficient, or two empty sides.
    void validate() const;

    bool operator==(const ReactionNetwork&) const = default;

private:
    std::vector<Species> species_;
    std::vector<Reaction> reactions_;
};

struct Interval {
    double length = 0.0;
};

struct Rectangle {
    double lx = 0.0;
    double ly = 0.0;
};

using DomainSpec = std::variant<Interval, Rectangle>;

/// Parameters of the chemotaxis system coupled to a reaction network.
struct ModelSpec {
    ReactionNetwork network;
    Vector alpha;                 // production rate of each species per unit density
    double chi = 1.0;             // chemotactic sensitivity
    double D = 1.0;               // diffusion of the chemotactic species
    Vector D_tilde;               // chemical diffusion coefficients
    DomainSpec domain = Interval{1.0};
    std::size_t chemoattractant = 0;

    std::size_t species_count() const noexcept { return network.size(); }

    /// Throws ValidationError naming the first violated invariant.
    void validate() const;
};

/// Mass-action rate vector g(v).
Vector eval_kinetics(const ReactionNetwork& net, const Vector& v);

/// Exact Jacobian dg/dv, differentiated monomial by monomial.
Matrix eval_jacobian(const ReactionNetwork& net, const Vector& v);

}  // namespace chemostab
