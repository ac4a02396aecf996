#pragma once

#include <string>
#include <vector>

#include "cslnoise/constants.hpp"
#include "cslnoise/spectra.hpp"

namespace csl {

/// Fabrication limits on a candidate stack.
struct Guardrails {
    bool enabled = true;
    double min_layer_thickness = 50e-9;  // m
    double max_aspect_ratio = 2.5;       // H / L
};

struct SearchSpace {
    std::vector<double> sides;     // L candidates, m
    int n_lay_min = 0;
    int n_lay_max = 0;
    std::vector<double> epsilons;  // b / a candidates
    double mass = 0.0;
    double density_a = 0.0;
    double density_b = 0.0;
    double r_c = 1e-7;
    ExcessNoise excess;
    Guardrails guardrails;
    /// Golden-section refinement of epsilon (and of L when more than one L is
    /// given) around the best grid point.
    bool refine = false;
    PhysicalConstants constants;

    void validate() const;
};

struct Candidate {
    double side = 0.0;
    int n_lay = 0;
    double epsilon = 1.0;
    double a = 0.0;
    double b = 0.0;
    double height = 0.0;
    double mass = 0.0;  // of the rebuilt stack
    double eta_bar = 0.0;
    double lambda_bound = 0.0;
    bool feasible = true;
    std::string note;  // why infeasible, or "refined"
};

struct Optimum {
    Candidate best;
    std::vector<Candidate> table;
};

/// Builds the mass-constrained stack for (L, N_lay, eps) and evaluates
/// lambda_bound at the space's target r_c.
Candidate evaluate_candidate(const SearchSpace& space, double side, int n_lay, double epsilon);

/// Strict ordering used to pick optima: lambda, then smaller N_lay, eps, L.
bool better(const Candidate& x, const Candidate& y);

/// Every L in `space.sides` against every N_lay in `n_lay_set` at one epsilon.
std::vector<Candidate> sweep_L(const SearchSpace& space, const std::vector<int>& n_lay_set,
                               double epsilon = 1.0, int threads = 1);

/// The full N_lay range against every epsilon at a fixed L.
std::vector<Candidate> sweep_Nlay_eps(const SearchSpace& space, double side, int threads = 1);

/// Exhaustive search of the grid, then optional refinement. Throws
/// ValidationError when no candidate is feasible.
Optimum optimize(const SearchSpace& space, int threads = 1);

}  // namespace csl
