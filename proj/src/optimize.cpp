#include "cslnoise/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

#include "cslnoise/diffusion.hpp"
#include "cslnoise/errors.hpp"
#include "cslnoise/parallel.hpp"

namespace csl {

namespace {

struct GridPoint {
    double side;
    int n_lay;
    double epsilon;
};

std::vector<Candidate> evaluate_all(const SearchSpace& space, const std::vector<GridPoint>& grid,
                                    int threads) {
    std::vector<Candidate> out(grid.size());
    parallel_for(grid.size(), threads, [&](std::size_t i) {
        out[i] = evaluate_candidate(space, grid[i].side, grid[i].n_lay, grid[i].epsilon);
    });
    return out;
}

const Candidate* best_feasible(const std::vector<Candidate>& table) {
    const Candidate* best = nullptr;
    for (const auto& c : table) {
        if (c.feasible && (best == nullptr || better(c, *best))) best = &c;
    }
    return best;
}

// Golden-section minimisation of f over [lo, hi] in log space.
template <class F>
double golden_log(F&& f, double lo, double hi, int iterations = 40) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = std::log(lo);
    double b = std::log(hi);
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(std::exp(x1));
    double f2 = f(std::exp(x2));
    for (int i = 0; i < iterations; ++i) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(std::exp(x1));
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(std::exp(x2));
        }
    }
    return std::exp(0.5 * (a + b));
}

// Neighbouring grid values around `value` in a sorted list.
std::pair<double, double> bracket(const std::vector<double>& sorted, double value) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), value);
    const std::size_t i = static_cast<std::size_t>(it - sorted.begin());
    const double lo = i > 0 ? sorted[i - 1] : value / 2.0;
    const double hi = i + 1 < sorted.size() ? sorted[i + 1] : value * 2.0;
    return {lo, hi};
}

}  // namespace

void SearchSpace::validate() const {
    if (sides.empty()) throw ValidationError("search space needs at least one L", "sides");
    if (epsilons.empty()) throw ValidationError("search space needs at least one epsilon", "epsilons");
    if (n_lay_min < 0 || n_lay_max < n_lay_min) {
        throw ValidationError("n_lay range must satisfy 0 <= min <= max", "n_lay");
    }
    for (double s : sides) {
        if (!(s > 0.0)) throw ValidationError("L values must be positive", "sides");
    }
    for (double e : epsilons) {
        if (!(e > 0.0)) throw ValidationError("epsilon values must be positive", "epsilons");
    }
    if (!(mass > 0.0)) throw ValidationError("mass must be positive", "mass");
    if (!(r_c > 0.0)) throw ValidationError("r_c must be positive", "r_c");
}

bool better(const Candidate& x, const Candidate& y) {
    return std::tie(x.lambda_bound, x.n_lay, x.epsilon, x.side) <
           std::tie(y.lambda_bound, y.n_lay, y.epsilon, y.side);
}

Candidate evaluate_candidate(const SearchSpace& space, double side, int n_lay, double epsilon) {
    Candidate c;
    c.side = side;
    c.n_lay = n_lay;
    c.epsilon = epsilon;
    const auto t = solve_thickness_for_mass(space.mass, side, n_lay, epsilon, space.density_a,
                                            space.density_b);
    c.a = t.a;
    c.b = t.b;
    const auto stack =
        LayerStack::alternating(side, n_lay, t.a, t.b, space.density_a, space.density_b);
    c.height = stack.height();
    c.mass = stack.mass();
    c.eta_bar = eta_multilayer(stack, {1.0, space.r_c}, space.constants).eta_bar;
    c.lambda_bound = lambda_bound(space.excess, c.eta_bar, space.constants);
    if (space.guardrails.enabled) {
        const double thinnest = n_lay > 0 ? std::min(t.a, t.b) : t.a;
        if (thinnest < space.guardrails.min_layer_thickness) {
            c.feasible = false;
            c.note = "layer thinner than minimum";
        } else if (c.height / side > space.guardrails.max_aspect_ratio) {
            c.feasible = false;
            c.note = "aspect ratio H/L above maximum";
        }
    }
    return c;
}

std::vector<Candidate> sweep_L(const SearchSpace& space, const std::vector<int>& n_lay_set,
                               double epsilon, int threads) {
    space.validate();
    std::vector<GridPoint> grid;
    for (int n : n_lay_set) {
        if (n < 0) throw ValidationError("n_lay values must be >= 0", "n_lay");
        for (double side : space.sides) grid.push_back({side, n, epsilon});
    }
    return evaluate_all(space, grid, threads);
}

std::vector<Candidate> sweep_Nlay_eps(const SearchSpace& space, double side, int threads) {
    space.validate();
    std::vector<GridPoint> grid;
    for (double eps : space.epsilons) {
        for (int n = space.n_lay_min; n <= space.n_lay_max; ++n) grid.push_back({side, n, eps});
    }
    return evaluate_all(space, grid, threads);
}

Optimum optimize(const SearchSpace& space, int threads) {
    space.validate();
    auto sides = space.sides;
    auto epsilons = space.epsilons;
    std::sort(sides.begin(), sides.end());
    sides.erase(std::unique(sides.begin(), sides.end()), sides.end());
    std::sort(epsilons.begin(), epsilons.end());
    epsilons.erase(std::unique(epsilons.begin(), epsilons.end()), epsilons.end());

    std::vector<GridPoint> grid;
    for (double side : sides) {
        for (double eps : epsilons) {
            for (int n = space.n_lay_min; n <= space.n_lay_max; ++n) grid.push_back({side, n, eps});
        }
    }
    Optimum out;
    out.table = evaluate_all(space, grid, threads);
    const Candidate* best = best_feasible(out.table);
    if (best == nullptr) throw ValidationError("no feasible candidate in search space", "search");
    out.best = *best;

    if (space.refine) {
        auto objective = [&](double side, int n, double eps) {
            auto c = evaluate_candidate(space, side, n, eps);
            c.note = c.feasible ? "refined" : c.note;
            out.table.push_back(c);
            return c.feasible ? c.lambda_bound : std::numeric_limits<double>::infinity();
        };
        for (int round = 0; round < 8; ++round) {
            const Candidate before = out.best;
            auto [eps_lo, eps_hi] = bracket(epsilons, out.best.epsilon);
            golden_log([&](double e) { return objective(out.best.side, out.best.n_lay, e); },
                       eps_lo, eps_hi);
            out.best = *best_feasible(out.table);
            if (sides.size() > 1) {
                auto [l_lo, l_hi] = bracket(sides, out.best.side);
                golden_log([&](double l) { return objective(l, out.best.n_lay, out.best.epsilon); },
                           std::max(l_lo, sides.front()), std::min(l_hi, sides.back()));
                out.best = *best_feasible(out.table);
            }
            for (int dn = -2; dn <= 2; ++dn) {
                const int n = out.best.n_lay + dn;
                if (dn != 0 && n >= space.n_lay_min && n <= space.n_lay_max) {
                    objective(out.best.side, n, out.best.epsilon);
                }
            }
            out.best = *best_feasible(out.table);
            if (out.best.lambda_bound == before.lambda_bound) break;
        }
    }
    return out;
}

}  // namespace csl
