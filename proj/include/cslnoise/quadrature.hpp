#pragma once

#include <vector>

namespace csl {

/// n-point Gauss-Legendre rule on [-1, 1].
class GaussLegendre {
public:
    explicit GaussLegendre(int n);

    int size() const noexcept { return static_cast<int>(nodes_.size()); }
    const std::vector<double>& nodes() const noexcept { return nodes_; }
    const std::vector<double>& weights() const noexcept { return weights_; }

    /// Composite rule over [lo, hi] split into `panels` equal panels.
    template <class F>
    double integrate(F&& f, double lo, double hi, int panels) const {
        const double width = (hi - lo) / panels;
        const double half = 0.5 * width;
        double total = 0.0;
        for (int p = 0; p < panels; ++p) {
            const double mid = lo + (p + 0.5) * width;
            double panel = 0.0;
            for (std::size_t i = 0; i < nodes_.size(); ++i) {
                panel += weights_[i] * f(mid + half * nodes_[i]);
            }
            total += half * panel;
        }
        return total;
    }

private:
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

}  // namespace csl
