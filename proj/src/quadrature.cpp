#include "kelvin/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace kelvin {

double cubic_interpolate(const Eigen::Ref<const Eigen::VectorXd>& v, double s) {
    const Eigen::Index n = v.size() - 1;
    if (n < 1) return v[0];
    if (n < 3) {
        // Lagrange through every node available.
        double sum = 0.0;
        for (Eigen::Index i = 0; i <= n; ++i) {
            double w = 1.0;
            for (Eigen::Index k = 0; k <= n; ++k) {
                if (k != i) w *= (s - static_cast<double>(k)) / static_cast<double>(i - k);
            }
            sum += w * v[i];
        }
        return sum;
    }
    const auto cell = std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::floor(s)), 0, n - 1);
    const Eigen::Index start = std::clamp<Eigen::Index>(cell - 1, 0, n - 3);
    const double t = s - static_cast<double>(start);
    const double w0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
    const double w1 = t * (t - 2.0) * (t - 3.0) / 2.0;
    const double w2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
    const double w3 = t * (t - 1.0) * (t - 2.0) / 6.0;
    return w0 * v[start] + w1 * v[start + 1] + w2 * v[start + 2] + w3 * v[start + 3];
}

Eigen::VectorXd midpoint_values(const Eigen::VectorXd& v) {
    const Eigen::Index n = v.size() - 1;
    Eigen::VectorXd mid(n);
    if (n >= 3) {
        mid[0] = (5.0 * v[0] + 15.0 * v[1] - 5.0 * v[2] + v[3]) / 16.0;
        for (Eigen::Index j = 1; j + 2 <= n; ++j) {
            mid[j] = (-v[j - 1] + 9.0 * v[j] + 9.0 * v[j + 1] - v[j + 2]) / 16.0;
        }
        mid[n - 1] = (v[n - 3] - 5.0 * v[n - 2] + 15.0 * v[n - 1] + 5.0 * v[n]) / 16.0;
        return mid;
    }
    for (Eigen::Index j = 0; j < n; ++j) mid[j] = cubic_interpolate(v, static_cast<double>(j) + 0.5);
    return mid;
}

Eigen::VectorXd cumulative_exp_integral(const Eigen::VectorXd& g, double h, double rate) {
    const Eigen::Index n = g.size() - 1;
    const Eigen::VectorXd mid = midpoint_values(g);
    const double grow = std::exp(rate * h);
    const double grow_half = std::exp(0.5 * rate * h);
    Eigen::VectorXd out(g.size());
    out[0] = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double panel = h / 6.0 * (grow * g[j] + 4.0 * grow_half * mid[j] + g[j + 1]);
        out[j + 1] = grow * out[j] + panel;
    }
    return out;
}

}  // namespace kelvin
