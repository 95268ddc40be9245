#include "flowem/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace flowem {

std::vector<GaussNode> gauss_legendre(int n) {
    if (n < 1 || n > 256) throw std::invalid_argument("gauss_legendre: order out of range");
    std::vector<GaussNode> nodes(static_cast<size_t>(n));
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Chebyshev-based initial guess for the i-th root
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Legendre recurrence: (j+1) P_{j+1} = (2j+1) x P_j - j P_{j-1}
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        nodes[static_cast<size_t>(i)] = {-x, w};
        nodes[static_cast<size_t>(n - 1 - i)] = {x, w};
    }
    if (n % 2 == 1) nodes[static_cast<size_t>(n / 2)].x = 0.0;  // symmetric middle node
    return nodes;
}

}  // namespace flowem
