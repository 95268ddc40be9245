#pragma once

#include <vector>

namespace flowem {

struct GaussNode {
    double x = 0.0;  // abscissa on [-1, 1]
    double w = 0.0;
};

/// Gauss-Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre polynomial; deterministic and exact for polynomials of
/// degree <= 2n - 1.
std::vector<GaussNode> gauss_legendre(int n);

}  // namespace flowem
