#pragma once

#include <vector>

#include "affst/grid.hpp"

namespace affst {

/// Rectangle in dual space, the finite window on which conjugates are sampled.
struct Window {
    Vec2 lo{-1.0, -1.0};
    Vec2 hi{1.0, 1.0};

    bool nondegenerate() const { return hi.x > lo.x && hi.y > lo.y; }
};

/// Window as a GridDomain (polygon lattice; symmetric interval when dim == 1).
GridDomainPtr window_domain(const Window& w, int resolution, int dim = 2);

/// Window covering the slopes of f, from its Lipschitz estimate plus slack.
Window slope_window(const GridFunction& f);

/// Pointwise conjugate evaluation sup_y (z.y - f(y)) over the sample set.
struct ConjugateValue {
    double value = 0.0;
    Vec2 argmax;        // maximiser (sub-grid refined when requested)
    int argmax_node = -1;  // -1 when a boundary sample won
    bool refined = false;
};

/// Evaluate f*(z) by exhaustive max over interior nodes and boundary samples.
/// Ties break to the lowest lexicographic node. With refine, a local quadratic
/// fit moves the maximiser off-lattice (needs a full 3x3 neighbourhood).
/// `tilt` adds t*g to f on shared nodes before conjugating, so callers can
/// evaluate (f + t g)* without materialising the sum.
ConjugateValue conjugate_at(const GridFunction& f, const Vec2& z, bool refine = false,
                            const GridFunction* tilt = nullptr, double t = 0.0);

/// Discrete Legendre-Fenchel transform g(z) = max_y (z.y - f(y)) sampled on a
/// window lattice. Output carries its own boundary trace and is certified.
/// Exhaustive max over the samples, O(N*M): correct and simple at desk scale.
/// The linear-time factored transform for separable lattices is future work.
GridFunction legendre_transform(const GridFunction& f, const Window& window, int dual_resolution);

/// Convexification f** resampled onto f's nodes.
GridFunction biconjugate(const GridFunction& f);

/// Fenchel-equality tolerance 4 * Lip * h.
double fenchel_tolerance(const GridFunction& f);

/// Dual sample points achieving Fenchel equality at node x, scanned over a
/// window lattice (defaults to the slope window). Sorted lexicographically.
std::vector<Vec2> subdifferential(const GridFunction& f, int node);
std::vector<Vec2> subdifferential(const GridFunction& f, int node, const Window& window,
                                  int dual_resolution);

/// s(x) + s*(y) - x.y  (>= -fenchel_tolerance by the Fenchel inequality).
double fenchel_gap(const GridFunction& s, const Vec2& x, const Vec2& y);

/// Largest affine minorant value and coefficients at one evaluation point.
struct MinorantValue {
    double value = 0.0;
    Vec2 slope;
    double offset = 0.0;
};

/// Convex envelope of boundary data: s_g(y) = sup { a(y) : a affine, a <= g on
/// the boundary samples }, one LP per interior node.
GridFunction envelope_from_boundary(const std::vector<double>& g, GridDomainPtr dom);

/// Single-point version exposing the optimal minorant.
MinorantValue envelope_at(const std::vector<double>& g, const GridDomain& dom, const Vec2& y0);

}  // namespace affst
