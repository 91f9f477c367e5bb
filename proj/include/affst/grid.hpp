#pragma once

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "affst/core.hpp"

namespace affst {

/// Euclidean ball of the section plane. In dimension 1 this is the interval
/// (-radius, radius).
struct Ball {
    double radius = 1.0;
};

/// Axis-aligned ellipse with semi-axes (a, b). Dimension 2 only.
struct Ellipse {
    double a = 1.0;
    double b = 1.0;
};

/// Convex polygon given by its vertex list (stored counter-clockwise, origin
/// strictly inside). Dimension 2 only.
struct Polygon {
    std::vector<Vec2> vertices;
};

using ShapeSpec = std::variant<Ball, Ellipse, Polygon>;

/// Convex section shape with exact membership, Minkowski gauge, boundary
/// distance and ray-exit queries.
class Shape {
public:
    Shape(ShapeSpec spec, int dim);

    int dim() const { return dim_; }
    const ShapeSpec& spec() const { return spec_; }

    /// Minkowski functional: gauge(p) < 1 iff p interior, == 1 iff boundary.
    double gauge(const Vec2& p) const;
    bool contains(const Vec2& p) const { return gauge(p) < 1.0 - 1e-12; }

    /// Distance from an interior point to the boundary (exact for ball and
    /// polygon, first-order estimate for the ellipse).
    double boundary_distance(const Vec2& p) const;

    /// Half-width of the bounding box [-R,R]^d.
    double bounding_radius() const;

    /// Radius of the smallest origin-centred ball containing the shape.
    double circumradius() const;

    /// t > 0 such that p + t*u lies on the boundary (u unit, p interior).
    double ray_exit(const Vec2& p, const Vec2& u) const;

    /// m boundary samples, uniformly spaced (angle for ball/ellipse
    /// parametrisation, arclength for polygons). Deterministic order.
    std::vector<Vec2> boundary_samples(int m) const;

private:
    ShapeSpec spec_;
    int dim_;
};

/// Rectangular lattice clipped to a convex shape. Interior nodes are the
/// lattice points strictly inside; boundary nodes sample the shape boundary.
class GridDomain {
public:
    GridDomain(ShapeSpec shape, int resolution, int dim = 2);

    int dim() const { return shape_.dim(); }
    const Shape& shape() const { return shape_; }
    int resolution() const { return n_; }
    double spacing() const { return h_; }

    int node_count() const { return static_cast<int>(nodes_.size()); }
    const std::vector<Vec2>& nodes() const { return nodes_; }
    const Vec2& node(int k) const { return nodes_[k]; }
    /// Exact distance of node k to the shape boundary (precomputed).
    double node_boundary_distance(int k) const { return node_dist_[k]; }

    int node_index(int i, int j) const;        // -1 if outside
    std::pair<int, int> node_ij(int k) const { return ij_[k]; }
    double coord(int i) const { return -radius_ + i * h_; }

    const std::vector<Vec2>& boundary_nodes() const { return boundary_nodes_; }

    bool same_lattice(const GridDomain& o) const;

private:
    Shape shape_;
    int n_;
    double radius_;
    double h_;
    std::vector<Vec2> nodes_;
    std::vector<std::pair<int, int>> ij_;
    std::vector<double> node_dist_;
    std::vector<int> index_;  // n*n lookup, -1 outside
    std::vector<Vec2> boundary_nodes_;
};

using GridDomainPtr = std::shared_ptr<const GridDomain>;

GridDomainPtr make_domain(ShapeSpec shape, int resolution, int dim = 2);

/// Real-valued samples of a function on the interior nodes of a GridDomain,
/// with optional boundary trace.
struct GridFunction {
    GridDomainPtr domain;
    std::vector<double> values;                  // one per interior node
    std::vector<double> boundary_values;         // empty or one per boundary node
    bool convexity_certified = false;

    GridFunction() = default;
    explicit GridFunction(GridDomainPtr dom)
        : domain(std::move(dom)), values(domain->node_count(), 0.0) {}

    bool has_boundary() const { return !boundary_values.empty(); }

    /// Bilinear interpolation; empty when the lattice cell is incomplete.
    std::optional<double> interpolate(const Vec2& p) const;

    /// Interpolation with nearest-node fallback for incomplete cells.
    double interpolate_or_nearest(const Vec2& p) const;

    int nearest_node(const Vec2& p) const;

    /// Max slope between adjacent nodes (and node-to-boundary pairs when a
    /// boundary trace is present); Lipschitz-constant estimate.
    double lipschitz_estimate() const;

    void check_finite(const char* what) const;
};

/// Discrete midpoint-convexity tolerance 10*h^2*max|second difference|.
double convexity_tolerance(const GridFunction& f);

/// Worst (most negative) centred second difference over the lattice
/// directions e1, e2, e1+e2, e1-e2.
double min_second_difference(const GridFunction& f);

/// Sets convexity_certified from midpoint convexity within the tolerance of
/// convexity_tolerance(); returns the flag.
bool certify_convexity(GridFunction& f);

/// Sample an explicit function on a domain (interior nodes; boundary trace
/// too when with_boundary).
template <typename F>
GridFunction sample_function(GridDomainPtr dom, F&& f, bool with_boundary = false) {
    GridFunction g(dom);
    for (int k = 0; k < dom->node_count(); ++k) g.values[k] = f(dom->node(k));
    if (with_boundary) {
        g.boundary_values.reserve(dom->boundary_nodes().size());
        for (const auto& b : dom->boundary_nodes()) g.boundary_values.push_back(f(b));
    }
    return g;
}

}  // namespace affst
