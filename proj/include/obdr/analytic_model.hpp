#pragma once

#include "obdr/geometry.hpp"

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace obdr
{

/// Raised when the destination is already within one transmission radius
/// of the source, so no relay triangle exists.
class DegenerateLeafError : public std::domain_error
{
  public:
    using std::domain_error::domain_error;
};

/**
 * Triangle-chain approximation of the relay area ("leaf").
 *
 * The chain starts at the source and walks towards the destination: each
 * vertex is one transmission radius from the previous one, rotated by half
 * the beam angle off the bearing to the destination. d_seq holds the
 * remaining vertex-to-destination edge lengths, d_seq[0] being the
 * source-destination distance.
 */
struct LeafModel
{
    double radius{0.0};
    double theta{0.0};
    std::vector<double> d_seq;
    /// areas[i] is the triangle spanned by the destination and the edges
    /// d_seq[i], d_seq[i + 1].
    std::vector<double> areas;
    std::size_t n_triangles{0};
    /// Both halves of the leaf.
    double total_area{0.0};
    /// False when the chain converged above r (beam wider than 120 degrees)
    /// and never brought the destination within one hop.
    bool terminated_by_range{true};
};

double next_edge(double d_prev, double r, double theta);

double triangle_area(double d_i, double r, double theta);

/// Throws DegenerateLeafError when d <= r, std::domain_error on other
/// invalid inputs.
LeafModel build_leaf(double d, double r, double theta);

/// Leaf area over field area, clamped to [0, 1]. Border clipping is ignored.
double predicted_ratio(const LeafModel& model, double square_side);

/// Signed (theoretical - simulated) / simulated.
double relative_error(double theoretical, double simulated);

/// Closed outline of the leaf: source, upper chain vertices, destination,
/// lower chain vertices in reverse order.
std::vector<Point2D> leaf_outline(const LeafModel& model, Point2D source, Point2D destination);

} // namespace obdr
