#pragma once

#include "obdr/geometry.hpp"

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace obdr
{

/**
 * Immutable uniform grid over a point set. Points keep the index they had
 * in the input span. With the cell size equal to the transmission radius a
 * sector query touches at most a 3x3 block of cells.
 */
class GridIndex
{
  public:
    GridIndex(std::span<const Point2D> points, double cell_size);

    std::size_t size() const { return points_.size(); }
    double cell_size() const { return cell_size_; }

    /// Calls visit(index, point) for every point with in_sector() true.
    template <typename Visitor>
    void for_each_in_sector(const Sector& s, Visitor&& visit) const;

  private:
    int clamp_column(double x) const;
    int clamp_row(double y) const;

    double cell_size_;
    Point2D origin_;
    int columns_{1};
    int rows_{1};
    // CSR layout: cell c owns entries [cell_start_[c], cell_start_[c + 1])
    std::vector<std::uint32_t> cell_start_;
    std::vector<std::uint32_t> entry_index_;
    std::vector<Point2D> entry_point_;
    std::vector<Point2D> points_;
};

/// Indices of the points inside the sector, ascending.
std::vector<std::uint32_t> neighbors_in_sector(const GridIndex& index, const Sector& s);

template <typename Visitor>
void
GridIndex::for_each_in_sector(const Sector& s, Visitor&& visit) const
{
    if (points_.empty())
    {
        return;
    }
    int c0 = clamp_column(s.apex.x - s.radius);
    int c1 = clamp_column(s.apex.x + s.radius);
    int r0 = clamp_row(s.apex.y - s.radius);
    int r1 = clamp_row(s.apex.y + s.radius);
    for (int row = r0; row <= r1; ++row)
    {
        for (int col = c0; col <= c1; ++col)
        {
            std::size_t cell = static_cast<std::size_t>(row) * columns_ + col;
            for (std::uint32_t e = cell_start_[cell]; e < cell_start_[cell + 1]; ++e)
            {
                if (in_sector(entry_point_[e], s))
                {
                    visit(entry_index_[e], entry_point_[e]);
                }
            }
        }
    }
}

} // namespace obdr
