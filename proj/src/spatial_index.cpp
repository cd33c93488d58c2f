#include "obdr/spatial_index.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace obdr
{

GridIndex::GridIndex(std::span<const Point2D> points, double cell_size)
    : cell_size_(cell_size),
      points_(points.begin(), points.end())
{
    if (!(cell_size > 0.0))
    {
        throw std::invalid_argument("grid cell size must be positive");
    }
    if (points_.size() >= std::numeric_limits<std::uint32_t>::max())
    {
        throw std::invalid_argument("too many points for the grid index");
    }

    if (!points_.empty())
    {
        auto [min_x, max_x] = std::minmax_element(
            points_.begin(), points_.end(), [](Point2D a, Point2D b) { return a.x < b.x; });
        auto [min_y, max_y] = std::minmax_element(
            points_.begin(), points_.end(), [](Point2D a, Point2D b) { return a.y < b.y; });
        origin_ = Point2D{min_x->x, min_y->y};
        double columns = std::floor((max_x->x - min_x->x) / cell_size_) + 1.0;
        double rows = std::floor((max_y->y - min_y->y) / cell_size_) + 1.0;
        // keep the cell table bounded for tiny cells over huge extents
        if (columns * rows > 1e8)
        {
            throw std::invalid_argument("grid too fine for the point extent");
        }
        columns_ = static_cast<int>(columns);
        rows_ = static_cast<int>(rows);
    }

    std::size_t cells = static_cast<std::size_t>(columns_) * rows_;
    std::vector<std::uint32_t> cell_of(points_.size());
    cell_start_.assign(cells + 1, 0);
    for (std::size_t i = 0; i < points_.size(); ++i)
    {
        std::size_t cell =
            static_cast<std::size_t>(clamp_row(points_[i].y)) * columns_ + clamp_column(points_[i].x);
        cell_of[i] = static_cast<std::uint32_t>(cell);
        ++cell_start_[cell + 1];
    }
    for (std::size_t c = 0; c < cells; ++c)
    {
        cell_start_[c + 1] += cell_start_[c];
    }

    entry_index_.resize(points_.size());
    entry_point_.resize(points_.size());
    std::vector<std::uint32_t> cursor(cell_start_.begin(), cell_start_.end() - 1);
    for (std::size_t i = 0; i < points_.size(); ++i)
    {
        std::uint32_t slot = cursor[cell_of[i]]++;
        entry_index_[slot] = static_cast<std::uint32_t>(i);
        entry_point_[slot] = points_[i];
    }
}

int
GridIndex::clamp_column(double x) const
{
    double c = std::floor((x - origin_.x) / cell_size_);
    return static_cast<int>(std::clamp(c, 0.0, static_cast<double>(columns_ - 1)));
}

int
GridIndex::clamp_row(double y) const
{
    double r = std::floor((y - origin_.y) / cell_size_);
    return static_cast<int>(std::clamp(r, 0.0, static_cast<double>(rows_ - 1)));
}

std::vector<std::uint32_t>
neighbors_in_sector(const GridIndex& index, const Sector& s)
{
    std::vector<std::uint32_t> found;
    index.for_each_in_sector(s, [&found](std::uint32_t i, Point2D) { found.push_back(i); });
    std::sort(found.begin(), found.end());
    return found;
}

} // namespace obdr
