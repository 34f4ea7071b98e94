#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>
#include <vector>

#include "foldex/maximal.hpp"

namespace foldex {

namespace {

struct Box {
    double min_x, min_y, max_x, max_y;
};

Box segment_box(Point2 a, Point2 b) {
    return {std::min(a.x, b.x), std::min(a.y, b.y), std::max(a.x, b.x), std::max(a.y, b.y)};
}

bool boxes_overlap(const Box& a, const Box& b) {
    return a.min_x <= b.max_x && b.min_x <= a.max_x && a.min_y <= b.max_y && b.min_y <= a.max_y;
}

bool in_piece(double u, bool closed_end) { return u >= 0.0 && (closed_end ? u <= 1.0 : u < 1.0); }

class UniformGrid {
public:
    UniformGrid(const Box& bounds, double cell, std::size_t max_cells) : bounds_(bounds) {
        const double w = std::max(bounds.max_x - bounds.min_x, 0.0);
        const double h = std::max(bounds.max_y - bounds.min_y, 0.0);
        if (!(cell > 0.0) || !std::isfinite(cell)) cell = std::max({w, h, 1.0});
        auto dims = [&](double c) {
            return std::pair<std::size_t, std::size_t>(static_cast<std::size_t>(w / c) + 1,
                                                       static_cast<std::size_t>(h / c) + 1);
        };
        auto [nx, ny] = dims(cell);
        // Coarsen until the grid stays proportional to the input size.
        while (static_cast<double>(nx) * static_cast<double>(ny) > static_cast<double>(max_cells)) {
            cell *= 2.0;
            std::tie(nx, ny) = dims(cell);
        }
        cell_ = cell;
        nx_ = nx;
        ny_ = ny;
        cells_.resize(nx_ * ny_);
    }

    std::size_t column(double x) const {
        const double c = std::floor((x - bounds_.min_x) / cell_);
        return static_cast<std::size_t>(std::clamp(c, 0.0, static_cast<double>(nx_ - 1)));
    }
    std::size_t row(double y) const {
        const double c = std::floor((y - bounds_.min_y) / cell_);
        return static_cast<std::size_t>(std::clamp(c, 0.0, static_cast<double>(ny_ - 1)));
    }
    std::size_t cell_of(double x, double y) const { return row(y) * nx_ + column(x); }

    void insert(std::size_t id, const Box& b) {
        for (std::size_t r = row(b.min_y); r <= row(b.max_y); ++r)
            for (std::size_t c = column(b.min_x); c <= column(b.max_x); ++c) cells_[r * nx_ + c].push_back(id);
    }

    const std::vector<std::vector<std::size_t>>& cells() const { return cells_; }

private:
    Box bounds_;
    double cell_ = 1.0;
    std::size_t nx_ = 1, ny_ = 1;
    std::vector<std::vector<std::size_t>> cells_;
};

}  // namespace

std::optional<SelfIntersection> intersect_segments(std::span<const Point2> chain, std::size_t i,
                                                   std::size_t j) {
    const std::size_t last = chain.size() - 2;
    const Point2 a = chain[i], b = chain[i + 1], c = chain[j], d = chain[j + 1];
    const Point2 r = b - a, s = d - c, qp = c - a;
    const double rr = norm(r), ss = norm(s);
    if (rr == 0.0 || ss == 0.0) return std::nullopt;
    const bool i_closed = i == last;
    const bool j_closed = j == last;

    const double denom = cross(r, s);
    if (std::abs(denom) > 1e-12 * rr * ss) {
        const double u = cross(qp, s) / denom;
        const double v = cross(qp, r) / denom;
        if (!in_piece(u, i_closed) || !in_piece(v, j_closed)) return std::nullopt;
        return SelfIntersection{i, j, u, v, a + u * r};
    }

    // Parallel: only collinear overlaps count, reported at the overlap midpoint.
    if (std::abs(cross(qp, r)) > 1e-12 * rr * std::max(norm(qp), rr)) return std::nullopt;
    const double t0 = dot(qp, r) / (rr * rr);
    const double t1 = dot(d - a, r) / (rr * rr);
    const double lo = std::max(0.0, std::min(t0, t1));
    const double hi = std::min(1.0, std::max(t0, t1));
    if (lo > hi) return std::nullopt;
    const double u = 0.5 * (lo + hi);
    const Point2 pt = a + u * r;
    const double v = std::clamp(dot(pt - c, s) / (ss * ss), 0.0, 1.0);
    if (!in_piece(u, i_closed) || !in_piece(v, j_closed)) return std::nullopt;
    return SelfIntersection{i, j, u, v, pt};
}

std::vector<SelfIntersection> self_intersections(std::span<const Point2> chain) {
    std::vector<SelfIntersection> out;
    if (chain.size() < 4) return out;
    const std::size_t n = chain.size() - 1;

    std::vector<Box> boxes(n);
    std::vector<double> lengths(n);
    Box bounds{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
               -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (std::size_t k = 0; k < n; ++k) {
        boxes[k] = segment_box(chain[k], chain[k + 1]);
        lengths[k] = distance(chain[k], chain[k + 1]);
        bounds.min_x = std::min(bounds.min_x, boxes[k].min_x);
        bounds.min_y = std::min(bounds.min_y, boxes[k].min_y);
        bounds.max_x = std::max(bounds.max_x, boxes[k].max_x);
        bounds.max_y = std::max(bounds.max_y, boxes[k].max_y);
    }
    std::nth_element(lengths.begin(), lengths.begin() + n / 2, lengths.end());
    const double cell = lengths[n / 2];

    UniformGrid grid(bounds, cell, 4 * n + 16);
    for (std::size_t k = 0; k < n; ++k) grid.insert(k, boxes[k]);

    const auto& cells = grid.cells();
    for (std::size_t cell_id = 0; cell_id < cells.size(); ++cell_id) {
        const auto& ids = cells[cell_id];
        for (std::size_t p = 0; p < ids.size(); ++p) {
            for (std::size_t q = p + 1; q < ids.size(); ++q) {
                const std::size_t i = ids[p], j = ids[q];
                if (j < i + 2) continue;
                const Box& bi = boxes[i];
                const Box& bj = boxes[j];
                if (!boxes_overlap(bi, bj)) continue;
                // Each pair is tested only in the cell holding the low corner
                // of the overlap of the two boxes.
                if (grid.cell_of(std::max(bi.min_x, bj.min_x), std::max(bi.min_y, bj.min_y)) != cell_id)
                    continue;
                if (auto x = intersect_segments(chain, i, j)) out.push_back(*x);
            }
        }
    }

    std::sort(out.begin(), out.end(), [](const SelfIntersection& a, const SelfIntersection& b) {
        if (a.seg_i != b.seg_i) return a.seg_i < b.seg_i;
        if (a.u_i != b.u_i) return a.u_i < b.u_i;
        return a.seg_j < b.seg_j;
    });
    return out;
}

}  // namespace foldex
