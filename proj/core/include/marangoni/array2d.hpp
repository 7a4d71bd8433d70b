#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace marangoni {

/// Dense row-major 2D array indexed as (i, j) with i the fast (x) index.
/// Used for cell-centered scalars and for each staggered velocity component.
class Array2D {
public:
    Array2D() = default;
    Array2D(int nx, int ny, double fill = 0.0)
        : nx_(nx), ny_(ny), data_(static_cast<std::size_t>(nx) * ny, fill) {}

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    std::size_t size() const { return data_.size(); }

    double& operator()(int i, int j) {
        assert(i >= 0 && i < nx_ && j >= 0 && j < ny_);
        return data_[static_cast<std::size_t>(j) * nx_ + i];
    }
    double operator()(int i, int j) const {
        assert(i >= 0 && i < nx_ && j >= 0 && j < ny_);
        return data_[static_cast<std::size_t>(j) * nx_ + i];
    }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    std::vector<double>& raw() { return data_; }
    const std::vector<double>& raw() const { return data_; }

    void fill(double v) { data_.assign(data_.size(), v); }

    bool same_shape(const Array2D& other) const {
        return nx_ == other.nx_ && ny_ == other.ny_;
    }

private:
    int nx_ = 0;
    int ny_ = 0;
    std::vector<double> data_;
};

} // namespace marangoni
