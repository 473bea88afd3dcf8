#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "stochtrend/error.hpp"

namespace stochtrend {

using Vector = std::vector<double>;

/// Order d of the difference operator; always >= 1.
class DiffOrder {
public:
    explicit DiffOrder(int d) : d_(d) {
        if (d < 1) throw InvalidOrderError("difference order must be >= 1");
    }
    int value() const noexcept { return d_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(d_); }
    friend bool operator==(DiffOrder, DiffOrder) = default;
    friend auto operator<=>(DiffOrder, DiffOrder) = default;

private:
    int d_;
};

/// One member of the estimator family: difference order and penalty weight.
struct PenaltySpec {
    DiffOrder d;
    double nu;

    PenaltySpec(DiffOrder order, double weight) : d(order), nu(weight) {
        if (!(weight >= 0.0)) throw DomainError("penalty weight must be >= 0");
    }
};

/// Observations with an availability mask. Unobserved values are ignored.
struct TimeSeries {
    Vector values;
    std::vector<bool> observed;

    TimeSeries() = default;
    explicit TimeSeries(Vector v) : values(std::move(v)), observed(values.size(), true) {}
    TimeSeries(Vector v, std::vector<bool> mask) : values(std::move(v)), observed(std::move(mask)) {
        if (observed.size() != values.size())
            throw DimensionError("mask length differs from series length");
    }

    std::size_t size() const noexcept { return values.size(); }
    std::size_t observed_count() const noexcept {
        std::size_t c = 0;
        for (bool b : observed) c += b ? 1 : 0;
        return c;
    }
    bool fully_observed() const noexcept { return observed_count() == size(); }
};

}  // namespace stochtrend
