#pragma once

#include <cmath>

namespace fuzzycal {

/// Neumaier (improved Kahan-Babuska) running sum.
///
/// The error term is kept separately and only folded in on read, so the
/// result is accurate to a few ulps regardless of input magnitude ordering.
/// Shuffling the inputs therefore moves the result by far less than 1e-12
/// for the sums this library forms.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x)) {
            compensation_ += (sum_ - t) + x;
        } else {
            compensation_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    CompensatedSum& operator+=(double x) noexcept {
        add(x);
        return *this;
    }

    /// Merge another accumulator's partial sum and its error term.
    void merge(const CompensatedSum& other) noexcept {
        add(other.sum_);
        add(other.compensation_);
    }

    double value() const noexcept { return sum_ + compensation_; }
    double raw_sum() const noexcept { return sum_; }
    double raw_compensation() const noexcept { return compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace fuzzycal
