#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace ctrw {

// Neumaier compensated summation. The row-sum builders and the direct
// renewal-scan route must produce bitwise-identical partial sums, so every
// cumulative sum in the project goes through this accumulator and nothing
// else. Do not "simplify" to naive +=.
class NeumaierSum {
  public:
    void add(double x) {
        double t = s_ + x;
        if (std::abs(s_) >= std::abs(x))
            c_ += (s_ - t) + x;
        else
            c_ += (x - t) + s_;
        s_ = t;
    }

    double value() const { return s_ + c_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

// d independent accumulators for vector-valued positions.
class NeumaierVec {
  public:
    explicit NeumaierVec(std::size_t d) : acc_(d) {}

    void add(const double* x) {
        for (std::size_t i = 0; i < acc_.size(); ++i) acc_[i].add(x[i]);
    }

    void value(double* out) const {
        for (std::size_t i = 0; i < acc_.size(); ++i) out[i] = acc_[i].value();
    }

    std::size_t dim() const { return acc_.size(); }

  private:
    std::vector<NeumaierSum> acc_;
};

}  // namespace ctrw
