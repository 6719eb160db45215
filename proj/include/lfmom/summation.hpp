#pragma once

#include <cmath>
#include <complex>

namespace lfmom {

// Neumaier-compensated accumulator; the running error term is carried so
// that sums of the form sum f(n)/n keep ~1 ulp accuracy regardless of length.
class Kahan {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

class KahanComplex {
public:
    void add(std::complex<double> z) {
        re_.add(z.real());
        im_.add(z.imag());
    }
    std::complex<double> value() const { return {re_.value(), im_.value()}; }

private:
    Kahan re_;
    Kahan im_;
};

} // namespace lfmom
