#pragma once

#include <vector>

namespace rmdirac::specfun {

/// ln|Gamma(x)| together with the sign of Gamma(x).
struct LnGamma {
    double value = 0.0;
    int sign = 1;
};

/// Throws PoleError for x in {0, -1, -2, ...}.
LnGamma ln_gamma(double x);

/// 1 / Gamma(x); exactly zero at the poles of Gamma.
double reciprocal_gamma(double x);

/// Rising factorial (x)_m = x (x+1) ... (x+m-1).
double pochhammer(double x, int m);

/// One term of a terminating hypergeometric sum.
struct PochhammerSeriesTerm {
    int index = 0;
    double value = 0.0;
};

/// Terms (-n)_m (b)_m / ((c)_m m!) z^m for m = 0..n, generated by the
/// term-ratio recurrence.  Throws PoleError when (c)_m vanishes for some m <= n.
std::vector<PochhammerSeriesTerm> hyp2f1_terms(int n, double b, double c, double z);

/// 2F1(-n, b; c; z), summed in fixed order with Neumaier compensation.
double hyp2f1_terminating(int n, double b, double c, double z);

/// Jacobi polynomial P_n^{(mu, nu)}(x) as a formal degree-n polynomial.
/// Well defined for any real mu, nu (including negative non-integers).
double jacobi_p(int n, double mu, double nu, double x);

/// 3F2(a1, a2, a3; b1, b2; 1) where one numerator parameter equals
/// -n_terminating.  Throws PoleError on a vanishing denominator.
double hyp3f2_unit(double a1, double a2, double a3, double b1, double b2, int n_terminating);

/// Fixed-order compensated summation.
class NeumaierSum {
public:
    void add(double x);
    double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

}  // namespace rmdirac::specfun
