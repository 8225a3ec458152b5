#pragma once

namespace qpdec {

// Z_n(a) = sum_k (-1)^k (a^2/4)^k n! / (k! (n+k)!)
//        = J_n(a) * 2^n n! / a^n  (regularized Bessel factor, Z_n(0) = 1)
double z_factor(int n, double a);

// Bessel J_n(x) from the power series; intended for n <= 12, |x| <= 8
double bessel_j_series(int n, double x);

// associated Laguerre polynomial L_n^(alpha)(x) for integer alpha >= 0
double assoc_laguerre(int n, int alpha, double x);

double factorial(int n);      // exact for n <= 170
double ln_factorial(int n);

}
