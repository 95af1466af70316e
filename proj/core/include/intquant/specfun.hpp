#pragma once

#include <vector>

namespace intquant {

struct SeriesControl {
    double rel_tol = 1e-15;
    int max_terms = 100000;
    void validate() const;
};

struct SeriesResult {
    double value = 0.0;
    int terms = 0;
    double achieved_tol = 0.0;
};

// L_n^{(alpha)}(t) by upward three-term recurrence.
double laguerre(int n, double alpha, double t);

// All of L_0^{(alpha)}(t) .. L_nmax^{(alpha)}(t).
std::vector<double> laguerre_all(int nmax, double alpha, double t);

double log_gamma(double x);
double log_factorial(int n);

// 1F1(a; b; t) by Kummer series.
SeriesResult hyp1f1_series(double a, double b, double t, const SeriesControl& ctl = {});
double hyp1f1(double a, double b, double t, const SeriesControl& ctl = {});

// Same series, returning log of the sum; used where 1F1 itself overflows.
SeriesResult log_hyp1f1(double a, double b, double t, const SeriesControl& ctl = {});

}  // namespace intquant
