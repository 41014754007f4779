#pragma once

#include <functional>
#include <string>
#include <vector>

namespace lup {

enum class QuadKind { gauss_legendre, gauss_kronrod };

struct QuadratureRule {
    QuadKind kind;
    std::vector<double> nodes;
    std::vector<double> weights;
    double lo = -1.0;
    double hi = 1.0;

    double integrate(const std::function<double(double)>& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }
};

// Gauss-Legendre nodes/weights on [lo, hi], Newton iteration on P_n.
QuadratureRule gauss_legendre(int n, double lo, double hi);

// Fixed 15-point Gauss-Kronrod rule mapped to [lo, hi] (Kronrod weights).
QuadratureRule gauss_kronrod15(double lo, double hi);

// Gauss-Legendre on [0, hi] after the substitution x = t^2, which removes
// the x^a endpoint singularity of gamma-weight integrands (nodes/weights are
// already transformed; integrate plain f(x) with it).
QuadratureRule gauss_legendre_sqrt(int n, double hi);

// kind dispatch with the spec'd n cap; gauss_kronrod requires n == 15.
QuadratureRule gauss_nodes(QuadKind kind, int n, double lo, double hi);

// Globally adaptive integration with the embedded (G7, K15) pair.
// Splits the worst interval until the summed error estimate is below
// max(abs_tol, rel_tol * |integral|). Throws on interval blow-up.
// `splits` seeds interior breakpoints (kinks, support edges) so thin
// features cannot hide between the initial nodes.
double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double abs_tol, double rel_tol = 0.0, int max_intervals = 4000,
                          const std::vector<double>& splits = {});

// Iterated 2-d adaptive integration over a rectangle (outer in x, inner in y);
// split hints apply to both axes.
double integrate_adaptive_2d(const std::function<double(double, double)>& f, double xlo,
                             double xhi, double ylo, double yhi, double abs_tol,
                             const std::vector<double>& splits = {});

}  // namespace lup
