#include "lup/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace lup {

namespace {

// QUADPACK (G7, K15) abscissae/weights on [-1, 1], positive half.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct GkResult {
    double value;
    double error;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k15 = kWgk[7] * fc;
    double g7 = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kXgk[i];
        const double fsum = f(c - dx) + f(c + dx);
        k15 += kWgk[i] * fsum;
        if (i % 2 == 1) g7 += kWg[i / 2] * fsum;
    }
    k15 *= h;
    g7 *= h;
    const double diff = std::fabs(k15 - g7);
    // QUADPACK-style error estimate, never below the raw difference scale
    double err = diff;
    if (diff > 0.0) err = std::min(diff, std::pow(200.0 * diff, 1.5));
    return {k15, err};
}

}  // namespace

QuadratureRule gauss_legendre(int n, double lo, double hi) {
    if (n < 1 || n > 2048) throw std::invalid_argument("gauss_legendre: n out of range");
    QuadratureRule rule{QuadKind::gauss_legendre, {}, {}, lo, hi};
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    const double xm = 0.5 * (hi + lo);
    const double xl = 0.5 * (hi - lo);
    for (int i = 0; i < m; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p0 / pp;
            if (std::fabs(z - z1) < 1e-15) break;
        }
        rule.nodes[i] = xm - xl * z;
        rule.nodes[n - 1 - i] = xm + xl * z;
        const double w = 2.0 * xl / ((1.0 - z * z) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

QuadratureRule gauss_kronrod15(double lo, double hi) {
    QuadratureRule rule{QuadKind::gauss_kronrod, {}, {}, lo, hi};
    const double c = 0.5 * (lo + hi);
    const double h = 0.5 * (hi - lo);
    for (int i = 0; i < 7; ++i) {
        rule.nodes.push_back(c - h * kXgk[i]);
        rule.weights.push_back(h * kWgk[i]);
    }
    rule.nodes.push_back(c);
    rule.weights.push_back(h * kWgk[7]);
    for (int i = 6; i >= 0; --i) {
        rule.nodes.push_back(c + h * kXgk[i]);
        rule.weights.push_back(h * kWgk[i]);
    }
    return rule;
}

QuadratureRule gauss_legendre_sqrt(int n, double hi) {
    QuadratureRule rule = gauss_legendre(n, 0.0, std::sqrt(hi));
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double t = rule.nodes[i];
        rule.weights[i] *= 2.0 * t;
        rule.nodes[i] = t * t;
    }
    rule.lo = 0.0;
    rule.hi = hi;
    return rule;
}

QuadratureRule gauss_nodes(QuadKind kind, int n, double lo, double hi) {
    if (n > 2048) throw std::invalid_argument("gauss_nodes: n > 2048");
    if (kind == QuadKind::gauss_legendre) return gauss_legendre(n, lo, hi);
    if (n != 15) throw std::invalid_argument("gauss_nodes: kronrod rule is the fixed 15-point pair");
    return gauss_kronrod15(lo, hi);
}

double integrate_adaptive(const std::function<double(double)>& f, double lo, double hi,
                          double abs_tol, double rel_tol, int max_intervals,
                          const std::vector<double>& splits) {
    if (!(hi > lo)) return 0.0;
    struct Interval {
        double a, b, value, error;
        bool operator<(const Interval& o) const { return error < o.error; }
    };
    std::vector<double> edges = {lo};
    for (double s : splits)
        if (s > lo && s < hi) edges.push_back(s);
    edges.push_back(hi);
    std::sort(edges.begin(), edges.end());
    std::priority_queue<Interval> heap;
    double total = 0.0, total_err = 0.0;
    int count = 0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (edges[i + 1] <= edges[i]) continue;
        const auto r = gk15(f, edges[i], edges[i + 1]);
        heap.push({edges[i], edges[i + 1], r.value, r.error});
        total += r.value;
        total_err += r.error;
        ++count;
    }
    while (total_err > std::max(abs_tol, rel_tol * std::fabs(total))) {
        if (count >= max_intervals)
            throw std::runtime_error("integrate_adaptive: interval budget exhausted");
        Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b)
            throw std::runtime_error("integrate_adaptive: interval underflow");
        auto left = gk15(f, worst.a, mid);
        auto right = gk15(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push({worst.a, mid, left.value, left.error});
        heap.push({mid, worst.b, right.value, right.error});
        ++count;
    }
    return total;
}

double integrate_adaptive_2d(const std::function<double(double, double)>& f, double xlo,
                             double xhi, double ylo, double yhi, double abs_tol,
                             const std::vector<double>& splits) {
    const double inner_tol = 0.2 * abs_tol / std::max(1.0, xhi - xlo);
    auto outer = [&](double x) {
        return integrate_adaptive([&](double y) { return f(x, y); }, ylo, yhi, inner_tol, 0.0,
                                  4000, splits);
    };
    return integrate_adaptive(outer, xlo, xhi, 0.5 * abs_tol, 0.0, 4000, splits);
}

}  // namespace lup
