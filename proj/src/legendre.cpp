#include "kmsurf/legendre.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace kmsurf {

GaussLegendre gauss_legendre(int K) {
    if (K < 1) throw std::invalid_argument("quadrature order must be positive");
    GaussLegendre g;
    g.x.resize(K);
    g.w.resize(K);
    for (int i = 0; i < K; ++i) {
        /* Newton from the Chebyshev-like estimate; roots found descending */
        double x = std::cos(M_PI * (i + 0.75) / (K + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            if (K == 1) p1 = 1.0;
            for (int n = 2; n <= K; ++n) {
                double p2 = ((2 * n - 1) * x * p1 - (n - 1) * p0) / n;
                p0 = p1;
                p1 = p2;
            }
            double pk = (K == 1) ? x : p1;
            double pk1 = (K == 1) ? 1.0 : p0;
            dp = K * (x * pk - pk1) / (x * x - 1.0);
            double step = pk / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        g.x[K - 1 - i] = x;
        g.w[K - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return g;
}

std::vector<Rat> legendre_coeffs(int ell) {
    if (ell < 0 || ell > 24) throw std::invalid_argument("Legendre degree out of supported range");
    static std::mutex mu;
    static std::map<int, std::vector<Rat>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(ell);
    if (it != cache.end()) return it->second;

    std::vector<std::vector<Rat>> p(ell + 1);
    p[0] = {Rat(1)};
    if (ell >= 1) p[1] = {Rat(0), Rat(1)};
    for (int n = 2; n <= ell; ++n) {
        std::vector<Rat> c(n + 1, Rat(0));
        for (size_t k = 0; k < p[n - 1].size(); ++k)
            c[k + 1] += Rat(2 * n - 1, n) * p[n - 1][k];
        for (size_t k = 0; k < p[n - 2].size(); ++k)
            c[k] -= Rat(n - 1, n) * p[n - 2][k];
        p[n] = std::move(c);
    }
    cache[ell] = p[ell];
    return p[ell];
}

double legendre_eval(int ell, double u) {
    if (ell < 0) throw std::invalid_argument("Legendre degree must be non-negative");
    double p0 = 1.0, p1 = u;
    if (ell == 0) return 1.0;
    for (int n = 2; n <= ell; ++n) {
        double p2 = ((2 * n - 1) * u * p1 - (n - 1) * p0) / n;
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

double assoc_q(int ell, int m, double u) {
    int am = std::abs(m);
    if (am > ell) return 0.0;
    double sign = (m < 0 && (am & 1)) ? -1.0 : 1.0;

    std::vector<Rat> c = legendre_coeffs(ell);
    for (int d = 0; d < am; ++d) {
        std::vector<Rat> dc(c.size() > 1 ? c.size() - 1 : 0, Rat(0));
        for (size_t k = 1; k < c.size(); ++k) dc[k - 1] = Rat(static_cast<long long>(k)) * c[k];
        c = std::move(dc);
    }
    double poly = 0.0;
    for (size_t k = c.size(); k-- > 0;) poly = poly * u + boost::rational_cast<double>(c[k]);

    double ratio = 1.0; /* (l+m)!/(l-m)! */
    for (int j = ell - am + 1; j <= ell + am; ++j) ratio *= j;
    double norm = std::sqrt((2.0 * ell + 1.0) / ratio);
    return sign * norm * std::pow(1.0 - u * u, 0.5 * am) * poly;
}

}  // namespace kmsurf
