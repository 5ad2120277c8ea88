#include "kmsurf/triple_coeffs.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <mutex>
#include <stdexcept>

#include "kmsurf/legendre.hpp"

namespace kmsurf {

namespace {

std::mutex cache_mu;
std::map<std::array<int, 4>, std::vector<double>> cache;

/* c indexed by l3 = 0 .. l1+l2 (entries below |m1+m2| stay zero).  The
 * integrand Q1 Q2 Q3 is a polynomial: the three half-integer powers of
 * (1-u^2) combine to an integer power because |m1|+|m2|+|m1+m2| is even. */
std::vector<double> compute(int l1, int m1, int l2, int m2) {
    const int m3 = m1 + m2;
    std::vector<double> c(l1 + l2 + 1, 0.0);
    const GaussLegendre g = gauss_legendre(2 * (l1 + l2) + 2);
    for (int l3 = std::abs(m3); l3 <= l1 + l2; ++l3) {
        double acc = 0.0;
        for (size_t k = 0; k < g.x.size(); ++k)
            acc += g.w[k] * assoc_q(l1, m1, g.x[k]) * assoc_q(l2, m2, g.x[k]) *
                   assoc_q(l3, m3, g.x[k]);
        c[l3] = 0.5 * acc; /* Q's have norm integral 2 */
    }
    return c;
}

const std::vector<double>& lookup(int l1, int m1, int l2, int m2) {
    if (std::abs(m1) > l1 || std::abs(m2) > l2 || l1 < 0 || l2 < 0)
        throw std::invalid_argument("triple coefficient label out of range");
    /* canonical form: factors commute, and negating every m preserves c */
    if (std::make_pair(l1, m1) > std::make_pair(l2, m2)) {
        std::swap(l1, l2);
        std::swap(m1, m2);
    }
    if (m1 < 0 || (m1 == 0 && m2 < 0)) {
        m1 = -m1;
        m2 = -m2;
    }
    std::array<int, 4> key{l1, m1, l2, m2};
    std::lock_guard<std::mutex> lock(cache_mu);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, compute(l1, m1, l2, m2)).first;
    return it->second;
}

}  // namespace

double triple_coeff(int l1, int m1, int l2, int m2, int l3) {
    if (l3 < 0) throw std::invalid_argument("triple coefficient label out of range");
    const auto& c = lookup(l1, m1, l2, m2);
    if (l3 >= static_cast<int>(c.size())) return 0.0;
    return c[l3];
}

std::vector<std::pair<int, double>> expand_product(int l1, int m1, int l2, int m2,
                                                   double drop_tol) {
    const auto& c = lookup(l1, m1, l2, m2);
    std::vector<std::pair<int, double>> out;
    for (int l3 = 0; l3 < static_cast<int>(c.size()); ++l3)
        if (std::abs(c[l3]) > drop_tol) out.push_back({l3, c[l3]});
    return out;
}

}  // namespace kmsurf
