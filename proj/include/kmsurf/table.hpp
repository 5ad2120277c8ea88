#pragma once

#include <string>
#include <vector>

#include "kmsurf/algebra.hpp"
#include "kmsurf/cocycle.hpp"
#include "kmsurf/report.hpp"

namespace kmsurf {

/* Abstract generator label.  Surface indices: (a,b) = (z-mode, circle mode)
 * on the torus, (Legendre degree, z-mode) on the sphere. */
enum class SymKind { H, E, L };

struct Symbol {
    SymKind kind = SymKind::L;
    IVec label; /* H: lattice vector mu; E: root alpha; L: empty */
    int a = 0, b = 0;

    static Symbol heis(IVec mu, int a, int b);
    static Symbol vert(IVec alpha, int a, int b);
    static Symbol vir(int a, int b);
    int zmode(bool sphere) const { return sphere ? b : a; }
    std::string str() const;
};
bool operator<(const Symbol& x, const Symbol& y);
bool operator==(const Symbol& x, const Symbol& y);

/* Structure constants for the double-index algebra on S1 x S1.  All
 * coefficients are exact rationals.  With modulus N > 0 the second index
 * lives in Z_N (the N-node discretisation); with modulus 0 it is exact. */
struct TorusTerm {
    Symbol sym;
    Rat coeff;
};
struct TorusBracket {
    std::vector<TorusTerm> terms;
    Rat central_core = Rat(0); /* multiplies delta_{m+n} delta^{(N)}_{p+q} */
    bool first_delta = false;  /* m + n == 0 */
    bool second_delta = false; /* p + q == 0 (mod N) */
    Rat central() const { return first_delta && second_delta ? central_core : Rat(0); }
};

class TorusTable {
  public:
    TorusTable(const SimplyLacedAlgebra& g, int modulus = 0);
    const SimplyLacedAlgebra& algebra() const { return *alg_; }
    int modulus() const { return modulus_; }
    int wrap(int p) const;
    TorusBracket bracket(const Symbol& x, const Symbol& y) const;
    int epsilon(const IVec& a, const IVec& b) const { return cocycle_.epsilon(a, b); }

  private:
    const SimplyLacedAlgebra* alg_;
    int modulus_;
    CocycleTable cocycle_;
};

/* Structure constants on S2; coefficients carry the basis-product
 * linearisation and are floating point. */
struct SphereTerm {
    Symbol sym;
    double coeff;
};
struct SphereBracket {
    std::vector<SphereTerm> terms;
    double central_core = 0.0;     /* multiplies delta_{m1+m2} x coincident factor */
    bool first_delta = false;      /* m1 + m2 == 0 */
    double central_reduced = 0.0;  /* core (-1)^{m1} delta_{l1,l2} delta_{m1+m2} */
};

class SphereTable {
  public:
    explicit SphereTable(const SimplyLacedAlgebra& g);
    const SimplyLacedAlgebra& algebra() const { return *alg_; }
    SphereBracket bracket(const Symbol& x, const Symbol& y) const;
    int epsilon(const IVec& a, const IVec& b) const { return cocycle_.epsilon(a, b); }

  private:
    const SimplyLacedAlgebra* alg_;
    CocycleTable cocycle_;
};

/* Setting the circle mode to zero must reproduce the single-circle algebra
 * generator by generator; checked against an independently written reference
 * bracket, exactly, for |z-modes| <= mrange. */
Report torus_zero_mode_embedding(const SimplyLacedAlgebra& g, int mrange);

/* On the sphere the analogous candidate (the minimal-degree sector) fails to
 * close: bracketing degree-1 generators produces degree-2 terms.  The report
 * records the leaking coefficient. */
Report sphere_minimal_sector_leak(const SimplyLacedAlgebra& g);

}  // namespace kmsurf
