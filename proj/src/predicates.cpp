#include "ptzinspect/predicates.hpp"

#include <cmath>
#include <vector>

namespace ptzinspect::predicates {

namespace {

// Nonoverlapping expansion, components in increasing magnitude.
using Expansion = std::vector<double>;

constexpr double kEpsilon = 0x1p-53;
constexpr double kOrientErrBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;
constexpr double kInCircleErrBound = (10.0 + 96.0 * kEpsilon) * kEpsilon;

inline void two_sum(double a, double b, double& x, double& y) noexcept {
    x = a + b;
    const double bv = x - a;
    const double av = x - bv;
    y = (a - av) + (b - bv);
}

inline void fast_two_sum(double a, double b, double& x, double& y) noexcept {
    x = a + b;
    y = b - (x - a);
}

inline void two_product(double a, double b, double& x, double& y) noexcept {
    x = a * b;
    y = std::fma(a, b, -x);
}

Expansion difference(double a, double b) {
    double x, y;
    two_sum(a, -b, x, y);
    return {y, x};
}

Expansion drop_zeros(Expansion e) {
    Expansion out;
    out.reserve(e.size());
    for (double v : e) {
        if (v != 0.0) {
            out.push_back(v);
        }
    }
    return out;
}

Expansion grow(const Expansion& e, double b) {
    Expansion h;
    h.reserve(e.size() + 1);
    double q = b;
    for (double ei : e) {
        double sum, err;
        two_sum(q, ei, sum, err);
        h.push_back(err);
        q = sum;
    }
    h.push_back(q);
    return h;
}

Expansion add(const Expansion& e, const Expansion& f) {
    Expansion h = e;
    for (double fi : f) {
        h = grow(h, fi);
    }
    return drop_zeros(std::move(h));
}

Expansion negate(Expansion e) {
    for (double& v : e) {
        v = -v;
    }
    return e;
}

Expansion scale(const Expansion& e, double b) {
    if (e.empty()) {
        return {};
    }
    Expansion h;
    h.reserve(2 * e.size());
    double q, hh;
    two_product(e[0], b, q, hh);
    h.push_back(hh);
    for (std::size_t i = 1; i < e.size(); ++i) {
        double p1, p0, sum;
        two_product(e[i], b, p1, p0);
        two_sum(q, p0, sum, hh);
        h.push_back(hh);
        fast_two_sum(p1, sum, q, hh);
        h.push_back(hh);
    }
    h.push_back(q);
    return drop_zeros(std::move(h));
}

Expansion multiply(const Expansion& e, const Expansion& f) {
    Expansion acc;
    for (double fi : f) {
        acc = add(acc, scale(e, fi));
    }
    return acc;
}

double most_significant(const Expansion& e) noexcept {
    for (auto it = e.rbegin(); it != e.rend(); ++it) {
        if (*it != 0.0) {
            return *it;
        }
    }
    return 0.0;
}

}  // namespace

double orient2d_exact(Point2 a, Point2 b, Point2 c) noexcept {
    const Expansion acx = difference(a.x, c.x);
    const Expansion acy = difference(a.y, c.y);
    const Expansion bcx = difference(b.x, c.x);
    const Expansion bcy = difference(b.y, c.y);
    const Expansion det = add(multiply(acx, bcy), negate(multiply(acy, bcx)));
    return most_significant(det);
}

double orient2d(Point2 a, Point2 b, Point2 c) noexcept {
    const double left = (a.x - c.x) * (b.y - c.y);
    const double right = (a.y - c.y) * (b.x - c.x);
    const double det = left - right;
    const double bound = kOrientErrBound * (std::abs(left) + std::abs(right));
    if (det > bound || -det > bound) {
        return det;
    }
    return orient2d_exact(a, b, c);
}

double incircle_exact(Point2 a, Point2 b, Point2 c, Point2 d) noexcept {
    const Expansion adx = difference(a.x, d.x), ady = difference(a.y, d.y);
    const Expansion bdx = difference(b.x, d.x), bdy = difference(b.y, d.y);
    const Expansion cdx = difference(c.x, d.x), cdy = difference(c.y, d.y);

    const Expansion alift = add(multiply(adx, adx), multiply(ady, ady));
    const Expansion blift = add(multiply(bdx, bdx), multiply(bdy, bdy));
    const Expansion clift = add(multiply(cdx, cdx), multiply(cdy, cdy));

    const Expansion bc = add(multiply(bdx, cdy), negate(multiply(cdx, bdy)));
    const Expansion ca = add(multiply(cdx, ady), negate(multiply(adx, cdy)));
    const Expansion ab = add(multiply(adx, bdy), negate(multiply(bdx, ady)));

    const Expansion det = add(add(multiply(alift, bc), multiply(blift, ca)), multiply(clift, ab));
    return most_significant(det);
}

double incircle(Point2 a, Point2 b, Point2 c, Point2 d) noexcept {
    const double adx = a.x - d.x, ady = a.y - d.y;
    const double bdx = b.x - d.x, bdy = b.y - d.y;
    const double cdx = c.x - d.x, cdy = c.y - d.y;

    const double bdxcdy = bdx * cdy, cdxbdy = cdx * bdy;
    const double alift = adx * adx + ady * ady;
    const double cdxady = cdx * ady, adxcdy = adx * cdy;
    const double blift = bdx * bdx + bdy * bdy;
    const double adxbdy = adx * bdy, bdxady = bdx * ady;
    const double clift = cdx * cdx + cdy * cdy;

    const double det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady);
    const double permanent = (std::abs(bdxcdy) + std::abs(cdxbdy)) * alift +
                             (std::abs(cdxady) + std::abs(adxcdy)) * blift +
                             (std::abs(adxbdy) + std::abs(bdxady)) * clift;
    const double bound = kInCircleErrBound * permanent;
    if (det > bound || -det > bound) {
        return det;
    }
    return incircle_exact(a, b, c, d);
}

}  // namespace ptzinspect::predicates
