// Inverse geodesic problem on WGS84, distance only.
//
// Follows C. F. F. Karney, "Algorithms for geodesics", J. Geodesy 87 (2013),
// with the order-6 series coefficients published in GeographicLib (MIT/X11).
// Only the pieces needed for s12 are kept: no azimuths, area or scales.

#include "firecluster/geo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace firecluster::geo {
namespace {

constexpr int kOrder = 6;
constexpr int kC3Count = (kOrder * (kOrder - 1)) / 2;
constexpr int kMaxIt1 = 20;
constexpr int kMaxIt2 = kMaxIt1 + std::numeric_limits<double>::digits + 10;

const double kTiny = std::sqrt(std::numeric_limits<double>::min());
constexpr double kTol0 = std::numeric_limits<double>::epsilon();
constexpr double kTol1 = 200 * kTol0;
const double kTol2 = std::sqrt(kTol0);
constexpr double kTolB = kTol0;
const double kXThresh = 1000 * kTol2;

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

double sq(double x) { return x * x; }

void norm2(double &s, double &c) {
  const double r = std::hypot(s, c);
  s /= r;
  c /= r;
}

double polyval(int n, const double *p, double x) {
  double y = n < 0 ? 0.0 : *p++;
  while (--n >= 0)
    y = y * x + *p++;
  return y;
}

double ang_round(double x) {
  constexpr double z = 1.0 / 16.0;
  volatile double y = std::abs(x);
  if (y < z)
    y = z - (z - y);
  return std::copysign(static_cast<double>(y), x);
}

// (sum, error) of u + v, error-free.
double two_sum(double u, double v, double &t) {
  volatile double s = u + v;
  volatile double up = s - v;
  volatile double vpp = s - up;
  up = up - u;
  vpp = vpp - v;
  t = s != 0 ? 0.0 - (up + vpp) : static_cast<double>(s);
  return s;
}

// y - x reduced to [-180, 180] with the rounding error in e.
double ang_diff(double x, double y, double &e) {
  double t;
  double d = two_sum(std::remainder(-x, 360.0), std::remainder(y, 360.0), t);
  d = two_sum(std::remainder(d, 360.0), t, e);
  if (d == 0 || std::abs(d) == 180)
    d = std::copysign(d, e == 0 ? y - x : -e);
  return d;
}

void sincosd(double x, double &s, double &c) {
  double r = std::fmod(x, 360.0);
  const int q = std::isnan(r) ? 0 : static_cast<int>(std::lround(r / 90));
  r -= 90 * q;
  r *= kDeg;
  double sr = std::sin(r), cr = std::cos(r);
  switch (static_cast<unsigned>(q) & 3U) {
  case 0U: s = sr; c = cr; break;
  case 1U: s = cr; c = -sr; break;
  case 2U: s = -sr; c = -cr; break;
  default: s = -cr; c = sr; break;
  }
  c += 0.0;
  if (s == 0)
    s = std::copysign(s, x);
}

void sincosde(double x, double t, double &s, double &c) {
  const int q = static_cast<int>(std::lround(x / 90));
  const double r = ang_round((x - 90 * q) + t) * kDeg;
  double sr = std::sin(r), cr = std::cos(r);
  switch (static_cast<unsigned>(q) & 3U) {
  case 0U: s = sr; c = cr; break;
  case 1U: s = cr; c = -sr; break;
  case 2U: s = -sr; c = -cr; break;
  default: s = -cr; c = sr; break;
  }
  c += 0.0;
  if (s == 0)
    s = std::copysign(s, x);
}

// Clenshaw summation of sum(c[i] * sin(2 i x), i = 1..n); c[0] unused.
double sin_series(double sinx, double cosx, const double *c, int n) {
  const double ar = 2 * (cosx - sinx) * (cosx + sinx);
  double y0 = (n & 1) ? c[n] : 0.0, y1 = 0.0;
  int k = (n & 1) ? n - 1 : n;
  for (int m = n / 2; m > 0; --m) {
    y1 = ar * y0 - y1 + c[k--];
    y0 = ar * y1 - y0 + c[k--];
  }
  return 2 * sinx * cosx * y0;
}

double a1m1f(double eps) {
  static constexpr double coeff[] = {1, 4, 64, 0, 256};
  constexpr int m = kOrder / 2;
  const double t = polyval(m, coeff, sq(eps)) / coeff[m + 1];
  return (t + eps) / (1 - eps);
}

void c1f(double eps, double c[]) {
  static constexpr double coeff[] = {
      -1, 6, -16, 32, -9, 64, -128, 2048, 9, -16, 768, 3, -5, 512, -7, 1280, -7, 2048,
  };
  const double eps2 = sq(eps);
  double d = eps;
  int o = 0;
  for (int l = 1; l <= kOrder; ++l) {
    const int m = (kOrder - l) / 2;
    c[l] = d * polyval(m, coeff + o, eps2) / coeff[o + m + 1];
    o += m + 2;
    d *= eps;
  }
}

double a2m1f(double eps) {
  static constexpr double coeff[] = {-11, -28, -192, 0, 256};
  constexpr int m = kOrder / 2;
  const double t = polyval(m, coeff, sq(eps)) / coeff[m + 1];
  return (t - eps) / (1 + eps);
}

void c2f(double eps, double c[]) {
  static constexpr double coeff[] = {
      1, 2, 16, 32, 35, 64, 384, 2048, 15, 80, 768, 7, 35, 512, 63, 1280, 77, 2048,
  };
  const double eps2 = sq(eps);
  double d = eps;
  int o = 0;
  for (int l = 1; l <= kOrder; ++l) {
    const int m = (kOrder - l) / 2;
    c[l] = d * polyval(m, coeff + o, eps2) / coeff[o + m + 1];
    o += m + 2;
    d *= eps;
  }
}

class Wgs84 {
public:
  Wgs84() {
    static constexpr double a3coeff[] = {
        -3, 128, -2, -3, 64, -1, -3, -1, 16, 3, -1, -2, 8, 1, -1, 2, 1, 1,
    };
    int o = 0, k = 0;
    for (int j = kOrder - 1; j >= 0; --j) {
      const int m = std::min(kOrder - j - 1, j);
      a3x_[k++] = polyval(m, a3coeff + o, n_) / a3coeff[o + m + 1];
      o += m + 2;
    }
    static constexpr double c3coeff[] = {
        3, 128, 2, 5, 128, -1, 3, 3, 64, -1, 0, 1, 8, -1, 1, 4, 5, 256, 1, 3, 128, -3, -2, 3, 64, 1, -3, 2, 32,
        7, 512, -10, 9, 384, 5, -9, 5, 192, 7, 512, -14, 7, 512, 21, 2560,
    };
    o = 0;
    k = 0;
    for (int l = 1; l < kOrder; ++l) {
      for (int j = kOrder - 1; j >= l; --j) {
        const int m = std::min(kOrder - j - 1, j);
        c3x_[k++] = polyval(m, c3coeff + o, n_) / c3coeff[o + m + 1];
        o += m + 2;
      }
    }
  }

  double inverse_distance(double lat1, double lon1, double lat2, double lon2) const;

private:
  double a3f(double eps) const { return polyval(kOrder - 1, a3x_.data(), eps); }

  void c3f(double eps, double c[]) const {
    double mult = 1;
    int o = 0;
    for (int l = 1; l < kOrder; ++l) {
      const int m = kOrder - l - 1;
      mult *= eps;
      c[l] = mult * polyval(m, c3x_.data() + o, eps);
      o += m + 1;
    }
  }

  struct Lengths {
    double s12b = 0; // distance / b
    double m12b = 0; // reduced length / b
  };

  Lengths lengths(double eps, double sig12, double ssig1, double csig1, double dn1, double ssig2, double csig2,
                  double dn2, bool want_distance) const {
    double c1a[kOrder + 1], c2a[kOrder + 1];
    double a1 = a1m1f(eps);
    c1f(eps, c1a);
    double a2 = a2m1f(eps);
    c2f(eps, c2a);
    const double m0x = a1 - a2;
    a2 += 1;
    a1 += 1;
    Lengths out;
    double j12;
    if (want_distance) {
      const double b1 = sin_series(ssig2, csig2, c1a, kOrder) - sin_series(ssig1, csig1, c1a, kOrder);
      out.s12b = a1 * (sig12 + b1);
      const double b2 = sin_series(ssig2, csig2, c2a, kOrder) - sin_series(ssig1, csig1, c2a, kOrder);
      j12 = m0x * sig12 + (a1 * b1 - a2 * b2);
    } else {
      for (int l = 1; l <= kOrder; ++l)
        c2a[l] = a1 * c1a[l] - a2 * c2a[l];
      j12 = m0x * sig12 + (sin_series(ssig2, csig2, c2a, kOrder) - sin_series(ssig1, csig1, c2a, kOrder));
    }
    out.m12b = dn2 * (csig1 * ssig2) - dn1 * (ssig1 * csig2) - csig1 * csig2 * j12;
    return out;
  }

  static double astroid(double x, double y) {
    const double p = sq(x), q = sq(y), r = (p + q - 1) / 6;
    if (q == 0 && r <= 0)
      return 0;
    const double s = p * q / 4, r2 = sq(r), r3 = r * r2;
    const double disc = s * (s + 2 * r3);
    double u = r;
    if (disc >= 0) {
      double t3 = s + r3;
      t3 += t3 < 0 ? -std::sqrt(disc) : std::sqrt(disc);
      const double t = std::cbrt(t3);
      u += t + (t != 0 ? r2 / t : 0);
    } else {
      const double ang = std::atan2(std::sqrt(-disc), -(s + r3));
      u += 2 * r * std::cos(ang / 3);
    }
    const double v = std::sqrt(sq(u) + q);
    const double uv = u < 0 ? q / (v - u) : u + v;
    const double w = (uv - q) / (2 * v);
    return uv / (std::sqrt(uv + sq(w)) + w);
  }

  // Starting guess for alp1; returns sig12 >= 0 (with dnm set) when the line
  // is short enough to need no iteration, -1 otherwise.
  double inverse_start(double sbet1, double cbet1, double sbet2, double cbet2, double lam12, double slam12,
                       double clam12, double &salp1, double &calp1, double &dnm) const {
    double sig12 = -1;
    const double sbet12 = sbet2 * cbet1 - cbet2 * sbet1;
    const double cbet12 = cbet2 * cbet1 + sbet2 * sbet1;
    volatile double sbet12a = sbet2 * cbet1;
    sbet12a = sbet12a + cbet2 * sbet1;

    const bool shortline = cbet12 >= 0 && sbet12 < 0.5 && cbet2 * lam12 < 0.5;
    double somg12, comg12;
    if (shortline) {
      double sbetm2 = sq(sbet1 + sbet2);
      sbetm2 /= sbetm2 + sq(cbet1 + cbet2);
      dnm = std::sqrt(1 + ep2_ * sbetm2);
      const double omg12 = lam12 / (f1_ * dnm);
      somg12 = std::sin(omg12);
      comg12 = std::cos(omg12);
    } else {
      somg12 = slam12;
      comg12 = clam12;
    }

    salp1 = cbet2 * somg12;
    calp1 = comg12 >= 0 ? sbet12 + cbet2 * sbet1 * sq(somg12) / (1 + comg12)
                        : sbet12a - cbet2 * sbet1 * sq(somg12) / (1 - comg12);

    const double ssig12 = std::hypot(salp1, calp1);
    const double csig12 = sbet1 * sbet2 + cbet1 * cbet2 * comg12;

    if (shortline && ssig12 < etol2_) {
      sig12 = std::atan2(ssig12, csig12);
    } else if (std::abs(n_) >= 0.1 || csig12 >= 0 || ssig12 >= 6 * std::abs(n_) * kPi * sq(cbet1)) {
      // zeroth-order spherical estimate is adequate
    } else {
      const double lam12x = std::atan2(-slam12, -clam12);
      const double k2 = sq(sbet1) * ep2_;
      const double eps = k2 / (2 * (1 + std::sqrt(1 + k2)) + k2);
      const double lamscale = f_ * cbet1 * a3f(eps) * kPi;
      const double betscale = lamscale * cbet1;
      const double x = lam12x / lamscale;
      const double y = sbet12a / betscale;
      if (y > -kTol1 && x > -1 - kXThresh) {
        salp1 = std::min(1.0, -x);
        calp1 = -std::sqrt(1 - sq(salp1));
      } else {
        const double k = astroid(x, y);
        const double omg12a = lamscale * (-x * k / (1 + k));
        somg12 = std::sin(omg12a);
        comg12 = -std::cos(omg12a);
        salp1 = cbet2 * somg12;
        calp1 = sbet12a - cbet2 * sbet1 * sq(somg12) / (1 - comg12);
      }
    }
    if (!(salp1 <= 0)) {
      norm2(salp1, calp1);
    } else {
      salp1 = 1;
      calp1 = 0;
    }
    return sig12;
  }

  struct Lambda {
    double lam12, sig12, ssig1, csig1, ssig2, csig2, eps, dlam12, calp2;
  };

  Lambda lambda12(double sbet1, double cbet1, double dn1, double sbet2, double cbet2, double dn2, double salp1,
                  double calp1, double slam120, double clam120, bool diffp) const {
    if (sbet1 == 0 && calp1 == 0)
      calp1 = -kTiny;
    const double salp0 = salp1 * cbet1;
    const double calp0 = std::hypot(calp1, salp1 * sbet1);

    Lambda out{};
    double ssig1 = sbet1, somg1 = salp0 * sbet1;
    double csig1 = calp1 * cbet1, comg1 = calp1 * cbet1;
    norm2(ssig1, csig1);

    const double calp2 =
        (cbet2 != cbet1 || std::abs(sbet2) != -sbet1)
            ? std::sqrt(sq(calp1 * cbet1) +
                        (cbet1 < -sbet1 ? (cbet2 - cbet1) * (cbet1 + cbet2) : (sbet1 - sbet2) * (sbet1 + sbet2))) /
                  cbet2
            : std::abs(calp1);
    double ssig2 = sbet2, somg2 = salp0 * sbet2;
    double csig2 = calp2 * cbet2, comg2 = calp2 * cbet2;
    norm2(ssig2, csig2);

    const double sig12 = std::atan2(std::max(0.0, csig1 * ssig2 - ssig1 * csig2) + 0.0, csig1 * csig2 + ssig1 * ssig2);
    const double somg12 = std::max(0.0, comg1 * somg2 - somg1 * comg2) + 0.0;
    const double comg12 = comg1 * comg2 + somg1 * somg2;
    const double eta = std::atan2(somg12 * clam120 - comg12 * slam120, comg12 * clam120 + somg12 * slam120);

    const double k2 = sq(calp0) * ep2_;
    const double eps = k2 / (2 * (1 + std::sqrt(1 + k2)) + k2);
    double c3a[kOrder];
    c3f(eps, c3a);
    const double b312 = sin_series(ssig2, csig2, c3a, kOrder - 1) - sin_series(ssig1, csig1, c3a, kOrder - 1);
    const double domg12 = -f_ * a3f(eps) * salp0 * (sig12 + b312);

    out.lam12 = eta + domg12;
    out.sig12 = sig12;
    out.ssig1 = ssig1;
    out.csig1 = csig1;
    out.ssig2 = ssig2;
    out.csig2 = csig2;
    out.eps = eps;
    out.calp2 = calp2;
    if (diffp) {
      if (calp2 == 0) {
        out.dlam12 = -2 * f1_ * dn1 / sbet1;
      } else {
        out.dlam12 = lengths(eps, sig12, ssig1, csig1, dn1, ssig2, csig2, dn2, false).m12b;
        out.dlam12 *= f1_ / (calp2 * cbet2);
      }
    } else {
      out.dlam12 = std::numeric_limits<double>::quiet_NaN();
    }
    return out;
  }

  double a_ = kWgs84SemiMajor;
  double f_ = kWgs84Flattening;
  double f1_ = 1 - f_;
  double e2_ = f_ * (2 - f_);
  double ep2_ = e2_ / sq(f1_);
  double n_ = f_ / (2 - f_);
  double b_ = a_ * f1_;
  double etol2_ = 0.1 * kTol2 / std::sqrt(std::max(0.001, std::abs(f_)) * std::min(1.0, 1 - f_ / 2) / 2);
  std::array<double, kOrder> a3x_{};
  std::array<double, kC3Count> c3x_{};
};

double Wgs84::inverse_distance(double lat1, double lon1, double lat2, double lon2) const {
  double lon12s;
  double lon12 = ang_diff(lon1, lon2, lon12s);
  const double lonsign = std::copysign(1.0, lon12);
  lon12 *= lonsign;
  lon12s *= lonsign;
  const double lam12 = lon12 * kDeg;
  double slam12, clam12;
  sincosde(lon12, lon12s, slam12, clam12);
  lon12s = (180 - lon12) - lon12s;

  lat1 = ang_round(lat1);
  lat2 = ang_round(lat2);
  if (std::abs(lat1) < std::abs(lat2))
    std::swap(lat1, lat2);
  const double latsign = std::copysign(1.0, -lat1);
  lat1 *= latsign;
  lat2 *= latsign;

  double sbet1, cbet1, sbet2, cbet2;
  sincosd(lat1, sbet1, cbet1);
  sbet1 *= f1_;
  norm2(sbet1, cbet1);
  cbet1 = std::max(kTiny, cbet1);
  sincosd(lat2, sbet2, cbet2);
  sbet2 *= f1_;
  norm2(sbet2, cbet2);
  cbet2 = std::max(kTiny, cbet2);

  if (cbet1 < -sbet1) {
    if (cbet2 == cbet1)
      sbet2 = std::copysign(sbet1, sbet2);
  } else if (std::abs(sbet2) == -sbet1) {
    cbet2 = cbet1;
  }

  const double dn1 = std::sqrt(1 + ep2_ * sq(sbet1));
  const double dn2 = std::sqrt(1 + ep2_ * sq(sbet2));

  double s12x = 0;
  bool meridian = lat1 == -90 || slam12 == 0;
  if (meridian) {
    const double calp1 = clam12, calp2 = 1.0;
    const double ssig1 = sbet1, csig1 = calp1 * cbet1;
    const double ssig2 = sbet2, csig2 = calp2 * cbet2;
    double sig12 = std::atan2(std::max(0.0, csig1 * ssig2 - ssig1 * csig2) + 0.0, csig1 * csig2 + ssig1 * ssig2);
    const Lengths len = lengths(n_, sig12, ssig1, csig1, dn1, ssig2, csig2, dn2, true);
    s12x = len.s12b;
    double m12x = len.m12b;
    if (sig12 < kTol2 || m12x >= 0) {
      if (sig12 < 3 * kTiny || (sig12 < kTol0 && (s12x < 0 || m12x < 0)))
        s12x = 0;
      s12x *= b_;
    } else {
      meridian = false;
    }
  }

  if (!meridian && sbet1 == 0 && (f_ <= 0 || lon12s >= f_ * 180)) {
    // equatorial
    s12x = a_ * lam12;
  } else if (!meridian) {
    double salp1, calp1, dnm = 0;
    const double sig12 = inverse_start(sbet1, cbet1, sbet2, cbet2, lam12, slam12, clam12, salp1, calp1, dnm);
    if (sig12 >= 0) {
      s12x = sig12 * b_ * dnm;
    } else {
      int numit = 0;
      bool tripn = false, tripb = false;
      double salp1a = kTiny, calp1a = 1, salp1b = kTiny, calp1b = -1;
      Lambda lam{};
      for (;;) {
        lam = lambda12(sbet1, cbet1, dn1, sbet2, cbet2, dn2, salp1, calp1, slam12, clam12, numit < kMaxIt1);
        const double v = lam.lam12;
        if (tripb || !(std::abs(v) >= (tripn ? 8 : 1) * kTol0) || numit == kMaxIt2)
          break;
        if (v > 0 && (numit > kMaxIt1 || calp1 / salp1 > calp1b / salp1b)) {
          salp1b = salp1;
          calp1b = calp1;
        } else if (v < 0 && (numit > kMaxIt1 || calp1 / salp1 < calp1a / salp1a)) {
          salp1a = salp1;
          calp1a = calp1;
        }
        ++numit;
        if (numit < kMaxIt1 && lam.dlam12 > 0) {
          const double dalp1 = -v / lam.dlam12;
          if (std::abs(dalp1) < kPi) {
            const double sdalp1 = std::sin(dalp1), cdalp1 = std::cos(dalp1);
            const double nsalp1 = salp1 * cdalp1 + calp1 * sdalp1;
            if (nsalp1 > 0) {
              calp1 = calp1 * cdalp1 - salp1 * sdalp1;
              salp1 = nsalp1;
              norm2(salp1, calp1);
              tripn = std::abs(v) <= 16 * kTol0;
              continue;
            }
          }
        }
        salp1 = (salp1a + salp1b) / 2;
        calp1 = (calp1a + calp1b) / 2;
        norm2(salp1, calp1);
        tripn = false;
        tripb = (std::abs(salp1a - salp1) + (calp1a - calp1) < kTolB ||
                 std::abs(salp1 - salp1b) + (calp1 - calp1b) < kTolB);
      }
      const Lengths len =
          lengths(lam.eps, lam.sig12, lam.ssig1, lam.csig1, dn1, lam.ssig2, lam.csig2, dn2, true);
      s12x = len.s12b * b_;
    }
  }
  return 0.0 + s12x;
}

const Wgs84 &wgs84() {
  static const Wgs84 instance;
  return instance;
}

} // namespace

double geodesic_distance(const Coordinate &a, const Coordinate &b) {
  require_valid(a);
  require_valid(b);
  if (a == b)
    return 0.0;
  return wgs84().inverse_distance(a.lat, a.lon, b.lat, b.lon);
}

} // namespace firecluster::geo
