#pragma once

// Gamma function, normalized spherical Bessel functions j_k and the rank-one
// Dunkl kernel E_k(-i lambda, x).

#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "lcdt/errors.hpp"

namespace lcdt {

using ComplexSample = std::complex<double>;

/// Multiplicity parameter of the Dunkl operator; k >= -1/2.
class DunklOrder {
public:
    explicit DunklOrder(double k) : k_(k)
    {
        if (!(k >= -0.5) || !std::isfinite(k)) {
            throw DomainError("Dunkl order must satisfy k >= -1/2, got " + std::to_string(k));
        }
    }

    [[nodiscard]] double value() const noexcept { return k_; }
    operator double() const noexcept { return k_; }  // NOLINT(google-explicit-constructor)

private:
    double k_;
};

namespace detail {

// Coefficients (-1)^n (zeta(n) - 1) / n, n = 2, 3, ...
inline constexpr std::array<double, 40> kLogGammaShifted = {
        3.22467033424113218236e-1,
        -6.73523010531980951332e-2,
        2.0580808427784547879e-2,
        -7.38555102867398526627e-3,
        2.89051033074152328575e-3,
        -1.19275391170326097711e-3,
        5.09669524743042422336e-4,
        -2.23154758453579379761e-4,
        9.94575127818085337146e-5,
        -4.49262367381331417002e-5,
        2.05072127756706915532e-5,
        -9.43948827526839590399e-6,
        4.37486678990748780418e-6,
        -2.03921575380136623678e-6,
        9.55141213040741983286e-7,
        -4.49246919876456604329e-7,
        2.12071848055546658692e-7,
        -1.00432248239680996087e-7,
        4.76981016936398056576e-8,
        -2.27110946089431649103e-8,
        1.08386592148969540911e-8,
        -5.18347504197004665512e-9,
        2.48367454380247831719e-9,
        -1.19214014058609120744e-9,
        5.73136724167886201333e-10,
        -2.75952288512423314518e-10,
        1.33047643742444894815e-10,
        -6.42296456383810002208e-11,
        3.10442477473222727624e-11,
        -1.50213840807541421709e-11,
        7.2759744802390796625e-12,
        -3.52774247657591508362e-12,
        1.7119917905596179086e-12,
        -8.3153858414202848198e-13,
        4.04220052528944006554e-13,
        -1.96647563109661649041e-13,
        9.57363038783855576378e-14,
        -4.66407602642837422458e-14,
        2.27373696006597232063e-14,
        -1.10913994708345220166e-14
};

// ln Gamma(1 + e) for |e| <= 1/2.
inline double log_gamma_near_one(double e)
{
    double acc = 0.0;
    double pw = e * e;
    for (double c : kLogGammaShifted) {
        const double term = c * pw;
        acc += term;
        if (std::abs(term) < 1e-19 * std::abs(acc)) {
            break;
        }
        pw *= e;
    }
    return acc + e * (1.0 - std::numbers::egamma) - std::log1p(e);
}

inline double log_gamma_stirling(double x)
{
    // Bernoulli terms B_{2n} / (2n (2n - 1)).
    static constexpr std::array<double, 8> kB = {
        1.0 / 12.0,         -1.0 / 360.0,        1.0 / 1260.0,        -1.0 / 1680.0,
        1.0 / 1188.0,       -691.0 / 360360.0,   1.0 / 156.0,         -3617.0 / 122400.0,
    };
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    double series = 0.0;
    double pw = inv;
    for (double b : kB) {
        series += b * pw;
        pw *= inv2;
    }
    return (x - 0.5) * std::log(x) - x + 0.5 * std::log(2.0 * std::numbers::pi) + series;
}

}  // namespace detail

/// ln Gamma(x) for x > 0.
inline double log_gamma(double x)
{
    if (!(x > 0.0)) {
        throw DomainError("log_gamma requires x > 0");
    }
    if (std::isinf(x)) {
        return x;
    }
    if (x < 0.5) {
        // Gamma(x) = Gamma(1 + x) / x
        return detail::log_gamma_near_one(x) - std::log(x);
    }
    if (x <= 1.5) {
        return detail::log_gamma_near_one(x - 1.0);
    }
    if (x <= 2.5) {
        // Gamma(x) = (x - 1) Gamma(x - 1)
        return std::log1p(x - 2.0) + detail::log_gamma_near_one(x - 2.0);
    }
    if (x < 12.0) {
        double prod = 1.0;
        double y = x;
        while (y > 2.5) {
            y -= 1.0;
            prod *= y;
        }
        return std::log(prod) + log_gamma(y);
    }
    return detail::log_gamma_stirling(x);
}

namespace detail {

inline double magnitude(double v) { return std::abs(v); }
template <class T>
double magnitude(const std::complex<T>& v)
{
    return static_cast<double>(std::abs(v));
}

// Neumaier-compensated accumulator, componentwise for complex values.
template <class T>
struct RealOf {
    using type = T;
};
template <class T>
struct RealOf<std::complex<T>> {
    using type = T;
};

template <class T>
struct CompensatedSum {
    T sum{};
    T comp{};

    void add(T v)
    {
        if constexpr (std::is_floating_point_v<T>) {
            const T t = sum + v;
            if (std::abs(sum) >= std::abs(v)) {
                comp += (sum - t) + v;
            }
            else {
                comp += (v - t) + sum;
            }
            sum = t;
        }
        else {
            using R = typename RealOf<T>::type;
            CompensatedSum<R> re{sum.real(), comp.real()};
            CompensatedSum<R> im{sum.imag(), comp.imag()};
            re.add(v.real());
            im.add(v.imag());
            sum = T(re.sum, im.sum);
            comp = T(re.comp, im.comp);
        }
    }

    [[nodiscard]] T value() const { return sum + comp; }
};

// Power series Gamma(nu+1) sum (-1)^n (w/2)^{2n} / (n! Gamma(n+nu+1)).
template <class T>
T bessel_series(double nu, T w)
{
    using R = typename RealOf<T>::type;
    const T q = -(w * w) / R(4);
    T term = T(1);
    CompensatedSum<T> acc;
    acc.add(term);
    for (int n = 0; n < 400; ++n) {
        term *= q / (R(n + 1) * (R(n + 1) + R(nu)));
        acc.add(term);
        if (magnitude(term) <= 1e-20 * magnitude(acc.value()) && n > 1) {
            break;
        }
    }
    return acc.value();
}

// Miller normalization coefficients c_j = (nu+2j) Gamma(nu+j) / (j! Gamma(nu+1)), c_0 = 1.
inline std::vector<double> miller_coefficients(double nu, int count)
{
    std::vector<double> c(count);
    double g = 1.0;
    for (int j = 0; j < count; ++j) {
        if (j == 0) {
            c[0] = 1.0;
            continue;
        }
        if (j > 1) {
            g *= (nu + j - 1.0) / j;
        }
        c[j] = (nu + 2.0 * j) * g;
    }
    return c;
}

// Miller backward recurrence normalized with
// (w/2)^nu = Gamma(nu+1) sum_j c_j J_{nu+2j}(w).
// Returns (j_nu(w), j_{nu+1}(w)) directly; the (w/2)^nu factors cancel.
template <class T>
std::pair<T, T> bessel_miller(double nu, T w, const std::vector<double>& coeff)
{
    const double aw = magnitude(w);
    int m = static_cast<int>(std::ceil(aw + 20.0 + 4.0 * std::cbrt(aw)));
    m += m % 2;
    const std::vector<double> extra = static_cast<std::size_t>(m / 2) < coeff.size()
                                          ? std::vector<double>{}
                                          : miller_coefficients(nu, m / 2 + 1);
    const std::vector<double>& c = extra.empty() ? coeff : extra;
    const T inv_w = T(1) / w;
    T p_next = T(0);
    T p = T(1e-30);
    T sum = T(0);
    T p1 = T(0);
    for (int n = m; n >= 2; n -= 2) {
        sum += c[n / 2] * p;
        const T q = T(2.0 * (nu + n)) * inv_w * p - p_next;
        const T r = T(2.0 * (nu + n - 1)) * inv_w * q - p;
        p_next = q;
        p = r;
        if (magnitude(p) > 1e200) {
            p *= 1e-200;
            p_next *= 1e-200;
            sum *= 1e-200;
        }
    }
    p1 = p_next;
    sum += p;
    const T jk = p / sum;
    const T jk1 = T(2.0 * (nu + 1.0)) * inv_w * p1 / sum;
    return {jk, jk1};
}

// Hankel large-argument expansion of J_nu, returned as the bracket
// P cos(chi) - Q sin(chi); false when the expansion cannot reach tolerance.
template <class T>
bool hankel_bracket(double nu, T w, T& out)
{
    const double mu = 4.0 * nu * nu;
    const double aw = magnitude(w);
    T p = T(1);
    T q = T(0);
    T term = T(1);
    double prev = 1.0;
    bool done = false;
    const T inv8w = T(1) / (T(8) * w);
    for (int k = 1; k < 200; ++k) {
        const double odd = 2.0 * k - 1.0;
        term *= (mu - odd * odd) * inv8w / double(k);
        const double mag = magnitude(term);
        switch (k % 4) {
        case 1: q += term; break;
        case 2: p -= term; break;
        case 3: q -= term; break;
        default: p += term; break;
        }
        if (mag < 1e-17) {
            done = true;
            break;
        }
        if (odd * odd > mu && mag > prev) {
            break;
        }
        if (k > 2.5 * aw + 10) {
            break;
        }
        prev = mag;
    }
    if (!done) {
        return false;
    }
    const T chi = w - (0.5 * nu + 0.25) * std::numbers::pi;
    out = p * std::cos(chi) - q * std::sin(chi);
    return true;
}

inline constexpr double kSeriesLimit = 4.0;
inline constexpr double kAsymptoticLimit = 17.0;

}  // namespace detail

/// Evaluates j_k and j_{k+1} for a fixed order; construction caches ln Gamma(k+1).
class NormalizedBessel {
public:
    explicit NormalizedBessel(DunklOrder k)
        : k_(k.value()), log_gamma_k1_(log_gamma(k.value() + 1.0)), miller_(detail::miller_coefficients(k.value(), 48))
    {
    }

    [[nodiscard]] double order() const noexcept { return k_; }

    /// (j_k(x), j_{k+1}(x)); both functions are even in x.
    [[nodiscard]] std::pair<double, double> pair(double x) const
    {
        const double w = std::abs(x);
        if (w <= detail::kSeriesLimit) {
            return {detail::bessel_series(k_, w), detail::bessel_series(k_ + 1.0, w)};
        }
        if (w >= detail::kAsymptoticLimit) {
            double b0 = 0.0;
            double b1 = 0.0;
            if (detail::hankel_bracket(k_, w, b0) && detail::hankel_bracket(k_ + 1.0, w, b1)) {
                const double amp = std::exp(log_gamma_k1_ + k_ * std::log(2.0 / w)) *
                                   std::sqrt(2.0 / (std::numbers::pi * w));
                return {amp * b0, amp * (k_ + 1.0) * (2.0 / w) * b1};
            }
        }
        return detail::bessel_miller(k_, w, miller_);
    }

    /// (j_k(w), j_{k+1}(w)) for complex w by analytic continuation.
    [[nodiscard]] std::pair<std::complex<double>, std::complex<double>> pair(std::complex<double> w) const
    {
        if (w.imag() == 0.0) {
            const auto [a, b] = pair(w.real());
            return {a, b};
        }
        if (w.real() < 0.0) {
            w = -w;
        }
        const double aw = std::abs(w);
        const auto series_ld = [&] {
            using C = std::complex<long double>;
            const C wl(w.real(), w.imag());
            const C a = detail::bessel_series(k_, wl);
            const C b = detail::bessel_series(k_ + 1.0, wl);
            return std::pair<std::complex<double>, std::complex<double>>{
                {static_cast<double>(a.real()), static_cast<double>(a.imag())},
                {static_cast<double>(b.real()), static_cast<double>(b.imag())}};
        };
        if (aw <= detail::kSeriesLimit) {
            return series_ld();
        }
        if (aw >= detail::kAsymptoticLimit) {
            std::complex<double> b0;
            std::complex<double> b1;
            if (detail::hankel_bracket(k_, w, b0) && detail::hankel_bracket(k_ + 1.0, w, b1)) {
                const std::complex<double> amp =
                    std::exp(log_gamma_k1_ + k_ * std::log(2.0 / w)) * std::sqrt(2.0 / (std::numbers::pi * w));
                return {amp * b0, amp * (k_ + 1.0) * (2.0 / w) * b1};
            }
        }
        if (std::abs(w.real()) <= std::abs(w.imag())) {
            return series_ld();
        }
        return detail::bessel_miller(k_, w, miller_);
    }

private:
    double k_;
    double log_gamma_k1_;
    std::vector<double> miller_;
};

/// j_order(x) = Gamma(order+1) sum_n (-1)^n (x/2)^{2n} / (n! Gamma(n+order+1)).
inline double normalized_bessel_j(double order, double x)
{
    return NormalizedBessel(DunklOrder(order)).pair(x).first;
}

/// The Dunkl kernel as a function of the product w = lambda * x:
/// E_k(-i lambda, x) = j_k(w) - i w / (2(k+1)) j_{k+1}(w).
class DunklKernel {
public:
    explicit DunklKernel(DunklOrder k) : bessel_(k), half_inv_k1_(0.5 / (k.value() + 1.0)) {}

    [[nodiscard]] double order() const noexcept { return bessel_.order(); }

    [[nodiscard]] ComplexSample operator()(double w) const
    {
        const auto [jk, jk1] = bessel_.pair(w);
        return {jk, -w * half_inv_k1_ * jk1};
    }

    /// E_k(-i z, x) at complex product w = z x.
    [[nodiscard]] ComplexSample operator()(std::complex<double> w) const
    {
        const auto [jk, jk1] = bessel_.pair(w);
        return jk + std::complex<double>(0.0, -1.0) * w * half_inv_k1_ * jk1;
    }

private:
    NormalizedBessel bessel_;
    double half_inv_k1_;
};

/// E_k(-i lambda, x) for real lambda and x; modulus at most 1.
inline ComplexSample dunkl_kernel(DunklOrder k, double lambda, double x)
{
    return DunklKernel(k)(lambda * x);
}

/// E_k(-i z, x) for complex frequency z; modulus at most exp(|Im z| |x|).
inline ComplexSample dunkl_kernel_imag_shift(DunklOrder k, std::complex<double> z, double x)
{
    if (z.imag() == 0.0) {
        return dunkl_kernel(k, z.real(), x);
    }
    if (std::abs(z.imag()) * std::abs(x) > 700.0) {
        throw OverflowError("dunkl_kernel_imag_shift: |Im z| |x| exceeds the exponential range");
    }
    return DunklKernel(k)(z * x);
}

}  // namespace lcdt
