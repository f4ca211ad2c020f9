#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ripple {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Base error. Config errors and numerical aborts are split out so the CLI
// can map them to distinct exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class NumericalAbort : public Error {
public:
    NumericalAbort(const std::string& what, long sample_index = -1)
        : Error(what), sample_index_(sample_index) {}
    long sample_index() const { return sample_index_; }

private:
    long sample_index_;
};

// Uniform periodic grid on [0,1)^2. n1 points along x1, n2 along x2.
class Grid {
public:
    Grid() = default;
    Grid(int n1, int n2);

    int n1() const { return n1_; }
    int n2() const { return n2_; }
    std::size_t size() const { return std::size_t(n1_) * std::size_t(n2_); }
    double dx1() const { return 1.0 / n1_; }
    double dx2() const { return 1.0 / n2_; }
    double cell() const { return dx1() * dx2(); }

    // Half-spectrum layout: column m1 in [0, n1/2], row j2 in [0, n2).
    int spec_cols() const { return n1_ / 2 + 1; }
    std::size_t spec_size() const { return std::size_t(spec_cols()) * std::size_t(n2_); }

    int mode2(int j2) const { return j2 <= n2_ / 2 ? j2 : j2 - n2_; }
    double k1(int m1) const { return kTwoPi * m1; }
    double k2(int j2) const { return kTwoPi * mode2(j2); }
    bool nyquist1(int m1) const { return m1 == n1_ / 2; }
    bool nyquist2(int j2) const { return j2 == n2_ / 2; }
    // Multiplicity of a stored half-spectrum column in the full spectrum.
    double weight(int m1) const { return (m1 == 0 || m1 == n1_ / 2) ? 1.0 : 2.0; }

    bool operator==(const Grid& o) const { return n1_ == o.n1_ && n2_ == o.n2_; }
    bool operator!=(const Grid& o) const { return !(*this == o); }

private:
    int n1_ = 0;
    int n2_ = 0;
};

struct Field {
    Grid grid;
    std::vector<double> values;  // index i2*n1 + i1
    bool mean_x1_zero = false;

    Field() = default;
    explicit Field(const Grid& g) : grid(g), values(g.size(), 0.0) {}

    static Field from_function(const Grid& g, const std::function<double(double, double)>& f);

    double& at(int i1, int i2) { return values[std::size_t(i2) * grid.n1() + i1]; }
    double at(int i1, int i2) const { return values[std::size_t(i2) * grid.n1() + i1]; }

    double max_abs() const;
    Field& operator+=(const Field& o);
    Field& operator-=(const Field& o);
    Field& operator*=(double c);
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double c, Field a);

struct Spectrum {
    Grid grid;
    std::vector<cplx> coeffs;  // index j2*(n1/2+1) + m1
    bool mean_x1_zero = false;

    Spectrum() = default;
    explicit Spectrum(const Grid& g) : grid(g), coeffs(g.spec_size(), cplx(0.0, 0.0)) {}

    cplx& at(int m1, int j2) { return coeffs[std::size_t(j2) * grid.spec_cols() + m1]; }
    cplx at(int m1, int j2) const { return coeffs[std::size_t(j2) * grid.spec_cols() + m1]; }

    Spectrum& operator+=(const Spectrum& o);
    Spectrum& operator-=(const Spectrum& o);
    Spectrum& operator*=(double c);
    // this += c * o
    void axpy(double c, const Spectrum& o);
};

Spectrum operator+(Spectrum a, const Spectrum& b);
Spectrum operator-(Spectrum a, const Spectrum& b);
Spectrum operator*(double c, Spectrum a);

enum class Parity { even, odd };

// Fourier multiplier k -> value, with parity tags used for the Nyquist rule.
// Symbols singular at k1 = 0 are never evaluated there.
struct Symbol {
    std::string name;
    std::function<cplx(double k1, double k2)> eval;
    Parity k1_parity = Parity::even;
    Parity k2_parity = Parity::even;
    bool singular_at_k1_zero = false;
};

namespace symbols {
Symbol d1();                   // i k1
Symbol d2();                   // i k2
Symbol r1();                   // i sgn(k1)
Symbol lop();                  // k1^2 + k2^2/|k1|
Symbol aop();                  // |k1|^3 + k2^2
Symbol heat(double T);         // exp(-T(|k1|^3 + k2^2))
Symbol abs_d(int axis, double s);
}  // namespace symbols

}  // namespace ripple
