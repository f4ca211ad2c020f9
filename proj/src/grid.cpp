#include "ripple/grid.hpp"

#include <cmath>

namespace ripple {

Grid::Grid(int n1, int n2) : n1_(n1), n2_(n2) {
    if (n1 < 8 || n1 % 2 != 0)
        throw ConfigError("grid: n1 must be even and >= 8, got " + std::to_string(n1));
    if (n2 < 8 || n2 % 2 != 0)
        throw ConfigError("grid: n2 must be even and >= 8, got " + std::to_string(n2));
}

Field Field::from_function(const Grid& g, const std::function<double(double, double)>& f) {
    Field out(g);
    for (int i2 = 0; i2 < g.n2(); ++i2)
        for (int i1 = 0; i1 < g.n1(); ++i1)
            out.at(i1, i2) = f(i1 * g.dx1(), i2 * g.dx2());
    return out;
}

double Field::max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
}

static void check_same(const Grid& a, const Grid& b) {
    if (a != b) throw Error("grid mismatch in field arithmetic");
}

Field& Field::operator+=(const Field& o) {
    check_same(grid, o.grid);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    mean_x1_zero = mean_x1_zero && o.mean_x1_zero;
    return *this;
}

Field& Field::operator-=(const Field& o) {
    check_same(grid, o.grid);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    mean_x1_zero = mean_x1_zero && o.mean_x1_zero;
    return *this;
}

Field& Field::operator*=(double c) {
    for (double& v : values) v *= c;
    return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double c, Field a) { return a *= c; }

Spectrum& Spectrum::operator+=(const Spectrum& o) {
    check_same(grid, o.grid);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
    mean_x1_zero = mean_x1_zero && o.mean_x1_zero;
    return *this;
}

Spectrum& Spectrum::operator-=(const Spectrum& o) {
    check_same(grid, o.grid);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
    mean_x1_zero = mean_x1_zero && o.mean_x1_zero;
    return *this;
}

Spectrum& Spectrum::operator*=(double c) {
    for (auto& z : coeffs) z *= c;
    return *this;
}

void Spectrum::axpy(double c, const Spectrum& o) {
    check_same(grid, o.grid);
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += c * o.coeffs[i];
    mean_x1_zero = mean_x1_zero && o.mean_x1_zero;
}

Spectrum operator+(Spectrum a, const Spectrum& b) { return a += b; }
Spectrum operator-(Spectrum a, const Spectrum& b) { return a -= b; }
Spectrum operator*(double c, Spectrum a) { return a *= c; }

namespace symbols {

Symbol d1() {
    return {"d1", [](double k1, double) { return cplx(0.0, k1); }, Parity::odd, Parity::even, false};
}

Symbol d2() {
    return {"d2", [](double, double k2) { return cplx(0.0, k2); }, Parity::even, Parity::odd, false};
}

Symbol r1() {
    return {"R1",
            [](double k1, double) { return cplx(0.0, k1 > 0 ? 1.0 : (k1 < 0 ? -1.0 : 0.0)); },
            Parity::odd, Parity::even, false};
}

Symbol lop() {
    return {"L", [](double k1, double k2) { return cplx(k1 * k1 + k2 * k2 / std::abs(k1), 0.0); },
            Parity::even, Parity::even, true};
}

Symbol aop() {
    return {"A",
            [](double k1, double k2) {
                double a = std::abs(k1);
                return cplx(a * a * a + k2 * k2, 0.0);
            },
            Parity::even, Parity::even, false};
}

Symbol heat(double T) {
    if (!(T > 0.0)) throw Error("heat symbol: T must be positive");
    return {"psi_T",
            [T](double k1, double k2) {
                double a = std::abs(k1);
                return cplx(std::exp(-T * (a * a * a + k2 * k2)), 0.0);
            },
            Parity::even, Parity::even, false};
}

Symbol abs_d(int axis, double s) {
    if (axis != 1 && axis != 2) throw Error("abs_d: axis must be 1 or 2");
    Symbol out;
    out.name = "|d" + std::to_string(axis) + "|^s";
    out.eval = [axis, s](double k1, double k2) {
        double k = std::abs(axis == 1 ? k1 : k2);
        if (k == 0.0) return cplx(s > 0.0 ? 0.0 : (s == 0.0 ? 1.0 : 0.0), 0.0);
        return cplx(std::pow(k, s), 0.0);
    };
    out.singular_at_k1_zero = (axis == 1 && s < 0.0);
    return out;
}

}  // namespace symbols
}  // namespace ripple
