#include "kgex/vec.hpp"

#include <cmath>

#include "kgex/error.hpp"

namespace kgex::vec {

namespace {
void check_dims(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw Error("vector dimension mismatch: " + std::to_string(a.size()) +
                    " vs " + std::to_string(b.size()));
    }
}
} // namespace

double dot(std::span<const double> a, std::span<const double> b) {
    check_dims(a, b);
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> a) {
    double s = 0.0;
    for (double x : a) s += x * x;
    return std::sqrt(s);
}

Vec normalized(std::span<const double> a) {
    Vec out(a.begin(), a.end());
    normalize(out);
    return out;
}

void normalize(Vec& a) {
    double n = norm(a);
    if (n < kZeroNormEps) return;
    for (double& x : a) x /= n;
}

double cosine(std::span<const double> a, std::span<const double> b) {
    check_dims(a, b);
    double na = norm(a);
    double nb = norm(b);
    if (na < kZeroNormEps || nb < kZeroNormEps) return 0.0;
    double c = dot(a, b) / (na * nb);
    if (c > 1.0) c = 1.0;
    if (c < -1.0) c = -1.0;
    return c;
}

void add_inplace(Vec& a, std::span<const double> b) {
    check_dims(a, b);
    for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

void axpy_inplace(Vec& a, double s, std::span<const double> b) {
    check_dims(a, b);
    for (size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
}

void scale_inplace(Vec& a, double s) {
    for (double& x : a) x *= s;
}

Vec mean(const std::vector<Vec>& vs) {
    if (vs.empty()) throw Error("mean of empty vector list");
    Vec out(vs.front().size(), 0.0);
    for (const Vec& v : vs) add_inplace(out, v);
    scale_inplace(out, 1.0 / static_cast<double>(vs.size()));
    return out;
}

bool all_finite(std::span<const double> a) {
    for (double x : a) {
        if (!std::isfinite(x)) return false;
    }
    return true;
}

} // namespace kgex::vec
