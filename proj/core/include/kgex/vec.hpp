#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace kgex {

using Vec = std::vector<double>;

namespace vec {

constexpr double kZeroNormEps = 1e-12;

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);

/// Returns a / |a|. Vectors with norm below kZeroNormEps are returned
/// unchanged (all-zero stays all-zero).
Vec normalized(std::span<const double> a);

/// In-place variant of normalized().
void normalize(Vec& a);

/// Cosine similarity in [-1, 1]. If either norm is below kZeroNormEps the
/// result is 0 (defined-zero convention, keeps NaNs out of softmax/MMR).
/// Throws Error on dimension mismatch.
double cosine(std::span<const double> a, std::span<const double> b);

/// a += b, dimension-checked.
void add_inplace(Vec& a, std::span<const double> b);

/// a += s * b, dimension-checked.
void axpy_inplace(Vec& a, double s, std::span<const double> b);

void scale_inplace(Vec& a, double s);

/// Arithmetic mean of a non-empty list of equal-dimension vectors.
Vec mean(const std::vector<Vec>& vs);

bool all_finite(std::span<const double> a);

} // namespace vec
} // namespace kgex
