#include "hillpt/hill_matrix.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

#include "hillpt/error.hpp"
#include "hillpt/simd.hpp"

namespace hillpt {

BandedMatrix::BandedMatrix(int dim) : dim_(dim), bands_(static_cast<std::size_t>(dim) * kWidth, 0.0) {
    if (dim < 1) throw InvalidParameter("banded matrix dimension must be positive");
}

double BandedMatrix::entry(int i, int j) const {
    if (i < 0 || j < 0 || i >= dim_ || j >= dim_ || !in_band(i, j)) return 0.0;
    return bands_[static_cast<std::size_t>(i) * kWidth + static_cast<std::size_t>(j - i + kLower)];
}

void BandedMatrix::set(int i, int j, double value) {
    if (i < 0 || j < 0 || i >= dim_ || j >= dim_ || !in_band(i, j))
        throw std::out_of_range("entry (" + std::to_string(i) + ", " + std::to_string(j) + ") outside the band");
    bands_[static_cast<std::size_t>(i) * kWidth + static_cast<std::size_t>(j - i + kLower)] = value;
}

DenseMatrix BandedMatrix::to_dense() const {
    DenseMatrix out(static_cast<std::size_t>(dim_), static_cast<std::size_t>(dim_));
    for (int i = 0; i < dim_; ++i)
        for (int j = std::max(0, i - kLower); j <= std::min(dim_ - 1, i + kUpper); ++j)
            out(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = entry(i, j);
    return out;
}

double BandedMatrix::norm_inf() const {
    double best = 0.0;
    for (int i = 0; i < dim_; ++i) {
        double sum = 0.0;
        for (int j = i - kLower; j <= i + kUpper; ++j) sum += std::abs(entry(i, j));
        best = std::max(best, sum);
    }
    return best;
}

double BandedMatrix::trace() const {
    double t = 0.0;
    for (int i = 0; i < dim_; ++i) t += entry(i, i);
    return t;
}

BandedMatrix build_hill_operator(const SolverConfig& config, const OscillatorParams& params, BandPolicy policy) {
    const int n = config.n_trunc;
    if (n < 1 || (policy == BandPolicy::full_band && n < 5))
        throw InvalidParameter("truncation N = " + std::to_string(n) +
                               " is too small; N >= 5 is needed for the matrix to hold every coupling");
    BandedMatrix d(n);
    for (int i = 0; i < n; ++i) {
        // energy enters only through C_i, so E = 0 gives the diagonal 4 s i + 2 s
        const RecurrenceRow row = recurrence_row(i, 0.0, config, params);
        d.set(i, i, row.c_n);
        if (i + 2 < n) d.set(i, i + 2, row.a_n);
        if (i >= 1) d.set(i, i - 1, row.delta_term);
        if (i >= 2) d.set(i, i - 2, row.theta);
        if (i >= 3) d.set(i, i - 3, row.beta_term);
        if (i >= 4) d.set(i, i - 4, row.quartic_term);
    }
    return d;
}

namespace {

// Coefficient of h_k in recurrence row n.
double row_coefficient(const RecurrenceRow& row, int k) {
    switch (k - row.n) {
        case 2: return row.a_n;
        case 0: return row.c_n;
        case -1: return row.delta_term;
        case -2: return row.theta;
        case -3: return row.beta_term;
        case -4: return row.quartic_term;
        default: return 0.0;
    }
}

DenseMatrix build_split_matrix(int first_column, int m, double energy, const SolverConfig& config,
                               const OscillatorParams& params) {
    if (m < 0) throw InvalidParameter("determinant matrix order must be non-negative");
    const auto dim = static_cast<std::size_t>(m + 1);
    DenseMatrix out(dim, dim);
    for (int r = 0; r <= m; ++r) {
        const RecurrenceRow row = recurrence_row(r, energy, config, params);
        out(static_cast<std::size_t>(r), 0) = row_coefficient(row, first_column);
        for (int col = 1; col <= m; ++col)
            out(static_cast<std::size_t>(r), static_cast<std::size_t>(col)) = row_coefficient(row, col + 1);
    }
    return out;
}

}  // namespace

DenseMatrix build_sigma_matrix(int m, double energy, const SolverConfig& config, const OscillatorParams& params) {
    return build_split_matrix(0, m, energy, config, params);
}

DenseMatrix build_omega_matrix(int m, double energy, const SolverConfig& config, const OscillatorParams& params) {
    return build_split_matrix(1, m, energy, config, params);
}

LogDeterminant log_determinant(DenseMatrix a) {
    if (!a.square()) throw InvalidParameter("determinant of a non-square matrix");
    for (double v : a.data())
        if (!std::isfinite(v)) throw NumericalFailure("non-finite entry in determinant input");
    const std::size_t n = a.rows();
    LogDeterminant det{1, 0.0};
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (a(piv, k) == 0.0) return {0, 0.0};
        if (piv != k) {
            auto rk = a.row(k);
            auto rp = a.row(piv);
            std::swap_ranges(rk.begin() + static_cast<std::ptrdiff_t>(k), rk.end(),
                             rp.begin() + static_cast<std::ptrdiff_t>(k));
            det.sign = -det.sign;
        }
        const double pivot = a(k, k);
        if (pivot < 0.0) det.sign = -det.sign;
        det.log10_abs += std::log10(std::abs(pivot));
        const auto tail = a.row(k).subspan(k + 1);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double factor = a(i, k) / pivot;
            if (factor != 0.0) simd::axpy(-factor, tail, a.row(i).subspan(k + 1));
        }
    }
    return det;
}

SplitSequences taylor_from_determinants(double energy, int n_max, const SolverConfig& config,
                                        const OscillatorParams& params) {
    if (n_max > kMaxDeterminantOrder)
        throw InvalidParameter("determinant route limited to n_max <= " + std::to_string(kMaxDeterminantOrder) +
                               "; use forward recursion for longer sequences");
    if (n_max < 1) throw InvalidParameter("n_max must be at least 1");
    SplitSequences out;
    out.sigma.origin = SequenceOrigin::determinant_sigma;
    out.omega.origin = SequenceOrigin::determinant_omega;
    out.sigma.entries = {ScaledReal::from_double(1.0), ScaledReal::from_double(0.0)};
    out.omega.entries = {ScaledReal::from_double(0.0), ScaledReal::from_double(1.0)};

    // log10 of n!(n+1)! = A_0 A_1 ... A_{n-1}
    double log10_norm = 0.0;
    for (int n = 1; n + 1 <= n_max; ++n) {
        log10_norm += std::log10(static_cast<double>(n) * static_cast<double>(n + 1));
        const double parity = (n % 2 == 0) ? 1.0 : -1.0;
        for (auto [seq, matrix] : {std::pair{&out.sigma, build_sigma_matrix(n - 1, energy, config, params)},
                                   std::pair{&out.omega, build_omega_matrix(n - 1, energy, config, params)}}) {
            const LogDeterminant det = log_determinant(std::move(matrix));
            if (det.sign == 0) {
                seq->entries.push_back({});
                continue;
            }
            const double log10_value = det.log10_abs - log10_norm;
            const double e = std::floor(log10_value);
            seq->entries.push_back(ScaledReal::from_scaled(parity * det.sign * std::pow(10.0, log10_value - e),
                                                           static_cast<std::int64_t>(e)));
        }
    }
    return out;
}

void write_csv(std::ostream& out, const BandedMatrix& matrix) {
    const auto old_precision = out.precision(12);
    out << "row,col,value\n";
    for (int i = 0; i < matrix.dim(); ++i)
        for (int j = i - BandedMatrix::kLower; j <= i + BandedMatrix::kUpper; ++j) {
            const double v = matrix.entry(i, j);
            if (v != 0.0) out << i << ',' << j << ',' << v << '\n';
        }
    out.precision(old_precision);
}

}  // namespace hillpt
