#include "hillpt/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <random>
#include <string>

#include "hillpt/error.hpp"
#include "hillpt/simd.hpp"

namespace hillpt {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

BalanceResult balance(DenseMatrix a) {
    const std::size_t n = a.rows();
    std::vector<double> scaling(n, 1.0);
    constexpr double radix = 2.0;
    constexpr double sqrdx = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double r = 0.0;
            double c = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) {
                    c += std::abs(a(j, i));
                    r += std::abs(a(i, j));
                }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                g = 1.0 / f;
                scaling[i] *= f;
                for (std::size_t j = 0; j < n; ++j) a(i, j) *= g;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
    return {std::move(a), std::move(scaling)};
}

HessenbergResult hessenberg_reduce(DenseMatrix a, bool accumulate) {
    if (!a.square()) throw InvalidParameter("Hessenberg reduction needs a square matrix");
    const std::size_t n = a.rows();
    std::optional<DenseMatrix> q;
    if (accumulate) q = DenseMatrix::identity(n);
    std::vector<double> v(n);
    std::vector<double> w(n);

    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t len = n - k - 1;
        double scale = 0.0;
        for (std::size_t i = 0; i < len; ++i) scale = std::max(scale, std::abs(a(k + 1 + i, k)));
        if (scale == 0.0) continue;
        double below = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
            v[i] = a(k + 1 + i, k) / scale;
            if (i > 0) below += v[i] * v[i];
        }
        if (below == 0.0) continue;  // column already in Hessenberg form
        const double norm2 = below + v[0] * v[0];
        const double alpha = -std::copysign(std::sqrt(norm2), v[0]);
        v[0] -= alpha;
        const double vtv = norm2 - 2.0 * alpha * (v[0] + alpha) + alpha * alpha;
        const double tau = 2.0 / vtv;
        const std::span<const double> vs(v.data(), len);

        // left: rows k+1.., columns k..
        const std::size_t width = n - k;
        std::fill_n(w.begin(), width, 0.0);
        const std::span<double> ws(w.data(), width);
        for (std::size_t i = 0; i < len; ++i) simd::axpy(v[i], a.row(k + 1 + i).subspan(k), ws);
        for (std::size_t i = 0; i < len; ++i) simd::axpy(-tau * v[i], ws, a.row(k + 1 + i).subspan(k));

        // right: all rows, columns k+1..
        for (std::size_t i = 0; i < n; ++i) {
            auto tail = a.row(i).subspan(k + 1);
            const double d = simd::dot(tail, vs);
            simd::axpy(-tau * d, vs, tail);
        }
        if (q) {
            for (std::size_t i = 0; i < n; ++i) {
                auto tail = q->row(i).subspan(k + 1);
                const double d = simd::dot(tail, vs);
                simd::axpy(-tau * d, vs, tail);
            }
        }
        a(k + 1, k) = alpha * scale;
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
    return {std::move(a), std::move(q)};
}

ComplexEigenvalueList qr_eigenvalues(DenseMatrix a, int max_sweeps) {
    if (!a.square()) throw InvalidParameter("QR iteration needs a square matrix");
    const int n = static_cast<int>(a.rows());
    ComplexEigenvalueList out;
    out.values.assign(static_cast<std::size_t>(n), {});
    if (n == 0) return out;
    auto h = [&a](int i, int j) -> double& { return a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };
    const simd::KernelTable& kernels = simd::active();

    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(h(i, j));

    int nn = n - 1;
    double shift_total = 0.0;
    while (nn >= 0) {
        int its = 0;
        int l = 0;
        do {
            // look for a negligible subdiagonal element
            for (l = nn; l > 0; --l) {
                double s = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
                if (s == 0.0) s = anorm;
                if (std::abs(h(l, l - 1)) <= kEps * s) {
                    h(l, l - 1) = 0.0;
                    break;
                }
            }
            double x = h(nn, nn);
            if (l == nn) {
                out.values[static_cast<std::size_t>(nn)] = {x + shift_total, 0.0};
                --nn;
            } else {
                double y = h(nn - 1, nn - 1);
                double w = h(nn, nn - 1) * h(nn - 1, nn);
                if (l == nn - 1) {
                    const double p = 0.5 * (y - x);
                    const double q = p * p + w;
                    double z = std::sqrt(std::abs(q));
                    x += shift_total;
                    if (q >= 0.0) {
                        z = p + std::copysign(z, p);
                        const double hi = x + z;
                        const double lo = z != 0.0 ? x - w / z : hi;
                        out.values[static_cast<std::size_t>(nn - 1)] = {hi, 0.0};
                        out.values[static_cast<std::size_t>(nn)] = {lo, 0.0};
                    } else {
                        out.values[static_cast<std::size_t>(nn - 1)] = {x + p, z};
                        out.values[static_cast<std::size_t>(nn)] = {x + p, -z};
                    }
                    nn -= 2;
                } else {
                    if (its >= max_sweeps)
                        throw NumericalFailure("QR iteration did not converge for the block ending at row " +
                                               std::to_string(nn) + " (block start " + std::to_string(l) + ")");
                    if (its == 10 || its == 20) {
                        // exceptional shift
                        shift_total += x;
                        for (int i = 0; i <= nn; ++i) h(i, i) -= x;
                        const double s = std::abs(h(nn, nn - 1)) + std::abs(h(nn - 1, nn - 2));
                        x = y = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    ++out.sweeps_used;

                    int m = nn - 2;
                    double p = 0.0;
                    double q = 0.0;
                    double r = 0.0;
                    double z = 0.0;
                    for (; m >= l; --m) {
                        z = h(m, m);
                        r = x - z;
                        double s = y - z;
                        p = (r * s - w) / h(m + 1, m) + h(m, m + 1);
                        q = h(m + 1, m + 1) - z - r - s;
                        r = h(m + 2, m + 1);
                        s = std::abs(p) + std::abs(q) + std::abs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        const double u = std::abs(h(m, m - 1)) * (std::abs(q) + std::abs(r));
                        const double v = std::abs(p) * (std::abs(h(m - 1, m - 1)) + std::abs(z) + std::abs(h(m + 1, m + 1)));
                        if (u <= kEps * v) break;
                    }
                    for (int i = m; i < nn - 1; ++i) {
                        h(i + 2, i) = 0.0;
                        if (i != m) h(i + 2, i - 1) = 0.0;
                    }
                    for (int k = m; k < nn; ++k) {
                        if (k != m) {
                            p = h(k, k - 1);
                            q = h(k + 1, k - 1);
                            r = k + 1 != nn ? h(k + 2, k - 1) : 0.0;
                            x = std::abs(p) + std::abs(q) + std::abs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        const double s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
                        if (s == 0.0) continue;
                        if (k == m) {
                            if (l != m) h(k, k - 1) = -h(k, k - 1);
                        } else {
                            h(k, k - 1) = -s * x;
                        }
                        p += s;
                        x = p / s;
                        y = q / s;
                        z = r / s;
                        q /= p;
                        r /= p;
                        // rows k, k+1 (, k+2), columns k..nn
                        const auto width = static_cast<std::size_t>(nn - k + 1);
                        if (k + 1 != nn)
                            kernels.reflect3(&h(k, k), &h(k + 1, k), &h(k + 2, k), width, q, r, x, y, z);
                        else
                            kernels.reflect2(&h(k, k), &h(k + 1, k), width, q, x, y);
                        // columns k, k+1 (, k+2), rows l..min(nn, k+3)
                        const int mmin = std::min(nn, k + 3);
                        for (int i = l; i <= mmin; ++i) {
                            double pp = x * h(i, k) + y * h(i, k + 1);
                            if (k + 1 != nn) {
                                pp += z * h(i, k + 2);
                                h(i, k + 2) -= pp * r;
                            }
                            h(i, k + 1) -= pp * q;
                            h(i, k) -= pp;
                        }
                    }
                }
            }
        } while (l + 1 < nn);
    }
    return out;
}

ComplexEigenvalueList eigenvalues(DenseMatrix matrix, int max_sweeps) {
    BalanceResult balanced = balance(std::move(matrix));
    HessenbergResult hess = hessenberg_reduce(std::move(balanced.matrix));
    return qr_eigenvalues(std::move(hess.hessenberg), max_sweeps);
}

SpectrumResult real_spectrum(const ComplexEigenvalueList& eigs, EnergyScale scale, const SolverConfig& config) {
    struct Level {
        double re;
        double im;
    };
    std::vector<Level> real_levels;
    std::vector<std::complex<double>> pairs;
    for (const auto& e : eigs.values) {
        if (std::abs(e.imag()) <= config.tol_imag * (1.0 + std::abs(e.real())))
            real_levels.push_back({e.real(), std::abs(e.imag())});
        else if (e.imag() > 0.0)
            pairs.push_back(e);
    }
    std::sort(real_levels.begin(), real_levels.end(), [](const Level& a, const Level& b) { return a.re < b.re; });
    std::sort(pairs.begin(), pairs.end(), [](auto a, auto b) { return a.real() < b.real(); });

    SpectrumResult out;
    out.sweeps_used = eigs.sweeps_used;
    for (const Level& lv : real_levels) {
        if (!out.energies.empty()) {
            const double prev = out.energies.back();
            if (std::abs(lv.re - prev) <= 1e-8 * (1.0 + std::abs(prev))) continue;
        }
        out.energies.push_back(lv.re);
        out.imag_flags.push_back(lv.im);
    }
    for (double& e : out.energies) e *= scale.factor;
    for (double& f : out.imag_flags) f *= scale.factor;
    out.dropped_complex_pairs = static_cast<int>(pairs.size());
    for (const auto& p : pairs) out.dropped_pairs.push_back(p * scale.factor);
    return out;
}

SpectrumResult compute_spectrum(const SolverConfig& config, const OscillatorParams& params) {
    const RescaledProblem problem = rescale_to_unit_quartic(params);
    require_growth_constraint(config, problem.params);
    const BandedMatrix d = build_hill_operator(config, problem.params);
    SpectrumResult out = real_spectrum(eigenvalues(d.to_dense(), config.max_qr_sweeps_per_eigenvalue),
                                       problem.scale, config);
    out.n_trunc = config.n_trunc;
    return out;
}

namespace {

/// LU with partial pivoting of a matrix with kl sub- and ku super-diagonals;
/// the factor U carries up to kl + ku super-diagonals after row swaps.
class BandedLU {
public:
    static constexpr int kl = BandedMatrix::kLower;
    static constexpr int ku = BandedMatrix::kUpper;
    static constexpr int width = 2 * kl + ku + 1;

    // Returns false on an exactly zero pivot.
    bool factor(const BandedMatrix& d, double shift) {
        n_ = d.dim();
        lu_.assign(static_cast<std::size_t>(n_) * width, 0.0);
        pivots_.assign(static_cast<std::size_t>(n_), 0);
        for (int i = 0; i < n_; ++i)
            for (int j = std::max(0, i - kl); j <= std::min(n_ - 1, i + ku); ++j)
                at(i, j) = d.entry(i, j) - (i == j ? shift : 0.0);
        for (int k = 0; k < n_; ++k) {
            const int last = std::min(n_ - 1, k + kl);
            int piv = k;
            for (int i = k + 1; i <= last; ++i)
                if (std::abs(at(i, k)) > std::abs(at(piv, k))) piv = i;
            pivots_[static_cast<std::size_t>(k)] = piv;
            if (at(piv, k) == 0.0) return false;
            const int jmax = std::min(n_ - 1, k + kl + ku);
            if (piv != k)
                for (int j = k; j <= jmax; ++j) std::swap(at(k, j), at(piv, j));
            const double pivot = at(k, k);
            for (int i = k + 1; i <= last; ++i) {
                const double f = at(i, k) / pivot;
                at(i, k) = f;
                if (f == 0.0) continue;
                for (int j = k + 1; j <= jmax; ++j) at(i, j) -= f * at(k, j);
            }
        }
        return true;
    }

    void solve(std::vector<double>& b) const {
        for (int k = 0; k < n_; ++k) {
            const int piv = pivots_[static_cast<std::size_t>(k)];
            if (piv != k) std::swap(b[static_cast<std::size_t>(k)], b[static_cast<std::size_t>(piv)]);
            const int last = std::min(n_ - 1, k + kl);
            for (int i = k + 1; i <= last; ++i) b[static_cast<std::size_t>(i)] -= at(i, k) * b[static_cast<std::size_t>(k)];
        }
        for (int i = n_ - 1; i >= 0; --i) {
            double sum = b[static_cast<std::size_t>(i)];
            const int jmax = std::min(n_ - 1, i + kl + ku);
            for (int j = i + 1; j <= jmax; ++j) sum -= at(i, j) * b[static_cast<std::size_t>(j)];
            b[static_cast<std::size_t>(i)] = sum / at(i, i);
        }
    }

    // trace of (D - shift)^-1, one unit-vector solve per column
    double inverse_trace() const {
        double t = 0.0;
        std::vector<double> e(static_cast<std::size_t>(n_));
        for (int j = 0; j < n_; ++j) {
            std::fill(e.begin(), e.end(), 0.0);
            e[static_cast<std::size_t>(j)] = 1.0;
            solve(e);
            t += e[static_cast<std::size_t>(j)];
        }
        return t;
    }

private:
    // column offset j - i + kl covers j in [i - kl, i + kl + ku]
    double& at(int i, int j) { return lu_[static_cast<std::size_t>(i) * width + static_cast<std::size_t>(j - i + kl)]; }
    double at(int i, int j) const {
        return lu_[static_cast<std::size_t>(i) * width + static_cast<std::size_t>(j - i + kl)];
    }

    int n_ = 0;
    std::vector<double> lu_;
    std::vector<int> pivots_;
};

std::vector<double> band_multiply(const BandedMatrix& d, const std::vector<double>& x) {
    const int n = d.dim();
    std::vector<double> y(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        double sum = 0.0;
        for (int j = std::max(0, i - BandedMatrix::kLower); j <= std::min(n - 1, i + BandedMatrix::kUpper); ++j)
            sum += d.entry(i, j) * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = sum;
    }
    return y;
}

double norm_inf(const std::vector<double>& x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace

InverseIterationResult eigenvector_inverse_iteration(const BandedMatrix& d, double energy, const SolverConfig& config) {
    if (!std::isfinite(energy)) throw InvalidParameter("inverse iteration needs a finite shift");
    const int n = d.dim();
    const double d_norm = d.norm_inf();

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (double& v : x) v = dist(rng);

    auto residual_of = [&](const std::vector<double>& h, double e) {
        std::vector<double> r = band_multiply(d, h);
        for (std::size_t i = 0; i < r.size(); ++i) r[i] -= e * h[i];
        return norm_inf(r) / (d_norm * norm_inf(h));
    };

    BandedLU lu;
    auto factor_near = [&](double& shift) {
        int attempt = 0;
        while (!lu.factor(d, shift)) {
            if (++attempt > 3)
                throw NumericalFailure("shifted Hill matrix is exactly singular near E = " + std::to_string(energy));
            shift += 1e-10 * (1.0 + std::abs(shift));
        }
    };

    // The Hill matrix is far from normal, so small residuals do not locate the
    // eigenvalue; Newton on det(D - E) does: d/dE log det(D - E) = -tr (D - E)^-1.
    double shift = energy;
    constexpr int kNewton = 40;
    for (int it = 0; it < kNewton; ++it) {
        factor_near(shift);
        const double t = lu.inverse_trace();
        if (!std::isfinite(t) || t == 0.0) break;
        const double step = 1.0 / t;
        shift += step;
        if (std::abs(step) <= 4.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(shift))) break;
    }
    if (!(std::abs(shift - energy) <= 1e-2 * (1.0 + std::abs(energy))))
        throw NumericalFailure("no real eigenvalue of the Hill matrix within 1e-2 (1 + |E|) of E = " +
                               std::to_string(energy));

    factor_near(shift);
    double residual = std::numeric_limits<double>::infinity();
    constexpr int kInner = 8;
    for (int it = 0; it < kInner; ++it) {
        std::vector<double> y = x;
        lu.solve(y);
        const double y_norm = norm_inf(y);
        if (!std::isfinite(y_norm) || y_norm == 0.0)
            throw NumericalFailure("inverse iteration produced a non-finite iterate");
        for (double& v : y) v /= y_norm;
        x = std::move(y);
        residual = residual_of(x, shift);
        if (residual <= config.tol_residual && it >= 1) break;
    }
    if (!(residual <= config.tol_residual))
        throw NumericalFailure("inverse iteration residual " + std::to_string(residual) + " above tolerance near E = " +
                               std::to_string(energy));
    const double estimate = shift;

    const double h0 = x[0];
    const double h1 = n > 1 ? x[1] : 0.0;
    double rho = std::hypot(h0, h1);
    if (rho == 0.0) throw NumericalFailure("eigenvector has h_0 = h_1 = 0");
    if (h0 < 0.0 || (h0 == 0.0 && h1 < 0.0)) rho = -rho;
    InverseIterationResult out;
    out.h.origin = SequenceOrigin::h_from_initial;
    out.h.entries.reserve(x.size());
    for (double v : x) out.h.entries.push_back(ScaledReal::from_double(v / rho));
    out.zeta = std::atan2(h1 / rho, h0 / rho);
    out.energy = estimate;
    out.residual = residual;
    return out;
}

std::vector<LevelSlot> level_slots(const SpectrumResult& spectrum) {
    std::vector<LevelSlot> slots;
    for (double e : spectrum.energies) slots.push_back({false, e, 0.0});
    const auto& real = spectrum.energies;
    for (const auto& pair : spectrum.dropped_pairs) {
        const auto above = std::lower_bound(real.begin(), real.end(), pair.real());
        double gap = std::numeric_limits<double>::infinity();
        if (above != real.end()) gap = std::min(gap, *above - pair.real());
        if (above != real.begin()) gap = std::min(gap, pair.real() - *(above - 1));
        if (std::abs(pair.imag()) < gap) slots.push_back({true, pair.real(), std::abs(pair.imag())});
    }
    std::stable_sort(slots.begin(), slots.end(), [](const LevelSlot& a, const LevelSlot& b) { return a.value < b.value; });
    return slots;
}

void write_csv(std::ostream& out, const SpectrumResult& spectrum) {
    const auto old_precision = out.precision(12);
    out << "k,E_k,imag_flag\n";
    for (std::size_t k = 0; k < spectrum.energies.size(); ++k)
        out << k << ',' << spectrum.energies[k] << ',' << spectrum.imag_flags[k] << '\n';
    out.precision(old_precision);
}

}  // namespace hillpt
