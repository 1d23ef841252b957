#pragma once

// 2D-periodic unit cells: background material plus inclusion primitives on a
// rectangular a1 x a2 lattice, and the depth-parametrized Toeplitz matrices
// of Fourier coefficients of mu(x1) and rho(x1) that the operator assembly
// consumes.
//
// Units: mu in GPa, rho in g/cm^3, lengths in mm. With these units
// sqrt(mu/rho) is a speed in mm/us.

#include <algorithm>
#include <numbers>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "shsaw/common.hpp"

namespace shsaw {

struct Material {
    std::string name;
    double mu = 0.0;   // shear modulus, GPa
    double rho = 0.0;  // mass density, g/cm^3
};

struct Lattice {
    double a1 = 1.0;  // horizontal period, mm
    double a2 = 1.0;  // vertical period, mm
};

struct Circle {
    double c1 = 0.0, c2 = 0.0;  // center, mm
    double radius = 0.0;
    Material material;
};

struct Rectangle {
    double c1 = 0.0, c2 = 0.0;  // center, mm
    double w1 = 0.0, w2 = 0.0;  // full extents, mm
    Material material;
};

// Uniform horizontal layer occupying the depth interval [z_lo, z_hi).
struct Layer {
    double z_lo = 0.0, z_hi = 0.0;
    Material material;
};

using Primitive = std::variant<Circle, Rectangle, Layer>;

// Immutable after construction. Later primitives overwrite earlier ones
// where they overlap; all primitives are reduced periodically into the cell.
class UnitCell {
public:
    UnitCell(Lattice lattice, Material background, std::vector<Primitive> inclusions = {})
        : lattice_(lattice), background_(std::move(background)), inclusions_(std::move(inclusions)) {
        if (lattice_.a1 <= 0.0 || lattice_.a2 <= 0.0)
            throw std::invalid_argument("UnitCell: lattice periods must be positive");
        if (background_.mu <= 0.0 || background_.rho <= 0.0)
            throw std::invalid_argument("UnitCell: background material must have mu, rho > 0");
        for (const auto& p : inclusions_) validate(p);
    }

    const Lattice& lattice() const { return lattice_; }
    const Material& background() const { return background_; }
    const std::vector<Primitive>& inclusions() const { return inclusions_; }

    // The horizontal strip [c1-w, c1+w] covered by a primitive at depth x2,
    // or nothing if the primitive misses that depth. Layers cover the full
    // row (w = a1/2 centered anywhere).
    struct StripAtDepth {
        double c1;
        double half_width;
        const Material* material;
    };

    std::optional<StripAtDepth> strip_at_depth(const Primitive& p, double x2) const {
        const double a2 = lattice_.a2;
        if (const auto* c = std::get_if<Circle>(&p)) {
            double dz = wrap_centered(x2, c->c2, a2);
            if (std::abs(dz) >= c->radius) return std::nullopt;
            return StripAtDepth{c->c1, std::sqrt(c->radius * c->radius - dz * dz), &c->material};
        }
        if (const auto* r = std::get_if<Rectangle>(&p)) {
            double dz = wrap_centered(x2, r->c2, a2);
            if (std::abs(dz) >= r->w2 / 2.0) return std::nullopt;
            return StripAtDepth{r->c1, r->w1 / 2.0, &r->material};
        }
        const auto& l = std::get<Layer>(p);
        double rel = wrap_periodic(x2 - l.z_lo, a2);
        if (rel >= l.z_hi - l.z_lo) return std::nullopt;
        return StripAtDepth{lattice_.a1 / 2.0, lattice_.a1 / 2.0, &l.material};
    }

    // Depths in [0, a2] at which the horizontal cross-section changes
    // structure (primitive entry/exit). Sorted, deduplicated, includes the
    // period endpoints.
    std::vector<double> depth_breakpoints() const {
        const double a2 = lattice_.a2;
        std::vector<double> b{0.0, a2};
        auto add = [&](double z) {
            z = wrap_periodic(z, a2);
            b.push_back(z);
        };
        for (const auto& p : inclusions_) {
            if (const auto* c = std::get_if<Circle>(&p)) {
                add(c->c2 - c->radius);
                add(c->c2 + c->radius);
            } else if (const auto* r = std::get_if<Rectangle>(&p)) {
                add(r->c2 - r->w2 / 2.0);
                add(r->c2 + r->w2 / 2.0);
            } else {
                const auto& l = std::get<Layer>(p);
                add(l.z_lo);
                add(l.z_hi);
            }
        }
        std::sort(b.begin(), b.end());
        const double eps = 1e-12 * a2;
        std::vector<double> out;
        for (double z : b)
            if (out.empty() || z - out.back() > eps) out.push_back(z);
        if (a2 - out.back() <= eps) out.back() = a2;
        else out.push_back(a2);
        return out;
    }

private:
    void validate(const Primitive& p) const {
        if (const auto* c = std::get_if<Circle>(&p)) {
            if (c->radius <= 0.0) throw std::invalid_argument("circle: radius must be positive");
            check_material(c->material);
        } else if (const auto* r = std::get_if<Rectangle>(&p)) {
            if (r->w1 <= 0.0 || r->w2 <= 0.0)
                throw std::invalid_argument("rectangle: extents must be positive");
            check_material(r->material);
        } else {
            const auto& l = std::get<Layer>(p);
            if (l.z_hi <= l.z_lo) throw std::invalid_argument("layer: z_hi must exceed z_lo");
            check_material(l.material);
        }
    }

    static void check_material(const Material& m) {
        if (m.mu <= 0.0 || m.rho <= 0.0)
            throw std::invalid_argument("material '" + m.name + "': mu, rho must be positive");
    }

    Lattice lattice_;
    Material background_;
    std::vector<Primitive> inclusions_;
};

// Reflect every primitive about the horizontal midplane x2 = a2/2, i.e.
// depth-reverse the cell within the period. Applying it twice restores the
// original profiles exactly.
inline UnitCell flip_cell(const UnitCell& cell) {
    const double a2 = cell.lattice().a2;
    std::vector<Primitive> flipped;
    flipped.reserve(cell.inclusions().size());
    for (const auto& p : cell.inclusions()) {
        if (const auto* c = std::get_if<Circle>(&p)) {
            Circle f = *c;
            f.c2 = a2 - c->c2;
            flipped.push_back(f);
        } else if (const auto* r = std::get_if<Rectangle>(&p)) {
            Rectangle f = *r;
            f.c2 = a2 - r->c2;
            flipped.push_back(f);
        } else {
            const auto& l = std::get<Layer>(p);
            Layer f = l;
            f.z_lo = a2 - l.z_hi;
            f.z_hi = a2 - l.z_lo;
            flipped.push_back(f);
        }
    }
    return UnitCell(cell.lattice(), cell.background(), std::move(flipped));
}

// Fourier coefficient of a single-strip piecewise-constant profile
//   h(x1) = h_bg + (h_inc - h_bg) * 1[|x1 - c1| mod a1 < w]
// in the expansion h = sum_m h_m exp(2 pi i m x1 / a1).
inline Complex strip_fourier_coeff(double h_bg, double h_inc, double c1, double w, double a1,
                                   int m) {
    if (w < 0.0 || w > a1 / 2.0)
        throw std::invalid_argument("strip_fourier_coeff: need 0 <= w <= a1/2");
    const double dh = h_inc - h_bg;
    if (m == 0) return Complex(h_bg + dh * (2.0 * w / a1), 0.0);
    const double pm = std::numbers::pi * m;
    return dh * std::polar(1.0, -2.0 * pm * c1 / a1) * std::sin(2.0 * pm * w / a1) / pm;
}

// Horizontal cross-section at a fixed depth: a circular (periodic in x1)
// arrangement of constant-material intervals, produced by painting the
// primitives over the background in declaration order.
class CrossSection {
public:
    CrossSection(const UnitCell& cell, double x2) : a1_(cell.lattice().a1) {
        pieces_.push_back({0.0, cell.background().mu, cell.background().rho});
        for (const auto& p : cell.inclusions()) {
            auto strip = cell.strip_at_depth(p, x2);
            if (!strip) continue;
            if (strip->half_width * 2.0 >= a1_) {
                pieces_.assign(1, {0.0, strip->material->mu, strip->material->rho});
                continue;
            }
            if (strip->half_width <= 0.0) continue;
            paint(wrap_periodic(strip->c1 - strip->half_width, a1_),
                  2.0 * strip->half_width, strip->material->mu, strip->material->rho);
        }
    }

    // Fourier coefficient of the piecewise-constant value (mu or rho).
    Complex fourier_mu(int m) const { return fourier(m, true); }
    Complex fourier_rho(int m) const { return fourier(m, false); }

    // Point sample, for brute-force cross-checks.
    std::pair<double, double> value_at(double x1) const {
        double x = wrap_periodic(x1, a1_);
        int i = static_cast<int>(pieces_.size()) - 1;
        while (i > 0 && pieces_[static_cast<size_t>(i)].start > x) --i;
        const auto& p = pieces_[static_cast<size_t>(i)];
        return {p.mu, p.rho};
    }

    std::size_t piece_count() const { return pieces_.size(); }

private:
    struct Piece {
        double start;  // interval is [start, next.start) cyclically
        double mu, rho;
    };

    // Overwrite [lo, lo+len) (len < a1) with the given values.
    void paint(double lo, double len, double mu, double rho) {
        double hi = lo + len;
        if (hi <= a1_) {
            paint_linear(lo, hi, mu, rho);
        } else {
            paint_linear(lo, a1_, mu, rho);
            paint_linear(0.0, hi - a1_, mu, rho);
        }
    }

    void paint_linear(double lo, double hi, double mu, double rho) {
        if (hi - lo <= kEps) return;
        split_at(lo);
        split_at(hi);
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            double end = (i + 1 < pieces_.size()) ? pieces_[i + 1].start : a1_;
            if (pieces_[i].start >= lo - kEps && end <= hi + kEps) {
                pieces_[i].mu = mu;
                pieces_[i].rho = rho;
            }
        }
        merge_equal();
    }

    void split_at(double x) {
        if (x <= kEps || x >= a1_ - kEps) return;
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            double end = (i + 1 < pieces_.size()) ? pieces_[i + 1].start : a1_;
            if (x > pieces_[i].start + kEps && x < end - kEps) {
                pieces_.insert(pieces_.begin() + static_cast<long>(i) + 1,
                               {x, pieces_[i].mu, pieces_[i].rho});
                return;
            }
        }
    }

    void merge_equal() {
        for (std::size_t i = pieces_.size(); i-- > 1;) {
            if (pieces_[i].mu == pieces_[i - 1].mu && pieces_[i].rho == pieces_[i - 1].rho)
                pieces_.erase(pieces_.begin() + static_cast<long>(i));
        }
    }

    Complex fourier(int m, bool take_mu) const {
        Complex acc(0.0, 0.0);
        for (std::size_t i = 0; i < pieces_.size(); ++i) {
            double lo = pieces_[i].start;
            double hi = (i + 1 < pieces_.size()) ? pieces_[i + 1].start : a1_;
            double v = take_mu ? pieces_[i].mu : pieces_[i].rho;
            if (m == 0) {
                acc += v * (hi - lo) / a1_;
            } else {
                const double f = 2.0 * std::numbers::pi * m / a1_;
                acc += v * (std::polar(1.0, -f * hi) - std::polar(1.0, -f * lo)) /
                       Complex(0.0, -f * a1_);
            }
        }
        return acc;
    }

    static constexpr double kEps = 1e-14;

    double a1_;
    std::vector<Piece> pieces_;  // sorted by start, first always at 0
};

// Both d x d Hermitian Toeplitz matrices (mu_{n-m}(x2)), (rho_{n-m}(x2)) for
// harmonics m in [-M, M], d = 2M+1.
inline std::pair<Mat, Mat> profiles_at_depth(const UnitCell& cell, int d, double x2) {
    if (d < 1 || d % 2 == 0)
        throw std::invalid_argument("profiles_at_depth: d must be odd and positive");
    CrossSection cs(cell, x2);
    std::vector<Complex> mu_c(static_cast<size_t>(d)), rho_c(static_cast<size_t>(d));
    for (int k = 0; k < d; ++k) {
        mu_c[static_cast<size_t>(k)] = cs.fourier_mu(k);
        rho_c[static_cast<size_t>(k)] = cs.fourier_rho(k);
    }
    Mat mu(d, d), rho(d, d);
    for (int n = 0; n < d; ++n) {
        for (int m = 0; m < d; ++m) {
            int k = n - m;  // profiles are real, so h_{-k} = conj(h_k)
            Complex mc = k >= 0 ? mu_c[static_cast<size_t>(k)] : std::conj(mu_c[static_cast<size_t>(-k)]);
            Complex rc = k >= 0 ? rho_c[static_cast<size_t>(k)] : std::conj(rho_c[static_cast<size_t>(-k)]);
            mu(n, m) = mc;
            rho(n, m) = rc;
        }
    }
    return {std::move(mu), std::move(rho)};
}

// Depth-parametrized evaluator of the Toeplitz pair.
class ToeplitzProfile {
public:
    ToeplitzProfile(UnitCell cell, int d) : cell_(std::move(cell)), d_(d) {
        if (d < 1 || d % 2 == 0)
            throw std::invalid_argument("ToeplitzProfile: d must be odd and positive");
    }

    int dim() const { return d_; }
    const UnitCell& cell() const { return cell_; }

    std::pair<Mat, Mat> at(double x2) const { return profiles_at_depth(cell_, d_, x2); }

private:
    UnitCell cell_;
    int d_;
};

}  // namespace shsaw
