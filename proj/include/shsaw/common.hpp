#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace shsaw {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

inline constexpr const char* kVersion = "0.1.0";

// --- error taxonomy ------------------------------------------------------

// Ill-conditioned material operator (e.g. near-singular mu-Toeplitz block).
struct ConditioningError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The Riccati integration at this alpha overflowed or failed its residual
// target; the caller should redraw alpha.
struct RetryableAlphaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The resolvent shift z hit (or nearly hit) an eigenvalue of the monodromy.
struct SingularShiftError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Contour quadrature failed to converge: an eigenvalue sits on or near the
// integration circle. The caller may perturb the radius.
struct ContourCollisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Trace of the propagating projector is not close to an even integer.
struct IndeterminateCountError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The brute-force reference refuses inputs outside its conditioning guard.
struct OracleUnavailableError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- small numeric helpers -----------------------------------------------

// Reduce x into [0, period).
inline double wrap_periodic(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    // fmod can return exactly `period` after the correction when x is a
    // tiny negative number
    if (r >= period) r = 0.0;
    return r;
}

// Signed distance from x to the nearest periodic image of c, in
// [-period/2, period/2).
inline double wrap_centered(double x, double c, double period) {
    double r = std::fmod(x - c, period);
    if (r < -period / 2.0) r += period;
    if (r >= period / 2.0) r -= period;
    return r;
}

// splitmix64; used to derive independent per-sample RNG streams from a
// master seed so results do not depend on scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
    return splitmix64(splitmix64(seed ^ splitmix64(a)) ^ splitmix64(b ^ 0x5bf03635ULL));
}

inline std::uint64_t double_bits(double x) {
    std::uint64_t u;
    static_assert(sizeof(u) == sizeof(x));
    std::memcpy(&u, &x, sizeof(u));
    return u;
}

inline double max_abs(const Mat& m) {
    return m.cwiseAbs().maxCoeff();
}

// --- solver settings -------------------------------------------------------

struct RiccatiSettings {
    int base_steps = 400;      // RK4 steps per period at the coarsest level
    int max_steps = 6400;      // step-doubling budget
    double residual_tol = 1e-8;
    int alpha_retries = 8;
};

struct ContourSettings {
    double radius = 0.99;
    int start_nodes = 256;
    int max_nodes = 4096;
    double idem_tol = 1e-7;
    double radius_lo = 0.97;   // perturbation window on contour collision
    double radius_hi = 0.995;
};

struct Tolerances {
    double np_round = 0.05;       // accepted distance of trace(P_p) from an even integer
    double tol_saw_scale = 1e-6;  // tol_saw = scale * (1 + trace(PSD)) / d
    double tol_u = 1e-3;          // threshold on |P_d1 u0| in root classification
    double omega_tol_rel = 1e-4;  // bisection width, relative to omega_max
    double branch_link_factor = 3.0;  // times the omega grid spacing
};

struct SolverSettings {
    int d = 17;  // harmonic dimension, odd: m in [-M, M], d = 2M+1
    RiccatiSettings riccati;
    ContourSettings contour;
    Tolerances tol;
    std::uint64_t master_seed = 0x5eed5a11u;
};

}  // namespace shsaw
