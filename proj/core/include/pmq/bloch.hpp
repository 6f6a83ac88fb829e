#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "pmq/matrix.hpp"

namespace pmq {

struct Vec3 {
    double x = 0, y = 0, z = 0;
};

inline double dot(const Vec3& p, const Vec3& q) { return p.x * q.x + p.y * q.y + p.z * q.z; }
inline Vec3 operator+(const Vec3& p, const Vec3& q) { return {p.x + q.x, p.y + q.y, p.z + q.z}; }
inline Vec3 operator-(const Vec3& p, const Vec3& q) { return {p.x - q.x, p.y - q.y, p.z - q.z}; }
inline Vec3 operator*(double t, const Vec3& p) { return {t * p.x, t * p.y, t * p.z}; }
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// v / ||v||; throws Error for the zero vector.
Vec3 normalized(const Vec3& v);

/// Preparation vectors a (one per row of the witness) and measurement
/// vectors b (one per column), all on the unit sphere.
struct BlochConfig {
    std::vector<Vec3> a;
    std::vector<Vec3> b;
};

/// Throws unless both sides are nonempty and every vector has unit norm
/// within 1e-9.
void validate_config(const BlochConfig& cfg);

/// E_{x,y} = a_x . b_y; entries always in [-1, 1].
RealMatrix correlation_matrix(const BlochConfig& cfg);

/// The detector-noise family E(eta) = eta*E + (1 - eta), entry-wise.
/// eta must lie in [0, 1]; values below 1/2 are legal (the classical model
/// already covers eta = 1/2) but usually uninteresting.
RealMatrix noisy_family(const RealMatrix& E, double eta);

/// Plain (uncompensated) evaluation of sum_{x,y} M_{x,y} a_x . b_y.
double config_value(const WitnessMatrix& M, const BlochConfig& cfg);

struct AlternateResult {
    double value = 0.0;
    BlochConfig config;
    long long iterations = 0;
};

/// Alternating ascent on sum M_{x,y} a_x . b_y over unit vectors: each pass
/// replaces every b_y by the normalized resultant sum_x M_{x,y} a_x, then
/// symmetrically for a_x. A zero resultant keeps the previous vector. The
/// value sequence is non-decreasing; the result is a valid lower bound on
/// the rank-3 maximum q(M) wherever it stops.
AlternateResult q_lowerbound_alternate(const WitnessMatrix& M, const BlochConfig& init,
                                       long long max_iter = 10000, double tol = 1e-10);

/// Same, started from a seeded random configuration.
AlternateResult q_lowerbound_alternate(const WitnessMatrix& M, std::uint64_t seed,
                                       long long max_iter = 10000, double tol = 1e-10);

/// n unit vectors spread as a line packing (antipodal pairs far apart):
/// gradient descent on sum_{i<j} 1/(1 - (v_i.v_j)^2) with decaying step.
/// Deterministic for a fixed seed.
std::vector<Vec3> gen_packing(int n, std::uint64_t seed, int iters = 2000);

/// Smallest angle between the lines {+/-v_i}; pi/2 for fewer than two vectors.
double min_line_angle(const std::vector<Vec3>& vs);

/// Reads the vector format: first line "n", then n lines "x y z". Vectors
/// off unit norm by more than 1e-6 are rejected; smaller deviations are
/// renormalized and counted into *renormalized when given.
std::vector<Vec3> load_vectors(const std::string& path, int* renormalized = nullptr);

void save_vectors(const std::vector<Vec3>& vs, const std::string& path);

/// Uniform direction on the sphere via three pinned-implementation normals.
Vec3 random_unit(std::mt19937_64& rng);

} // namespace pmq
