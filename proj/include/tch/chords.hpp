#pragma once

#include <Eigen/Dense>
#include <string>
#include <variant>
#include <vector>

#include "tch/dga.hpp"

namespace tch {

/// Uniform cubic B-spline curve [0,1] -> R^3 (C^2). Closed curves are periodic
/// in the control polygon; open curves use the plain uniform basis (the spline
/// approximates, rather than interpolates, the end control points).
struct ParametricCurve {
    std::string label;
    std::vector<Eigen::Vector3d> control_points;
    bool closed = false;
    /// Open curves marked as tangle strands must start and end on the boundary
    /// plane x = 0 with tangent orthogonal to it (checked by check_scene).
    bool strand = false;

    int segments() const;
    /// Position and derivatives with respect to the global parameter s ∈ [0,1].
    Eigen::Vector3d position(double s) const;
    Eigen::Vector3d derivative(double s) const;
    Eigen::Vector3d second_derivative(double s) const;
};

/// Graph surface z = f(u,v) for a bivariate polynomial f on a rectangle,
/// rigidly placed in R^3: p(u,v) = R·(u, v, f(u,v)) + t.
struct SurfaceGraph {
    std::string label;
    std::vector<std::vector<double>> coefficients;  ///< coefficients[i][j] · u^i v^j
    double umin = -1, umax = 1, vmin = -1, vmax = 1;
    Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
    Eigen::Vector3d translation = Eigen::Vector3d::Zero();

    double f(double u, double v) const;
    double fu(double u, double v) const;
    double fv(double u, double v) const;
    double fuu(double u, double v) const;
    double fuv(double u, double v) const;
    double fvv(double u, double v) const;
    Eigen::Vector3d position(double u, double v) const;
};

/// A scene is a set of labelled curves plus at most one hypersurface graph.
struct Scene {
    std::vector<ParametricCurve> curves;
    std::vector<SurfaceGraph> surfaces;  ///< size 0 or 1
};

struct SceneReport {
    std::vector<Issue> issues;
    bool ok() const { return issues.empty(); }
};

/// Validates scene invariants: at most one surface, enough control points,
/// and the strand boundary conditions (endpoint on x = 0, tangent along x).
SceneReport check_scene(const Scene& scene, double tol = 1e-6);

struct ChordParams {
    int grid_n = 32;          ///< seeds per parameter dimension
    double tol = 1e-10;       ///< Newton convergence tolerance on |∇E|
    double dedupe_radius = 1e-6;
    double singular_tol = 1e-8;  ///< Hessian eigenvalue threshold per root
    int max_newton_iters = 60;
};

/// A binormal geodesic chord: an isolated critical point of the squared
/// distance E between two objects.
struct Chord {
    std::vector<double> params_a;  ///< parameter(s) on object a
    std::vector<double> params_b;
    Eigen::Vector3d endpoint_a;
    Eigen::Vector3d endpoint_b;
    double length = 0;
    int morse_index = 0;  ///< negative Hessian eigenvalue count (heuristic grading)
};

/// Object reference within a scene: curve index or surface index.
struct ObjectRef {
    enum class Kind { Curve, Surface } kind = Kind::Curve;
    int index = 0;
};

/// Finds all isolated chords between two objects (the same object twice gives
/// self-chords) by multi-start Newton on ∇E = 0 from a grid of seeds, with
/// orthogonality filtering, deduplication, and Morse indices from the Hessian.
/// Throws DegenerateFamily when a root's Hessian is near singular, or when the
/// root set looks like a one-parameter family (many equal-length chords with a
/// dominated near-zero Hessian eigenvalue).
std::vector<Chord> find_chords(const Scene& scene, const ObjectRef& a, const ObjectRef& b,
                               const ChordParams& params = {});

/// One oriented generator per direction of each unoriented chord.
struct OrientedChordGenerator {
    std::string name;
    std::string src_label;  ///< label of the object the chord starts on
    std::string tgt_label;
    int degree = 0;  ///< Morse index of the unoriented chord (heuristic grading)
    Chord chord;
};

/// Enumerates chords over all unordered object pairs (including self-pairs)
/// and emits two oriented generators per unoriented chord. Also returns a DGA
/// skeleton: one idempotent per object, generators with inferred degrees and
/// Unspecified differentials.
struct ChordGenerators {
    std::vector<OrientedChordGenerator> generators;
    Dga skeleton;
};
ChordGenerators chord_generators(const Scene& scene, const ChordParams& params = {});

}  // namespace tch
