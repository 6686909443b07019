#include "tch/chords.hpp"

#include <algorithm>
#include <cmath>

namespace tch {

namespace {

// Uniform cubic B-spline basis on one segment, local parameter t in [0,1].
void bspline_basis(double t, double* b) {
    double t2 = t * t, t3 = t2 * t;
    b[0] = (1 - 3 * t + 3 * t2 - t3) / 6.0;
    b[1] = (4 - 6 * t2 + 3 * t3) / 6.0;
    b[2] = (1 + 3 * t + 3 * t2 - 3 * t3) / 6.0;
    b[3] = t3 / 6.0;
}
void bspline_basis_d(double t, double* b) {
    double t2 = t * t;
    b[0] = (-3 + 6 * t - 3 * t2) / 6.0;
    b[1] = (-12 * t + 9 * t2) / 6.0;
    b[2] = (3 + 6 * t - 9 * t2) / 6.0;
    b[3] = 3 * t2 / 6.0;
}
void bspline_basis_dd(double t, double* b) {
    b[0] = (6 - 6 * t) / 6.0;
    b[1] = (-12 + 18 * t) / 6.0;
    b[2] = (6 - 18 * t) / 6.0;
    b[3] = 6 * t / 6.0;
}

}  // namespace

int ParametricCurve::segments() const {
    int n = static_cast<int>(control_points.size());
    if (n < 4)
        throw InputError("curve '" + label + "' needs at least 4 control points");
    return closed ? n : n - 3;
}

static Eigen::Vector3d curve_eval(const ParametricCurve& c, double s, int deriv) {
    int segs = c.segments();
    int n = static_cast<int>(c.control_points.size());
    double u = s * segs;
    double fl = std::floor(u);
    int seg = static_cast<int>(fl);
    double t = u - fl;
    if (c.closed) {
        seg = ((seg % segs) + segs) % segs;
    } else {
        seg = std::clamp(seg, 0, segs - 1);
        t = u - seg;
    }
    double b[4];
    if (deriv == 0)
        bspline_basis(t, b);
    else if (deriv == 1)
        bspline_basis_d(t, b);
    else
        bspline_basis_dd(t, b);
    Eigen::Vector3d p = Eigen::Vector3d::Zero();
    for (int k = 0; k < 4; ++k) {
        int idx = c.closed ? (seg + k) % n : seg + k;
        p += b[k] * c.control_points[static_cast<size_t>(idx)];
    }
    // chain rule for s -> t scaling
    double scale = std::pow(static_cast<double>(segs), deriv);
    return p * scale;
}

Eigen::Vector3d ParametricCurve::position(double s) const { return curve_eval(*this, s, 0); }
Eigen::Vector3d ParametricCurve::derivative(double s) const { return curve_eval(*this, s, 1); }
Eigen::Vector3d ParametricCurve::second_derivative(double s) const {
    return curve_eval(*this, s, 2);
}

double SurfaceGraph::f(double u, double v) const {
    double acc = 0;
    for (size_t i = 0; i < coefficients.size(); ++i)
        for (size_t j = 0; j < coefficients[i].size(); ++j)
            acc += coefficients[i][j] * std::pow(u, static_cast<double>(i)) *
                   std::pow(v, static_cast<double>(j));
    return acc;
}
double SurfaceGraph::fu(double u, double v) const {
    double acc = 0;
    for (size_t i = 1; i < coefficients.size(); ++i)
        for (size_t j = 0; j < coefficients[i].size(); ++j)
            acc += coefficients[i][j] * static_cast<double>(i) *
                   std::pow(u, static_cast<double>(i - 1)) * std::pow(v, static_cast<double>(j));
    return acc;
}
double SurfaceGraph::fv(double u, double v) const {
    double acc = 0;
    for (size_t i = 0; i < coefficients.size(); ++i)
        for (size_t j = 1; j < coefficients[i].size(); ++j)
            acc += coefficients[i][j] * static_cast<double>(j) *
                   std::pow(u, static_cast<double>(i)) * std::pow(v, static_cast<double>(j - 1));
    return acc;
}
double SurfaceGraph::fuu(double u, double v) const {
    double acc = 0;
    for (size_t i = 2; i < coefficients.size(); ++i)
        for (size_t j = 0; j < coefficients[i].size(); ++j)
            acc += coefficients[i][j] * static_cast<double>(i * (i - 1)) *
                   std::pow(u, static_cast<double>(i - 2)) * std::pow(v, static_cast<double>(j));
    return acc;
}
double SurfaceGraph::fuv(double u, double v) const {
    double acc = 0;
    for (size_t i = 1; i < coefficients.size(); ++i)
        for (size_t j = 1; j < coefficients[i].size(); ++j)
            acc += coefficients[i][j] * static_cast<double>(i * j) *
                   std::pow(u, static_cast<double>(i - 1)) * std::pow(v, static_cast<double>(j - 1));
    return acc;
}
double SurfaceGraph::fvv(double u, double v) const {
    double acc = 0;
    for (size_t i = 0; i < coefficients.size(); ++i)
        for (size_t j = 2; j < coefficients[i].size(); ++j)
            acc += coefficients[i][j] * static_cast<double>(j * (j - 1)) *
                   std::pow(u, static_cast<double>(i)) * std::pow(v, static_cast<double>(j - 2));
    return acc;
}

Eigen::Vector3d SurfaceGraph::position(double u, double v) const {
    return rotation * Eigen::Vector3d(u, v, f(u, v)) + translation;
}

SceneReport check_scene(const Scene& scene, double tol) {
    SceneReport rep;
    if (scene.surfaces.size() > 1)
        rep.issues.push_back({"", "a scene may contain at most one surface"});
    for (const auto& c : scene.curves) {
        if (c.control_points.size() < 4) {
            rep.issues.push_back({c.label, "fewer than 4 control points"});
            continue;
        }
        if (c.strand && !c.closed) {
            for (double s : {0.0, 1.0}) {
                Eigen::Vector3d p = c.position(s);
                Eigen::Vector3d d = c.derivative(s).normalized();
                if (std::abs(p.x()) > tol)
                    rep.issues.push_back({c.label, "strand endpoint off the x=0 plane"});
                if (std::hypot(d.y(), d.z()) > tol)
                    rep.issues.push_back({c.label, "strand tangent not orthogonal to x=0"});
            }
        }
    }
    for (const auto& s : scene.surfaces) {
        if (s.umax <= s.umin || s.vmax <= s.vmin)
            rep.issues.push_back({s.label, "empty parameter rectangle"});
        Eigen::Matrix3d rtr = s.rotation.transpose() * s.rotation;
        if ((rtr - Eigen::Matrix3d::Identity()).norm() > 1e-8)
            rep.issues.push_back({s.label, "placement rotation is not orthonormal"});
    }
    return rep;
}

namespace {

struct ObjView {
    const ParametricCurve* curve = nullptr;
    const SurfaceGraph* surf = nullptr;
    int dim() const { return curve ? 1 : 2; }
    const std::string& label() const { return curve ? curve->label : surf->label; }

    void clampwrap(std::vector<double>& x) const {
        if (curve) {
            if (curve->closed)
                x[0] -= std::floor(x[0]);
            else
                x[0] = std::clamp(x[0], 0.0, 1.0);
        } else {
            x[0] = std::clamp(x[0], surf->umin, surf->umax);
            x[1] = std::clamp(x[1], surf->vmin, surf->vmax);
        }
    }
    bool interior(const std::vector<double>& x, double margin) const {
        if (curve)
            return curve->closed || (x[0] > margin && x[0] < 1 - margin);
        return x[0] > surf->umin + margin && x[0] < surf->umax - margin &&
               x[1] > surf->vmin + margin && x[1] < surf->vmax - margin;
    }
    Eigen::Vector3d pos(const std::vector<double>& x) const {
        return curve ? curve->position(x[0]) : surf->position(x[0], x[1]);
    }
    void jac(const std::vector<double>& x, std::vector<Eigen::Vector3d>& J) const {
        if (curve) {
            J = {curve->derivative(x[0])};
        } else {
            J = {surf->rotation * Eigen::Vector3d(1, 0, surf->fu(x[0], x[1])),
                 surf->rotation * Eigen::Vector3d(0, 1, surf->fv(x[0], x[1]))};
        }
    }
    void hess(const std::vector<double>& x, std::vector<std::vector<Eigen::Vector3d>>& H) const {
        if (curve) {
            H = {{curve->second_derivative(x[0])}};
        } else {
            Eigen::Vector3d huu = surf->rotation * Eigen::Vector3d(0, 0, surf->fuu(x[0], x[1]));
            Eigen::Vector3d huv = surf->rotation * Eigen::Vector3d(0, 0, surf->fuv(x[0], x[1]));
            Eigen::Vector3d hvv = surf->rotation * Eigen::Vector3d(0, 0, surf->fvv(x[0], x[1]));
            H = {{huu, huv}, {huv, hvv}};
        }
    }
};

ObjView view(const Scene& scene, const ObjectRef& r) {
    ObjView v;
    if (r.kind == ObjectRef::Kind::Curve) {
        if (r.index < 0 || r.index >= static_cast<int>(scene.curves.size()))
            throw InputError("find_chords: bad curve index");
        v.curve = &scene.curves[static_cast<size_t>(r.index)];
        v.curve->segments();  // validates control point count
    } else {
        if (r.index < 0 || r.index >= static_cast<int>(scene.surfaces.size()))
            throw InputError("find_chords: bad surface index");
        v.surf = &scene.surfaces[static_cast<size_t>(r.index)];
    }
    return v;
}

// Gradient and Hessian of E(xa, xb) = |A(xa) - B(xb)|^2.
void grad_hess(const ObjView& A, const ObjView& B, const std::vector<double>& xa,
               const std::vector<double>& xb, Eigen::VectorXd* g, Eigen::MatrixXd* H,
               Eigen::Vector3d* u_out) {
    int da = A.dim(), db = B.dim(), d = da + db;
    Eigen::Vector3d pa = A.pos(xa), pb = B.pos(xb);
    Eigen::Vector3d u = pa - pb;
    std::vector<Eigen::Vector3d> Ja, Jb;
    A.jac(xa, Ja);
    B.jac(xb, Jb);
    std::vector<std::vector<Eigen::Vector3d>> Ha, Hb;
    A.hess(xa, Ha);
    B.hess(xb, Hb);
    g->resize(d);
    H->resize(d, d);
    for (int i = 0; i < da; ++i)
        (*g)(i) = 2 * u.dot(Ja[static_cast<size_t>(i)]);
    for (int j = 0; j < db; ++j)
        (*g)(da + j) = -2 * u.dot(Jb[static_cast<size_t>(j)]);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < da; ++j)
            (*H)(i, j) = 2 * (Ja[static_cast<size_t>(i)].dot(Ja[static_cast<size_t>(j)]) +
                              u.dot(Ha[static_cast<size_t>(i)][static_cast<size_t>(j)]));
    for (int i = 0; i < db; ++i)
        for (int j = 0; j < db; ++j)
            (*H)(da + i, da + j) =
                2 * (Jb[static_cast<size_t>(i)].dot(Jb[static_cast<size_t>(j)]) -
                     u.dot(Hb[static_cast<size_t>(i)][static_cast<size_t>(j)]));
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) {
            double v = -2 * Ja[static_cast<size_t>(i)].dot(Jb[static_cast<size_t>(j)]);
            (*H)(i, da + j) = v;
            (*H)(da + j, i) = v;
        }
    if (u_out)
        *u_out = u;
}

double param_dist(const ObjView& A, const std::vector<double>& x, const std::vector<double>& y) {
    double acc = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        double dd = std::abs(x[i] - y[i]);
        if (A.curve && A.curve->closed)
            dd = std::min(dd, 1 - dd);
        acc += dd * dd;
    }
    return std::sqrt(acc);
}

// Named constants for the degenerate-family heuristic (see README):
// a critical family on a symmetric scene appears numerically as many isolated
// roots of equal chord length whose smallest Hessian eigenvalue is dominated.
constexpr int kFamilyMinCount = 8;
constexpr double kFamilyLengthRtol = 1e-3;
constexpr double kFamilyEigRatio = 5e-2;

}  // namespace

std::vector<Chord> find_chords(const Scene& scene, const ObjectRef& ra, const ObjectRef& rb,
                               const ChordParams& params) {
    ObjView A = view(scene, ra), B = view(scene, rb);
    bool self = (ra.kind == rb.kind && ra.index == rb.index);
    int da = A.dim(), db = B.dim(), d = da + db;

    // Keep the total seed count near grid_n^2 regardless of the pair's joint
    // dimension, so surface-surface pairs (4 parameters) stay tractable.
    const int per_dim = std::max(
        4, static_cast<int>(std::lround(std::pow(static_cast<double>(params.grid_n) *
                                                     params.grid_n,
                                                 1.0 / d))));
    auto seeds_for = [&](const ObjView& O) {
        std::vector<std::vector<double>> s;
        int n = O.dim() == 1 && d <= 2 ? params.grid_n : per_dim;
        if (O.dim() == 1) {
            for (int i = 0; i < n; ++i)
                s.push_back({(i + 0.5) / n});
        } else {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    s.push_back({O.surf->umin + (i + 0.5) / n * (O.surf->umax - O.surf->umin),
                                 O.surf->vmin + (j + 0.5) / n * (O.surf->vmax - O.surf->vmin)});
        }
        return s;
    };
    auto sa = seeds_for(A), sb = seeds_for(B);

    struct Root {
        std::vector<double> xa, xb;
        double length;
        int index;
        double eig_min_abs, eig_max_abs;
    };
    std::vector<Root> roots;

    Eigen::VectorXd g;
    Eigen::MatrixXd H;
    Eigen::Vector3d u;
    for (const auto& seed_a : sa) {
        for (const auto& seed_b : sb) {
            std::vector<double> xa = seed_a, xb = seed_b;
            bool converged = false;
            for (int it = 0; it < params.max_newton_iters; ++it) {
                grad_hess(A, B, xa, xb, &g, &H, &u);
                if (g.norm() < params.tol) {
                    converged = true;
                    break;
                }
                Eigen::VectorXd delta = H.fullPivLu().solve(-g);
                if (!delta.allFinite())
                    break;
                double maxstep = 0.25;
                if (delta.norm() > maxstep)
                    delta *= maxstep / delta.norm();
                for (int i = 0; i < da; ++i)
                    xa[static_cast<size_t>(i)] += delta(i);
                for (int j = 0; j < db; ++j)
                    xb[static_cast<size_t>(j)] += delta(da + j);
                A.clampwrap(xa);
                B.clampwrap(xb);
            }
            if (!converged)
                continue;
            const double margin = 1e-7;
            if (!A.interior(xa, margin) || !B.interior(xb, margin))
                continue;
            Eigen::Vector3d pa = A.pos(xa), pb = B.pos(xb);
            double len = (pa - pb).norm();
            if (len < std::max(params.dedupe_radius, 1e-6))
                continue;  // degenerate zero-length chord (diagonal of a self-pair)
            // Orthogonality filter: the chord must be binormal at both ends.
            std::vector<Eigen::Vector3d> Ja, Jb;
            A.jac(xa, Ja);
            B.jac(xb, Jb);
            Eigen::Vector3d dir = (pa - pb) / len;
            bool ortho = true;
            for (const auto& t : Ja)
                if (std::abs(dir.dot(t.normalized())) > 1e-5)
                    ortho = false;
            for (const auto& t : Jb)
                if (std::abs(dir.dot(t.normalized())) > 1e-5)
                    ortho = false;
            if (!ortho)
                continue;
            grad_hess(A, B, xa, xb, &g, &H, &u);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
            Eigen::VectorXd ev = es.eigenvalues();
            Root r;
            r.xa = xa;
            r.xb = xb;
            r.length = len;
            r.index = 0;
            r.eig_min_abs = ev.cwiseAbs().minCoeff();
            r.eig_max_abs = ev.cwiseAbs().maxCoeff();
            for (int i = 0; i < d; ++i)
                if (ev(i) < 0)
                    ++r.index;
            roots.push_back(std::move(r));
        }
    }

    // Deduplicate (wrap-aware; self-pairs also identify (xa,xb) ~ (xb,xa)).
    double eps = std::max(params.dedupe_radius, 1e-5);
    std::vector<Root> uniq;
    for (const Root& r : roots) {
        bool dup = false;
        for (const Root& q : uniq) {
            if (param_dist(A, r.xa, q.xa) < eps && param_dist(B, r.xb, q.xb) < eps)
                dup = true;
            if (self && param_dist(A, r.xa, q.xb) < eps && param_dist(B, r.xb, q.xa) < eps)
                dup = true;
            if (dup)
                break;
        }
        if (!dup)
            uniq.push_back(r);
    }

    // Per-root singularity check.
    for (const Root& r : uniq)
        if (r.eig_min_abs < params.singular_tol)
            throw DegenerateFamily("find_chords: near-singular Hessian at a chord of length " +
                                   std::to_string(r.length) +
                                   "; the critical set is not isolated (perturb the scene)");

    // Family heuristic: many equal-length roots, all with a dominated smallest
    // eigenvalue, indicate a one-parameter critical family (e.g. a round circle).
    if (static_cast<int>(uniq.size()) >= kFamilyMinCount) {
        std::vector<Root> sorted = uniq;
        std::sort(sorted.begin(), sorted.end(),
                  [](const Root& x, const Root& y) { return x.length < y.length; });
        size_t i = 0;
        while (i < sorted.size()) {
            size_t j = i;
            while (j < sorted.size() &&
                   sorted[j].length - sorted[i].length <= kFamilyLengthRtol * sorted[i].length)
                ++j;
            if (j - i >= static_cast<size_t>(kFamilyMinCount)) {
                bool all_dominated = true;
                for (size_t k = i; k < j; ++k)
                    if (sorted[k].eig_min_abs > kFamilyEigRatio * sorted[k].eig_max_abs)
                        all_dominated = false;
                if (all_dominated)
                    throw DegenerateFamily(
                        "find_chords: " + std::to_string(j - i) +
                        " equal-length chords with dominated Hessian eigenvalue; "
                        "the critical set looks like a one-parameter family (perturb the scene)");
            }
            i = j;
        }
    }

    std::vector<Chord> out;
    for (const Root& r : uniq) {
        Chord c;
        c.params_a = r.xa;
        c.params_b = r.xb;
        c.endpoint_a = A.pos(r.xa);
        c.endpoint_b = B.pos(r.xb);
        c.length = r.length;
        c.morse_index = r.index;
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const Chord& x, const Chord& y) {
        if (x.length != y.length)
            return x.length < y.length;
        return x.params_a < y.params_a;
    });
    return out;
}

ChordGenerators chord_generators(const Scene& scene, const ChordParams& params) {
    ChordGenerators out;
    out.skeleton.name = "chord_skeleton";
    std::vector<ObjectRef> objs;
    for (int i = 0; i < static_cast<int>(scene.curves.size()); ++i)
        objs.push_back({ObjectRef::Kind::Curve, i});
    for (int i = 0; i < static_cast<int>(scene.surfaces.size()); ++i)
        objs.push_back({ObjectRef::Kind::Surface, i});
    for (const auto& o : objs)
        out.skeleton.add_idempotent(view(scene, o).label());

    for (size_t i = 0; i < objs.size(); ++i) {
        for (size_t j = i; j < objs.size(); ++j) {
            auto chords = find_chords(scene, objs[i], objs[j], params);
            const std::string& la = view(scene, objs[i]).label();
            const std::string& lb = view(scene, objs[j]).label();
            int k = 0;
            for (const Chord& c : chords) {
                std::string fwd = la + "." + lb + "." + std::to_string(k);
                std::string rev = lb + "." + la + "." + std::to_string(k);
                if (i == j)
                    rev += ".rev";
                for (auto [nm, src, tgt] :
                     {std::tuple<std::string, std::string, std::string>{fwd, la, lb},
                      std::tuple<std::string, std::string, std::string>{rev, lb, la}}) {
                    OrientedChordGenerator g;
                    g.name = nm;
                    g.src_label = src;
                    g.tgt_label = tgt;
                    g.degree = c.morse_index;
                    g.chord = c;
                    out.generators.push_back(g);
                    out.skeleton.add_generator(nm, c.morse_index, src, tgt,
                                               /*inferred_degree=*/true);
                }
                ++k;
            }
        }
    }
    return out;
}

}  // namespace tch
