#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "tch/chords.hpp"
#include "tch/errors.hpp"
#include "tch/interchange.hpp"

using namespace tch;

namespace {

#ifndef TCH_SCENE_DIR
#define TCH_SCENE_DIR "scenes"
#endif

Scene load_scene(const std::string& name) {
    const std::string path = std::string(TCH_SCENE_DIR) + "/" + name + ".json";
    return scene_from_json(parse_document(read_file(path), "scene"));
}

/// Dense-grid oracle for curve self-chords: marks (s1, s2) cells whose E-value
/// is a strict local minimum/maximum/saddle of the sampled grid and returns the
/// distinct chord lengths found. Deliberately crude and independent of the
/// Newton machinery: it only confirms count and approximate lengths.
std::multiset<double> dense_grid_self_chord_lengths(const ParametricCurve& c, int n,
                                                    double min_sep) {
    auto E = [&](double s1, double s2) {
        return (c.position(s1) - c.position(s2)).squaredNorm();
    };
    std::multiset<double> lengths;
    const double h = 1.0 / n;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const double s1 = i * h, s2 = j * h;
            // keep one representative per unordered pair, away from diagonal
            double sep = std::fabs(s1 - s2);
            sep = std::min(sep, 1.0 - sep);
            if (s2 <= s1 || sep < min_sep) continue;
            const double e0 = E(s1, s2);
            // critical cell: E is extremal against all 8 neighbours in each
            // coordinate direction separately (criticality, not extremality)
            const double exp1 = E(s1 + h, s2) - e0, exm1 = E(s1 - h, s2) - e0;
            const double exp2 = E(s1, s2 + h) - e0, exm2 = E(s1, s2 - h) - e0;
            if (exp1 * exm1 > 0 && exp2 * exm2 > 0) lengths.insert(std::sqrt(e0));
        }
    }
    return lengths;
}

}  // namespace

TEST_CASE("spline evaluation: closed curves are periodic and C^2") {
    Scene s = load_scene("ellipse");
    REQUIRE(s.curves.size() == 1);
    const ParametricCurve& c = s.curves[0];
    CHECK((c.position(0.0) - c.position(1.0)).norm() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK((c.derivative(0.0) - c.derivative(1.0)).norm() == doctest::Approx(0.0).epsilon(1e-9));
    // derivative matches finite differences
    const double h = 1e-6;
    for (double s0 : {0.1, 0.37, 0.77}) {
        Eigen::Vector3d fd = (c.position(s0 + h) - c.position(s0 - h)) / (2 * h);
        CHECK((c.derivative(s0) - fd).norm() < 1e-5);
        Eigen::Vector3d fd2 =
            (c.position(s0 + h) - 2 * c.position(s0) + c.position(s0 - h)) / (h * h);
        CHECK((c.second_derivative(s0) - fd2).norm() < 1e-3);
    }
}

TEST_CASE("scene validation enforces strand boundary conditions") {
    Scene s = load_scene("trivial_tangle");
    CHECK(check_scene(s).ok());
    // shifting the strand off the boundary plane breaks the conditions
    Scene bad = s;
    for (auto& p : bad.curves[0].control_points) p.x() += 0.1;
    CHECK_FALSE(check_scene(bad).ok());
    // a second surface is rejected
    Scene two = s;
    two.surfaces.push_back(two.surfaces[0]);
    CHECK_FALSE(check_scene(two).ok());
}

TEST_CASE("ellipse self-chords: the two axes, graded 1 and 2") {
    Scene s = load_scene("ellipse");
    std::vector<Chord> chords = find_chords(s, {ObjectRef::Kind::Curve, 0},
                                            {ObjectRef::Kind::Curve, 0});
    REQUIRE(chords.size() == 2);
    std::multiset<int> indices;
    std::multiset<double> lengths;
    for (const Chord& c : chords) {
        indices.insert(c.morse_index);
        lengths.insert(c.length);
        // returned length equals the endpoint distance
        CHECK(c.length ==
              doctest::Approx((c.endpoint_a - c.endpoint_b).norm()).epsilon(1e-9));
    }
    CHECK(indices == std::multiset<int>{1, 2});
    CHECK(*lengths.begin() == doctest::Approx(2.0).epsilon(1e-6));    // minor axis
    CHECK(*lengths.rbegin() == doctest::Approx(4.0).epsilon(1e-6));   // major axis
}

TEST_CASE("ellipse chords agree with the dense-grid oracle") {
    Scene s = load_scene("ellipse");
    std::multiset<double> oracle =
        dense_grid_self_chord_lengths(s.curves[0], 400, 0.15);
    REQUIRE_FALSE(oracle.empty());
    // cluster the flagged cells: a critical point can straddle 1-2 grid cells
    std::vector<double> clusters;
    for (double l : oracle)
        if (clusters.empty() || l - clusters.back() > 1e-2) clusters.push_back(l);
    REQUIRE(clusters.size() == 2);
    CHECK(std::fabs(clusters[0] - 2.0) < 1e-2);
    CHECK(std::fabs(clusters[1] - 4.0) < 1e-2);
}

TEST_CASE("round circle raises DegenerateFamily") {
    Scene s = load_scene("circle");
    CHECK_THROWS_AS(find_chords(s, {ObjectRef::Kind::Curve, 0}, {ObjectRef::Kind::Curve, 0}),
                    DegenerateFamily);
}

TEST_CASE("trivial tangle scene has exactly one strand-to-surface chord") {
    Scene s = load_scene("trivial_tangle");
    std::vector<Chord> chords = find_chords(s, {ObjectRef::Kind::Curve, 0},
                                            {ObjectRef::Kind::Surface, 0});
    REQUIRE(chords.size() == 1);
    CHECK(chords[0].length == doctest::Approx(1.0).epsilon(1e-6));
    // the chord drops vertically from the arc apex to the saddle point
    CHECK((chords[0].endpoint_a - Eigen::Vector3d(1, 0, 1)).norm() < 1e-6);
    CHECK((chords[0].endpoint_b - Eigen::Vector3d(1, 0, 0)).norm() < 1e-6);
}

TEST_CASE("chord lengths and indices are invariant under rigid motions") {
    Scene s = load_scene("ellipse");
    // rotate by 30 degrees about z and translate
    const double th = M_PI / 6;
    Eigen::Matrix3d R;
    R << std::cos(th), -std::sin(th), 0, std::sin(th), std::cos(th), 0, 0, 0, 1;
    Eigen::Vector3d t(0.3, -1.2, 2.5);
    Scene moved = s;
    for (auto& p : moved.curves[0].control_points) p = R * p + t;
    auto base = find_chords(s, {ObjectRef::Kind::Curve, 0}, {ObjectRef::Kind::Curve, 0});
    auto m = find_chords(moved, {ObjectRef::Kind::Curve, 0}, {ObjectRef::Kind::Curve, 0});
    REQUIRE(base.size() == m.size());
    for (size_t i = 0; i < base.size(); ++i) {
        CHECK(base[i].length == doctest::Approx(m[i].length).epsilon(1e-8));
        CHECK(base[i].morse_index == m[i].morse_index);
    }
}

TEST_CASE("doubling the seed grid does not change the chord set") {
    Scene s = load_scene("ellipse");
    ChordParams coarse, fine;
    coarse.grid_n = 16;
    fine.grid_n = 64;
    auto a = find_chords(s, {ObjectRef::Kind::Curve, 0}, {ObjectRef::Kind::Curve, 0}, coarse);
    auto b = find_chords(s, {ObjectRef::Kind::Curve, 0}, {ObjectRef::Kind::Curve, 0}, fine);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i)
        CHECK(a[i].length == doctest::Approx(b[i].length).epsilon(1e-9));
}

TEST_CASE("chord_generators emits two oriented generators per chord") {
    Scene s = load_scene("trivial_tangle");
    ChordGenerators g = chord_generators(s);
    REQUIRE(g.generators.size() == 2);
    std::set<std::pair<std::string, std::string>> dirs;
    for (const auto& og : g.generators) dirs.insert({og.src_label, og.tgt_label});
    CHECK(dirs == std::set<std::pair<std::string, std::string>>{{"T", "H"}, {"H", "T"}});
    // the skeleton declares one idempotent per object and unspecified diffs
    CHECK(g.skeleton.ring.size() == 2);
    CHECK(g.skeleton.num_generators() == 2);
    for (int i = 0; i < g.skeleton.num_generators(); ++i)
        CHECK(g.skeleton.diff(i).kind == Differential::Kind::Unspecified);
}

TEST_CASE("orthogonality holds at every returned chord") {
    Scene s = load_scene("trivial_tangle");
    auto chords = find_chords(s, {ObjectRef::Kind::Curve, 0}, {ObjectRef::Kind::Surface, 0});
    for (const Chord& c : chords) {
        Eigen::Vector3d dir = c.endpoint_b - c.endpoint_a;
        Eigen::Vector3d tan = s.curves[0].derivative(c.params_a[0]);
        CHECK(std::fabs(dir.normalized().dot(tan.normalized())) < 1e-6);
    }
}
