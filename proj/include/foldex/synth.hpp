#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "foldex/geometry.hpp"
#include "foldex/minimal.hpp"

namespace foldex::synth {

// Ground truth for one U-shaped tooth, expressed on the arc-length scale of
// the generated (possibly jittered) polyline.
struct ToothTruth {
    Interval mouth;       // mouth-corner midpoints
    Interval shoulders;   // wall midpoints, where the heading is extremal
    double tip = 0.0;
    double width = 0.0;
    double depth = 0.0;
    double turning = 0.0; // heading change from one wall to the other
};

struct GroundTruth {
    std::vector<ToothTruth> folds;
    std::vector<ToothTruth> decoys;  // narrow-mouthed features that are not folds
    std::size_t bulges = 0;
};

struct Fixture {
    Polyline polyline;
    GroundTruth truth;
};

struct CombSpec {
    std::size_t tooth_count = 3;
    double tooth_width = 1.0;
    double tooth_depth = 3.0;
    double spacing = 3.0;         // wall-to-wall gap between neighbouring teeth
    double corner_radius = 0.25;
    double vertex_spacing = 0.25;
    double noise = 0.0;           // std-dev of Gaussian jitter along the vertex normal
    double lead = 4.0;            // straight run before the first and after the last tooth
    std::uint64_t seed = 1;
    Chirality chirality = Chirality::left;

    void validate() const;
};

/// Incremental construction of a membrane-like chain from straight runs,
/// circular corners, teeth and bulges. Positions are recorded on the clean
/// construction and re-expressed on the jittered output at build time.
class MembraneBuilder {
public:
    explicit MembraneBuilder(double vertex_spacing, Chirality chirality = Chirality::left);

    MembraneBuilder& straight(double length);
    /// Positive angle turns toward the fold side.
    MembraneBuilder& arc(double radius, double angle);
    MembraneBuilder& tooth(double width, double depth, double corner_radius);
    /// Same geometry as a tooth but recorded as a decoy instead of a fold.
    MembraneBuilder& decoy(double width, double depth, double corner_radius);
    /// Raised-cosine bump toward the fold side; never a fold.
    MembraneBuilder& bulge(double mouth_width, double depth);

    Fixture build(double noise = 0.0, std::uint64_t seed = 1) const;

private:
    struct Mark {
        double s;  // arc length on the clean construction
    };
    struct PendingTooth {
        Mark mouth_a, mouth_b, shoulder_a, shoulder_b, tip;
        double width, depth, turning;
        bool is_fold;
    };

    void emit(Point2 p);
    MembraneBuilder& add_tooth(double width, double depth, double corner_radius, bool is_fold);
    double side_sign() const { return chirality_ == Chirality::left ? 1.0 : -1.0; }

    double spacing_;
    Chirality chirality_;
    std::vector<Point2> points_{{0.0, 0.0}};
    std::vector<double> clean_s_{0.0};
    double heading_ = 0.0;
    std::vector<PendingTooth> teeth_;
    std::size_t bulges_ = 0;
};

Fixture generate_comb(const CombSpec& spec);

/// Wide bump between straight leads of one mouth width each; zero folds.
Fixture generate_bulge(double mouth_width, double depth, double vertex_spacing,
                       Chirality chirality = Chirality::left);

}  // namespace foldex::synth
