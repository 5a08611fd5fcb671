#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "openup/critvals.hpp"
#include "openup/geometry.hpp"
#include "openup/rational_map.hpp"
#include "openup/solver_config.hpp"

namespace openup {

/// Polyline approximation of a Jordan arc; the endpoints are the first and
/// last samples.  Smoothness of the underlying arc is assumed, not verified.
struct Arc {
    std::vector<Complex> samples;

    static Arc create(std::vector<Complex> samples);  // throws DegenerateSpec

    Complex first_endpoint() const { return samples.front(); }
    Complex last_endpoint() const { return samples.back(); }
};

/// n pairwise disjoint arcs with pairwise distinct endpoints.
struct ArcSet {
    std::vector<Arc> arcs;

    static ArcSet create(std::vector<Arc> arcs);  // throws DegenerateSpec

    int n() const { return static_cast<int>(arcs.size()); }
    /// Endpoints in arc order: arc j contributes entries 2j and 2j+1.
    std::vector<Complex> endpoints() const;
};

/// Roots of P - wQ with multiplicities (total n+1 for finite w).
RootSet fiber(const RationalMap& map, Complex w, double cluster_radius = 1e-6);

struct EndpointFiberReport {
    struct PerEndpoint {
        Complex value;
        bool pass = false;
        int distinct_points = 0;
        int double_points = 0;
    };
    bool pass = false;
    std::vector<PerEndpoint> endpoints;
};

/// Each endpoint's fiber must consist of exactly n distinct points, exactly
/// one of multiplicity two and the rest simple.
EndpointFiberReport verify_endpoint_fibers(const RationalMap& map, std::span<const Complex> endpoints);

struct TraceOptions {
    double tube_factor = 0.2;      // fraction of the min fiber distance at the start endpoint
    int refine_cap = 12;           // max midpoint-insertion doublings per arc step
    double corrector_tol = 1e-13;
    int max_corrector_iters = 40;
};

/// Closed preimage curve over one arc.  points[k] lies in the fiber of the
/// arc point at parameter params[k] (chord-length parametrization); the
/// parameter sweeps 0 -> 1 on one branch and back on the other.
struct BoundaryCurve {
    std::vector<Complex> points;
    std::vector<double> params;
};

/// Continues the two preimage branches of the arc from the double fiber point
/// over one endpoint to the double point over the other.  Throws BranchJump
/// when the corrector lands off-sheet even after maximal refinement.
BoundaryCurve trace_boundary(const RationalMap& map, const Arc& arc, const TraceOptions& options = {});

struct OpenUpReport {
    EndpointFiberReport endpoint_fibers;          // check 1
    bool curves_simple_disjoint = false;          // check 2
    bool exterior_single_valued = false;          // check 3
    int probe_count = 0;
    int probe_failures = 0;
    bool infinity_fixed = false;                  // check 4: deg P = n+1 > deg Q = n

    bool pass() const {
        return endpoint_fibers.pass && curves_simple_disjoint && exterior_single_valued && infinity_fixed;
    }
};

/// Runs the four open-up checks against traced (or candidate) boundary curves.
OpenUpReport verify_open_up(const RationalMap& map, const ArcSet& arcs,
                            std::span<const BoundaryCurve> curves, int probe_count = 200);

struct OpenUpResult {
    RationalMap map;
    std::vector<Complex> nodes;
    std::vector<BoundaryCurve> boundary_curves;   // one per arc
    std::vector<int> correspondence;              // arc index -> curve index
    OpenUpReport report;

    struct Candidate {
        RationalMap map;
        double residual = 0.0;
        bool selected = false;
        std::string failure;  // empty when all checks pass
    };
    std::vector<Candidate> candidates;
};

/// Solves the critical-value problem at the arc endpoints and returns the
/// first candidate (in canonical order) passing all open-up checks, with the
/// traced boundary of K.  Throws NoOpeningSolution when no candidate passes.
OpenUpResult open_up(const ArcSet& arcs, const SolverConfig& config = {});

/// Samples random pairs of points exterior to every curve and checks that F
/// separates them (unless nearly coincident).
bool exterior_injectivity_check(const RationalMap& map, std::span<const BoundaryCurve> curves,
                                int pairs = 500, std::uint64_t seed = 0);

/// Max distance from F(curve point) to the arc polyline (pushforward tube check).
double curve_image_distance(const RationalMap& map, const BoundaryCurve& curve, const Arc& arc);

}  // namespace openup
